//! Weighted growth tables from two independent enumerations, and the
//! comparison between H and G.

use grigorchuk::growth::{check_sbgp, gamma_by_signature, GrowthTable, Subgroup};
use grigorchuk::Weight;

const BUDGET: usize = 2_000_000;

fn main() -> grigorchuk::Result<()> {
    let radii: Vec<i64> = (0..=10).map(|n| n * 10_000).collect();
    let unit = GrowthTable::at_radii(&Weight::unit(), &radii, Subgroup::G, BUDGET)?;
    let sig = gamma_by_signature(&Weight::unit(), &radii[..8], 8);
    println!("unit weights\n{}", unit.to_csv());
    println!("signature back-end up to 7: {:?}", sig);

    let tuned = GrowthTable::at_radii(&Weight::tuned(), &radii, Subgroup::G, BUDGET)?;
    let h = GrowthTable::at_radii(&Weight::tuned(), &radii, Subgroup::H, BUDGET)?;
    println!("tuned weights: G {:?}\n               H {:?}", tuned.counts(), h.counts());

    for row in check_sbgp(&Weight::unit(), &radii[..9], BUDGET)? {
        println!("r={} {} <= {} <= {} {}", row.radius, row.lower, row.middle, row.upper, if row.holds { "ok" } else { "FAILS" });
    }
    Ok(())
}
