//! Lightest words for group elements under a weight, and enumeration of
//! all minimal forms up to a length.

use grigorchuk::group::{in_b, in_h};
use grigorchuk::minform::{element_weight_units, enumerate_minimal_forms, minimal_form};
use grigorchuk::weight::to_real;
use grigorchuk::word::w;
use grigorchuk::Weight;

fn main() -> grigorchuk::Result<()> {
    let tuned = Weight::tuned();
    println!("weights {tuned}, triangular: {}", tuned.is_triangular());

    for word in ["dadadada", "bcbc", "abababab", "acacacac"] {
        let m = minimal_form(&w(word), &tuned)?;
        let units = element_weight_units(&w(word), &tuned)?;
        println!("{word:>10} -> {m:<10} weight {}", to_real(units));
    }

    let unit = Weight::unit();
    for n in 0..=6 {
        let all = enumerate_minimal_forms(n, &unit, |_| true)?.len();
        let h = enumerate_minimal_forms(n, &unit, in_h)?.len();
        let b = enumerate_minimal_forms(n, &unit, in_b)?.len();
        println!("length <= {n}: {all} elements, {h} in H, {b} in B");
    }
    Ok(())
}
