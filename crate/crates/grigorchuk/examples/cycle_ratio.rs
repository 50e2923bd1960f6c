//! Maximal cycle ratio of a transducer graph and the growth exponent it gives.

use grigorchuk::automaton::{max_cycle_ratio, parse_graph, walk_ratio};
use grigorchuk::growth::alpha_of_eta;
use grigorchuk::automaton::graph::Label;
use grigorchuk::{Gen, Weight};

fn main() -> grigorchuk::Result<()> {
    for name in ["appendix.graph", "appendix_corrected.graph"] {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let g = parse_graph(&std::fs::read_to_string(path)?)?;
        for omega in [g.weight, Weight::unit()] {
            let c = max_cycle_ratio(&g, &omega, false)?;
            println!("{name} [{omega}] eta {:.6} alpha {:.4} over {} transitions", c.ratio, alpha_of_eta(c.ratio)?, c.transitions.len());
        }

        // the loop at (-,-): read (da,da) twice, emit cacacaca
        let start = g.initial().unwrap();
        let first = g.outgoing(start).find(|(_, t)| t.label == Label::Input(Gen::D, Gen::D)).map(|(i, t)| (i, t.to));
        if let Some((i0, mid)) = first {
            let second = g.outgoing(mid).find(|(_, t)| t.label == Label::Input(Gen::D, Gen::D));
            if let Some((i1, t)) = second {
                if let Some((i2, _)) = g.outgoing(t.to).next() {
                    println!("  (da,da)(da,da) loop ratio {:.4}", walk_ratio(&g, &g.weight, &[i0, i1, i2]));
                }
            }
        }
    }
    Ok(())
}
