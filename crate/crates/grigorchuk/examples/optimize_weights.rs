//! Hill-climb the weights of a fixed graph to lower its cycle ratio.

use grigorchuk::automaton::parse_graph;
use grigorchuk::optimizer::{optimize_weights, Schedule};
use grigorchuk::Weight;

fn main() -> grigorchuk::Result<()> {
    for name in ["appendix.graph", "appendix_corrected.graph"] {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let g = parse_graph(&std::fs::read_to_string(path)?)?;
        for start in [Weight::unit(), Weight::tuned()] {
            let r = optimize_weights(&g, &start, &Schedule::default())?;
            println!("{name} from [{start}]: eta {:.4} -> {:.4} at [{}], {} proposals, {} kept", r.initial_eta, r.eta, r.weight, r.trace.len(), r.kept().count());
        }
    }
    Ok(())
}
