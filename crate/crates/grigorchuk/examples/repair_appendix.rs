//! Replace each output label of a graph that fails the run invariant by
//! the lightest label that satisfies it, and print the result.
//!
//! cargo run --release --example repair_appendix > corrected.graph

use grigorchuk::automaton::repair::repair_outputs;
use grigorchuk::automaton::{max_cycle_ratio, parse_graph, serialize_graph, verify_graph};

fn main() -> grigorchuk::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix.graph");
    let mut g = parse_graph(&std::fs::read_to_string(path)?)?;
    let repairs = repair_outputs(&mut g)?;
    for r in &repairs {
        eprintln!("line {:?}: {} out {} -> {} becomes {}", r.line, r.source, r.old_label, r.target, r.new_label);
    }
    let eta = max_cycle_ratio(&g, &g.weight, false)?.ratio;
    eprintln!("{} repairs, {} violations left, eta {eta:.4}", repairs.len(), verify_graph(&g).violations.len());
    print!("{}", serialize_graph(&g));
    Ok(())
}
