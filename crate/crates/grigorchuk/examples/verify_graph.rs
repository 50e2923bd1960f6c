//! Parse a transducer graph and check every transition exactly.
//!
//! cargo run --example verify_graph -- [graph-file]

use std::collections::BTreeMap;

use grigorchuk::automaton::{parse_graph, verify_graph};

fn main() -> grigorchuk::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix.graph").into());
    let g = parse_graph(&std::fs::read_to_string(&path)?)?;
    println!("{path}\n{:?}", g.census());

    let r = verify_graph(&g);
    let mut by_kind: BTreeMap<String, usize> = BTreeMap::new();
    for v in &r.violations {
        *by_kind.entry(format!("{:?}", v.kind)).or_default() += 1;
    }
    println!("{} violations {by_kind:?}", r.violations.len());
    for v in r.violations.iter().take(5) {
        println!("  line {:?}: {}", v.line, v.detail);
    }
    Ok(())
}
