//! Grow a transducer graph from (-,-) by the quality rule, then check it.
//!
//! cargo run --release --example build_graph -- [max-len]

use grigorchuk::automaton::{max_cycle_ratio, serialize_graph, verify_graph};
use grigorchuk::builder::{build, BuildParams, Threshold};
use grigorchuk::Weight;

fn main() -> grigorchuk::Result<()> {
    let mut p = BuildParams::new(Weight::tuned());
    if let Some(n) = std::env::args().nth(1) {
        p.max_len = n.parse().map_err(|_| grigorchuk::Error::Parse(format!("bad length {n}")))?;
    }
    for threshold in [Threshold::Literal, Threshold::CycleBound] {
        p.threshold = threshold;
        let out = build(&p)?;
        let g = &out.graph;
        let eta = max_cycle_ratio(g, &g.weight, false)?.ratio;
        println!("{threshold:?}: {:?}, {} violations, eta {eta:.4}", g.census(), verify_graph(g).violations.len());
        for e in out.log.iter().take(4) {
            println!("  {} {} {:?} {:?}", e.state, e.kind, e.label, e.quality);
        }
        println!("  {} lines serialized", serialize_graph(g).lines().count());
    }
    Ok(())
}
