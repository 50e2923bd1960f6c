//! The transducer `Γ`: graph model and text format, verification,
//! cycle ratios, and the preimage run.

pub mod graph;
pub mod preimage;
pub mod ratio;
pub mod repair;
pub mod transduce;
pub mod verify;

pub use graph::{parse_graph, serialize_graph, Kind, Label, TransducerGraph};
pub use preimage::min_preimage;
pub use ratio::{max_cycle_ratio, walk_ratio, CycleReport, RatioGraph};
pub use transduce::{transduce, TransduceResult, Transducer};
pub use verify::{verify_graph, VerifyReport};
