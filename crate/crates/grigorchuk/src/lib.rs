//! Grigorchuk's group: word problem, weighted growth, and the finite-state
//! transducer that computes short `ψ`-preimages, together with the
//! cycle-ratio analysis and weight search that bound its growth from below.

pub mod automaton;
pub mod builder;
pub mod element;
pub mod error;
pub mod group;
pub mod growth;
pub mod minform;
pub mod optimizer;
pub mod weight;
pub mod word;

pub use element::{element_of, Element};
pub use error::{Error, Result};
pub use weight::Weight;
pub use word::{BinaryString, Gen, PairWord, Word};
