//! Structural analysis: recurrent classes, the pair graph, growth regimes,
//! hypothesis bounds and symmetry.

mod automorphism;
mod bounds;
mod classify;
mod pair;
mod trackability;

pub use automorphism::{automorphism_count, Automorphisms, AUTOMORPHISM_NODE_LIMIT};
pub use bounds::{bounds_from_parts, hypothesis_bound, out_multiplicity, BoundReport};
pub use classify::{classify_nodes, NodeClassification};
pub use pair::{pair_graph, PairGraph};
pub use trackability::{classify_trackability, CyclePair, ForkWitness, Regime, TrackabilityReport, Witness};
