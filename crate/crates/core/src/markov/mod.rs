//! Markov chains on single-colored weak models.

mod chain;
mod decode;
mod timing;

pub use chain::{attach_probabilities, MarkovChain, Traversal, ROW_SUM_TOLERANCE};
pub use timing::{TimingKind, TimingVector};
