//! Weak models: colored directed graphs observed only through node colors.
//!
//! The crate parses and transforms weak models, decides whether the number of
//! node sequences consistent with an observed color sequence stays bounded,
//! tracks those sequences online, and runs Markov chain analyses over
//! probabilistic models.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod format;
mod graph;
pub mod markov;
pub mod model;
pub mod structure;
pub mod tracking;
pub mod transform;

pub use error::{Error, Result};
pub use format::{parse_model, serialize_model};
pub use model::{ColorIx, NodeIx, WeakModel, WeakModelBuilder};
pub use transform::{to_single_colored, NodeMapping};
