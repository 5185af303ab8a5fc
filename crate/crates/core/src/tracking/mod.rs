//! Online hypothesis tracking and worst-case growth.

mod growth;
mod trellis;

pub use growth::{worst_case_growth, worst_case_growth_from, GrowthProfile, GROWTH_SEARCH_LIMIT};
pub use trellis::{Entry, Enumeration, Layer, Trellis};
