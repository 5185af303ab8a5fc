use crate::model::{NodeIx, WeakModel};
use crate::structure::classify::classify_nodes;
use crate::structure::trackability::{classify_trackability, Regime};

/// Worst-case hypothesis bounds for strongly connected trackable models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Largest number of nodes that can emit one color.
    pub k: u64,
    /// Per node: size of the largest group of out-neighbors sharing a color (at least 1).
    pub multiplicity: Vec<u64>,
    pub bound_known_start: u64,
    pub bound_unknown_start: u64,
    pub regime: Regime,
    pub strongly_connected: bool,
}

impl BoundReport {
    /// The bounds are guaranteed only for strongly connected models of bounded growth.
    pub fn preconditions_hold(&self) -> bool {
        self.strongly_connected && self.regime == Regime::TrackableBounded
    }

    pub fn excess(&self) -> u64 {
        self.multiplicity.iter().map(|m| m - 1).sum()
    }
}

/// `(1 + excess, k * (1 + excess))`, where `excess` is the sum of
/// `multiplicity - 1` over all nodes.
pub fn bounds_from_parts(k: u64, excess: u64) -> (u64, u64) {
    let known = 1 + excess;
    (known, k * known)
}

/// Largest number of out-neighbors of `node` that can emit a common color.
pub fn out_multiplicity(model: &WeakModel, node: NodeIx) -> u64 {
    (0..model.color_count())
        .map(|c| model.successors(node).iter().filter(|&&w| model.emits(w, c)).count() as u64)
        .max()
        .unwrap_or(0)
        .max(1)
}

pub fn hypothesis_bound(model: &WeakModel) -> BoundReport {
    let k = (0..model.color_count()).map(|c| model.nodes_with_color(c).count() as u64).max().unwrap_or(0);
    let multiplicity: Vec<u64> = (0..model.node_count()).map(|v| out_multiplicity(model, v)).collect();
    let excess = multiplicity.iter().map(|m| m - 1).sum();
    let (bound_known_start, bound_unknown_start) = bounds_from_parts(k, excess);
    BoundReport {
        k,
        multiplicity,
        bound_known_start,
        bound_unknown_start,
        regime: classify_trackability(model).regime,
        strongly_connected: classify_nodes(model).is_strongly_connected(),
    }
}
