//! Splitting multi-colored nodes into one single-colored node per color.

use crate::model::{ColorIx, NodeIx, WeakModel, WeakModelBuilder, DERIVED_SEPARATOR};

/// Correspondence between an original model and its single-colored form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMapping {
    forward: Vec<Vec<NodeIx>>,
    backward: Vec<(NodeIx, ColorIx)>,
    start_candidates: Vec<NodeIx>,
}

impl NodeMapping {
    /// Derived nodes of `original`, one per color in declaration order.
    pub fn derived_of(&self, original: NodeIx) -> &[NodeIx] {
        &self.forward[original]
    }

    /// The `(original node, color)` pair a derived node stands for.
    pub fn origin(&self, derived: NodeIx) -> (NodeIx, ColorIx) {
        self.backward[derived]
    }

    pub fn original_of(&self, derived: NodeIx) -> NodeIx {
        self.backward[derived].0
    }

    pub fn derived(&self, original: NodeIx, color: ColorIx) -> Option<NodeIx> {
        self.forward[original].iter().copied().find(|&d| self.backward[d].1 == color)
    }

    /// Derived nodes standing for the original start node (empty if none).
    pub fn start_candidates(&self) -> &[NodeIx] {
        &self.start_candidates
    }

    pub fn map_back(&self, path: &[NodeIx]) -> Vec<NodeIx> {
        path.iter().map(|&d| self.original_of(d)).collect()
    }

    pub fn derived_count(&self) -> usize {
        self.backward.len()
    }
}

/// Replaces every node with `k > 1` colors by `k` nodes named
/// `<id>__<color>`, each inheriting all in- and out-edges of the original.
/// Single-colored nodes keep their id.
///
/// The start node carries over when it is single-colored; otherwise the
/// derived model has no start and the candidates are kept in the mapping.
/// Edge probabilities are kept only when no node had to be split.
pub fn to_single_colored(model: &WeakModel) -> (WeakModel, NodeMapping) {
    let mut b = WeakModelBuilder::derived();
    for c in model.palette() {
        b.color(c).expect("palette already validated");
    }

    let mut forward = vec![Vec::new(); model.node_count()];
    let mut backward = Vec::new();
    let mut names = Vec::new();
    for v in 0..model.node_count() {
        let colors = model.colors_of(v);
        for &c in colors {
            let name = if colors.len() == 1 {
                model.node_name(v).to_string()
            } else {
                format!("{}{}{}", model.node_name(v), DERIVED_SEPARATOR, model.color_name(c))
            };
            b.node(&name, &[model.color_name(c)]).expect("derived ids are unique");
            forward[v].push(backward.len());
            backward.push((v, c));
            names.push(name);
        }
    }

    let keep_weights = model.is_single_colored();
    let weights = model.edge_weights();
    for (i, &(u, v)) in model.edges().iter().enumerate() {
        let prob = if keep_weights { weights.map(|w| w[i]) } else { None };
        for &du in &forward[u] {
            for &dv in &forward[v] {
                b.edge(&names[du], &names[dv], prob).expect("derived edges are unique");
            }
        }
    }

    let mut start_candidates = Vec::new();
    if let Some(s) = model.start() {
        start_candidates = forward[s].clone();
        if start_candidates.len() == 1 {
            b.start(&names[start_candidates[0]]).expect("start was declared");
        }
    }

    let derived = b.build().expect("derived model is valid");
    (derived, NodeMapping { forward, backward, start_candidates })
}
