//! Weak models: directed graphs whose nodes carry a non-empty set of colors.
//!
//! Nodes and colors are addressed by their position in declaration order
//! ([`NodeIx`], [`ColorIx`]). That order is canonical: every tie-break in the
//! crate prefers the lower index.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// Position of a node in declaration order.
pub type NodeIx = usize;
/// Position of a color in the palette.
pub type ColorIx = usize;

/// Separator between the original node id and the color in derived node ids.
pub const DERIVED_SEPARATOR: &str = "__";

#[derive(Debug, Clone, PartialEq)]
pub struct WeakModel {
    nodes: Vec<String>,
    palette: Vec<String>,
    coloring: Vec<Vec<ColorIx>>,
    edges: Vec<(NodeIx, NodeIx)>,
    weights: Option<Vec<f64>>,
    start: Option<NodeIx>,
    succ: Vec<Vec<NodeIx>>,
    pred: Vec<Vec<NodeIx>>,
    node_lookup: HashMap<String, NodeIx>,
    color_lookup: HashMap<String, ColorIx>,
}

impl WeakModel {
    pub fn builder() -> WeakModelBuilder {
        WeakModelBuilder::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn color_count(&self) -> usize {
        self.palette.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn palette(&self) -> &[String] {
        &self.palette
    }

    pub fn node_name(&self, node: NodeIx) -> &str {
        &self.nodes[node]
    }

    pub fn color_name(&self, color: ColorIx) -> &str {
        &self.palette[color]
    }

    pub fn node_index(&self, id: &str) -> Option<NodeIx> {
        self.node_lookup.get(id).copied()
    }

    pub fn color_index(&self, name: &str) -> Option<ColorIx> {
        self.color_lookup.get(name).copied()
    }

    /// Resolves a node id, reporting unknown ids as errors.
    pub fn require_node(&self, id: &str) -> Result<NodeIx> {
        self.node_index(id).ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Colors of `node` in declaration order.
    pub fn colors_of(&self, node: NodeIx) -> &[ColorIx] {
        &self.coloring[node]
    }

    /// The lumping function: the single color of `node`.
    ///
    /// On multi-colored nodes this returns the first declared color; callers
    /// that need the whole set use [`WeakModel::colors_of`].
    pub fn label(&self, node: NodeIx) -> ColorIx {
        self.coloring[node][0]
    }

    pub fn is_single_colored(&self) -> bool {
        self.coloring.iter().all(|c| c.len() == 1)
    }

    pub fn require_single_colored(&self) -> Result<()> {
        if self.is_single_colored() {
            Ok(())
        } else {
            Err(Error::MultiColored)
        }
    }

    /// True if `node` may emit `color`.
    pub fn emits(&self, node: NodeIx, color: ColorIx) -> bool {
        self.coloring[node].contains(&color)
    }

    /// True if the color sets of `u` and `v` intersect.
    pub fn shares_color(&self, u: NodeIx, v: NodeIx) -> bool {
        self.coloring[u].iter().any(|c| self.coloring[v].contains(c))
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> &[(NodeIx, NodeIx)] {
        &self.edges
    }

    /// Edge probabilities aligned with [`WeakModel::edges`], if the model has them.
    pub fn edge_weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn has_probabilities(&self) -> bool {
        self.weights.is_some()
    }

    /// Out-neighbors of `node`, ascending.
    pub fn successors(&self, node: NodeIx) -> &[NodeIx] {
        &self.succ[node]
    }

    /// In-neighbors of `node`, ascending.
    pub fn predecessors(&self, node: NodeIx) -> &[NodeIx] {
        &self.pred[node]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<NodeIx>] {
        &self.succ
    }

    pub fn has_edge(&self, from: NodeIx, to: NodeIx) -> bool {
        self.succ[from].binary_search(&to).is_ok()
    }

    pub fn start(&self) -> Option<NodeIx> {
        self.start
    }

    pub fn max_out_degree(&self) -> usize {
        self.succ.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn nodes_with_color(&self, color: ColorIx) -> impl Iterator<Item = NodeIx> + '_ {
        (0..self.nodes.len()).filter(move |&v| self.emits(v, color))
    }

    /// Parses a color sequence given as names.
    pub fn color_sequence<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<ColorIx>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.color_index(n).ok_or_else(|| Error::UnknownColor(n.to_string()))
            })
            .collect()
    }

    pub fn node_names(&self, path: &[NodeIx]) -> Vec<String> {
        path.iter().map(|&v| self.nodes[v].clone()).collect()
    }

    pub fn color_names(&self, colors: &[ColorIx]) -> Vec<String> {
        colors.iter().map(|&c| self.palette[c].clone()).collect()
    }

    /// Copy of this model with the start node replaced.
    pub fn with_start(&self, start: Option<NodeIx>) -> WeakModel {
        let mut m = self.clone();
        m.start = start;
        m
    }

    /// Copy of this model with edge probabilities replaced.
    pub(crate) fn with_weights(&self, weights: Option<Vec<f64>>) -> WeakModel {
        debug_assert!(weights.as_ref().is_none_or(|w| w.len() == self.edges.len()));
        let mut m = self.clone();
        m.weights = weights;
        m
    }
}

fn check_token(token: &str) -> Result<()> {
    if token.is_empty() || !token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::InvalidToken(token.to_string()));
    }
    Ok(())
}

/// Incremental constructor that enforces every model invariant.
#[derive(Debug, Default)]
pub struct WeakModelBuilder {
    nodes: Vec<String>,
    palette: Vec<String>,
    coloring: Vec<Vec<ColorIx>>,
    edges: Vec<(NodeIx, NodeIx, Option<f64>)>,
    edge_set: HashSet<(NodeIx, NodeIx)>,
    start: Option<NodeIx>,
    node_lookup: HashMap<String, NodeIx>,
    color_lookup: HashMap<String, ColorIx>,
    allow_reserved: bool,
}

impl WeakModelBuilder {
    /// Builder that accepts node ids containing [`DERIVED_SEPARATOR`].
    pub(crate) fn derived() -> Self {
        WeakModelBuilder { allow_reserved: true, ..Default::default() }
    }

    pub fn color(&mut self, name: &str) -> Result<ColorIx> {
        check_token(name)?;
        if name.starts_with('_') {
            return Err(Error::LeadingUnderscoreColor(name.to_string()));
        }
        if self.color_lookup.contains_key(name) {
            return Err(Error::DuplicateColor(name.to_string()));
        }
        let ix = self.palette.len();
        self.palette.push(name.to_string());
        self.color_lookup.insert(name.to_string(), ix);
        Ok(ix)
    }

    pub fn node<S: AsRef<str>>(&mut self, id: &str, colors: &[S]) -> Result<NodeIx> {
        check_token(id)?;
        if !self.allow_reserved && id.contains(DERIVED_SEPARATOR) {
            return Err(Error::ReservedSeparator(id.to_string()));
        }
        if self.node_lookup.contains_key(id) {
            return Err(Error::DuplicateNode(id.to_string()));
        }
        if colors.is_empty() {
            return Err(Error::EmptyColorSet(id.to_string()));
        }
        let mut set = Vec::with_capacity(colors.len());
        for c in colors {
            let c = c.as_ref();
            let ix = *self.color_lookup.get(c).ok_or_else(|| Error::UnknownColor(c.to_string()))?;
            if set.contains(&ix) {
                return Err(Error::DuplicateColor(c.to_string()));
            }
            set.push(ix);
        }
        let ix = self.nodes.len();
        self.nodes.push(id.to_string());
        self.coloring.push(set);
        self.node_lookup.insert(id.to_string(), ix);
        Ok(ix)
    }

    fn lookup(&self, id: &str) -> Result<NodeIx> {
        self.node_lookup.get(id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn edge(&mut self, from: &str, to: &str, prob: Option<f64>) -> Result<()> {
        let u = self.lookup(from)?;
        let v = self.lookup(to)?;
        if !self.edge_set.insert((u, v)) {
            return Err(Error::DuplicateEdge(from.to_string(), to.to_string()));
        }
        if let Some(p) = prob {
            if !(p.is_finite() && p > 0.0 && p <= 1.0) {
                return Err(Error::BadProbability { from: from.into(), to: to.into(), prob: p });
            }
        }
        self.edges.push((u, v, prob));
        Ok(())
    }

    pub fn start(&mut self, id: &str) -> Result<()> {
        self.start = Some(self.lookup(id)?);
        Ok(())
    }

    pub fn build(self) -> Result<WeakModel> {
        let with_prob = self.edges.iter().filter(|e| e.2.is_some()).count();
        if with_prob != 0 && with_prob != self.edges.len() {
            return Err(Error::PartialProbabilities);
        }
        let weights = (with_prob > 0).then(|| self.edges.iter().map(|e| e.2.unwrap()).collect());
        let n = self.nodes.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v, _) in &self.edges {
            succ[u].push(v);
            pred[v].push(u);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
        }
        Ok(WeakModel {
            nodes: self.nodes,
            palette: self.palette,
            coloring: self.coloring,
            edges: self.edges.iter().map(|&(u, v, _)| (u, v)).collect(),
            weights,
            start: self.start,
            succ,
            pred,
            node_lookup: self.node_lookup,
            color_lookup: self.color_lookup,
        })
    }
}
