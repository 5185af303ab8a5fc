use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{ColorIx, NodeIx, WeakModel};

/// One node of a trellis layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub node: NodeIx,
    /// Number of hypotheses ending at `node` at this time.
    pub count: BigUint,
    /// Nodes of the previous layer with an edge into `node`, ascending.
    pub predecessors: Vec<NodeIx>,
}

/// Nodes consistent with the colors seen so far at one time step, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub entries: Vec<Entry>,
}

impl Layer {
    pub fn total(&self) -> BigUint {
        self.entries.iter().map(|e| &e.count).sum()
    }

    pub fn get(&self, node: NodeIx) -> Option<&Entry> {
        self.entries.binary_search_by_key(&node, |e| e.node).ok().map(|i| &self.entries[i])
    }

    fn position(&self, node: NodeIx) -> Option<usize> {
        self.entries.binary_search_by_key(&node, |e| e.node).ok()
    }
}

/// Result of [`Trellis::enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub sequences: Vec<Vec<NodeIx>>,
    /// True if more hypotheses exist than were returned.
    pub truncated: bool,
}

/// Exact online representation of the hypothesis set for a single-colored model.
///
/// Each step keeps, per consistent node, the number of hypotheses ending there
/// and the predecessors they can come from. Full node sequences are rebuilt on
/// demand by [`Trellis::enumerate`].
#[derive(Debug, Clone)]
pub struct Trellis<'m> {
    model: &'m WeakModel,
    allowed_start: Vec<bool>,
    layers: Vec<Layer>,
    dropped: usize,
    horizon: Option<usize>,
    observed: Vec<ColorIx>,
    dead: bool,
}

impl<'m> Trellis<'m> {
    /// Starts tracking from `start`, or from any node if `None`.
    pub fn new(model: &'m WeakModel, start: Option<&str>) -> Result<Self> {
        let starts = match start {
            Some(id) => vec![model.require_node(id)?],
            None => (0..model.node_count()).collect(),
        };
        Self::with_starts(model, &starts)
    }

    pub fn with_starts(model: &'m WeakModel, starts: &[NodeIx]) -> Result<Self> {
        model.require_single_colored()?;
        let mut allowed_start = vec![false; model.node_count()];
        for &s in starts {
            *allowed_start.get_mut(s).ok_or_else(|| Error::UnknownNode(format!("#{s}")))? = true;
        }
        Ok(Trellis {
            model,
            allowed_start,
            layers: Vec::new(),
            dropped: 0,
            horizon: None,
            observed: Vec::new(),
            dead: false,
        })
    }

    /// Counting-only mode: keep at most `horizon` layers (at least one).
    /// Enumeration becomes unavailable once a layer has been dropped.
    pub fn counting_only(mut self, horizon: usize) -> Self {
        self.horizon = Some(horizon.max(1));
        self
    }

    pub fn model(&self) -> &'m WeakModel {
        self.model
    }

    pub fn allowed_starts(&self) -> Vec<NodeIx> {
        (0..self.allowed_start.len()).filter(|&v| self.allowed_start[v]).collect()
    }

    pub fn observed(&self) -> &[ColorIx] {
        &self.observed
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    pub fn is_dead(&self) -> bool {
        self.dead
    }

    /// Retained layers; the first one is for time `dropped_layers() + 1`.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn dropped_layers(&self) -> usize {
        self.dropped
    }

    pub fn last_layer(&self) -> Option<&Layer> {
        self.layers.last()
    }

    pub fn step_named(&mut self, color: &str) -> Result<()> {
        let c = self.model.color_index(color).ok_or_else(|| Error::UnknownColor(color.to_string()))?;
        self.step(c)
    }

    /// Consumes one observed color.
    pub fn step(&mut self, color: ColorIx) -> Result<()> {
        if color >= self.model.color_count() {
            return Err(Error::UnknownColor(format!("#{color}")));
        }
        let layer = if self.dead {
            Layer::default()
        } else if let Some(prev) = self.layers.last().filter(|_| !self.observed.is_empty()) {
            self.advance(prev, color)
        } else {
            let entries = (0..self.model.node_count())
                .filter(|&v| self.allowed_start[v] && self.model.label(v) == color)
                .map(|v| Entry { node: v, count: BigUint::one(), predecessors: Vec::new() })
                .collect();
            Layer { entries }
        };
        self.dead = layer.entries.is_empty();
        self.observed.push(color);
        self.layers.push(layer);
        if let Some(h) = self.horizon {
            while self.layers.len() > h {
                self.layers.remove(0);
                self.dropped += 1;
            }
        }
        Ok(())
    }

    fn advance(&self, prev: &Layer, color: ColorIx) -> Layer {
        let n = self.model.node_count();
        let mut slot: Vec<Option<usize>> = vec![None; n];
        let mut entries: Vec<Entry> = Vec::new();
        for e in &prev.entries {
            for &s in self.model.successors(e.node) {
                if self.model.label(s) != color {
                    continue;
                }
                let i = *slot[s].get_or_insert_with(|| {
                    entries.push(Entry { node: s, count: BigUint::zero(), predecessors: Vec::new() });
                    entries.len() - 1
                });
                entries[i].count += &e.count;
                entries[i].predecessors.push(e.node);
            }
        }
        entries.sort_unstable_by_key(|e| e.node);
        Layer { entries }
    }

    /// Exact number of hypotheses consistent with the observed colors.
    pub fn hypothesis_count(&self) -> BigUint {
        match self.layers.last() {
            Some(l) if !self.dead => l.total(),
            _ => BigUint::zero(),
        }
    }

    /// Up to `cap` hypotheses in lexicographic declaration order.
    pub fn enumerate(&self, cap: usize) -> Result<Enumeration> {
        if self.dropped > 0 {
            return Err(Error::EnumerationUnavailable);
        }
        let total = self.hypothesis_count();
        if total.is_zero() || cap == 0 {
            return Ok(Enumeration { sequences: Vec::new(), truncated: !total.is_zero() });
        }
        let t_len = self.layers.len();

        // Nodes that lie on some complete hypothesis.
        let mut alive: Vec<Vec<bool>> = self.layers.iter().map(|l| vec![false; l.entries.len()]).collect();
        alive[t_len - 1].iter_mut().for_each(|a| *a = true);
        for t in (1..t_len).rev() {
            for (j, e) in self.layers[t].entries.iter().enumerate() {
                if alive[t][j] {
                    for &p in &e.predecessors {
                        let i = self.layers[t - 1].position(p).expect("predecessor in previous layer");
                        alive[t - 1][i] = true;
                    }
                }
            }
        }
        // Forward links between alive entries, ascending by node.
        let mut forward: Vec<Vec<Vec<usize>>> = self.layers.iter().map(|l| vec![Vec::new(); l.entries.len()]).collect();
        for t in 1..t_len {
            for (j, e) in self.layers[t].entries.iter().enumerate() {
                if alive[t][j] {
                    for &p in &e.predecessors {
                        let i = self.layers[t - 1].position(p).expect("predecessor in previous layer");
                        forward[t - 1][i].push(j);
                    }
                }
            }
        }

        let mut sequences = Vec::new();
        let mut path: Vec<usize> = Vec::with_capacity(t_len);
        let mut cursor: Vec<usize> = Vec::with_capacity(t_len);
        let roots: Vec<usize> = (0..alive[0].len()).filter(|&i| alive[0][i]).collect();
        let mut root = 0;
        'outer: while root < roots.len() {
            path.clear();
            cursor.clear();
            path.push(roots[root]);
            cursor.push(0);
            while let Some(&top) = path.last() {
                let depth = path.len() - 1;
                if depth + 1 == t_len {
                    sequences.push(path.iter().enumerate().map(|(t, &i)| self.layers[t].entries[i].node).collect());
                    if sequences.len() == cap {
                        break 'outer;
                    }
                    path.pop();
                    cursor.pop();
                    continue;
                }
                let k = cursor[depth];
                if let Some(&next) = forward[depth][top].get(k) {
                    cursor[depth] += 1;
                    path.push(next);
                    cursor.push(0);
                } else {
                    path.pop();
                    cursor.pop();
                }
            }
            root += 1;
        }
        let truncated = BigUint::from(sequences.len()) < total;
        Ok(Enumeration { sequences, truncated })
    }
}
