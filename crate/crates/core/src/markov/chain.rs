use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ColorIx, NodeIx, WeakModel};

/// Largest allowed deviation of a row sum from 1.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// A single-colored weak model with row-stochastic transition probabilities
/// whose support is exactly the edge set.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    model: WeakModel,
    /// Outgoing `(target, probability)`, ascending by target.
    rows: Vec<Vec<(NodeIx, f64)>>,
    /// Incoming `(source, log2 probability)`, ascending by source.
    incoming: Vec<Vec<(NodeIx, f64)>>,
}

impl MarkovChain {
    /// Uses the probabilities stored in the model.
    pub fn from_model(model: &WeakModel) -> Result<Self> {
        model.require_single_colored()?;
        let weights = model.edge_weights().ok_or(Error::NoProbabilities)?;
        let n = model.node_count();
        let mut rows: Vec<Vec<(NodeIx, f64)>> = vec![Vec::new(); n];
        for (&(u, v), &p) in model.edges().iter().zip(weights) {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::BadProbability {
                    from: model.node_name(u).to_string(),
                    to: model.node_name(v).to_string(),
                    prob: p,
                });
            }
            rows[u].push((v, p));
        }
        for (u, row) in rows.iter_mut().enumerate() {
            row.sort_unstable_by_key(|e| e.0);
            let sum: f64 = row.iter().map(|e| e.1).sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::RowSum { node: model.node_name(u).to_string(), sum });
            }
        }
        let mut incoming: Vec<Vec<(NodeIx, f64)>> = vec![Vec::new(); n];
        for (u, row) in rows.iter().enumerate() {
            for &(v, p) in row {
                incoming[v].push((u, p.log2()));
            }
        }
        Ok(MarkovChain { model: model.clone(), rows, incoming })
    }

    pub fn model(&self) -> &WeakModel {
        &self.model
    }

    pub fn node_count(&self) -> usize {
        self.model.node_count()
    }

    /// Outgoing transitions of `node` as `(target, probability)`.
    pub fn row(&self, node: NodeIx) -> &[(NodeIx, f64)] {
        &self.rows[node]
    }

    /// Incoming transitions of `node` as `(source, log2 probability)`.
    pub(crate) fn incoming(&self, node: NodeIx) -> &[(NodeIx, f64)] {
        &self.incoming[node]
    }

    /// `P(from -> to)`, zero off the edge set.
    pub fn prob(&self, from: NodeIx, to: NodeIx) -> f64 {
        self.rows[from].binary_search_by_key(&to, |e| e.0).map_or(0.0, |i| self.rows[from][i].1)
    }

    /// Probability of a node sequence given its first node.
    pub fn path_prob(&self, path: &[NodeIx]) -> f64 {
        path.windows(2).map(|w| self.prob(w[0], w[1])).product()
    }

    /// Samples `steps` nodes starting at `start` from stream 0 of `seed`.
    pub fn sample_traversal(&self, start: NodeIx, steps: usize, seed: u64) -> Traversal {
        self.sample_traversal_stream(start, steps, seed, 0)
    }

    /// Like [`sample_traversal`](Self::sample_traversal) but on an independent stream,
    /// so parallel traversals never share generator state.
    pub fn sample_traversal_stream(&self, start: NodeIx, steps: usize, seed: u64, stream: u64) -> Traversal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut nodes = Vec::with_capacity(steps);
        let mut cur = start;
        for t in 0..steps {
            if t > 0 {
                cur = self.next_node(cur, &mut rng);
            }
            nodes.push(cur);
        }
        let colors = nodes.iter().map(|&v| self.model.label(v)).collect();
        Traversal { nodes, colors, seed, stream }
    }

    fn next_node(&self, from: NodeIx, rng: &mut impl Rng) -> NodeIx {
        let row = &self.rows[from];
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for &(v, p) in row {
            acc += p;
            if u < acc {
                return v;
            }
        }
        row.last().expect("rows are non-empty").0
    }
}

/// Builds a chain from explicit `(from, to, probability)` entries, replacing
/// any probabilities already in the model.
pub fn attach_probabilities(model: &WeakModel, entries: &[(&str, &str, f64)]) -> Result<MarkovChain> {
    model.require_single_colored()?;
    let edges = model.edges();
    let mut weights: Vec<Option<f64>> = vec![None; edges.len()];
    for &(from, to, p) in entries {
        let (u, v) = (model.require_node(from)?, model.require_node(to)?);
        let Some(e) = edges.iter().position(|&x| x == (u, v)) else {
            return Err(Error::ProbabilityOnNonEdge(from.to_string(), to.to_string()));
        };
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::BadProbability { from: from.to_string(), to: to.to_string(), prob: p });
        }
        if weights[e].replace(p).is_some() {
            return Err(Error::DuplicateEdge(from.to_string(), to.to_string()));
        }
    }
    let weights = weights
        .into_iter()
        .zip(edges)
        .map(|(w, &(u, v))| {
            w.ok_or_else(|| Error::MissingProbability(model.node_name(u).to_string(), model.node_name(v).to_string()))
        })
        .collect::<Result<Vec<f64>>>()?;
    MarkovChain::from_model(&model.with_weights(Some(weights)))
}

/// A sampled run of the chain and its observed colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal {
    pub nodes: Vec<NodeIx>,
    pub colors: Vec<ColorIx>,
    pub seed: u64,
    pub stream: u64,
}
