use crate::error::Result;
use crate::model::{NodeIx, WeakModel};

/// Same-color product of a model with itself.
///
/// A walk through `(u, v)` pairs is a pair of equally long walks in the model
/// that permit the same color sequence.
#[derive(Debug, Clone)]
pub struct PairGraph {
    pairs: Vec<(NodeIx, NodeIx)>,
    index: Vec<Option<usize>>,
    succ: Vec<Vec<usize>>,
    n: usize,
}

impl PairGraph {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pair nodes in lexicographic (declaration) order.
    pub fn pairs(&self) -> &[(NodeIx, NodeIx)] {
        &self.pairs
    }

    pub fn pair(&self, p: usize) -> (NodeIx, NodeIx) {
        self.pairs[p]
    }

    pub fn index_of(&self, u: NodeIx, v: NodeIx) -> Option<usize> {
        self.index[u * self.n + v]
    }

    pub fn successors(&self, p: usize) -> &[usize] {
        &self.succ[p]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn is_diagonal(&self, p: usize) -> bool {
        let (u, v) = self.pairs[p];
        u == v
    }

    pub fn has_edge(&self, from: (NodeIx, NodeIx), to: (NodeIx, NodeIx)) -> bool {
        match (self.index_of(from.0, from.1), self.index_of(to.0, to.1)) {
            (Some(a), Some(b)) => self.succ[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

/// Builds the pair graph of a single-colored model.
pub fn pair_graph(model: &WeakModel) -> Result<PairGraph> {
    model.require_single_colored()?;
    let n = model.node_count();
    let mut pairs = Vec::new();
    let mut index = vec![None; n * n];
    for u in 0..n {
        for v in 0..n {
            if model.label(u) == model.label(v) {
                index[u * n + v] = Some(pairs.len());
                pairs.push((u, v));
            }
        }
    }
    let succ = pairs
        .iter()
        .map(|&(u, v)| {
            let mut out = Vec::new();
            for &u2 in model.successors(u) {
                for &v2 in model.successors(v) {
                    if let Some(q) = index[u2 * n + v2] {
                        out.push(q);
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    Ok(PairGraph { pairs, index, succ, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    fn ix(m: &WeakModel, a: &str, b: &str) -> (NodeIx, NodeIx) {
        (m.node_index(a).unwrap(), m.node_index(b).unwrap())
    }

    #[test]
    fn fig2a_contains_branching_pair() {
        let m = fixtures::fig2a();
        let g = pair_graph(&m).unwrap();
        assert!(g.index_of(1, 2).is_some());
        assert!(g.has_edge(ix(&m, "x", "x"), ix(&m, "r1", "r2")));
        assert!(g.has_edge(ix(&m, "r1", "r2"), ix(&m, "x", "x")));
    }

    #[test]
    fn single_self_loop() {
        let m = crate::format::parse_model("weakmodel v1\ncolors B\nnode a B\nedge a a\n").unwrap();
        let g = pair_graph(&m).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn fig5a_pair_b_e() {
        let m = fixtures::fig5a();
        let g = pair_graph(&m).unwrap();
        assert!(g.has_edge(ix(&m, "a", "a"), ix(&m, "b", "e")));
    }

    #[test]
    fn diagonal_closure_and_symmetry() {
        for (name, m) in fixtures::all() {
            let Ok(g) = pair_graph(&m) else { continue };
            for u in 0..m.node_count() {
                assert!(g.index_of(u, u).is_some(), "{name}");
                for &w in m.successors(u) {
                    assert!(g.has_edge((u, u), (w, w)), "{name}");
                }
            }
            for &(u, v) in g.pairs() {
                assert!(g.index_of(v, u).is_some(), "{name}");
            }
        }
    }

    #[test]
    fn rejects_multi_colored() {
        assert!(matches!(pair_graph(&fixtures::fig1()), Err(Error::MultiColored)));
    }
}
