use crate::error::{Error, Result};
use crate::model::{NodeIx, WeakModel};

pub const AUTOMORPHISM_NODE_LIMIT: usize = 12;

/// Size of the automorphism group and a strong generating set for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphisms {
    pub count: u64,
    /// Each generator maps node `i` to `generator[i]`.
    pub generators: Vec<Vec<NodeIx>>,
}

/// Counts permutations that preserve edges (in both directions) and color sets.
///
/// Walks the stabilizer chain of the base `0, 1, ..., n-1`: the group order is
/// the product of the orbit sizes of node `i` under the pointwise stabilizer
/// of `0..i`. Each orbit member is found by a backtracking search.
pub fn automorphism_count(model: &WeakModel) -> Result<Automorphisms> {
    let n = model.node_count();
    if n > AUTOMORPHISM_NODE_LIMIT {
        return Err(Error::TooLarge { nodes: n, limit: AUTOMORPHISM_NODE_LIMIT });
    }
    let search = Search::new(model);
    let mut count = 1u64;
    let mut generators = Vec::new();
    for i in 0..n {
        let mut orbit = 1u64;
        for w in i + 1..n {
            let mut image = vec![usize::MAX; n];
            let mut used = vec![false; n];
            for j in 0..i {
                image[j] = j;
                used[j] = true;
            }
            if !search.compatible(i, w) || !search.consistent(&image, i, w) {
                continue;
            }
            image[i] = w;
            used[w] = true;
            if search.extend(&mut image, &mut used, i + 1) {
                orbit += 1;
                generators.push(image);
            }
        }
        count *= orbit;
    }
    Ok(Automorphisms { count, generators })
}

struct Search<'a> {
    model: &'a WeakModel,
    signature: Vec<(Vec<usize>, usize, usize, bool)>,
}

impl<'a> Search<'a> {
    fn new(model: &'a WeakModel) -> Self {
        let signature = (0..model.node_count())
            .map(|v| {
                let mut colors = model.colors_of(v).to_vec();
                colors.sort_unstable();
                (colors, model.successors(v).len(), model.predecessors(v).len(), model.has_edge(v, v))
            })
            .collect();
        Search { model, signature }
    }

    fn compatible(&self, u: NodeIx, w: NodeIx) -> bool {
        self.signature[u] == self.signature[w]
    }

    /// Would mapping `u -> w` agree with every already-mapped node?
    fn consistent(&self, image: &[usize], u: NodeIx, w: NodeIx) -> bool {
        let m = self.model;
        image
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != usize::MAX)
            .all(|(x, &fx)| m.has_edge(u, x) == m.has_edge(w, fx) && m.has_edge(x, u) == m.has_edge(fx, w))
    }

    fn extend(&self, image: &mut Vec<usize>, used: &mut Vec<bool>, from: usize) -> bool {
        let n = image.len();
        let Some(u) = (from..n).find(|&u| image[u] == usize::MAX) else {
            return true;
        };
        for w in 0..n {
            if used[w] || !self.compatible(u, w) || !self.consistent(image, u, w) {
                continue;
            }
            image[u] = w;
            used[w] = true;
            if self.extend(image, used, u + 1) {
                return true;
            }
            image[u] = usize::MAX;
            used[w] = false;
        }
        false
    }
}
