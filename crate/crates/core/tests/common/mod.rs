//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weakmodel::markov::MarkovChain;
use weakmodel::structure::Regime;
use weakmodel::{ColorIx, NodeIx, WeakModel};

/// Random single-colored model. Every node gets at least one out-edge.
/// With `probabilities`, rows are random and normalized.
pub fn random_model(seed: u64, nodes: (usize, usize), colors: (usize, usize), probabilities: bool) -> WeakModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(nodes.0..=nodes.1);
    let k = rng.gen_range(colors.0..=colors.1);
    let density = rng.gen_range(0.15..0.45);
    let mut b = WeakModel::builder();
    for c in 0..k {
        b.color(&format!("C{c}")).unwrap();
    }
    for v in 0..n {
        b.node(&format!("n{v}"), &[format!("C{}", rng.gen_range(0..k))]).unwrap();
    }
    for u in 0..n {
        let mut targets: Vec<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        if targets.is_empty() {
            targets.push(rng.gen_range(0..n));
        }
        let weights: Vec<f64> = targets.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for (&v, w) in targets.iter().zip(weights) {
            let p = probabilities.then_some(w / total);
            b.edge(&format!("n{u}"), &format!("n{v}"), p).unwrap();
        }
    }
    b.build().unwrap()
}

/// Every node path consistent with `colors`, in lexicographic order.
pub fn brute_paths(m: &WeakModel, colors: &[ColorIx], start: Option<NodeIx>) -> Vec<Vec<NodeIx>> {
    fn extend(m: &WeakModel, colors: &[ColorIx], path: &mut Vec<NodeIx>, out: &mut Vec<Vec<NodeIx>>) {
        if path.len() == colors.len() {
            out.push(path.clone());
            return;
        }
        let last = *path.last().unwrap();
        for &w in m.successors(last) {
            if m.label(w) == colors[path.len()] {
                path.push(w);
                extend(m, colors, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if colors.is_empty() {
        return out;
    }
    for v in 0..m.node_count() {
        if start.is_none_or(|s| s == v) && m.label(v) == colors[0] {
            extend(m, colors, &mut vec![v], &mut out);
        }
    }
    out
}

/// All color sequences of length `len` over `k` colors, in lexicographic order.
pub fn color_sequences(k: usize, len: usize) -> Vec<Vec<ColorIx>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..k).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Prior of the decoding routines: the start node, or uniform over nodes of the first color.
pub fn prior(m: &WeakModel, first: ColorIx, start: Option<NodeIx>, v: NodeIx) -> f64 {
    if m.label(v) != first {
        return 0.0;
    }
    match start {
        Some(s) => f64::from(u8::from(s == v)),
        None => 1.0 / (0..m.node_count()).filter(|&u| m.label(u) == first).count() as f64,
    }
}

/// Joint probability of a node path (including its prior).
pub fn path_probability(c: &MarkovChain, path: &[NodeIx], colors: &[ColorIx], start: Option<NodeIx>) -> f64 {
    prior(c.model(), colors[0], start, path[0]) * path.windows(2).map(|w| c.prob(w[0], w[1])).product::<f64>()
}

/// Two distinct closed walks at a common node with one color sequence.
///
/// Breadth-first search over walk-count vectors from each node, with counts
/// saturated at 2. The state space is finite, so the search is exhaustive.
pub fn has_intersecting_cycles(m: &WeakModel) -> bool {
    let n = m.node_count();
    for u in 0..n {
        let mut init = vec![0u8; n];
        init[u] = 1;
        let mut seen = HashSet::from([init.clone()]);
        let mut queue = VecDeque::from([init]);
        while let Some(state) = queue.pop_front() {
            for c in 0..m.color_count() {
                let mut next = vec![0u8; n];
                for v in 0..n {
                    if state[v] == 0 {
                        continue;
                    }
                    for &w in m.successors(v) {
                        if m.label(w) == c {
                            next[w] = (next[w] + state[v]).min(2);
                        }
                    }
                }
                if next[u] == 2 {
                    return true;
                }
                if next.iter().any(|&x| x > 0) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// Distinct nodes `a`, `b` and one color sequence permitting walks `a -> a`,
/// `a -> b` and `b -> b`. Exhaustive search over pairs of reachable sets.
pub fn has_fork(m: &WeakModel) -> bool {
    let n = m.node_count();
    assert!(n <= 64);
    let step = |set: u64, c: ColorIx| -> u64 {
        let mut out = 0u64;
        for v in 0..n {
            if set >> v & 1 == 1 {
                for &w in m.successors(v) {
                    if m.label(w) == c {
                        out |= 1 << w;
                    }
                }
            }
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            if a == b || m.label(a) != m.label(b) {
                continue;
            }
            let init = (1u64 << a, 1u64 << b);
            let mut seen = HashSet::from([init]);
            let mut queue = VecDeque::from([init]);
            while let Some((sa, sb)) = queue.pop_front() {
                for c in 0..m.color_count() {
                    let next = (step(sa, c), step(sb, c));
                    if next.0 >> a & 1 == 1 && next.0 >> b & 1 == 1 && next.1 >> b & 1 == 1 {
                        return true;
                    }
                    if next.0 != 0 && seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    false
}

/// Regime from exhaustive certificate search.
pub fn oracle_regime(m: &WeakModel) -> Regime {
    if has_intersecting_cycles(m) {
        Regime::Untrackable
    } else if has_fork(m) {
        Regime::TrackableUnboundedPoly
    } else {
        Regime::TrackableBounded
    }
}

/// Worst-case growth profile up to `t_max` by explicit enumeration of every
/// color sequence, counting paths with the brute-force walker.
pub fn brute_growth(m: &WeakModel, t_max: usize) -> Vec<usize> {
    let n = m.node_count();
    let mut best = vec![0usize; t_max];
    // Frontier of per-node path counts, extended one color at a time.
    fn go(m: &WeakModel, counts: &[usize], depth: usize, best: &mut [usize]) {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return;
        }
        best[depth - 1] = best[depth - 1].max(total);
        if depth == best.len() {
            return;
        }
        for c in 0..m.color_count() {
            let mut next = vec![0usize; counts.len()];
            for (v, &k) in counts.iter().enumerate() {
                if k > 0 {
                    for &w in m.successors(v) {
                        if m.label(w) == c {
                            next[w] += k;
                        }
                    }
                }
            }
            go(m, &next, depth + 1, best);
        }
    }
    for c in 0..m.color_count() {
        let counts: Vec<usize> = (0..n).map(|v| usize::from(m.label(v) == c)).collect();
        go(m, &counts, 1, &mut best);
    }
    best
}
