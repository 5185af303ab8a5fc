//! Growth-regime classification with checkable witnesses.
//!
//! * Untrackable: some SCC of the pair graph mixes a diagonal node `(u, u)` with
//!   an off-diagonal one. Walking that SCC from `(u, u)` back to itself gives two
//!   distinct closed walks at `u` that permit the same colors.
//! * Unbounded polynomial: there are nodes `a != b` and a color word `w` with
//!   `a -w-> a`, `a -w-> b` and `b -w-> b`. This is searched for as a path from
//!   `(a, a, b)` to `(a, b, b)` in the same-color triple product.
//! * Bounded otherwise.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::graph::{bfs_distances, reachable, reverse, strongly_connected};
use crate::model::{ColorIx, NodeIx, WeakModel};
use crate::structure::pair::{pair_graph, PairGraph};
use crate::transform::to_single_colored;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Untrackable,
    TrackableBounded,
    TrackableUnboundedPoly,
}

impl Regime {
    pub fn is_trackable(self) -> bool {
        self != Regime::Untrackable
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Untrackable => "Untrackable",
            Regime::TrackableBounded => "TrackableBounded",
            Regime::TrackableUnboundedPoly => "TrackableUnboundedPoly",
        })
    }
}

/// Two closed walks of equal length through a common node, permitting the
/// same color sequence and differing somewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePair {
    pub first: Vec<String>,
    pub second: Vec<String>,
    /// Color emitted at each position of both walks.
    pub colors: Vec<String>,
}

/// Cycles `first_cycle` at `a` and `second_cycle` at `b != a`, plus a
/// `bridge` walk from `a` to `b`, all of the same length and colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkWitness {
    pub first_cycle: Vec<String>,
    pub second_cycle: Vec<String>,
    pub bridge: Vec<String>,
    pub colors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    IntersectingCycles(CyclePair),
    Fork(ForkWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackabilityReport {
    pub regime: Regime,
    pub witness: Option<Witness>,
}

impl TrackabilityReport {
    pub fn cycle_pair(&self) -> Option<&CyclePair> {
        match &self.witness {
            Some(Witness::IntersectingCycles(c)) => Some(c),
            _ => None,
        }
    }

    pub fn fork(&self) -> Option<&ForkWitness> {
        match &self.witness {
            Some(Witness::Fork(f)) => Some(f),
            _ => None,
        }
    }
}

fn resolve(model: &WeakModel, ids: &[String]) -> Result<Vec<NodeIx>, String> {
    ids.iter().map(|id| model.node_index(id).ok_or_else(|| format!("unknown node `{id}`"))).collect()
}

fn check_walk(model: &WeakModel, walk: &[NodeIx], colors: &[ColorIx], what: &str) -> Result<(), String> {
    for w in walk.windows(2) {
        if !model.has_edge(w[0], w[1]) {
            return Err(format!("{what}: no edge `{}` -> `{}`", model.node_name(w[0]), model.node_name(w[1])));
        }
    }
    for (i, (&v, &c)) in walk.iter().zip(colors).enumerate() {
        if !model.emits(v, c) {
            return Err(format!("{what}: `{}` cannot emit color at position {i}", model.node_name(v)));
        }
    }
    Ok(())
}

fn resolve_colors(model: &WeakModel, colors: &[String]) -> Result<Vec<usize>, String> {
    model.color_sequence(colors).map_err(|e| e.to_string())
}

impl CyclePair {
    /// Number of steps in each walk.
    pub fn len(&self) -> usize {
        self.first.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Verifies the witness against `model` without trusting the classifier.
    pub fn check(&self, model: &WeakModel) -> Result<(), String> {
        let a = resolve(model, &self.first)?;
        let b = resolve(model, &self.second)?;
        let colors = resolve_colors(model, &self.colors)?;
        if a.len() != b.len() || a.len() != colors.len() {
            return Err("walks and colors differ in length".into());
        }
        if a.len() < 2 {
            return Err("walks must take at least one step".into());
        }
        if a[0] != a[a.len() - 1] || b[0] != b[b.len() - 1] {
            return Err("walks are not closed".into());
        }
        check_walk(model, &a, &colors, "first walk")?;
        check_walk(model, &b, &colors, "second walk")?;
        if !a.iter().zip(&b).any(|(x, y)| x == y) {
            return Err("walks never meet".into());
        }
        if a == b {
            return Err("walks are identical".into());
        }
        Ok(())
    }
}

impl ForkWitness {
    /// Checks the cycle/cycle/bridge conditions against `model`.
    pub fn check(&self, model: &WeakModel) -> Result<(), String> {
        let p1 = resolve(model, &self.first_cycle)?;
        let p2 = resolve(model, &self.second_cycle)?;
        let p3 = resolve(model, &self.bridge)?;
        let colors = resolve_colors(model, &self.colors)?;
        let len = p1.len();
        if len < 2 || p2.len() != len || p3.len() != len || colors.len() != len {
            return Err("paths must share a length of at least two nodes".into());
        }
        check_walk(model, &p1, &colors, "first cycle")?;
        check_walk(model, &p2, &colors, "second cycle")?;
        check_walk(model, &p3, &colors, "bridge")?;
        let t = len - 1;
        let (a, b) = (p1[0], p2[0]);
        if p1[t] != a {
            return Err("first cycle is not closed".into());
        }
        if p2[t] != b {
            return Err("second cycle is not closed".into());
        }
        if a == b {
            return Err("cycles start at the same node".into());
        }
        if p3[0] != a || p3[t] != b {
            return Err("bridge does not join the cycles".into());
        }
        Ok(())
    }
}

enum IxWitness {
    Cycles(Vec<NodeIx>, Vec<NodeIx>),
    Fork(Vec<NodeIx>, Vec<NodeIx>, Vec<NodeIx>),
}

/// Classifies the hypothesis-growth regime of `model`.
///
/// Multi-colored models are analyzed through their single-colored form and
/// witnesses are reported with the original node ids.
pub fn classify_trackability(model: &WeakModel) -> TrackabilityReport {
    if model.is_single_colored() {
        let (regime, w) = classify_single(model);
        let name = |v: NodeIx| model.node_name(v).to_string();
        return report(model, regime, w, name);
    }
    let (derived, mapping) = to_single_colored(model);
    let (regime, w) = classify_single(&derived);
    let name = |v: NodeIx| model.node_name(mapping.original_of(v)).to_string();
    report(&derived, regime, w, name)
}

fn report(
    single: &WeakModel,
    regime: Regime,
    witness: Option<IxWitness>,
    name: impl Fn(NodeIx) -> String,
) -> TrackabilityReport {
    let names = |p: &[NodeIx]| p.iter().map(|&v| name(v)).collect::<Vec<_>>();
    let colors = |p: &[NodeIx]| p.iter().map(|&v| single.color_name(single.label(v)).to_string()).collect::<Vec<_>>();
    let witness = witness.map(|w| match w {
        IxWitness::Cycles(a, b) => {
            Witness::IntersectingCycles(CyclePair { first: names(&a), second: names(&b), colors: colors(&a) })
        }
        IxWitness::Fork(p1, p2, p3) => Witness::Fork(ForkWitness {
            first_cycle: names(&p1),
            second_cycle: names(&p2),
            bridge: names(&p3),
            colors: colors(&p1),
        }),
    });
    TrackabilityReport { regime, witness }
}

fn classify_single(model: &WeakModel) -> (Regime, Option<IxWitness>) {
    let g = pair_graph(model).expect("single-colored");
    let adj = g.adjacency();
    let comps = strongly_connected(adj);

    let offending = comps
        .members
        .iter()
        .position(|members| members.iter().any(|&p| g.is_diagonal(p)) && members.iter().any(|&p| !g.is_diagonal(p)));
    if let Some(c) = offending {
        let inside = |p: usize| comps.component_of[p] == c;
        let (a, b) = shortest_mixed_cycle(&g, &comps.members[c], inside);
        return (Regime::Untrackable, Some(IxWitness::Cycles(a, b)));
    }

    let n = model.node_count();
    let mut from_diag: Vec<Option<Vec<bool>>> = vec![None; n];
    for (p, &(x, y)) in g.pairs().iter().enumerate() {
        if x == y || !comps.is_cyclic(comps.component_of[p], adj) {
            continue;
        }
        let reach = from_diag[x].get_or_insert_with(|| reachable(adj, &[g.index_of(x, x).expect("diagonal pair")]));
        if !reach[p] {
            continue;
        }
        if let Some((p1, p3, p2)) = fork_paths(model, x, y) {
            return (Regime::TrackableUnboundedPoly, Some(IxWitness::Fork(p1, p2, p3)));
        }
    }
    (Regime::TrackableBounded, None)
}

/// Shortest closed walk inside one pair-graph SCC that starts at a diagonal
/// node and passes through an off-diagonal one, split into its two coordinates.
fn shortest_mixed_cycle(
    g: &PairGraph,
    members: &[usize],
    inside: impl Fn(usize) -> bool + Copy,
) -> (Vec<NodeIx>, Vec<NodeIx>) {
    let adj = g.adjacency();
    let rev = reverse(adj);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for &d in members.iter().filter(|&&p| g.is_diagonal(p)) {
        let (df, pf) = bfs_distances(adj, &[d], inside);
        let (db, pb) = bfs_distances(&rev, &[d], inside);
        for &o in members.iter().filter(|&&p| !g.is_diagonal(p)) {
            let total = df[o] + db[o];
            if best.as_ref().is_none_or(|(len, _)| total < *len) {
                let mut walk = vec![o];
                let mut x = o;
                while x != d {
                    x = pf[x];
                    walk.push(x);
                }
                walk.reverse();
                let mut x = o;
                while x != d {
                    x = pb[x];
                    walk.push(x);
                }
                best = Some((total, walk));
            }
        }
    }
    let (_, walk) = best.expect("component holds both kinds of pair");
    walk.iter().map(|&p| g.pair(p)).unzip()
}

/// BFS over same-color triples from `(a, a, b)` to `(a, b, b)`. Returns the
/// three coordinate walks: the cycle at `a`, the bridge, the cycle at `b`.
fn fork_paths(model: &WeakModel, a: NodeIx, b: NodeIx) -> Option<(Vec<NodeIx>, Vec<NodeIx>, Vec<NodeIx>)> {
    type Triple = (NodeIx, NodeIx, NodeIx);
    let start: Triple = (a, a, b);
    let target: Triple = (a, b, b);
    let mut parent: HashMap<Triple, Triple> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, start);
    while let Some((x, y, z)) = queue.pop_front() {
        for &x2 in model.successors(x) {
            let c = model.label(x2);
            for &y2 in model.successors(y).iter().filter(|&&v| model.label(v) == c) {
                for &z2 in model.successors(z).iter().filter(|&&v| model.label(v) == c) {
                    let next = (x2, y2, z2);
                    if next == target {
                        let mut walk = vec![next];
                        let mut cur = (x, y, z);
                        walk.push(cur);
                        while cur != start {
                            cur = parent[&cur];
                            walk.push(cur);
                        }
                        walk.reverse();
                        let p1 = walk.iter().map(|t| t.0).collect();
                        let p3 = walk.iter().map(|t| t.1).collect();
                        let p2 = walk.iter().map(|t| t.2).collect();
                        return Some((p1, p3, p2));
                    }
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                        e.insert((x, y, z));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}
