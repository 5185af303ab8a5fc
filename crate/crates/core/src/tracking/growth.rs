use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ColorIx, NodeIx, WeakModel};

/// Largest number of color sequences the exhaustive search will consider.
pub const GROWTH_SEARCH_LIMIT: u64 = 10_000_000;

/// Worst-case hypothesis counts for every length up to a horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthProfile {
    /// `n[t-1]` is the largest hypothesis count over color sequences of length `t`.
    pub n: Vec<BigUint>,
    /// A sequence attaining `n[t-1]` (the first in color order). Empty if none is consistent.
    pub argmax: Vec<Vec<ColorIx>>,
}

impl GrowthProfile {
    pub fn horizon(&self) -> usize {
        self.n.len()
    }

    pub fn max(&self) -> BigUint {
        self.n.iter().max().cloned().unwrap_or_default()
    }
}

/// Exhaustive worst-case growth with an unknown start.
pub fn worst_case_growth(model: &WeakModel, t_max: usize) -> Result<GrowthProfile> {
    worst_case_growth_from(model, None, t_max)
}

/// Exhaustive worst-case growth from the given start nodes (all nodes if `None`).
///
/// Every color sequence is explored depth first; branches whose hypothesis
/// set becomes empty are cut, so the limit is on the nominal sequence count.
pub fn worst_case_growth_from(model: &WeakModel, starts: Option<&[NodeIx]>, t_max: usize) -> Result<GrowthProfile> {
    model.require_single_colored()?;
    let colors = model.color_count();
    let nominal = (colors as f64).powi(t_max.min(i32::MAX as usize) as i32);
    if nominal > GROWTH_SEARCH_LIMIT as f64 {
        return Err(Error::SearchTooLarge { colors, t_max, limit: GROWTH_SEARCH_LIMIT });
    }
    let mut allowed = vec![starts.is_none(); model.node_count()];
    for &s in starts.unwrap_or(&[]) {
        if s >= allowed.len() {
            return Err(Error::UnknownNode(format!("#{s}")));
        }
        allowed[s] = true;
    }
    if t_max == 0 {
        return Ok(GrowthProfile { n: Vec::new(), argmax: Vec::new() });
    }

    // Hypothesis counts never exceed n * d^(t-1).
    let n = model.node_count().max(1) as f64;
    let d = model.max_out_degree().max(1) as f64;
    let log_bound = n.log2() + d.log2() * (t_max - 1) as f64;
    if log_bound < 126.0 {
        run::<u128>(model, &allowed, t_max)
    } else {
        run::<BigUint>(model, &allowed, t_max)
    }
}

trait Tally: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + Send + Sync + Into<BigUint> {
    fn one() -> Self;
}

impl Tally for u128 {
    fn one() -> Self {
        1
    }
}

impl Tally for BigUint {
    fn one() -> Self {
        num_traits::One::one()
    }
}

struct Best<C> {
    n: Vec<C>,
    argmax: Vec<Vec<ColorIx>>,
}

impl<C: Tally> Best<C> {
    fn new(t_max: usize) -> Self {
        Best { n: vec![C::zero(); t_max], argmax: vec![Vec::new(); t_max] }
    }

    /// Keeps the earlier candidate on ties.
    fn absorb(&mut self, other: Best<C>) {
        for (t, (c, s)) in other.n.into_iter().zip(other.argmax).enumerate() {
            if c > self.n[t] {
                self.n[t] = c;
                self.argmax[t] = s;
            }
        }
    }
}

fn run<C: Tally>(model: &WeakModel, allowed: &[bool], t_max: usize) -> Result<GrowthProfile> {
    let results: Vec<Best<C>> = (0..model.color_count())
        .into_par_iter()
        .map(|c| {
            let mut best = Best::new(t_max);
            let frontier: Vec<(NodeIx, C)> =
                (0..model.node_count()).filter(|&v| allowed[v] && model.label(v) == c).map(|v| (v, C::one())).collect();
            if !frontier.is_empty() {
                let mut scratch = vec![None; model.node_count()];
                let mut seq = vec![c];
                explore(model, &frontier, t_max, &mut seq, &mut best, &mut scratch);
            }
            best
        })
        .collect();
    let mut best = Best::new(t_max);
    for r in results {
        best.absorb(r);
    }
    Ok(GrowthProfile { n: best.n.into_iter().map(Into::into).collect(), argmax: best.argmax })
}

fn explore<C: Tally>(
    model: &WeakModel,
    frontier: &[(NodeIx, C)],
    t_max: usize,
    seq: &mut Vec<ColorIx>,
    best: &mut Best<C>,
    scratch: &mut [Option<usize>],
) {
    let depth = seq.len();
    let mut total = C::zero();
    for (_, c) in frontier {
        total += c;
    }
    if total > best.n[depth - 1] {
        best.n[depth - 1] = total;
        best.argmax[depth - 1] = seq.clone();
    }
    if depth == t_max {
        return;
    }
    for color in 0..model.color_count() {
        let next = advance(model, frontier, color, scratch);
        if !next.is_empty() {
            seq.push(color);
            explore(model, &next, t_max, seq, best, scratch);
            seq.pop();
        }
    }
}

fn advance<C: Tally>(
    model: &WeakModel,
    frontier: &[(NodeIx, C)],
    color: ColorIx,
    slot: &mut [Option<usize>],
) -> Vec<(NodeIx, C)> {
    let mut next: Vec<(NodeIx, C)> = Vec::new();
    for (v, count) in frontier {
        for &w in model.successors(*v) {
            if model.label(w) != color {
                continue;
            }
            let i = *slot[w].get_or_insert_with(|| {
                next.push((w, C::zero()));
                next.len() - 1
            });
            next[i].1 += count;
        }
    }
    for (w, _) in &next {
        slot[*w] = None;
    }
    next.sort_unstable_by_key(|e| e.0);
    next
}
