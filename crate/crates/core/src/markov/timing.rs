use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{reachable, reverse};
use crate::markov::chain::MarkovChain;
use crate::model::NodeIx;
use crate::structure::classify_nodes;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingKind {
    /// Expected steps until entering a recurrent class.
    Absorption,
    /// Expected steps until first reaching `target`.
    FirstPassage { target: NodeIx },
}

/// Expected step counts per node, from a direct linear solve.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingVector {
    pub kind: TimingKind,
    /// `None` for nodes outside the solved system.
    pub values: Vec<Option<f64>>,
    /// Max-norm residual of the solved system.
    pub residual: f64,
}

impl TimingVector {
    pub fn get(&self, node: NodeIx) -> Option<f64> {
        self.values[node]
    }
}

/// Solves `a x = b` by LU with partial pivoting; returns `x` and the max-norm residual.
fn solve(a: DMatrix<f64>, b: DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let x = a.clone().lu().solve(&b).ok_or(Error::Singular)?;
    let residual = (&a * &x - &b).amax();
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok((x, residual))
}

/// Solves `t_i = 1 + sum_j P_ij t_j` over `unknowns`, where `t_j = 0` for nodes outside.
fn hitting_times(chain: &MarkovChain, unknowns: &[NodeIx]) -> Result<(Vec<Option<f64>>, f64)> {
    let n = chain.node_count();
    let mut pos = vec![None; n];
    for (k, &v) in unknowns.iter().enumerate() {
        pos[v] = Some(k);
    }
    let k = unknowns.len();
    let mut values = vec![None; n];
    if k == 0 {
        return Ok((values, 0.0));
    }
    let mut a = DMatrix::<f64>::identity(k, k);
    for (r, &i) in unknowns.iter().enumerate() {
        for &(j, p) in chain.row(i) {
            if let Some(c) = pos[j] {
                a[(r, c)] -= p;
            }
        }
    }
    let (x, residual) = solve(a, DVector::from_element(k, 1.0))?;
    for (r, &i) in unknowns.iter().enumerate() {
        values[i] = Some(x[r]);
    }
    Ok((values, residual))
}

impl MarkovChain {
    /// Stationary distribution of the chain restricted to a recurrent class,
    /// as `(node, probability)` in ascending node order.
    pub fn stationary_distribution(&self, class: &[NodeIx]) -> Result<Vec<(NodeIx, f64)>> {
        let classes = classify_nodes(self.model());
        let idx = classes.find_class(class).ok_or(Error::NotRecurrentClass)?;
        let members = &classes.recurrent_classes[idx];
        let k = members.len();
        let mut pos = vec![usize::MAX; self.node_count()];
        for (r, &v) in members.iter().enumerate() {
            pos[v] = r;
        }
        // Rows are the balance equations sum_i pi_i P_ij = pi_j; the last is
        // replaced by the normalization.
        let mut a = DMatrix::<f64>::zeros(k, k);
        for (c, &i) in members.iter().enumerate() {
            a[(c, c)] -= 1.0;
            for &(j, p) in self.row(i) {
                a[(pos[j], c)] += p;
            }
        }
        for c in 0..k {
            a[(k - 1, c)] = 1.0;
        }
        let mut b = DVector::zeros(k);
        b[k - 1] = 1.0;
        let (pi, _) = solve(a, b)?;
        Ok(members.iter().zip(pi.iter()).map(|(&v, &p)| (v, p)).collect())
    }

    /// Mean absorption times: zero on recurrent nodes, solved on transient ones.
    pub fn mean_absorption_times(&self) -> Result<TimingVector> {
        let classes = classify_nodes(self.model());
        let (mut values, residual) = hitting_times(self, &classes.transient)?;
        for (v, slot) in values.iter_mut().enumerate() {
            if classes.is_recurrent(v) {
                *slot = Some(0.0);
            }
        }
        Ok(TimingVector { kind: TimingKind::Absorption, values, residual })
    }

    /// Mean first passage times to `target`.
    ///
    /// Solved over all nodes when every node reaches `target`; otherwise over
    /// the recurrent class of `target`, leaving other nodes as `None`.
    pub fn mean_first_passage(&self, target: NodeIx) -> Result<TimingVector> {
        let model = self.model();
        let n = model.node_count();
        let reaches = reachable(&reverse(model.adjacency()), &[target]);
        let domain: Vec<NodeIx> = if reaches.iter().all(|&r| r) {
            (0..n).collect()
        } else {
            let classes = classify_nodes(model);
            match classes.class_of(target) {
                Some(c) => classes.recurrent_classes[c].clone(),
                None => {
                    let from = (0..n).find(|&v| !reaches[v]).expect("some node cannot reach the target");
                    return Err(Error::Unreachable {
                        from: model.node_name(from).to_string(),
                        target: model.node_name(target).to_string(),
                    });
                }
            }
        };
        let unknowns: Vec<NodeIx> = domain.iter().copied().filter(|&v| v != target).collect();
        let (mut values, residual) = hitting_times(self, &unknowns)?;
        values[target] = Some(0.0);
        Ok(TimingVector { kind: TimingKind::FirstPassage { target }, values, residual })
    }

    /// Expected return time to a recurrent node: `1 + sum_j P_vj t_j`.
    pub fn mean_recurrence_time(&self, v: NodeIx) -> Result<f64> {
        if !classify_nodes(self.model()).is_recurrent(v) {
            return Err(Error::NotRecurrentClass);
        }
        let t = self.mean_first_passage(v)?;
        Ok(1.0 + self.row(v).iter().map(|&(j, p)| p * t.get(j).expect("successor in class")).sum::<f64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::format::parse_model;

    fn chain(m: &crate::model::WeakModel) -> MarkovChain {
        MarkovChain::from_model(m).unwrap()
    }

    #[test]
    fn fig5a_recurrence() {
        let c = chain(&fixtures::fig5a_p());
        assert!((c.mean_recurrence_time(0).unwrap() - 21.5).abs() < 1e-9);
        let slow = chain(&fixtures::fig5a_p_slow());
        assert!((slow.mean_recurrence_time(0).unwrap() - 111.5).abs() < 1e-9);
    }

    #[test]
    fn fig5a_first_passage_closed_forms() {
        let m = fixtures::fig5a_p();
        let t = chain(&m).mean_first_passage(0).unwrap();
        // 2 / P_cd + 1 and 2 / P_fa
        assert!((t.get(m.node_index("b").unwrap()).unwrap() - 21.0).abs() < 1e-9);
        assert!((t.get(m.node_index("e").unwrap()).unwrap() - 20.0).abs() < 1e-9);
        assert_eq!(t.get(0), Some(0.0));
        assert!(t.residual < 1e-9);
    }

    #[test]
    fn two_cycle() {
        let m = parse_model("weakmodel v1\ncolors B\nnode a B\nnode b B\nedge a b 1\nedge b a 1\n").unwrap();
        let c = chain(&m);
        assert_eq!(c.mean_first_passage(0).unwrap().get(1), Some(1.0));
        assert_eq!(c.mean_recurrence_time(1).unwrap(), 2.0);
        let pi = c.stationary_distribution(&[0, 1]).unwrap();
        assert!((pi[0].1 - 0.5).abs() < 1e-12 && (pi[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn absorption_times() {
        let c = chain(&fixtures::fig3a_p());
        let mu = c.mean_absorption_times().unwrap();
        assert!((mu.get(0).unwrap() - 10.0).abs() < 1e-9);
        assert_eq!(mu.get(1), Some(0.0));
        let b = chain(&fixtures::fig3b_p()).mean_absorption_times().unwrap();
        assert!((b.get(0).unwrap() - 2.0).abs() < 1e-9);
        assert!(chain(&fixtures::fig5a_p()).mean_absorption_times().unwrap().values.iter().all(|v| *v == Some(0.0)));
    }

    #[test]
    fn loopless_fig3b_class_is_uniform() {
        let m = fixtures::fig3b_loopless_p();
        let c = chain(&m);
        let pi = c.stationary_distribution(&[1, 2]).unwrap();
        assert_eq!(pi.iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2]);
        assert!(pi.iter().all(|e| (e.1 - 0.5).abs() < 1e-12));
        assert_eq!(c.stationary_distribution(&[0, 1]), Err(Error::NotRecurrentClass));
    }

    #[test]
    fn passage_into_class_and_unreachable() {
        let c = chain(&fixtures::fig3b_loopless_p());
        let t = c.mean_first_passage(1).unwrap();
        assert!(t.values.iter().all(Option::is_some));
        assert!(matches!(c.mean_first_passage(0), Err(Error::Unreachable { .. })));
        assert_eq!(c.mean_recurrence_time(0), Err(Error::NotRecurrentClass));

        // Two recurrent classes: passage within one class only.
        let m = parse_model(
            "weakmodel v1\ncolors B\nnode s B\nnode a B\nnode b B\nedge s a 0.5\nedge s b 0.5\nedge a a 1\nedge b b 1\n",
        )
        .unwrap();
        let t = chain(&m).mean_first_passage(1).unwrap();
        assert_eq!(t.values, vec![None, Some(0.0), None]);
        assert_eq!(chain(&m).mean_recurrence_time(1).unwrap(), 1.0);
    }

    #[test]
    fn stationary_matches_long_run_frequencies() {
        let c = chain(&fixtures::fig5a_p());
        let pi = c.stationary_distribution(&(0..6).collect::<Vec<_>>()).unwrap();
        let steps = 1_000_000;
        let t = c.sample_traversal(0, steps, 5);
        let mut freq = [0usize; 6];
        for &v in &t.nodes {
            freq[v] += 1;
        }
        for (v, p) in pi {
            let f = freq[v] as f64 / steps as f64;
            // Visits are correlated; inflate the binomial deviation by the
            // mean recurrence time as a conservative batch factor.
            let sd = (p * (1.0 - p) / steps as f64).sqrt() * c.mean_recurrence_time(0).unwrap().sqrt();
            assert!((f - p).abs() < 3.0 * sd, "{v}: {f} vs {p}");
        }
    }
}
