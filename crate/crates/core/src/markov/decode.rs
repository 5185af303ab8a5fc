use crate::error::{Error, Result};
use crate::markov::chain::MarkovChain;
use crate::model::{ColorIx, NodeIx};

const NEG_INF: f64 = f64::NEG_INFINITY;

/// `log2(2^a + 2^b)`.
fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == NEG_INF {
        hi
    } else {
        hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
    }
}

/// `-sum p log2 p` of a distribution given by log2 weights that sum to one.
fn entropy_of_logs(logs: impl Iterator<Item = f64>) -> f64 {
    logs.filter(|l| l.is_finite()).map(|l| -l.exp2() * l).sum::<f64>().max(0.0)
}

/// Values within this distance of the maximum count as ties.
fn tie_tolerance(max: f64) -> f64 {
    1e-12 * (1.0 + max.abs())
}

impl MarkovChain {
    fn check_colors(&self, colors: &[ColorIx]) -> Result<()> {
        match colors.iter().find(|&&c| c >= self.model().color_count()) {
            Some(c) => Err(Error::UnknownColor(format!("#{c}"))),
            None => Ok(()),
        }
    }

    /// log2 of the initial distribution conditioned on nothing: the start node
    /// if given, otherwise uniform over nodes of the first observed color.
    fn log_prior(&self, first: ColorIx, start: Option<NodeIx>) -> Vec<f64> {
        let model = self.model();
        let mut prior = vec![NEG_INF; self.node_count()];
        match start {
            Some(s) => {
                if model.label(s) == first {
                    prior[s] = 0.0;
                }
            }
            None => {
                let k = model.nodes_with_color(first).count();
                for v in model.nodes_with_color(first) {
                    prior[v] = -(k as f64).log2();
                }
            }
        }
        prior
    }

    /// Most probable node sequence for `colors` and its log2 probability.
    ///
    /// Among equally probable choices the lower node index wins, both for the
    /// final node and at every backtracking step.
    pub fn viterbi(&self, colors: &[ColorIx], start: Option<NodeIx>) -> Result<(Vec<NodeIx>, f64)> {
        self.check_colors(colors)?;
        let Some(&first) = colors.first() else {
            return Err(Error::NoConsistentPath);
        };
        let model = self.model();
        let n = self.node_count();
        let mut delta = self.log_prior(first, start);
        let mut back: Vec<Vec<NodeIx>> = Vec::with_capacity(colors.len().saturating_sub(1));
        let mut next = vec![NEG_INF; n];
        for &y in &colors[1..] {
            let mut ptr = vec![usize::MAX; n];
            for j in 0..n {
                next[j] = NEG_INF;
                if model.label(j) != y {
                    continue;
                }
                let incoming = self.incoming(j);
                let best = incoming.iter().map(|&(i, lp)| delta[i] + lp).fold(NEG_INF, f64::max);
                if best == NEG_INF {
                    continue;
                }
                let tol = tie_tolerance(best);
                let &(i, lp) =
                    incoming.iter().find(|&&(i, lp)| delta[i] + lp >= best - tol).expect("maximum is attained");
                next[j] = delta[i] + lp;
                ptr[j] = i;
            }
            std::mem::swap(&mut delta, &mut next);
            back.push(ptr);
        }
        let best = delta.iter().copied().fold(NEG_INF, f64::max);
        if best == NEG_INF {
            return Err(Error::NoConsistentPath);
        }
        let tol = tie_tolerance(best);
        let mut v = (0..n).find(|&j| delta[j] >= best - tol).expect("maximum is attained");
        let log_prob = delta[v];
        let mut path = vec![v; colors.len()];
        for (t, ptr) in back.iter().enumerate().rev() {
            v = ptr[v];
            path[t] = v;
        }
        Ok((path, log_prob))
    }

    /// log2 p(colors); negative infinity for impossible sequences.
    pub fn forward_log_prob(&self, colors: &[ColorIx], start: Option<NodeIx>) -> Result<f64> {
        self.check_colors(colors)?;
        let Some(&first) = colors.first() else {
            return Ok(0.0);
        };
        let model = self.model();
        let n = self.node_count();
        let mut alpha = self.log_prior(first, start);
        let mut next = vec![NEG_INF; n];
        for &y in &colors[1..] {
            for j in 0..n {
                next[j] = if model.label(j) == y {
                    self.incoming(j).iter().fold(NEG_INF, |acc, &(i, lp)| log2_add(acc, alpha[i] + lp))
                } else {
                    NEG_INF
                };
            }
            std::mem::swap(&mut alpha, &mut next);
        }
        Ok(alpha.into_iter().fold(NEG_INF, log2_add))
    }

    /// `beta[t][i] = log2 p(y_{t+1..} | x_t = i)`, negative infinity where `i` cannot emit `y_t`.
    fn log_backward(&self, colors: &[ColorIx]) -> Vec<Vec<f64>> {
        let model = self.model();
        let n = self.node_count();
        let t_len = colors.len();
        let mut beta = vec![vec![NEG_INF; n]; t_len];
        for i in 0..n {
            if model.label(i) == colors[t_len - 1] {
                beta[t_len - 1][i] = 0.0;
            }
        }
        for t in (0..t_len - 1).rev() {
            for i in 0..n {
                if model.label(i) != colors[t] {
                    continue;
                }
                beta[t][i] = self.row(i).iter().fold(NEG_INF, |acc, &(j, p)| log2_add(acc, p.log2() + beta[t + 1][j]));
            }
        }
        beta
    }

    /// Exact `H(X_[T] | Y_[T] = colors)` in bits.
    ///
    /// Conditioned on the observation the node process is again a Markov
    /// chain, so the entropy splits into the entropy of the first node plus
    /// the expected entropy of each conditioned transition.
    pub fn posterior_path_entropy(&self, colors: &[ColorIx], start: Option<NodeIx>) -> Result<f64> {
        Ok(self.posterior_entropy_and_likelihood(colors, start)?.0)
    }

    /// Posterior path entropy and `log2 p(colors)` from one backward pass.
    pub fn posterior_entropy_and_likelihood(&self, colors: &[ColorIx], start: Option<NodeIx>) -> Result<(f64, f64)> {
        self.check_colors(colors)?;
        let Some(&first) = colors.first() else {
            return Ok((0.0, 0.0));
        };
        let n = self.node_count();
        let beta = self.log_backward(colors);
        let prior = self.log_prior(first, start);
        let joint: Vec<f64> = (0..n).map(|i| prior[i] + beta[0][i]).collect();
        let log_py = joint.iter().copied().fold(NEG_INF, log2_add);
        if log_py == NEG_INF {
            return Err(Error::NoConsistentPath);
        }
        let mut q: Vec<f64> = joint.iter().map(|&l| (l - log_py).exp2()).collect();
        let mut h = entropy_of_logs(joint.iter().map(|&l| l - log_py));
        let mut next = vec![0.0; n];
        for t in 0..colors.len() - 1 {
            next.iter_mut().for_each(|x| *x = 0.0);
            for i in 0..n {
                if q[i] == 0.0 {
                    continue;
                }
                let row = self.row(i);
                let logs = row.iter().map(|&(j, p)| p.log2() + beta[t + 1][j] - beta[t][i]);
                h += q[i] * entropy_of_logs(logs.clone());
                for (&(j, _), l) in row.iter().zip(logs) {
                    if l.is_finite() {
                        next[j] += q[i] * l.exp2();
                    }
                }
            }
            std::mem::swap(&mut q, &mut next);
        }
        Ok((h, log_py))
    }

    /// Entropy rate `-sum_i pi_i sum_j P_ij log2 P_ij` of the chain on a recurrent class.
    pub fn markov_entropy_rate(&self, class: &[NodeIx]) -> Result<f64> {
        let pi = self.stationary_distribution(class)?;
        Ok(pi.iter().map(|&(i, p)| p * self.row_entropy(i)).sum())
    }

    /// Entropy in bits of the transition distribution out of `node`.
    pub fn row_entropy(&self, node: NodeIx) -> f64 {
        entropy_of_logs(self.row(node).iter().map(|&(_, p)| p.log2()))
    }

    /// Exact `H(X_[T])` in bits for a run of `steps` nodes from `start`.
    pub fn sequence_entropy(&self, start: NodeIx, steps: usize) -> f64 {
        let n = self.node_count();
        let h: Vec<f64> = (0..n).map(|i| self.row_entropy(i)).collect();
        let mut p = vec![0.0; n];
        p[start] = 1.0;
        let mut next = vec![0.0; n];
        let mut total = 0.0;
        for _ in 1..steps {
            next.iter_mut().for_each(|x| *x = 0.0);
            for i in 0..n {
                if p[i] == 0.0 {
                    continue;
                }
                total += p[i] * h[i];
                for &(j, pij) in self.row(i) {
                    next[j] += p[i] * pij;
                }
            }
            std::mem::swap(&mut p, &mut next);
        }
        total
    }
}
