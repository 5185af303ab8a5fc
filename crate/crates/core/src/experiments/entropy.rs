use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::markov::MarkovChain;
use crate::model::NodeIx;

/// Monte Carlo estimate of `H(X_[T] | Y_[T]) / T`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub t: usize,
    pub n_samples: usize,
    pub bits_per_step: f64,
    pub stderr: f64,
    pub identity: IdentityCheck,
}

/// Independent estimate of the same quantity through `H(X|Y) = H(X) - H(Y)`,
/// which holds because each node emits exactly one color.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Exact `H(X_[T]) / T` from the start node.
    pub node_rate: f64,
    /// Sample mean of `-log2 p(y) / T`.
    pub color_rate: f64,
    pub color_stderr: f64,
}

impl IdentityCheck {
    pub fn predicted(&self) -> f64 {
        self.node_rate - self.color_rate
    }
}

impl EntropyEstimate {
    pub fn identity_gap(&self) -> f64 {
        (self.bits_per_step - self.identity.predicted()).abs()
    }

    /// Combined standard error of the two estimates.
    pub fn combined_stderr(&self) -> f64 {
        self.stderr.hypot(self.identity.color_stderr)
    }

    /// True if both estimates agree within three combined standard errors.
    /// A rounding floor covers exactly determined cases with zero spread.
    pub fn identity_holds(&self) -> bool {
        self.identity_gap() <= 3.0 * self.combined_stderr() + 1e-9
    }
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Samples `n_samples` traversals of length `t` from `start` (stream `i` for
/// sample `i`) and averages their exact posterior path entropies per step.
pub fn estimate_conditional_entropy_rate(
    chain: &MarkovChain,
    start: NodeIx,
    t: usize,
    n_samples: usize,
    seed: u64,
) -> Result<EntropyEstimate> {
    if t < 10 {
        return Err(Error::Config(format!("sequence length {t} is below the minimum of 10")));
    }
    if n_samples == 0 {
        return Err(Error::Config("at least one sample is required".into()));
    }
    if start >= chain.node_count() {
        return Err(Error::Config(format!("start node #{start} does not exist")));
    }
    let per_sample: Vec<(f64, f64)> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let tr = chain.sample_traversal_stream(start, t, seed, i);
            let (h, log_py) = chain
                .posterior_entropy_and_likelihood(&tr.colors, Some(start))
                .expect("a sampled traversal is always consistent");
            (h / t as f64, (0.0 - log_py) / t as f64)
        })
        .collect();
    let (posterior, colors): (Vec<f64>, Vec<f64>) = per_sample.into_iter().unzip();
    let (bits_per_step, stderr) = mean_and_stderr(&posterior);
    let (color_rate, color_stderr) = mean_and_stderr(&colors);
    Ok(EntropyEstimate {
        t,
        n_samples,
        bits_per_step,
        stderr,
        identity: IdentityCheck { node_rate: chain.sequence_entropy(start, t) / t as f64, color_rate, color_stderr },
    })
}
