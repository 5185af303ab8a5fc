use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::markov::MarkovChain;
use crate::model::NodeIx;

/// Parameters of the reconstruction-accuracy experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconConfig {
    pub start: NodeIx,
    pub traversals: usize,
    pub steps: usize,
    pub seed: u64,
    /// Largest lag measured back from the final time step.
    pub beta_max: usize,
}

impl ReconConfig {
    pub fn new(start: NodeIx) -> Self {
        ReconConfig { start, traversals: 10_000, steps: 200, seed: 0, beta_max: 100 }
    }

    pub fn validate(&self, chain: &MarkovChain) -> Result<()> {
        if self.start >= chain.node_count() {
            return Err(Error::Config(format!("start node #{} does not exist", self.start)));
        }
        if self.traversals == 0 || self.steps == 0 {
            return Err(Error::Config("traversals and steps must be positive".into()));
        }
        if self.beta_max >= self.steps {
            return Err(Error::Config(format!(
                "beta_max ({}) must be smaller than steps ({})",
                self.beta_max, self.steps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyRow {
    pub beta: usize,
    pub alpha: f64,
    pub n: usize,
}

/// Fraction of traversals whose decoded node `beta` steps before the end is correct.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyCurve {
    pub rows: Vec<AccuracyRow>,
}

impl AccuracyCurve {
    /// Builds a curve from per-lag correct counts out of `n` samples.
    pub fn from_counts(correct: &[u64], n: usize) -> Self {
        let rows =
            correct.iter().enumerate().map(|(beta, &c)| AccuracyRow { beta, alpha: c as f64 / n as f64, n }).collect();
        AccuracyCurve { rows }
    }
}

/// Samples traversals (stream `i` for traversal `i`), decodes each with Viterbi
/// from the known start, and scores the decoded node at every lag from the end.
pub fn run_reconstruction_experiment(chain: &MarkovChain, config: &ReconConfig) -> Result<AccuracyCurve> {
    config.validate(chain)?;
    let lags = config.beta_max + 1;
    let correct = (0..config.traversals as u64)
        .into_par_iter()
        .map(|i| {
            let tr = chain.sample_traversal_stream(config.start, config.steps, config.seed, i);
            let (decoded, _) =
                chain.viterbi(&tr.colors, Some(config.start)).expect("a sampled traversal is always consistent");
            let last = config.steps - 1;
            (0..lags).map(|b| u64::from(decoded[last - b] == tr.nodes[last - b])).collect::<Vec<u64>>()
        })
        .reduce(
            || vec![0; lags],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(AccuracyCurve::from_counts(&correct, config.traversals))
}

/// `1 - alpha = a * exp(-beta / tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpFit {
    pub a: f64,
    pub tau: f64,
    pub rows_used: usize,
}

/// How rows are weighted in [`fit_exponential_decay_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitMethod {
    /// Each row weighted by the inverse variance of its `ln(1 - alpha)`,
    /// `n (1 - alpha) / alpha`, so lags with few observed errors count less.
    #[default]
    Weighted,
    /// Every row weighted equally.
    Ordinary,
}

/// Weighted least squares fit; see [`FitMethod::Weighted`].
pub fn fit_exponential_decay(curve: &AccuracyCurve) -> Result<ExpFit> {
    fit_exponential_decay_with(curve, FitMethod::Weighted)
}

/// Least squares of `ln(1 - alpha)` on `beta`, over rows with at least ten expected errors.
pub fn fit_exponential_decay_with(curve: &AccuracyCurve, method: FitMethod) -> Result<ExpFit> {
    // (beta, ln(1 - alpha), weight)
    let pts: Vec<(f64, f64, f64)> = curve
        .rows
        .iter()
        .filter(|r| r.n > 0 && 1.0 - r.alpha >= 10.0 / r.n as f64)
        .map(|r| {
            let err = 1.0 - r.alpha;
            let w = match method {
                FitMethod::Weighted => r.n as f64 * err / r.alpha.max(1.0 / r.n as f64),
                FitMethod::Ordinary => 1.0,
            };
            (r.beta as f64, err.ln(), w)
        })
        .collect();
    if pts.len() < 3 {
        return Err(Error::TooFewRows(pts.len()));
    }
    let sw: f64 = pts.iter().map(|p| p.2).sum();
    let mx = pts.iter().map(|p| p.2 * p.0).sum::<f64>() / sw;
    let my = pts.iter().map(|p| p.2 * p.1).sum::<f64>() / sw;
    let sxy: f64 = pts.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| p.2 * (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    if slope.is_nan() || slope >= 0.0 {
        return Err(Error::NoDecay(slope));
    }
    let intercept = my - slope * mx;
    Ok(ExpFit { a: intercept.exp(), tau: -1.0 / slope, rows_used: pts.len() })
}
