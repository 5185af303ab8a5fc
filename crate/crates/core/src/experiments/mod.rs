//! Reconstruction-accuracy and conditional-entropy experiments.

mod csv;
mod entropy;
mod recon;

pub use csv::{accuracy_csv, entropy_csv, format_g, format_g17, write_accuracy_csv, write_entropy_csv};
pub use entropy::{estimate_conditional_entropy_rate, EntropyEstimate, IdentityCheck};
pub use recon::{
    fit_exponential_decay, fit_exponential_decay_with, run_reconstruction_experiment, AccuracyCurve, AccuracyRow,
    ExpFit, FitMethod, ReconConfig,
};
