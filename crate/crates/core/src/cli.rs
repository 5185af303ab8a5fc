//! Command-line front end. [`run`] is the whole program minus process exit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::experiments::{
    estimate_conditional_entropy_rate, fit_exponential_decay_with, format_g, run_reconstruction_experiment,
    write_accuracy_csv, write_entropy_csv, FitMethod, ReconConfig,
};
use crate::format::{parse_model, serialize_model};
use crate::markov::MarkovChain;
use crate::model::{NodeIx, WeakModel};
use crate::structure::{
    automorphism_count, classify_nodes, classify_trackability, hypothesis_bound, Witness, AUTOMORPHISM_NODE_LIMIT,
};
use crate::tracking::{worst_case_growth_from, Trellis};
use crate::transform::{to_single_colored, NodeMapping};

#[derive(Debug, Parser)]
#[command(name = "weakmodel", version, about = "Analyze and track node-colored directed graphs")]
struct Cli {
    /// Print one `key=value` line per datum.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regime, witness, node classes, periods and hypothesis bounds.
    Analyze(ModelArg),
    /// Write the single-colored form of a model.
    Transform {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count (and optionally list) the node sequences consistent with a color sequence.
    Track {
        #[command(flatten)]
        model: ModelArg,
        /// Comma-separated colors, e.g. `B,R,B`.
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<String>,
        #[arg(long)]
        start: Option<String>,
        /// List up to N hypotheses.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
    },
    /// Worst-case hypothesis counts for lengths 1..=t-max.
    Growth {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        t_max: usize,
        #[arg(long)]
        start: Option<String>,
    },
    /// K, per-node multiplicities and both hypothesis bounds.
    Bound(ModelArg),
    /// Markov chain quantities; the model must carry probabilities.
    Mc {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        stationary: bool,
        #[arg(long)]
        absorption: bool,
        /// Mean recurrence time of a node, with first passage times to it.
        #[arg(long, value_name = "NODE")]
        recurrence: Option<String>,
        #[arg(long)]
        entropy_rate: bool,
    },
    /// Viterbi reconstruction accuracy against lag, with an exponential fit.
    SimulateRecon {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        traversals: usize,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        beta_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FitArg::Weighted)]
        fit: FitArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the conditional entropy rate of nodes given colors.
    Entropy {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        start: Option<String>,
        /// Sequence length T.
        #[arg(long, default_value_t = 2000)]
        length: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ModelArg {
    /// Path to a `.wm` file.
    model: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitArg {
    Weighted,
    Ordinary,
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().filter(|l| l.starts_with("error:"));
            let _ = writeln!(err, "{}", first.unwrap_or("error: a subcommand is required (see --help)"));
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut report = Report { machine: cli.machine, lines: Vec::new() };
    match pool.install(|| execute(&cli.command, &mut report)) {
        Ok(()) => {
            for line in &report.lines {
                let _ = writeln!(out, "{line}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

struct Report {
    machine: bool,
    lines: Vec<String>,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}={value}"));
    }

    /// A `key=value` line in machine mode, `label: value` otherwise.
    fn item(&mut self, key: &str, label: &str, value: impl std::fmt::Display) {
        if self.machine {
            self.kv(key, value);
        } else {
            let line = format!("{label}: {value}");
            self.lines.push(line.trim_end().to_string());
        }
    }
}

fn load(arg: &ModelArg) -> Result<WeakModel> {
    let path = &arg.model;
    let in_file = |e: Error| Error::InFile { path: path.display().to_string(), source: Box::new(e) };
    let text = std::fs::read_to_string(path).map_err(|e| in_file(e.into()))?;
    parse_model(&text).map_err(in_file)
}

fn num(x: f64) -> String {
    format_g(x, 12)
}

fn join<S: AsRef<str>>(items: &[S]) -> String {
    items.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",")
}

fn resolve_start(model: &WeakModel, start: Option<&str>) -> Result<Option<NodeIx>> {
    start.map(|s| model.require_node(s)).transpose()
}

/// Single-colored form plus the allowed starts in it.
fn single_colored(model: &WeakModel, start: Option<NodeIx>) -> (WeakModel, NodeMapping, Option<Vec<NodeIx>>) {
    let (derived, mapping) = to_single_colored(model);
    let starts = start.map(|s| mapping.derived_of(s).to_vec());
    (derived, mapping, starts)
}

fn chain_start(model: &WeakModel, start: Option<&str>) -> Result<NodeIx> {
    Ok(resolve_start(model, start)?.or(model.start()).unwrap_or(0))
}

fn execute(command: &Command, r: &mut Report) -> Result<()> {
    match command {
        Command::Analyze(arg) => analyze(&load(arg)?, r),
        Command::Transform { model, out } => {
            let (derived, _) = to_single_colored(&load(model)?);
            let text = serialize_model(&derived);
            match out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| with_path(e.into(), path))?;
                    r.kv("written", path.display());
                }
                None => r.lines.extend(text.lines().map(str::to_string)),
            }
            Ok(())
        }
        Command::Track { model, colors, start, enumerate } => {
            let m = load(model)?;
            let start = resolve_start(&m, start.as_deref())?;
            let (derived, mapping, starts) = single_colored(&m, start);
            let all: Vec<NodeIx> = (0..derived.node_count()).collect();
            let mut trellis = Trellis::with_starts(&derived, starts.as_deref().unwrap_or(&all))?;
            for c in colors {
                trellis.step_named(c)?;
            }
            r.kv("count", trellis.hypothesis_count());
            if let Some(cap) = enumerate {
                let en = trellis.enumerate(*cap)?;
                for (i, seq) in en.sequences.iter().enumerate() {
                    r.kv(&format!("hypothesis_{}", i + 1), join(&m.node_names(&mapping.map_back(seq))));
                }
                r.kv("truncated", en.truncated);
            }
            Ok(())
        }
        Command::Growth { model, t_max, start } => {
            let m = load(model)?;
            let start = resolve_start(&m, start.as_deref())?;
            let (derived, _, starts) = single_colored(&m, start);
            let profile = worst_case_growth_from(&derived, starts.as_deref(), *t_max)?;
            for (t, n) in profile.n.iter().enumerate() {
                r.kv(&format!("n_{}", t + 1), n);
            }
            if let Some(seq) = profile.argmax.last() {
                r.kv("argmax", join(&derived.color_names(seq)));
            }
            r.kv("max", profile.max());
            Ok(())
        }
        Command::Bound(arg) => {
            bound(&load(arg)?, r);
            Ok(())
        }
        Command::Mc { model, stationary, absorption, recurrence, entropy_rate } => {
            let m = load(model)?;
            let chain = MarkovChain::from_model(&m)?;
            let none = !stationary && !absorption && recurrence.is_none() && !entropy_rate;
            let classes = classify_nodes(&m);
            if *stationary || none {
                for class in &classes.recurrent_classes {
                    for (v, p) in chain.stationary_distribution(class)? {
                        r.kv(&format!("pi_{}", m.node_name(v)), num(p));
                    }
                }
            }
            if *absorption || none {
                let mu = chain.mean_absorption_times()?;
                for v in 0..m.node_count() {
                    r.kv(&format!("mu_{}", m.node_name(v)), num(mu.get(v).unwrap_or(f64::NAN)));
                }
            }
            if let Some(id) = recurrence {
                let v = m.require_node(id)?;
                let t = chain.mean_first_passage(v)?;
                for u in 0..m.node_count() {
                    if let Some(x) = t.get(u) {
                        r.kv(&format!("t_{}", m.node_name(u)), num(x));
                    }
                }
                r.kv("t*", num(chain.mean_recurrence_time(v)?));
            }
            if *entropy_rate {
                for (k, class) in classes.recurrent_classes.iter().enumerate() {
                    r.kv(&format!("entropy_rate_{k}"), num(chain.markov_entropy_rate(class)?));
                }
            }
            Ok(())
        }
        Command::SimulateRecon { model, start, traversals, steps, beta_max, seed, fit, out } => {
            let m = load(model)?;
            let chain = MarkovChain::from_model(&m)?;
            let config = ReconConfig {
                start: chain_start(&m, start.as_deref())?,
                traversals: *traversals,
                steps: *steps,
                seed: *seed,
                beta_max: *beta_max,
            };
            let curve = run_reconstruction_experiment(&chain, &config)?;
            if let Some(path) = out {
                write_accuracy_csv(&curve, path).map_err(|e| with_path(e, path))?;
            }
            r.kv("alpha_0", num(curve.rows[0].alpha));
            let method = match fit {
                FitArg::Weighted => FitMethod::Weighted,
                FitArg::Ordinary => FitMethod::Ordinary,
            };
            let f = fit_exponential_decay_with(&curve, method)?;
            r.kv("A", num(f.a));
            r.kv("tau", num(f.tau));
            r.kv("rows_used", f.rows_used);
            Ok(())
        }
        Command::Entropy { model, start, length, samples, seed, out } => {
            let m = load(model)?;
            let chain = MarkovChain::from_model(&m)?;
            let start = chain_start(&m, start.as_deref())?;
            let e = estimate_conditional_entropy_rate(&chain, start, *length, *samples, *seed)?;
            if let Some(path) = out {
                write_entropy_csv(std::slice::from_ref(&e), path).map_err(|err| with_path(err, path))?;
            }
            r.kv("T", e.t);
            r.kv("n_samples", e.n_samples);
            r.kv("bits_per_step", num(e.bits_per_step));
            r.kv("stderr", num(e.stderr));
            r.kv("node_entropy_rate", num(e.identity.node_rate));
            r.kv("color_entropy_rate", num(e.identity.color_rate));
            r.kv("identity_gap", num(e.identity_gap()));
            r.kv("identity_holds", e.identity_holds());
            Ok(())
        }
    }
}

fn with_path(e: Error, path: &Path) -> Error {
    Error::InFile { path: path.display().to_string(), source: Box::new(e) }
}

fn analyze(m: &WeakModel, r: &mut Report) -> Result<()> {
    let report = classify_trackability(m);
    r.item("regime", "regime", report.regime);
    match &report.witness {
        None => r.item("witness", "witness", "none"),
        Some(Witness::IntersectingCycles(c)) => {
            r.item("witness", "witness", "intersecting_cycles");
            r.item("witness_cycle_1", "  cycle 1", join(&c.first));
            r.item("witness_cycle_2", "  cycle 2", join(&c.second));
            r.item("witness_colors", "  colors", join(&c.colors));
        }
        Some(Witness::Fork(f)) => {
            r.item("witness", "witness", "fork");
            r.item("witness_cycle_1", "  cycle 1", join(&f.first_cycle));
            r.item("witness_bridge", "  bridge", join(&f.bridge));
            r.item("witness_cycle_2", "  cycle 2", join(&f.second_cycle));
            r.item("witness_colors", "  colors", join(&f.colors));
        }
    }
    let classes = classify_nodes(m);
    r.item("recurrent_classes", "recurrent classes", classes.recurrent_classes.len());
    for (k, (class, period)) in classes.recurrent_classes.iter().zip(&classes.periods).enumerate() {
        r.item(&format!("class_{k}"), &format!("  class {k}"), join(&m.node_names(class)));
        r.item(&format!("period_{k}"), &format!("  period {k}"), period);
    }
    r.item("transient", "transient", join(&m.node_names(&classes.transient)));
    r.item("strongly_connected", "strongly connected", classes.is_strongly_connected());
    bound(m, r);
    if m.node_count() <= AUTOMORPHISM_NODE_LIMIT {
        r.item("automorphisms", "automorphisms", automorphism_count(m)?.count);
    }
    Ok(())
}

fn bound(m: &WeakModel, r: &mut Report) {
    let b = hypothesis_bound(m);
    r.item("K", "K", b.k);
    for (v, mv) in b.multiplicity.iter().enumerate() {
        r.item(&format!("M_{}", m.node_name(v)), &format!("  M_{}", m.node_name(v)), mv);
    }
    r.item("bound_known_start", "bound (known start)", b.bound_known_start);
    r.item("bound_unknown_start", "bound (unknown start)", b.bound_unknown_start);
    r.item("bound_preconditions_hold", "bound preconditions hold", b.preconditions_hold());
}
