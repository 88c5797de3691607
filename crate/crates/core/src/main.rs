//! Command-line front end: one subcommand per analysis, CSV artifacts in
//! an output directory, configuration from a flat key-value file with
//! command-line overrides (flags win).
//!
//! Exit codes: 0 = success (an "unstable" verdict is data, not failure),
//! 2 = usage or configuration error, 3 = I/O error.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracournot::chaos01::ChaosError;
use fracournot::config::{ConfigError, ExperimentConfig};
use fracournot::cournot::ModelError;
use fracournot::csvio;
use fracournot::frac::{integrate, integrate_compensated, FracError};
use fracournot::stability::{classify_2d, nu_threshold_e4, StabilityBranch, StabilityError};
use fracournot::svg::sweep_overlay_svg;
use fracournot::sweep::{run_single, run_sweep, SweepError};

#[derive(Parser, Debug)]
#[command(
    name = "fracournot",
    version,
    about = "Long-memory Cournot duopoly: simulation, stability, and chaos diagnostics"
)]
struct Cli {
    /// Config file (flat dotted keys, e.g. `model.b = 6.0`); missing keys
    /// take benchmark defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for CSV/SVG artifacts (overrides `output.dir`).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// RNG seed override for the 0-1 test (overrides `chaos.seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    cmd: Cmd,
}

/// Per-parameter overrides; each one replaces the corresponding config
/// key when present.
#[derive(Args, Debug)]
struct Overrides {
    /// Memory order ν in (0,1].
    #[arg(long, global = true)]
    nu: Option<f64>,
    /// Firm 1 adjustment speed.
    #[arg(long, global = true)]
    alpha1: Option<f64>,
    /// Firm 2 adjustment speed.
    #[arg(long, global = true)]
    alpha2: Option<f64>,
    /// Demand intercept.
    #[arg(long, global = true)]
    b: Option<f64>,
    /// Demand slope.
    #[arg(long, global = true)]
    d: Option<f64>,
    /// Firm 1 cost slope.
    #[arg(long, global = true)]
    c1: Option<f64>,
    /// Firm 2 cost slope.
    #[arg(long, global = true)]
    c2: Option<f64>,
    /// Initial outputs as "q1,q2".
    #[arg(long, global = true, value_parser = parse_x0, value_name = "Q1,Q2")]
    x0: Option<(f64, f64)>,
    /// Steps for `simulate`.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Transient steps dropped by `chaos` and `sweep`.
    #[arg(long, global = true)]
    transient: Option<usize>,
    /// Divergence guard magnitude.
    #[arg(long, global = true)]
    guard: Option<f64>,
    /// Sweep worker threads (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

fn parse_x0(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"q1,q2\", got \"{s}\""))?;
    let q1 = a.trim().parse::<f64>().map_err(|e| format!("bad q1: {e}"))?;
    let q2 = b.trim().parse::<f64>().map_err(|e| format!("bad q2: {e}"))?;
    Ok((q1, q2))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Integrate one trajectory; write n,q1,q2,price,profit1,profit2.
    Simulate,
    /// Report the equilibria, Jacobian summary at E4, and ν threshold.
    Equilibria,
    /// Stability verdict at the configured ν (verdict is data: exit 0).
    Stability(StabilityArgs),
    /// 0-1 chaos statistic of the post-transient q1 series.
    Chaos,
    /// Sweep ν: bifurcation samples and K per grid row.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct StabilityArgs {
    /// Classify an explicit trace instead of the model's E4 value.
    #[arg(long, requires = "det", allow_negative_numbers = true)]
    tr: Option<f64>,
    /// Classify an explicit determinant instead of the model's E4 value.
    #[arg(long, requires = "tr", allow_negative_numbers = true)]
    det: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Also render the overlay scatter SVG.
    #[arg(long)]
    svg: bool,
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Frac(#[from] FracError),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("could not write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Config(ConfigError::Io { .. }) | AppError::Write { .. } => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    apply_overrides(&mut cfg, cli);
    let out_dir = PathBuf::from(&cfg.output.dir);

    match &cli.cmd {
        Cmd::Simulate => cmd_simulate(&cfg, &out_dir),
        Cmd::Equilibria => cmd_equilibria(&cfg, &out_dir),
        Cmd::Stability(args) => cmd_stability(&cfg, args),
        Cmd::Chaos => cmd_chaos(&cfg, &out_dir),
        Cmd::Sweep(args) => cmd_sweep(&cfg, args, &out_dir),
    }
}

fn apply_overrides(cfg: &mut ExperimentConfig, cli: &Cli) {
    let ov = &cli.overrides;
    if let Some(v) = ov.nu {
        cfg.run.nu = v;
    }
    if let Some(v) = ov.alpha1 {
        cfg.model.alpha1 = v;
    }
    if let Some(v) = ov.alpha2 {
        cfg.model.alpha2 = v;
    }
    if let Some(v) = ov.b {
        cfg.model.b = v;
    }
    if let Some(v) = ov.d {
        cfg.model.d = v;
    }
    if let Some(v) = ov.c1 {
        cfg.model.c1 = v;
    }
    if let Some(v) = ov.c2 {
        cfg.model.c2 = v;
    }
    if let Some((q1, q2)) = ov.x0 {
        cfg.run.x0 = [q1, q2];
    }
    if let Some(v) = ov.steps {
        cfg.run.steps = v;
    }
    if let Some(v) = ov.transient {
        cfg.run.transient = v;
    }
    if let Some(v) = ov.guard {
        cfg.run.guard = v;
    }
    if let Some(v) = ov.workers {
        cfg.sweep.workers = v;
    }
    if let Some(v) = cli.seed {
        cfg.chaos.seed = v;
    }
    if let Some(dir) = &cli.out {
        cfg.output.dir = dir.display().to_string();
    }
}

/// Creates the parent directory and streams `emit` into the file; all
/// I/O failures carry the path.
fn write_file(
    path: &Path,
    emit: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), AppError> {
    let io_err = |source| AppError::Write {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(io_err)?;
        }
    }
    let file = fs::File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    emit(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn cmd_simulate(cfg: &ExperimentConfig, out_dir: &Path) -> Result<(), AppError> {
    let params = cfg.params()?;
    let nu = cfg.frac_order()?;
    let traj = if cfg.run.compensated {
        integrate_compensated(&params, nu, &cfg.run.x0, cfg.run.steps, cfg.run.guard)?
    } else {
        integrate(&params, nu, &cfg.run.x0, cfg.run.steps, cfg.run.guard)?
    };

    let path = out_dir.join("trajectory.csv");
    write_file(&path, |w| csvio::write_trajectory(w, &traj, &params))?;

    let last = traj.last_state();
    println!(
        "simulated {} states at nu = {}; final state ({}, {})",
        traj.len(),
        nu.value(),
        last[0],
        last[1]
    );
    if let Some(step) = traj.diverged_at() {
        println!("orbit tripped the guard at step {step}; trajectory truncated");
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_equilibria(cfg: &ExperimentConfig, out_dir: &Path) -> Result<(), AppError> {
    let params = cfg.params()?;
    let eq = params.equilibria();
    let (tr, det) = params.tr_det_at_e4();
    let disc = tr * tr - 4.0 * det;
    let threshold = nu_threshold_e4(&params)?;

    println!("m = {}", eq.m);
    for (label, pt) in eq.points() {
        let f = params.rhs(pt);
        println!(
            "{label} = ({}, {})  residual {:e}",
            pt[0],
            pt[1],
            f[0].abs().max(f[1].abs())
        );
    }
    println!("tr J(E4) = {tr}");
    println!("det J(E4) = {det}");
    println!("discriminant = {disc}");
    println!("nu threshold at E4 = {threshold}");

    let path = out_dir.join("equilibria.csv");
    write_file(&path, |w| csvio::write_equilibria(w, &params))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_stability(cfg: &ExperimentConfig, args: &StabilityArgs) -> Result<(), AppError> {
    let nu = cfg.frac_order()?;
    let (tr, det, source) = match (args.tr, args.det) {
        (Some(tr), Some(det)) => (tr, det, "explicit"),
        _ => {
            let params = cfg.params()?;
            let (tr, det) = params.tr_det_at_e4();
            (tr, det, "E4")
        }
    };

    let verdict = classify_2d(tr, det, nu)?;
    println!("point: {source}  tr J = {tr}  det J = {det}");
    println!(
        "branch: {}",
        match verdict.branch {
            StabilityBranch::RealNegative => "real negative eigenvalue pair",
            StabilityBranch::Complex => "complex conjugate pair",
            StabilityBranch::GeneralEigenvalue => "general eigenvalue test",
            StabilityBranch::Inconclusive => "inconclusive (outside the classification)",
        }
    );
    for check in &verdict.details {
        let lam = check.lambda;
        let rendered = if lam.im == 0.0 {
            format!("{}", lam.re)
        } else {
            format!("{} {} {}i", lam.re, if lam.im < 0.0 { "-" } else { "+" }, lam.im.abs())
        };
        println!(
            "eigenvalue {rendered}: {}",
            if check.in_region { "inside region" } else { "outside region" }
        );
    }
    if let Some(t) = verdict.nu_threshold {
        println!("nu threshold = {t}");
    }
    println!(
        "verdict at nu = {}: {}",
        nu.value(),
        if verdict.stable { "stable" } else { "unstable" }
    );
    Ok(())
}

fn cmd_chaos(cfg: &ExperimentConfig, out_dir: &Path) -> Result<(), AppError> {
    let sweep_cfg = cfg.sweep_config()?;
    let nu = cfg.frac_order()?;
    let (traj, chaos) = run_single(nu, &sweep_cfg)?;

    let Some(res) = chaos else {
        println!(
            "orbit diverged at step {}; no K computed",
            traj.diverged_at().unwrap_or(traj.len())
        );
        return Ok(());
    };

    let kc_path = out_dir.join("kc.csv");
    write_file(&kc_path, |w| csvio::write_kc(w, &res.k_per_c))?;
    let walk_path = out_dir.join("translation.csv");
    write_file(&walk_path, |w| {
        csvio::write_translation(w, &res.sample_p, &res.sample_s)
    })?;

    println!(
        "K = {} (median of {} frequencies; sample c = {})",
        res.k_median,
        res.k_per_c.len(),
        res.sample_c
    );
    let degenerate = res.k_per_c.iter().filter(|r| r.degenerate).count();
    if degenerate > 0 {
        println!("{degenerate} frequencies had zero-variance displacement (constant series)");
    }
    println!("wrote {}", kc_path.display());
    println!("wrote {}", walk_path.display());
    Ok(())
}

fn cmd_sweep(cfg: &ExperimentConfig, args: &SweepArgs, out_dir: &Path) -> Result<(), AppError> {
    let sweep_cfg = cfg.sweep_config()?;
    let rows = run_sweep(&sweep_cfg)?;

    let bif_path = out_dir.join("bifurcation.csv");
    write_file(&bif_path, |w| csvio::write_bifurcation(w, &rows))?;
    let k_path = out_dir.join("ksweep.csv");
    write_file(&k_path, |w| csvio::write_sweep_k(w, &rows))?;

    let diverged = rows.iter().filter(|r| r.diverged).count();
    println!(
        "swept {} rows (nu = {}..{} step {}); {} diverged",
        rows.len(),
        sweep_cfg.nu_start,
        sweep_cfg.nu_end,
        sweep_cfg.nu_step,
        diverged
    );
    println!("wrote {}", bif_path.display());
    println!("wrote {}", k_path.display());

    if args.svg || cfg.output.svg {
        let svg_path = out_dir.join("sweep.svg");
        let doc = sweep_overlay_svg(&rows);
        write_file(&svg_path, |w| w.write_all(doc.as_bytes()))?;
        println!("wrote {}", svg_path.display());
    }
    Ok(())
}
