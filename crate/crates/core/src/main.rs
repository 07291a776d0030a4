//! Command-line front end: single runs, Monte-Carlo batches, certification,
//! figure reproduction, and a small packing-bound demonstration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nalgebra::{dvector, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ccstab::analysis;
use ccstab::convex::{self, PointSet};
use ccstab::experiment::{self, ConfigError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "ccstab", about = "Model-free adaptive stabilization experiments", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Plain-text `key = value` configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for emitted files.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    runs: Option<usize>,
    #[arg(long, value_name = "T")]
    horizon: Option<usize>,
    #[arg(long, value_name = "F")]
    eps: Option<f64>,
    /// `star` for the asymptotic-bound optimizer, or a fixed value in (0, 1).
    #[arg(long, value_name = "star|F")]
    mu: Option<String>,
    #[arg(long, value_name = "N")]
    tau: Option<usize>,
    /// Comma-separated upper percentiles in (0, 100].
    #[arg(long, value_name = "LIST")]
    percentiles: Option<String>,
    /// Exit with status 1 if any certification clause fails.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one closed-loop simulation and write trajectory, series, and report.
    Simulate(CommonOpts),
    /// Run a Monte-Carlo batch and write percentile tables and a summary.
    Batch(CommonOpts),
    /// Run one simulation and print the certification report.
    Certify(CommonOpts),
    /// Execute the canned study scenarios and emit all data tables.
    ReproduceFigures(CommonOpts),
    /// Desk-scale illustration of the packing bound and volume sandwich.
    PackingDemo(CommonOpts),
}

fn resolve_config(opts: &CommonOpts) -> Result<ExperimentConfig, ConfigError> {
    let mut config = match &opts.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let flag = |key: &str, value: Option<String>, config: &mut ExperimentConfig| match value {
        Some(v) => config.set(key, &v).map_err(ConfigError::Invalid),
        None => Ok(()),
    };
    flag("seed", opts.seed.map(|v| v.to_string()), &mut config)?;
    flag("runs", opts.runs.map(|v| v.to_string()), &mut config)?;
    flag("horizon", opts.horizon.map(|v| v.to_string()), &mut config)?;
    flag("eps", opts.eps.map(|v| v.to_string()), &mut config)?;
    flag("mu", opts.mu.clone(), &mut config)?;
    flag("tau", opts.tau.map(|v| v.to_string()), &mut config)?;
    flag("percentiles", opts.percentiles.clone(), &mut config)?;
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode, ConfigError> {
    match cli.command {
        Command::Simulate(opts) => {
            let config = resolve_config(&opts)?;
            let outcome = experiment::run_single(&config, &opts.out)?;
            println!("wrote trajectory.csv, series.csv, report.txt to {}", opts.out.display());
            Ok(strict_status(opts.strict, outcome.report.verdicts.all_pass()))
        }
        Command::Batch(opts) => {
            let config = resolve_config(&opts)?;
            let batch = experiment::run_batch(&config, &opts.out)?;
            println!(
                "wrote {} percentile tables and summary.txt to {}",
                config.percentiles.len(),
                opts.out.display()
            );
            println!("median settling time: {}", batch.median_settling_time);
            println!("all clauses passed in {:.1}% of runs", 100.0 * batch.all_pass_fraction);
            Ok(strict_status(opts.strict, batch.all_pass_fraction == 1.0))
        }
        Command::Certify(opts) => {
            let config = resolve_config(&opts)?;
            let outcome = experiment::execute_run(&config, 0)?;
            print!("{}", outcome.report.to_text());
            Ok(strict_status(opts.strict, outcome.report.verdicts.all_pass()))
        }
        Command::ReproduceFigures(opts) => {
            let config = resolve_config(&opts)?;
            let runs = if opts.runs.is_some() { config.runs } else { 1000 };
            experiment::reproduce_figures(config.seed, runs, &opts.out)?;
            println!("wrote single/, uniform/, zero/ under {}", opts.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::PackingDemo(opts) => {
            let config = resolve_config(&opts)?;
            packing_demo(config.seed);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn strict_status(strict: bool, all_pass: bool) -> ExitCode {
    if strict && !all_pass {
        eprintln!("certification clause failed (strict mode)");
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Two-dimensional illustration: greedy-pack points on the projection
/// sphere, compare the packing size with the cardinality bound, and bracket
/// the estimated neighborhood volume by the sandwich inequalities.
fn packing_demo(seed: u64) {
    let n = 2;
    let body = PointSet::new(vec![dvector![1.0, 0.0], dvector![0.0, 1.0]]);
    let kappa = 1.0; // set gauge of the body with respect to itself
    let delta = 4.0;
    let mu = analysis::mu_from_delta(delta, kappa);
    let radius = delta / mu;
    let eps = delta.sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<DVector<f64>> = (0..400)
        .map(|_| {
            let p = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0_f64));
            let gauge = convex::gauge_norm(&body, &p);
            p * (radius / gauge)
        })
        .collect();
    let packed = convex::greedy_packing(&candidates, eps, &body);
    let bound = analysis::packing_cardinality_bound(delta, kappa, mu, n);

    println!("packing demo  n={n} delta={delta} mu={mu:.4} radius={radius:.4}");
    println!(
        "greedy packing of {} candidates at eps = sqrt(delta) = {eps}: |P| = {}",
        candidates.len(),
        packed.len()
    );
    println!("cardinality bound: {bound:.4}");

    // Volume of the union of eps-neighborhoods, estimated by membership
    // sampling over a bounding box.
    let half = radius + eps * 2.0;
    let estimate = convex::estimate_region_volume(n, &[half; 2], 20_000, seed ^ 1, |point| {
        packed
            .iter()
            .any(|p| convex::pair_distance(p, point, &body) <= eps)
    })
    .expect("two-dimensional box with positive half-widths");
    let body_volume = 2.0; // area of the unit cross-polytope
    let lower = 2.0 * (delta.sqrt() - 1.0).powi(n as i32) * body_volume * packed.len() as f64;
    let upper = delta.powf(n as f64 / 2.0)
        * 1.0_f64.max(kappa * delta / mu).powi(n as i32)
        * body_volume;
    println!(
        "volume sandwich: {lower:.3} <= {:.3} (+/- {:.3}) <= {upper:.3}",
        estimate.volume, estimate.std_error
    );
    let ok = lower <= estimate.volume + 3.0 * estimate.std_error
        && estimate.volume - 3.0 * estimate.std_error <= upper;
    println!("sandwich holds within 3 standard errors: {}", if ok { "yes" } else { "no" });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
