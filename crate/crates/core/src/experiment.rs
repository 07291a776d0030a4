//! Experiment harness: configuration, per-run series extraction, CSV
//! emission, Monte-Carlo batches with upper-percentile aggregation, and the
//! canned figure-reproduction scenarios.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::analysis::{self, CertificationReport, MuPolicy, Verdicts};
use crate::controller::DataBank;
use crate::plant::{run_closed_loop, run_seed, unstable_demo_plant, LinearPlant, Trajectory};

/// How the plant matrix of each run is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum PlantScenario {
    /// Entries i.i.d. standard normal, fresh per run.
    Random,
    /// The fixed three-dimensional demonstration system.
    Demo,
}

/// Disturbance scenario per run.
#[derive(Debug, Clone, PartialEq)]
pub enum DisturbanceScenario {
    Zero,
    /// Entries i.i.d. uniform in `[-h, h]`.
    Uniform(f64),
    /// Explicit sequence loaded from a CSV file (one row per step).
    ExplicitFile(String),
}

/// Initial-state scenario per run.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialStateScenario {
    /// Entries i.i.d. `N(0, sigma^2)`.
    Gaussian(f64),
    Fixed(Vec<f64>),
}

/// Resolved experiment parameters; defaults follow the closed-loop studies
/// (n = 3, eps = 0.1, uniform unit-box disturbance, mu = mu*).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub runs: usize,
    pub horizon: usize,
    pub eps: f64,
    pub plant: PlantScenario,
    pub disturbance: DisturbanceScenario,
    pub x0: InitialStateScenario,
    pub seed: u64,
    pub tau: usize,
    pub mu: MuPolicy,
    pub percentiles: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 3,
            runs: 1,
            horizon: 40,
            eps: crate::controller::DEFAULT_EPS,
            plant: PlantScenario::Random,
            disturbance: DisturbanceScenario::Uniform(1.0),
            x0: InitialStateScenario::Gaussian(1.0),
            seed: 0,
            tau: 0,
            mu: MuPolicy::Star,
            percentiles: vec![1.0, 10.0, 50.0],
        }
    }
}

/// Configuration or I/O failure; maps to the usage exit status.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

impl ExperimentConfig {
    /// Parse a plain-text `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut config = ExperimentConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            config
                .set(key.trim(), value.trim())
                .map_err(|message| ConfigError::Parse { line: idx + 1, message })?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Apply one `key = value` assignment (also used for flag overrides).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
            value.parse().map_err(|_| format!("bad value `{value}` for `{key}`"))
        }
        match key {
            "n" => self.n = num(key, value)?,
            "runs" => self.runs = num(key, value)?,
            "horizon" => self.horizon = num(key, value)?,
            "eps" => self.eps = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "tau" => self.tau = num(key, value)?,
            "plant" => {
                self.plant = match value {
                    "random" => PlantScenario::Random,
                    "demo" => PlantScenario::Demo,
                    other => return Err(format!("unknown plant scenario `{other}`")),
                }
            }
            "disturbance" => {
                self.disturbance = if value == "zero" {
                    DisturbanceScenario::Zero
                } else if let Some(h) = value.strip_prefix("uniform:") {
                    DisturbanceScenario::Uniform(num("disturbance", h)?)
                } else if let Some(p) = value.strip_prefix("explicit:") {
                    DisturbanceScenario::ExplicitFile(p.to_string())
                } else {
                    return Err(format!("unknown disturbance scenario `{value}`"));
                }
            }
            "x0" => {
                self.x0 = if let Some(sigma) = value.strip_prefix("gaussian:") {
                    InitialStateScenario::Gaussian(num("x0", sigma)?)
                } else if let Some(list) = value.strip_prefix("fixed:") {
                    InitialStateScenario::Fixed(
                        list.split(',')
                            .map(|v| num("x0", v.trim()))
                            .collect::<Result<_, _>>()?,
                    )
                } else {
                    return Err(format!("unknown x0 scenario `{value}`"));
                }
            }
            "mu" => {
                self.mu = if value == "star" {
                    MuPolicy::Star
                } else {
                    MuPolicy::Fixed(num("mu", value)?)
                }
            }
            "percentiles" => {
                self.percentiles = value
                    .split(',')
                    .map(|v| num("percentiles", v.trim()))
                    .collect::<Result<_, _>>()?
            }
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |m: String| Err(ConfigError::Invalid(m));
        if self.n == 0 {
            return fail("n must be at least 1".into());
        }
        if self.runs == 0 {
            return fail("runs must be at least 1".into());
        }
        if self.horizon < 2 {
            return fail("horizon must be at least 2".into());
        }
        if !(self.eps > 0.0) {
            return fail("eps must be positive".into());
        }
        if self.tau >= self.horizon {
            return fail("tau must be smaller than the horizon".into());
        }
        if self.percentiles.is_empty() || self.percentiles.iter().any(|&p| !(p > 0.0 && p <= 100.0)) {
            return fail("percentiles must lie in (0, 100]".into());
        }
        if let MuPolicy::Fixed(mu) = self.mu {
            if !(mu > 0.0 && mu < 1.0) {
                return fail("fixed mu must lie in (0, 1)".into());
            }
        }
        if let InitialStateScenario::Fixed(v) = &self.x0 {
            if v.len() != self.n {
                return fail("fixed x0 length must equal n".into());
            }
        }
        if let PlantScenario::Demo = self.plant {
            if self.n != 3 {
                return fail("the demo plant is three-dimensional".into());
            }
        }
        Ok(())
    }

    /// Canonical `key = value` rendering of the resolved configuration.
    pub fn resolved_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "runs = {}", self.runs);
        let _ = writeln!(out, "horizon = {}", self.horizon);
        let _ = writeln!(out, "eps = {}", self.eps);
        let _ = writeln!(
            out,
            "plant = {}",
            match &self.plant {
                PlantScenario::Random => "random".to_string(),
                PlantScenario::Demo => "demo".to_string(),
            }
        );
        let _ = writeln!(
            out,
            "disturbance = {}",
            match &self.disturbance {
                DisturbanceScenario::Zero => "zero".to_string(),
                DisturbanceScenario::Uniform(h) => format!("uniform:{h}"),
                DisturbanceScenario::ExplicitFile(p) => format!("explicit:{p}"),
            }
        );
        let _ = writeln!(
            out,
            "x0 = {}",
            match &self.x0 {
                InitialStateScenario::Gaussian(s) => format!("gaussian:{s}"),
                InitialStateScenario::Fixed(v) => format!(
                    "fixed:{}",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                ),
            }
        );
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "tau = {}", self.tau);
        let _ = writeln!(
            out,
            "mu = {}",
            match self.mu {
                MuPolicy::Star => "star".to_string(),
                MuPolicy::Fixed(v) => v.to_string(),
            }
        );
        let _ = writeln!(
            out,
            "percentiles = {}",
            self.percentiles.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        );
        out
    }
}

/// One row of the plotted data series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRow {
    pub t: usize,
    /// `||x_t||_W` (or its percentile across runs).
    pub xbvec: f64,
    /// `||u_t||_W`.
    pub ubvec: f64,
    /// `kappa_t`.
    pub kappa: f64,
    /// `m(kappa_t)`.
    pub mkappa: f64,
    /// Euclidean norm of the state.
    pub x2norm: f64,
    /// Euclidean norm of the input.
    pub u2norm: f64,
}

/// A per-time-step table of the plotted columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    pub rows: Vec<SeriesRow>,
}

const SERIES_HEADER: &str = "t,xbvec,ubvec,kappa,mkappa,x2norm,u2norm";

/// 17 significant digits: enough to round-trip any f64 exactly.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl SeriesTable {
    /// Per-step series of a single certified run (`t = 0 .. horizon`).
    pub fn from_report(report: &CertificationReport, traj: &Trajectory) -> Self {
        let rows = (0..report.horizon)
            .map(|t| SeriesRow {
                t,
                xbvec: report.state_gauges[t],
                ubvec: report.input_gauges[t],
                kappa: report.kappa_series[t],
                mkappa: analysis::mu_star_and_m(report.kappa_series[t]).1,
                x2norm: traj.states[t].norm(),
                u2norm: traj.inputs[t].norm(),
            })
            .collect();
        SeriesTable { rows }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SERIES_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.t,
                fmt_f64(r.xbvec),
                fmt_f64(r.ubvec),
                fmt_f64(r.kappa),
                fmt_f64(r.mkappa),
                fmt_f64(r.x2norm),
                fmt_f64(r.u2norm)
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, ConfigError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == SERIES_HEADER => {}
            _ => {
                return Err(ConfigError::Parse {
                    line: 1,
                    message: format!("expected header `{SERIES_HEADER}`"),
                })
            }
        }
        let mut rows = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 7 {
                return Err(ConfigError::Parse {
                    line: idx + 1,
                    message: format!("expected 7 fields, got {}", fields.len()),
                });
            }
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| ConfigError::Parse {
                    line: idx + 1,
                    message: format!("bad number `{s}`"),
                })
            };
            rows.push(SeriesRow {
                t: fields[0].trim().parse().map_err(|_| ConfigError::Parse {
                    line: idx + 1,
                    message: format!("bad time index `{}`", fields[0]),
                })?,
                xbvec: parse(fields[1])?,
                ubvec: parse(fields[2])?,
                kappa: parse(fields[3])?,
                mkappa: parse(fields[4])?,
                x2norm: parse(fields[5])?,
                u2norm: parse(fields[6])?,
            });
        }
        Ok(SeriesTable { rows })
    }
}

/// Serialize a trajectory to the experiment record: columns `time`, state
/// components, input components. The final row has no input; its input
/// cells are empty.
pub fn trajectory_to_csv(traj: &Trajectory) -> String {
    let n = traj.states[0].len();
    let mut out = String::from("time");
    for j in 1..=n {
        let _ = write!(out, ",x{j}");
    }
    for j in 1..=n {
        let _ = write!(out, ",u{j}");
    }
    out.push('\n');
    for (t, x) in traj.states.iter().enumerate() {
        let _ = write!(out, "{t}");
        for j in 0..n {
            let _ = write!(out, ",{}", fmt_f64(x[j]));
        }
        for j in 0..n {
            match traj.inputs.get(t) {
                Some(u) => {
                    let _ = write!(out, ",{}", fmt_f64(u[j]));
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Parse the trajectory record back into state and input sequences.
pub fn trajectory_from_csv(text: &str) -> Result<(Vec<DVector<f64>>, Vec<DVector<f64>>), ConfigError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ConfigError::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 3 || cols.len() % 2 == 0 || cols[0] != "time" {
        return Err(ConfigError::Parse {
            line: 1,
            message: "expected columns time,x1..xn,u1..un".into(),
        });
    }
    let n = (cols.len() - 1) / 2;
    let mut states = Vec::new();
    let mut inputs = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 * n + 1 {
            return Err(ConfigError::Parse {
                line: idx + 1,
                message: format!("expected {} fields, got {}", 2 * n + 1, fields.len()),
            });
        }
        let parse = |s: &str| {
            s.trim().parse::<f64>().map_err(|_| ConfigError::Parse {
                line: idx + 1,
                message: format!("bad number `{s}`"),
            })
        };
        let x = DVector::from_iterator(
            n,
            fields[1..=n].iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?,
        );
        states.push(x);
        if !fields[n + 1].trim().is_empty() {
            let u = DVector::from_iterator(
                n,
                fields[n + 1..].iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?,
            );
            inputs.push(u);
        }
    }
    Ok((states, inputs))
}

/// Everything produced by one closed-loop run.
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub report: CertificationReport,
    pub series: SeriesTable,
    /// First time after which no unstable transition occurs.
    pub settling_time: usize,
}

/// Execute run `index` of the batch described by `config`.
pub fn execute_run(config: &ExperimentConfig, index: u64) -> Result<RunOutcome, ConfigError> {
    let seed = run_seed(config.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.n;

    let plant = match &config.plant {
        PlantScenario::Demo => unstable_demo_plant(),
        PlantScenario::Random => {
            LinearPlant::new(DMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal)))
        }
    };
    let x0 = match &config.x0 {
        InitialStateScenario::Gaussian(sigma) => {
            DVector::from_fn(n, |_, _| sigma * rng.sample::<f64, _>(StandardNormal))
        }
        InitialStateScenario::Fixed(v) => DVector::from_row_slice(v),
    };
    let disturbances: Vec<DVector<f64>> = match &config.disturbance {
        DisturbanceScenario::Zero => vec![DVector::zeros(n); config.horizon],
        DisturbanceScenario::Uniform(h) => (0..config.horizon)
            .map(|_| DVector::from_fn(n, |_, _| rng.gen_range(-h..*h)))
            .collect(),
        DisturbanceScenario::ExplicitFile(path) => {
            let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.clone(),
                source,
            })?;
            let (w, _) = trajectory_from_csv(&text)
                .or_else(|_| parse_vector_rows(&text, n))
                .map_err(|e| ConfigError::Invalid(format!("{path}: {e}")))?;
            if w.len() < config.horizon {
                return Err(ConfigError::Invalid(format!(
                    "{path}: {} rows but horizon is {}",
                    w.len(),
                    config.horizon
                )));
            }
            w
        }
    };

    let bank = DataBank::init_no_prior(n, config.eps);
    let (trajectory, bank) = run_closed_loop(&plant, bank, &disturbances, &x0, config.horizon);
    let report = analysis::certify(&trajectory, &plant, &bank, config.tau, config.mu);
    let series = SeriesTable::from_report(&report, &trajectory);
    let settling_time = report.unstable_times.last().map(|&t| t + 1).unwrap_or(config.tau);
    Ok(RunOutcome {
        trajectory,
        report,
        series,
        settling_time,
    })
}

/// Headerless fallback for explicit disturbance files: one comma-separated
/// vector per line.
fn parse_vector_rows(text: &str, n: usize) -> Result<(Vec<DVector<f64>>, Vec<DVector<f64>>), ConfigError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let values: Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse()).collect();
        let values = values.map_err(|_| ConfigError::Parse {
            line: idx + 1,
            message: "bad number".into(),
        })?;
        if values.len() != n {
            return Err(ConfigError::Parse {
                line: idx + 1,
                message: format!("expected {n} values"),
            });
        }
        rows.push(DVector::from_row_slice(&values));
    }
    Ok((rows, Vec::new()))
}

/// Run a single experiment and write `trajectory.csv`, `series.csv`,
/// `report.txt`, and the resolved `config.txt` into `out`.
pub fn run_single(config: &ExperimentConfig, out: &Path) -> Result<RunOutcome, ConfigError> {
    config.validate()?;
    let outcome = execute_run(config, 0)?;
    write_out(out, "config.txt", &config.resolved_text())?;
    write_out(out, "trajectory.csv", &trajectory_to_csv(&outcome.trajectory))?;
    write_out(out, "series.csv", &outcome.series.to_csv())?;
    write_out(out, "report.txt", &outcome.report.to_text())?;
    Ok(outcome)
}

/// Aggregated batch result: one table per requested percentile, plus
/// clause pass-fractions and settling statistics.
pub struct BatchOutcome {
    /// Parallel to `config.percentiles`.
    pub tables: Vec<SeriesTable>,
    pub pass_fractions: PassFractions,
    pub median_settling_time: usize,
    pub all_pass_fraction: f64,
}

/// Fraction of runs passing each certification clause.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassFractions {
    pub transition_count: f64,
    pub chain: f64,
    pub transition_clauses: f64,
    pub exponential_decay: f64,
    pub worst_case_state: f64,
    pub input_bound: f64,
    pub separation: f64,
    pub cardinality: f64,
    pub asymptotic: f64,
}

/// The "largest p%" value: the `ceil(p/100 * len)`-th largest entry.
pub fn upper_percentile(values: &mut [f64], p: f64) -> f64 {
    assert!(!values.is_empty());
    assert!(p > 0.0 && p <= 100.0, "percentile must lie in (0, 100]");
    values.sort_by(|a, b| b.total_cmp(a));
    let k = ((p / 100.0) * values.len() as f64).ceil() as usize;
    values[k.clamp(1, values.len()) - 1]
}

/// Run the whole batch and write one `percentile_<p>.csv` per requested
/// percentile plus `summary.txt` and the resolved `config.txt` into `out`.
pub fn run_batch(config: &ExperimentConfig, out: &Path) -> Result<BatchOutcome, ConfigError> {
    config.validate()?;
    let mut per_run_series: Vec<SeriesTable> = Vec::with_capacity(config.runs);
    let mut verdicts: Vec<Verdicts> = Vec::with_capacity(config.runs);
    let mut settling: Vec<usize> = Vec::with_capacity(config.runs);
    for index in 0..config.runs {
        let outcome = execute_run(config, index as u64)?;
        per_run_series.push(outcome.series);
        verdicts.push(outcome.report.verdicts);
        settling.push(outcome.settling_time);
    }

    let steps = per_run_series[0].rows.len();
    let mut tables = Vec::with_capacity(config.percentiles.len());
    for &p in &config.percentiles {
        let rows = (0..steps)
            .map(|t| {
                let col = |f: fn(&SeriesRow) -> f64| {
                    let mut values: Vec<f64> =
                        per_run_series.iter().map(|s| f(&s.rows[t])).collect();
                    upper_percentile(&mut values, p)
                };
                SeriesRow {
                    t,
                    xbvec: col(|r| r.xbvec),
                    ubvec: col(|r| r.ubvec),
                    kappa: col(|r| r.kappa),
                    mkappa: col(|r| r.mkappa),
                    x2norm: col(|r| r.x2norm),
                    u2norm: col(|r| r.u2norm),
                }
            })
            .collect();
        tables.push(SeriesTable { rows });
    }

    let frac = |f: fn(&Verdicts) -> bool| {
        verdicts.iter().filter(|v| f(v)).count() as f64 / verdicts.len() as f64
    };
    let pass_fractions = PassFractions {
        transition_count: frac(|v| v.transition_count),
        chain: frac(|v| v.chain),
        transition_clauses: frac(|v| v.transition_clauses),
        exponential_decay: frac(|v| v.exponential_decay),
        worst_case_state: frac(|v| v.worst_case_state),
        input_bound: frac(|v| v.input_bound),
        separation: frac(|v| v.separation),
        cardinality: frac(|v| v.cardinality),
        asymptotic: frac(|v| v.asymptotic),
    };
    let all_pass_fraction = frac(|v| v.all_pass());
    settling.sort_unstable();
    let median_settling_time = settling[settling.len() / 2];

    write_out(out, "config.txt", &config.resolved_text())?;
    for (p, table) in config.percentiles.iter().zip(&tables) {
        write_out(out, &format!("percentile_{p}.csv"), &table.to_csv())?;
    }
    let mut summary = String::new();
    let _ = writeln!(summary, "runs = {}", config.runs);
    let _ = writeln!(summary, "median settling time = {median_settling_time}");
    let _ = writeln!(summary, "pass fraction transition-count = {}", pass_fractions.transition_count);
    let _ = writeln!(summary, "pass fraction one-step-chain = {}", pass_fractions.chain);
    let _ = writeln!(summary, "pass fraction transition-clauses = {}", pass_fractions.transition_clauses);
    let _ = writeln!(summary, "pass fraction exponential-decay = {}", pass_fractions.exponential_decay);
    let _ = writeln!(summary, "pass fraction worst-case-state = {}", pass_fractions.worst_case_state);
    let _ = writeln!(summary, "pass fraction input-bound = {}", pass_fractions.input_bound);
    let _ = writeln!(summary, "pass fraction separation = {}", pass_fractions.separation);
    let _ = writeln!(summary, "pass fraction cardinality = {}", pass_fractions.cardinality);
    let _ = writeln!(summary, "pass fraction asymptotic (approx) = {}", pass_fractions.asymptotic);
    let _ = writeln!(summary, "pass fraction all = {all_pass_fraction}");
    write_out(out, "summary.txt", &summary)?;

    Ok(BatchOutcome {
        tables,
        pass_fractions,
        median_settling_time,
        all_pass_fraction,
    })
}

/// Execute the canned study scenarios and emit every table under `out`:
/// `single/` (the fixed demo system), `uniform/` (random systems, uniform
/// unit-box disturbance, T = 40), and `zero/` (no disturbance, small random
/// initial state, T = 60).
pub fn reproduce_figures(seed: u64, runs: usize, out: &Path) -> Result<(), ConfigError> {
    let single = ExperimentConfig {
        plant: PlantScenario::Demo,
        x0: InitialStateScenario::Fixed(vec![0.2, 0.0, 0.1]),
        seed,
        ..ExperimentConfig::default()
    };
    run_single(&single, &out.join("single"))?;

    let uniform = ExperimentConfig {
        runs,
        seed,
        ..ExperimentConfig::default()
    };
    run_batch(&uniform, &out.join("uniform"))?;

    let zero = ExperimentConfig {
        runs,
        horizon: 60,
        disturbance: DisturbanceScenario::Zero,
        x0: InitialStateScenario::Gaussian(1e-3),
        seed,
        ..ExperimentConfig::default()
    };
    run_batch(&zero, &out.join("zero"))?;
    Ok(())
}

fn write_out(dir: &Path, name: &str, content: &str) -> Result<(), ConfigError> {
    fs::create_dir_all(dir).map_err(|source| ConfigError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })
}
