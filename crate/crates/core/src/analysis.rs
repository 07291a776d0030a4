//! Everything the certification computes about a closed-loop trajectory:
//! the disturbance set, the informativeness constant kappa, the feasible
//! mu interval and its optimizer, the transition-count bound, unstable
//! transition detection, the projection/separation machinery, and a
//! per-trajectory report with one verdict per guarantee.

use nalgebra::{DMatrix, DVector};

use crate::controller::DataBank;
use crate::convex::{self, PointSet};
use crate::plant::{LinearPlant, Trajectory};

/// Per-link tolerance for the one-step inequality chain.
pub const CHAIN_TOL: f64 = 1e-7;
/// Tolerance for the geometric-decay and worst-case checks.
pub const DECAY_TOL: f64 = 1e-7;
/// Additive slack for the finite-horizon stand-in of the asymptotic bound.
pub const ASYMPTOTIC_SLACK: f64 = 0.05;
/// Relative tolerance on the norm of projected points.
pub const PROJECTION_TOL: f64 = 1e-9;

/// Realized plus virtual disturbances; the set defining the norm that all
/// guarantees are phrased in.
#[derive(Debug, Clone, PartialEq)]
pub struct DisturbanceSet {
    realized: Vec<DVector<f64>>,
    virtual_: Vec<DVector<f64>>,
}

impl DisturbanceSet {
    pub fn new(realized: Vec<DVector<f64>>, virtual_: Vec<DVector<f64>>) -> Self {
        assert!(!virtual_.is_empty(), "initialization always contributes virtual disturbances");
        DisturbanceSet { realized, virtual_ }
    }

    /// Build from a trajectory's realized disturbances and the
    /// initialization blocks recorded in the bank, using the true system
    /// matrix (evaluation side only).
    pub fn from_run(traj: &Trajectory, plant: &LinearPlant, bank: &DataBank) -> Self {
        Self::new(traj.disturbances.clone(), virtual_disturbances(plant.a0(), bank))
    }

    pub fn realized(&self) -> &[DVector<f64>] {
        &self.realized
    }

    pub fn virtuals(&self) -> &[DVector<f64>] {
        &self.virtual_
    }

    /// The combined generator set `W`.
    pub fn point_set(&self) -> PointSet {
        let mut points = self.realized.clone();
        points.extend(self.virtual_.iter().cloned());
        PointSet::new(points)
    }
}

/// Virtual disturbances of the initialization columns:
/// `w_hat_i = x_hat_plus_i - A0 x_hat_i - u_hat_i`.
pub fn virtual_disturbances(a0: &DMatrix<f64>, bank: &DataBank) -> Vec<DVector<f64>> {
    assert_eq!(a0.nrows(), bank.state_dim(), "system matrix dimension mismatch");
    let w_init = bank.init_successors() - a0 * bank.init_states() - bank.init_inputs();
    w_init.column_iter().map(|c| c.into_owned()).collect()
}

/// The informativeness constant: the set gauge of the disturbance set with
/// respect to the observation columns.
pub fn kappa_tau(w: &DisturbanceSet, observations: &PointSet) -> f64 {
    convex::set_gauge(&w.point_set(), observations)
}

/// Lower end of the open interval of feasible mu values; the interval is
/// `(mu_min, 1)` and is nonempty for every finite positive kappa.
pub fn mu_interval_min(kappa: f64) -> f64 {
    assert!(kappa > 0.0, "kappa must be positive");
    1.0 / ((0.25 + 1.0 / kappa).sqrt() + 0.5)
}

/// The asymptotic-bound optimizer `mu*` and the resulting bound
/// `m = kappa (1/2 + sqrt(1/4 + 1/kappa)) + 1`, which never exceeds
/// `kappa + 2`. `kappa = 0` is the degenerate no-disturbance limit where
/// every mu in (0, 1) is feasible and the bound collapses to 1.
pub fn mu_star_and_m(kappa: f64) -> (f64, f64) {
    assert!(kappa >= 0.0 && kappa.is_finite(), "kappa must be finite and nonnegative");
    if kappa == 0.0 {
        return (0.0, 1.0);
    }
    let mu_star = mu_interval_min(kappa);
    let m = kappa * (0.5 + (0.25 + 1.0 / kappa).sqrt()) + 1.0;
    (mu_star, m)
}

/// `delta = mu^2 / ((1 - mu) kappa)`, the reparametrized transition
/// threshold; valid mu values map to `delta > 1`.
pub fn delta_from_mu(mu: f64, kappa: f64) -> f64 {
    assert!((0.0..1.0).contains(&mu) && mu > 0.0, "mu must lie in (0, 1)");
    assert!(kappa > 0.0, "kappa must be positive");
    mu * mu / ((1.0 - mu) * kappa)
}

/// Inverse of [`delta_from_mu`]: `mu = 1 / (sqrt(1/4 + 1/(delta kappa)) + 1/2)`.
pub fn mu_from_delta(delta: f64, kappa: f64) -> f64 {
    assert!(delta > 0.0, "delta must be positive");
    assert!(kappa > 0.0, "kappa must be positive");
    1.0 / ((0.25 + 1.0 / (delta * kappa)).sqrt() + 0.5)
}

/// Parameter bundle for the transition-count bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParameters {
    pub kappa: f64,
    pub mu: f64,
    pub delta: f64,
    pub tau: usize,
    pub n: usize,
}

impl BoundParameters {
    /// Couple mu and delta through kappa; the two stay in their one-to-one
    /// relationship by construction.
    pub fn from_mu(mu: f64, kappa: f64, tau: usize, n: usize) -> Result<Self, BoundDomainError> {
        if kappa > 0.0 && !(mu > mu_interval_min(kappa) && mu < 1.0) {
            return Err(BoundDomainError { mu, kappa });
        }
        let delta = if kappa > 0.0 { delta_from_mu(mu, kappa) } else { f64::INFINITY };
        Ok(BoundParameters { kappa, mu, delta, tau, n })
    }

    pub fn from_delta(delta: f64, kappa: f64, tau: usize, n: usize) -> Result<Self, BoundDomainError> {
        if delta <= 1.0 {
            return Err(BoundDomainError { mu: f64::NAN, kappa });
        }
        let mu = mu_from_delta(delta, kappa);
        Ok(BoundParameters { kappa, mu, delta, tau, n })
    }
}

/// The requested mu lies outside the feasible interval (equivalently
/// delta <= 1).
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("mu = {mu} outside the feasible interval for kappa = {kappa}")]
pub struct BoundDomainError {
    pub mu: f64,
    pub kappa: f64,
}

/// Upper bound on the number of unstable transitions, mu form:
/// `1/2 (mu / (mu - sqrt(kappa (1 - mu))))^n max{1, mu/(1-mu)}^n`.
pub fn n_bound_mu(mu: f64, kappa: f64, n: usize) -> Result<f64, BoundDomainError> {
    let root = (kappa * (1.0 - mu)).sqrt();
    if !(0.0 < mu && mu < 1.0) || mu <= root {
        return Err(BoundDomainError { mu, kappa });
    }
    let ratio = mu / (mu - root);
    let tail = 1.0_f64.max(mu / (1.0 - mu));
    Ok(0.5 * ratio.powi(n as i32) * tail.powi(n as i32))
}

/// The same bound in its delta form:
/// `1/2 (sqrt(delta)/(sqrt(delta)-1))^n max{1/(delta kappa),
/// sqrt(1/4 + 1/(delta kappa)) + 1/2}^n (delta kappa)^n`.
pub fn n_bound_delta(delta: f64, kappa: f64, n: usize) -> Result<f64, BoundDomainError> {
    if delta <= 1.0 || kappa <= 0.0 {
        return Err(BoundDomainError { mu: f64::NAN, kappa });
    }
    let dk = delta * kappa;
    let sqrt_d = delta.sqrt();
    let front = sqrt_d / (sqrt_d - 1.0);
    let mid = (1.0 / dk).max((0.25 + 1.0 / dk).sqrt() + 0.5);
    Ok(0.5 * front.powi(n as i32) * mid.powi(n as i32) * dk.powi(n as i32))
}

/// Evaluate the bound for a coupled parameter bundle (mu form; for
/// `kappa = 0` the kappa term vanishes and the mu form remains valid).
pub fn n_bound(params: &BoundParameters) -> Result<f64, BoundDomainError> {
    n_bound_mu(params.mu, params.kappa, params.n)
}

/// Separate cardinality bound for greedy packings of an arbitrary
/// separated set, phrased in delta and mu directly:
/// `1/2 (sqrt(delta)/(sqrt(delta)-1))^n max{1, delta kappa / mu}^n`.
pub fn packing_cardinality_bound(delta: f64, kappa: f64, mu: f64, n: usize) -> f64 {
    assert!(delta > 1.0);
    let sqrt_d = delta.sqrt();
    let front = sqrt_d / (sqrt_d - 1.0);
    let mid = 1.0_f64.max(delta * kappa / mu);
    0.5 * front.powi(n as i32) * mid.powi(n as i32)
}

/// Gauge norms of a sequence of vectors with respect to `W`.
pub fn gauge_series(w: &PointSet, vectors: &[DVector<f64>]) -> Vec<f64> {
    vectors.iter().map(|v| convex::gauge_norm(w, v)).collect()
}

/// All times `t >= tau` with a strict mu-unstable transition
/// `||x_{t+1}||_W > max{1/(1-mu), mu ||x_t||_W + 1}`, together with the
/// originating states.
pub fn detect_unstable(
    traj: &Trajectory,
    w: &DisturbanceSet,
    mu: f64,
    tau: usize,
) -> (Vec<usize>, Vec<DVector<f64>>) {
    let gauges = gauge_series(&w.point_set(), &traj.states);
    detect_unstable_from_gauges(&traj.states, &gauges, mu, tau)
}

/// Detection against a precomputed gauge series (avoids re-solving the
/// gauge LPs when scanning many mu values).
pub fn detect_unstable_from_gauges(
    states: &[DVector<f64>],
    gauges: &[f64],
    mu: f64,
    tau: usize,
) -> (Vec<usize>, Vec<DVector<f64>>) {
    assert!((0.0..1.0).contains(&mu) && mu > 0.0, "mu must lie in (0, 1)");
    assert_eq!(states.len(), gauges.len());
    let mut times = Vec::new();
    let mut origins = Vec::new();
    for t in tau..states.len().saturating_sub(1) {
        let threshold = (1.0 / (1.0 - mu)).max(mu * gauges[t] + 1.0);
        if gauges[t + 1] > threshold {
            times.push(t);
            origins.push(states[t].clone());
        }
    }
    (times, origins)
}

/// Radially project detected origins onto the sphere `||p||_W = delta/mu`.
/// A detected origin always has a positive finite gauge, so the scaling is
/// well defined; anything else signals a broken detection invariant.
pub fn project_unstable(
    origins: &[DVector<f64>],
    params: &BoundParameters,
    w: &PointSet,
) -> Vec<DVector<f64>> {
    origins
        .iter()
        .map(|p| {
            let norm = convex::gauge_norm(w, p);
            assert!(
                norm.is_finite() && norm > 0.0,
                "unstable-transition origin with degenerate gauge norm"
            );
            p * (params.delta / (params.mu * norm))
        })
        .collect()
}

/// Scalar certificates `V1 = max{0, ||x||_W - 1/(1-mu)}` and
/// `V2 = max{||x||_W, 1/(1-mu)}` along the trajectory.
pub fn lyapunov_traces(gauges: &[f64], mu: f64) -> (Vec<f64>, Vec<f64>) {
    let level = 1.0 / (1.0 - mu);
    let v1 = gauges.iter().map(|g| (g - level).max(0.0)).collect();
    let v2 = gauges.iter().map(|g| g.max(level)).collect();
    (v1, v2)
}

/// Worst-case bound constituents: `f = max{1, kappa^N} max{1/(1-mu),
/// ||x_tau||_W}` and the geometric tail `g = (1 - kappa^N)/(1 - kappa)`
/// (its `kappa -> 1` limit is `N`).
pub fn worst_case_bound(
    kappa: f64,
    mu: f64,
    x_tau_gauge: f64,
    n: usize,
) -> Result<(f64, f64), BoundDomainError> {
    let n_max = n_bound_mu(mu, kappa, n)?;
    let kappa_pow = kappa.powf(n_max);
    let f = 1.0_f64.max(kappa_pow) * (1.0 / (1.0 - mu)).max(x_tau_gauge);
    let g = if (kappa - 1.0).abs() < 1e-9 {
        n_max
    } else {
        (1.0 - kappa_pow) / (1.0 - kappa)
    };
    Ok((f, g))
}

/// `||A0||_W = max over generators w of W of ||A0 w||_W`; infinite when
/// the matrix maps some generator outside `span(W)`.
pub fn a0_gauge(a0: &DMatrix<f64>, w: &PointSet) -> f64 {
    w.points()
        .iter()
        .map(|p| convex::gauge_norm(w, &(a0 * p)))
        .fold(0.0, f64::max)
}

/// How the certification picks mu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuPolicy {
    /// The asymptotic-bound optimizer `mu*(kappa_tau)`.
    Star,
    Fixed(f64),
}

/// Pass/fail per guarantee. All thresholds are fixed at compile time;
/// failures are verdicts, never exceptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    /// Transition count within the bound.
    pub transition_count: bool,
    /// One-step inequality chain at every step from tau on.
    pub chain: bool,
    /// Per-step transition clauses for the scalar certificates.
    pub transition_clauses: bool,
    /// Geometric decay of V1 after the last detected transition.
    pub exponential_decay: bool,
    /// Worst-case state bound `f + g`.
    pub worst_case_state: bool,
    /// Per-step input bound with the `(||A0||_W + kappa_tau)` factor.
    pub input_bound: bool,
    /// Projected transition origins are delta-separated.
    pub separation: bool,
    /// Projection preserved cardinality.
    pub cardinality: bool,
    /// Finite-horizon stand-in for the asymptotic bound (approximate:
    /// max over the final quarter against `1/(1-mu)` plus slack).
    pub asymptotic: bool,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        self.transition_count
            && self.chain
            && self.transition_clauses
            && self.exponential_decay
            && self.worst_case_state
            && self.input_bound
            && self.separation
            && self.cardinality
            && self.asymptotic
    }
}

/// The full per-trajectory certification record. Every verdict is
/// recomputable from the stored traces.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub n: usize,
    pub horizon: usize,
    pub tau: usize,
    pub mu: f64,
    pub delta: f64,
    /// Whether mu lies in the feasible interval for kappa_tau; when it
    /// does not, the bound- and projection-based clauses are vacuous.
    pub mu_feasible: bool,
    /// `kappa_t` for `t = 0 ..= horizon` (index t uses data through
    /// `x_{t-1}`).
    pub kappa_series: Vec<f64>,
    pub kappa_tau: f64,
    pub mu_star: f64,
    pub m_kappa_tau: f64,
    /// `||x_t||_W` for `t = 0 ..= horizon`.
    pub state_gauges: Vec<f64>,
    /// `||u_t||_W` for `t = 0 .. horizon`.
    pub input_gauges: Vec<f64>,
    /// `||lambda_t||_1` per step.
    pub lambda_l1: Vec<f64>,
    pub a0_gauge: f64,
    pub unstable_times: Vec<usize>,
    pub unstable_states: Vec<DVector<f64>>,
    pub projected: Vec<DVector<f64>>,
    pub transition_bound: f64,
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    /// Product of kappa values at the transition times (diagnostic; its
    /// upper bound is the `max{1, kappa^N}` factor of f).
    pub alpha: f64,
    /// Partial-product sum at the transition times (diagnostic; bounded by
    /// g).
    pub beta: f64,
    pub f_bound: f64,
    pub g_bound: f64,
    /// Max state gauge over the final quarter of the horizon.
    pub tail_max_gauge: f64,
    pub asymptotic_threshold: f64,
    /// Times with infinite gauge (state outside `span(W)`), reported
    /// rather than fatal.
    pub unbounded_gauge_times: Vec<usize>,
    pub verdicts: Verdicts,
}

/// Run every certification check for one closed-loop trajectory.
///
/// The bank may be the final bank of the run (only its initialization
/// blocks are read). The true system matrix enters only through the
/// virtual disturbances and `||A0||_W`.
pub fn certify(
    traj: &Trajectory,
    plant: &LinearPlant,
    bank: &DataBank,
    tau: usize,
    mu_policy: MuPolicy,
) -> CertificationReport {
    let n = plant.dim();
    let horizon = traj.horizon();
    assert!(tau < horizon, "tau must precede the horizon");

    let disturbance_set = DisturbanceSet::from_run(traj, plant, bank);
    let w = disturbance_set.point_set();

    let state_gauges = gauge_series(&w, &traj.states);
    let input_gauges = gauge_series(&w, &traj.inputs);
    let lambda_l1: Vec<f64> = traj.lambdas.iter().map(|l| l.lp_norm(1)).collect();
    let unbounded_gauge_times: Vec<usize> = state_gauges
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_infinite())
        .map(|(t, _)| t)
        .collect();

    // kappa_t = ||W||_{X_{t-1}}, grown incrementally from the
    // initialization block.
    let mut observations = PointSet::from_columns(&bank.init_states());
    let mut kappa_series = Vec::with_capacity(horizon + 1);
    kappa_series.push(kappa_tau(&disturbance_set, &observations));
    for x in traj.states.iter().take(horizon) {
        observations = observations.with_point(x);
        kappa_series.push(kappa_tau(&disturbance_set, &observations));
    }
    let kappa = kappa_series[tau];
    let (mu_star, m_kappa_tau) = mu_star_and_m(kappa);

    let mu = match mu_policy {
        MuPolicy::Star => {
            // mu* is the open-interval infimum; nudge inside so the strict
            // transition definition and the bounds stay well defined.
            if kappa > 0.0 {
                (mu_star + 1e-9).min(0.5 * (mu_star + 1.0))
            } else {
                0.5
            }
        }
        MuPolicy::Fixed(value) => value,
    };
    let params_result = BoundParameters::from_mu(mu, kappa, tau, n);
    // With kappa = 0 every mu in (0, 1) is feasible; otherwise an
    // out-of-interval mu renders the bound-based clauses vacuous.
    let mu_feasible = kappa == 0.0 || params_result.is_ok();
    let params = params_result.unwrap_or(BoundParameters { kappa, mu, delta: f64::INFINITY, tau, n });
    let transition_bound = n_bound(&params).unwrap_or(f64::INFINITY);

    let (unstable_times, unstable_states) =
        detect_unstable_from_gauges(&traj.states, &state_gauges, mu, tau);
    let projected = if params.delta.is_finite() {
        project_unstable(&unstable_states, &params, &w)
    } else {
        Vec::new()
    };

    let (v1, v2) = lyapunov_traces(&state_gauges, mu);
    let level = 1.0 / (1.0 - mu);

    // --- verdicts ---

    let transition_count = (unstable_times.len() as f64) <= transition_bound;

    let mut chain = true;
    for t in tau..horizon {
        let next = state_gauges[t + 1];
        let link1 = next <= lambda_l1[t] + 1.0 + CHAIN_TOL;
        // lambda_l1[t] equals ||x_t||_{X_{t-1}} by construction (same LP).
        let link3 = lambda_l1[t] <= kappa_series[t] * state_gauges[t] + CHAIN_TOL
            || (kappa_series[t] * state_gauges[t]).is_nan()
            || state_gauges[t].is_infinite();
        let link4 = kappa_series[t] <= kappa + CHAIN_TOL;
        if !(link1 && link3 && link4) {
            chain = false;
            break;
        }
    }

    let mut transition_clauses = true;
    for t in tau..horizon {
        let is_transition = unstable_times.binary_search(&t).is_ok();
        if is_transition {
            let rhs = kappa_series[t] * v2[t] + 1.0;
            if !(v2[t + 1] <= rhs + CHAIN_TOL || rhs.is_nan() || rhs.is_infinite()) {
                transition_clauses = false;
                break;
            }
        } else if !(v1[t + 1] <= mu * v1[t] + CHAIN_TOL && v2[t + 1] <= v2[t] + CHAIN_TOL) {
            transition_clauses = false;
            break;
        }
    }

    let t_prime = unstable_times.last().map(|&t| t + 1).unwrap_or(tau);
    let mut exponential_decay = true;
    if v1[t_prime].is_finite() {
        for k in 0..=(horizon - t_prime) {
            if v1[t_prime + k] > mu.powi(k as i32) * v1[t_prime] + DECAY_TOL {
                exponential_decay = false;
                break;
            }
        }
    }

    let a0_gauge_value = a0_gauge(plant.a0(), &w);

    let x_tau_gauge = if tau == 0 && state_gauges[0].is_infinite() {
        // Footnote case: the initial state can lie outside span(W); its
        // image under the dynamics does not.
        convex::gauge_norm(&w, &(plant.a0() * &traj.states[0]))
    } else {
        state_gauges[tau]
    };
    let (f_bound, g_bound) = worst_case_bound(kappa.max(f64::MIN_POSITIVE), mu, x_tau_gauge, n)
        .unwrap_or((f64::INFINITY, f64::INFINITY));
    let sup_gauge = state_gauges[tau..]
        .iter()
        .cloned()
        .filter(|g| g.is_finite())
        .fold(0.0, f64::max);
    let worst_case_state = sup_gauge <= f_bound + g_bound + DECAY_TOL
        && state_gauges[tau + 1..].iter().all(|g| g.is_finite());

    let input_factor = a0_gauge_value + kappa;
    let input_bound = (tau..horizon).all(|t| {
        input_gauges[t] <= input_factor * state_gauges[t] + DECAY_TOL
            || (input_factor * state_gauges[t]).is_nan()
            || state_gauges[t].is_infinite()
    });

    let separation = if projected.len() >= 2 {
        let base = PointSet::from_columns(&bank.init_states());
        let obs_tau = traj.states[..tau]
            .iter()
            .fold(base, |acc, x| acc.with_point(x));
        convex::is_separated(&projected, params.delta, &obs_tau)
    } else {
        true
    };

    let cardinality = if !mu_feasible {
        true
    } else {
        let mut distinct = 0usize;
        for (i, p) in projected.iter().enumerate() {
            if !projected[..i].contains(p) {
                distinct += 1;
            }
        }
        distinct == unstable_states.len()
            && projected.iter().all(|p| {
                let g = convex::gauge_norm(&w, p);
                (g - params.delta / mu).abs() <= PROJECTION_TOL * (params.delta / mu).max(1.0)
            })
    };

    let tail_start = tau.max(horizon - horizon / 4);
    let tail_max_gauge = state_gauges[tail_start..]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    let asymptotic_threshold = level + ASYMPTOTIC_SLACK;
    let asymptotic = tail_max_gauge <= asymptotic_threshold;

    let alpha: f64 = unstable_times.iter().map(|&t| kappa_series[t]).product();
    let beta: f64 = {
        let m = unstable_times.len();
        (0..m)
            .map(|k| {
                (1..=k)
                    .map(|j| kappa_series[unstable_times[m - j]])
                    .product::<f64>()
            })
            .sum()
    };

    CertificationReport {
        n,
        horizon,
        tau,
        mu,
        delta: params.delta,
        mu_feasible,
        kappa_series,
        kappa_tau: kappa,
        mu_star,
        m_kappa_tau,
        state_gauges,
        input_gauges,
        lambda_l1,
        a0_gauge: a0_gauge_value,
        unstable_times,
        unstable_states,
        projected,
        transition_bound,
        v1,
        v2,
        alpha,
        beta,
        f_bound,
        g_bound,
        tail_max_gauge,
        asymptotic_threshold,
        unbounded_gauge_times,
        verdicts: Verdicts {
            transition_count,
            chain,
            transition_clauses,
            exponential_decay,
            worst_case_state,
            input_bound,
            separation,
            cardinality,
            asymptotic,
        },
    }
}

impl CertificationReport {
    /// Structured plain-text rendering of the report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let v = &self.verdicts;
        let line = |name: &str, pass: bool, detail: String| {
            format!("{}  {:<22} {}\n", if pass { "PASS" } else { "FAIL" }, name, detail)
        };
        out.push_str(&format!(
            "certification report  n={} horizon={} tau={}\n",
            self.n, self.horizon, self.tau
        ));
        out.push_str(&format!(
            "kappa_tau={:.6} mu={:.6} delta={:.6} mu_star={:.6} m(kappa_tau)={:.6}\n",
            self.kappa_tau, self.mu, self.delta, self.mu_star, self.m_kappa_tau
        ));
        out.push_str(&format!(
            "a0_gauge={:.6} alpha={:.6} beta={:.6}\n",
            self.a0_gauge, self.alpha, self.beta
        ));
        if !self.mu_feasible {
            out.push_str("note: mu lies outside the feasible interval; bound- and projection-based clauses are vacuous\n");
        }
        if !self.unbounded_gauge_times.is_empty() {
            out.push_str(&format!(
                "unbounded-norm states at t={:?} (outside span(W))\n",
                self.unbounded_gauge_times
            ));
        }
        out.push_str(&line(
            "transition-count",
            v.transition_count,
            format!("|X_mu|={} <= N={:.4}", self.unstable_times.len(), self.transition_bound),
        ));
        out.push_str(&line("one-step-chain", v.chain, format!("tol={CHAIN_TOL:e}")));
        out.push_str(&line("transition-clauses", v.transition_clauses, format!("tol={CHAIN_TOL:e}")));
        out.push_str(&line(
            "exponential-decay",
            v.exponential_decay,
            format!("after T'={}", self.unstable_times.last().map(|&t| t + 1).unwrap_or(self.tau)),
        ));
        out.push_str(&line(
            "worst-case-state",
            v.worst_case_state,
            format!("sup<=f+g={:.4}", self.f_bound + self.g_bound),
        ));
        out.push_str(&line(
            "input-bound",
            v.input_bound,
            format!("factor={:.4}", self.a0_gauge + self.kappa_tau),
        ));
        out.push_str(&line(
            "separation",
            v.separation,
            format!("|P_mu|={} at delta={:.4}", self.projected.len(), self.delta),
        ));
        out.push_str(&line(
            "cardinality",
            v.cardinality,
            format!("|P_mu|={} |X_mu|={}", self.projected.len(), self.unstable_states.len()),
        ));
        out.push_str(&line(
            "asymptotic (approx)",
            v.asymptotic,
            format!("tail-max={:.4} <= {:.4}", self.tail_max_gauge, self.asymptotic_threshold),
        ));
        out.push_str(&format!("overall: {}\n", if v.all_pass() { "PASS" } else { "FAIL" }));
        out
    }
}
