//! Ground-truth simulation of the unknown linear system
//! `x_{t+1} = A0 x_t + u_t + w_t` and closed-loop rollouts against the
//! cancellation controller.
//!
//! The plant matrix is hidden from the controller; it only feeds the
//! evaluation side (virtual disturbances, certification).

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::controller::DataBank;

/// The true system matrix, known only to the simulation harness.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPlant {
    a0: DMatrix<f64>,
}

impl LinearPlant {
    pub fn new(a0: DMatrix<f64>) -> Self {
        assert_eq!(a0.nrows(), a0.ncols(), "system matrix must be square");
        assert!(a0.iter().all(|v| v.is_finite()), "system matrix must be finite");
        LinearPlant { a0 }
    }

    /// Entries drawn i.i.d. from the standard normal distribution with a
    /// seeded, reproducible generator.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(DMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal)))
    }

    pub fn dim(&self) -> usize {
        self.a0.nrows()
    }

    pub fn a0(&self) -> &DMatrix<f64> {
        &self.a0
    }

    /// One open-loop step `x' = A0 x + u + w`.
    pub fn step(&self, x: &DVector<f64>, u: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        assert_eq!(x.len(), self.dim(), "state dimension mismatch");
        assert_eq!(u.len(), self.dim(), "input dimension mismatch");
        assert_eq!(w.len(), self.dim(), "disturbance dimension mismatch");
        &self.a0 * x + u + w
    }
}

/// Combine process disturbance and measurement noise into the lumped
/// disturbance `w_t = d_t + n_{t+1} - A0 n_t`. The noise sequence carries
/// one more element than the disturbance sequence.
pub fn lump(d: &[DVector<f64>], noise: &[DVector<f64>], plant: &LinearPlant) -> Vec<DVector<f64>> {
    assert_eq!(noise.len(), d.len() + 1, "noise needs one more element than d");
    d.iter()
        .enumerate()
        .map(|(t, dt)| dt + &noise[t + 1] - plant.a0() * &noise[t])
        .collect()
}

/// Disturbance scenarios for the closed-loop experiments.
#[derive(Debug, Clone, PartialEq)]
pub enum DisturbanceModel {
    Zero,
    /// Entries i.i.d. uniform in `[-h_j, h_j]` per axis.
    UniformBox(Vec<f64>),
    Explicit(Vec<DVector<f64>>),
}

impl DisturbanceModel {
    /// Realize the first `horizon` disturbance vectors.
    pub fn realize(&self, n: usize, horizon: usize, seed: u64) -> Vec<DVector<f64>> {
        match self {
            DisturbanceModel::Zero => (0..horizon).map(|_| DVector::zeros(n)).collect(),
            DisturbanceModel::UniformBox(halfwidths) => {
                assert_eq!(halfwidths.len(), n, "one half-width per axis");
                assert!(halfwidths.iter().all(|&h| h > 0.0), "half-widths must be positive");
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..horizon)
                    .map(|_| DVector::from_fn(n, |j, _| rng.gen_range(-halfwidths[j]..halfwidths[j])))
                    .collect()
            }
            DisturbanceModel::Explicit(seq) => {
                assert!(seq.len() >= horizon, "explicit sequence shorter than horizon");
                assert!(seq.iter().all(|w| w.len() == n && w.iter().all(|v| v.is_finite())));
                seq[..horizon].to_vec()
            }
        }
    }
}

/// Time-indexed record of one closed-loop rollout.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `x_0 .. x_T`.
    pub states: Vec<DVector<f64>>,
    /// `u_0 .. u_{T-1}`.
    pub inputs: Vec<DVector<f64>>,
    /// `w_0 .. w_{T-1}`.
    pub disturbances: Vec<DVector<f64>>,
    /// The 1-norm-minimal decomposition coefficients per step.
    pub lambdas: Vec<DVector<f64>>,
}

impl Trajectory {
    pub fn horizon(&self) -> usize {
        self.inputs.len()
    }
}

/// Iterate control -> step -> update for `t = 0 .. T-1`.
pub fn run_closed_loop(
    plant: &LinearPlant,
    mut bank: DataBank,
    disturbances: &[DVector<f64>],
    x0: &DVector<f64>,
    horizon: usize,
) -> (Trajectory, DataBank) {
    assert!(horizon >= 1, "horizon must be at least 1");
    assert!(disturbances.len() >= horizon, "need one disturbance per step");
    assert_eq!(x0.len(), plant.dim());
    let mut states = Vec::with_capacity(horizon + 1);
    let mut inputs = Vec::with_capacity(horizon);
    let mut lambdas = Vec::with_capacity(horizon);
    let mut x = x0.clone();
    states.push(x.clone());
    for w in disturbances.iter().take(horizon) {
        let decision = bank.control(&x);
        let x_next = plant.step(&x, &decision.u, w);
        bank.update(&x, &decision.u, &x_next);
        inputs.push(decision.u);
        lambdas.push(decision.lambda);
        states.push(x_next.clone());
        x = x_next;
    }
    (
        Trajectory {
            states,
            inputs,
            disturbances: disturbances[..horizon].to_vec(),
            lambdas,
        },
        bank,
    )
}

/// Per-run seed derivation for embarrassingly parallel batches.
pub fn run_seed(batch_seed: u64, run_index: u64) -> u64 {
    batch_seed ^ run_index.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// The three-dimensional system with a large unstable eigenvalue used by
/// the single-run experiment.
pub fn unstable_demo_plant() -> LinearPlant {
    LinearPlant::new(DMatrix::from_row_slice(
        3,
        3,
        &[1.4, 0.2, 1.0, 0.2, 1.3, 1.0, 0.5, 0.3, 2.0],
    ))
}
