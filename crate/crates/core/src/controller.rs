//! The causal cancellation controller: data matrices, the per-step 1-norm
//! decomposition, and the resulting control input.
//!
//! At every step the current state is decomposed over all previously
//! observed states (and the initialization columns) by 1-norm minimization,
//! and the input `u_t = (U_{t-1} - Xplus_{t-1}) * lambda` cancels the part
//! of the dynamics that the collected data can explain. Columns are stored
//! newest-first throughout, so the solver's Bland tie-breaking prefers
//! recent data.

use nalgebra::{DMatrix, DVector};

use crate::linprog::{self, numeric_rank, LpSolution};

/// Default initialization scale for the no-prior-knowledge setup.
pub const DEFAULT_EPS: f64 = 0.1;

/// The growing measurement matrices plus initialization columns.
///
/// After the update for step `t`, `X` and `U` hold `t + 1 + n0` columns
/// (newest first: `x_t, ..., x_0`, then the initialization block) and
/// `xplus` holds `t + n0` columns (`x_t, ..., x_1`, then its block).
#[derive(Debug, Clone, PartialEq)]
pub struct DataBank {
    n: usize,
    n0: usize,
    x: DMatrix<f64>,
    u: DMatrix<f64>,
    xplus: DMatrix<f64>,
    steps: usize,
}

/// One prior observation triple `(x, u, x_next)` collected before time 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorTriple {
    pub x: DVector<f64>,
    pub u: DVector<f64>,
    pub x_next: DVector<f64>,
}

impl DataBank {
    /// Initialization without prior knowledge: `X_{-1} = eps * I`, zero
    /// input and successor blocks, `n0 = n`.
    pub fn init_no_prior(n: usize, eps: f64) -> Self {
        assert!(n >= 1, "state dimension must be at least 1");
        assert!(eps > 0.0, "eps must be positive");
        let bank = DataBank {
            n,
            n0: n,
            x: DMatrix::identity(n, n) * eps,
            u: DMatrix::zeros(n, n),
            xplus: DMatrix::zeros(n, n),
            steps: 0,
        };
        debug_assert_eq!(numeric_rank(&bank.x, 1e-9), n);
        bank
    }

    /// No-prior initialization plus additional columns from data collected
    /// before time 0.
    pub fn init_with_data(n: usize, eps: f64, prior: &[PriorTriple]) -> Self {
        let mut bank = Self::init_no_prior(n, eps);
        for triple in prior {
            assert_eq!(triple.x.len(), n, "prior state dimension mismatch");
            assert_eq!(triple.u.len(), n, "prior input dimension mismatch");
            assert_eq!(triple.x_next.len(), n, "prior successor dimension mismatch");
            append_column(&mut bank.x, &triple.x);
            append_column(&mut bank.u, &triple.u);
            append_column(&mut bank.xplus, &triple.x_next);
            bank.n0 += 1;
        }
        bank
    }

    pub fn state_dim(&self) -> usize {
        self.n
    }

    /// Number of initialization columns.
    pub fn init_cols(&self) -> usize {
        self.n0
    }

    /// Number of closed-loop updates recorded so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn states(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn inputs(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn successors(&self) -> &DMatrix<f64> {
        &self.xplus
    }

    /// The initialization block `X_{-1}` (the oldest `n0` columns).
    pub fn init_states(&self) -> DMatrix<f64> {
        self.x.columns(self.x.ncols() - self.n0, self.n0).into_owned()
    }

    pub fn init_inputs(&self) -> DMatrix<f64> {
        self.u.columns(self.u.ncols() - self.n0, self.n0).into_owned()
    }

    pub fn init_successors(&self) -> DMatrix<f64> {
        self.xplus.columns(self.xplus.ncols() - self.n0, self.n0).into_owned()
    }

    /// Compute the control input for the measured state `x_t`.
    ///
    /// The bank is read-only here; record the transition afterwards with
    /// [`DataBank::update`].
    pub fn control(&self, x_t: &DVector<f64>) -> ControlDecision {
        assert_eq!(x_t.len(), self.n, "state dimension mismatch");
        let sol: LpSolution = linprog::min_l1_solve(&self.x, x_t, linprog::DEFAULT_TOL);
        assert!(
            sol.is_optimal(),
            "state outside the span of recorded data; the rank invariant of the \
             initialization block is broken"
        );
        let u = (&self.u - &self.xplus) * &sol.coefficients;
        ControlDecision {
            u,
            lambda: sol.coefficients,
            l1_value: sol.objective,
        }
    }

    /// Record the transition `(x_t, u_t) -> x_next` as one atomic append so
    /// the three matrices stay column-aligned.
    pub fn update(&mut self, x_t: &DVector<f64>, u_t: &DVector<f64>, x_next: &DVector<f64>) {
        assert_eq!(x_t.len(), self.n, "state dimension mismatch");
        assert_eq!(u_t.len(), self.n, "input dimension mismatch");
        assert_eq!(x_next.len(), self.n, "successor dimension mismatch");
        prepend_column(&mut self.x, x_t);
        prepend_column(&mut self.u, u_t);
        prepend_column(&mut self.xplus, x_next);
        self.steps += 1;
    }
}

/// The controller's per-step output.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlDecision {
    /// `u = (U_{t-1} - Xplus_{t-1}) * lambda`.
    pub u: DVector<f64>,
    /// The 1-norm-minimal decomposition of the state over the bank columns.
    pub lambda: DVector<f64>,
    /// `||lambda||_1`; equals the gauge norm of the state with respect to
    /// the recorded state columns.
    pub l1_value: f64,
}

fn prepend_column(mat: &mut DMatrix<f64>, col: &DVector<f64>) {
    let old = std::mem::replace(mat, DMatrix::zeros(0, 0));
    let mut grown = old.insert_column(0, 0.0);
    grown.set_column(0, col);
    *mat = grown;
}

fn append_column(mat: &mut DMatrix<f64>, col: &DVector<f64>) {
    let at = mat.ncols();
    let old = std::mem::replace(mat, DMatrix::zeros(0, 0));
    let mut grown = old.insert_column(at, 0.0);
    grown.set_column(at, col);
    *mat = grown;
}
