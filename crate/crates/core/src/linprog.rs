//! Dense, deterministic equality-constrained 1-norm minimization.
//!
//! Solves `min ||lambda||_1 s.t. X lambda = x` by splitting `lambda = p - q`
//! with `p, q >= 0` and running a two-phase dense simplex on
//! `min sum(p + q) s.t. X(p - q) = x`. Vertex solutions keep the
//! tie-breaking controllable: Bland's rule with the p-block ordered before
//! the q-block (within a block, by ascending column index of `X`) makes the
//! returned minimizer deterministic even when the optimum is not unique.

use nalgebra::{DMatrix, DVector};

/// Default feasibility tolerance on the max-norm constraint residual.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Pivot threshold below which a tableau entry is treated as zero.
const PIVOT_EPS: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

/// Solution of the 1-norm minimization problem.
///
/// When `status` is `Optimal`, `coefficients` satisfies
/// `||X * coefficients - x||_inf <= tol` and `objective` equals the 1-norm
/// of `coefficients` exactly (the split-variable vertex never carries both
/// halves of a column in the basis).
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub coefficients: DVector<f64>,
    pub objective: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn infeasible(cols: usize) -> Self {
        LpSolution {
            status: LpStatus::Infeasible,
            coefficients: DVector::zeros(cols),
            objective: f64::INFINITY,
        }
    }
}

/// Minimize `||lambda||_1` subject to `X lambda = x`.
///
/// Returns `Infeasible` when `x` does not lie in the column span of `X`
/// (within `tol`); callers that evaluate gauge norms map this to an
/// infinite norm value.
pub fn min_l1_solve(x_mat: &DMatrix<f64>, rhs: &DVector<f64>, tol: f64) -> LpSolution {
    let n = x_mat.nrows();
    let m = x_mat.ncols();
    assert!(n >= 1, "constraint matrix must have at least one row");
    assert_eq!(n, rhs.len(), "rhs length must match row count");
    assert!(tol > 0.0, "tolerance must be positive");
    debug_assert!(x_mat.iter().all(|v| v.is_finite()), "matrix entries must be finite");
    debug_assert!(rhs.iter().all(|v| v.is_finite()), "rhs entries must be finite");

    // lambda = 0 is optimal for x = 0; skip the solver entirely.
    if rhs.amax() == 0.0 {
        return LpSolution {
            status: LpStatus::Optimal,
            coefficients: DVector::zeros(m),
            objective: 0.0,
        };
    }
    if m == 0 {
        return LpSolution::infeasible(0);
    }

    // Tableau layout: columns [p_0..p_{m-1}, q_0..q_{m-1}, a_0..a_{n-1} | b].
    let total = 2 * m + n;
    let mut tab = DMatrix::<f64>::zeros(n, total + 1);
    for i in 0..n {
        let sign = if rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..m {
            tab[(i, j)] = sign * x_mat[(i, j)];
            tab[(i, m + j)] = -sign * x_mat[(i, j)];
        }
        tab[(i, 2 * m + i)] = 1.0;
        tab[(i, total)] = sign * rhs[i];
    }
    let mut basis: Vec<usize> = (2 * m..2 * m + n).collect();

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![0.0; total];
    for c in cost.iter_mut().skip(2 * m) {
        *c = 1.0;
    }
    let phase1_obj = simplex(&mut tab, &mut basis, &cost, total);
    if phase1_obj > (n as f64) * tol {
        return LpSolution::infeasible(m);
    }

    // Drive remaining artificials out of the basis so phase 2 can ignore them.
    for row in 0..n {
        if basis[row] >= 2 * m {
            if let Some(col) = (0..2 * m).find(|&j| tab[(row, j)].abs() > PIVOT_EPS) {
                pivot(&mut tab, &mut basis, row, col);
            }
            // A row with no eligible pivot is redundant; its artificial stays
            // basic at (numerical) zero and is barred from re-entering below.
        }
    }

    // Phase 2: minimize sum(p + q). Artificial columns carry zero cost and
    // are barred from re-entering via the `eligible` cutoff.
    let mut cost = vec![1.0; total];
    for c in cost.iter_mut().skip(2 * m) {
        *c = 0.0;
    }
    simplex(&mut tab, &mut basis, &cost, 2 * m);

    let mut lambda = DVector::zeros(m);
    let mut objective = 0.0;
    for row in 0..n {
        let value = tab[(row, total)];
        match basis[row] {
            j if j < m => {
                lambda[j] = value;
                objective += value;
            }
            j if j < 2 * m => {
                lambda[j - m] = -value;
                objective += value;
            }
            _ => {}
        }
    }

    // Verify feasibility of the vertex actually returned.
    let residual = (x_mat * &lambda - rhs).amax();
    if residual > tol {
        return LpSolution::infeasible(m);
    }

    LpSolution {
        status: LpStatus::Optimal,
        coefficients: lambda,
        objective,
    }
}

/// Bland-rule simplex on a canonical-form tableau. `eligible` limits the
/// columns allowed to enter the basis. Returns the final objective value.
fn simplex(tab: &mut DMatrix<f64>, basis: &mut [usize], cost: &[f64], eligible: usize) -> f64 {
    let n = tab.nrows();
    let total = cost.len();

    // Reduced-cost row, kept canonical with respect to the current basis.
    let mut red = vec![0.0; total];
    let mut obj = 0.0;
    for j in 0..total {
        red[j] = cost[j];
    }
    for row in 0..n {
        let cb = cost[basis[row]];
        if cb != 0.0 && cb.is_finite() {
            for j in 0..total {
                red[j] -= cb * tab[(row, j)];
            }
            obj += cb * tab[(row, total)];
        }
    }

    loop {
        // Bland: entering column = lowest eligible index with negative reduced cost.
        let entering = (0..eligible).find(|&j| red[j] < -PIVOT_EPS);
        let Some(col) = entering else {
            return obj;
        };

        // Ratio test; ties broken by lowest basis-variable index (Bland).
        let mut leave: Option<(usize, f64)> = None;
        for row in 0..n {
            let a = tab[(row, col)];
            if a > PIVOT_EPS {
                let ratio = tab[(row, total)] / a;
                match leave {
                    None => leave = Some((row, ratio)),
                    Some((best_row, best_ratio)) => {
                        if ratio < best_ratio - PIVOT_EPS
                            || (ratio < best_ratio + PIVOT_EPS && basis[row] < basis[best_row])
                        {
                            leave = Some((row, ratio));
                        }
                    }
                }
            }
        }
        let Some((row, _)) = leave else {
            // Unbounded direction cannot occur for these objectives; bail out.
            return obj;
        };

        pivot(tab, basis, row, col);

        // Re-canonicalize the reduced-cost row against the entering column.
        let rc = red[col];
        if rc != 0.0 {
            for j in 0..total {
                red[j] -= rc * tab[(row, j)];
            }
            obj += rc * tab[(row, total)];
            red[col] = 0.0;
        }
    }
}

fn pivot(tab: &mut DMatrix<f64>, basis: &mut [usize], row: usize, col: usize) {
    let total = tab.ncols() - 1;
    let p = tab[(row, col)];
    for j in 0..=total {
        tab[(row, j)] /= p;
    }
    for r in 0..tab.nrows() {
        if r != row {
            let factor = tab[(r, col)];
            if factor != 0.0 {
                for j in 0..=total {
                    tab[(r, j)] -= factor * tab[(row, j)];
                }
                tab[(r, col)] = 0.0;
            }
        }
    }
    tab[(row, col)] = 1.0;
    basis[row] = col;
}

/// Number of singular values exceeding `tol` times the largest.
pub fn numeric_rank(x_mat: &DMatrix<f64>, tol: f64) -> usize {
    assert!(tol > 0.0, "tolerance must be positive");
    if x_mat.ncols() == 0 || x_mat.nrows() == 0 {
        return 0;
    }
    let svd = x_mat.clone().svd(false, false);
    let largest = svd.singular_values.max();
    if largest == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > tol * largest).count()
}
