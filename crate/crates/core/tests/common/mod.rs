//! Shared oracles and sampling helpers for the integration test suites.
// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute-force oracle for `min ||lambda||_1 s.t. X lambda = x`.
///
/// Splits `lambda = p - q` into the standard-form program over the signed
/// columns `[X, -X]` and enumerates every basic feasible solution (all
/// column subsets of size at most n, solved by least squares). The optimum
/// of a feasible bounded LP is attained at one of them. Returns `None` when
/// no subset reproduces `x`.
pub fn brute_force_l1(x_mat: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<f64> {
    let n = x_mat.nrows();
    let m = x_mat.ncols();
    if rhs.amax() == 0.0 {
        return Some(0.0);
    }
    let mut signed = DMatrix::zeros(n, 2 * m);
    signed.columns_mut(0, m).copy_from(x_mat);
    signed.columns_mut(m, m).copy_from(&(-x_mat));

    let mut best: Option<f64> = None;
    let mut subset = Vec::new();
    enumerate_subsets(2 * m, n, &mut subset, &mut |cols: &[usize]| {
        if cols.is_empty() {
            return;
        }
        let sub = DMatrix::from_fn(n, cols.len(), |i, j| signed[(i, cols[j])]);
        let svd = sub.clone().svd(true, true);
        if let Ok(z) = svd.solve(rhs, 1e-12) {
            if z.iter().all(|&v| v >= -1e-9) && (sub * &z - rhs).amax() <= 1e-8 {
                let objective: f64 = z.iter().map(|v| v.max(0.0)).sum();
                best = Some(best.map_or(objective, |b: f64| b.min(objective)));
            }
        }
    });
    best
}

fn enumerate_subsets(
    total: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(current);
    if current.len() == max_size {
        return;
    }
    let start = current.last().map_or(0, |&l| l + 1);
    for next in start..total {
        current.push(next);
        enumerate_subsets(total, max_size, current, visit);
        current.pop();
    }
}

/// Exact area of a simple polygon given its vertices in order.
pub fn shoelace_area(vertices: &[(f64, f64)]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (x1, y1) = vertices[i];
            let (x2, y2) = vertices[(i + 1) % n];
            x1 * y2 - x2 * y1
        })
        .sum();
    twice.abs() / 2.0
}

/// A random vector with entries uniform in `[-scale, scale]`.
pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.gen_range(-scale..scale))
}

/// A random full-rank generator set: identity columns plus extra random
/// points, all mildly scaled.
pub fn random_body(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Vec<DVector<f64>> {
    let mut points: Vec<DVector<f64>> = (0..n)
        .map(|i| {
            let mut e = DVector::zeros(n);
            e[i] = rng.gen_range(0.5..2.0);
            e
        })
        .collect();
    for _ in 0..extra {
        points.push(random_vector(rng, n, 2.0));
    }
    points
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
