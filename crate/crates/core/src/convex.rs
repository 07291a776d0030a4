//! Gauge norms of absolute convex hulls of finite point sets, set-to-set
//! norms, the multiplicative pair distance, separation checks, and
//! Monte-Carlo volume estimation.
//!
//! A finite generator set `S` stands for the symmetric convex body `C(S)`,
//! the closed absolute convex hull of `S` (equivalently the convex hull of
//! `S` and `-S`). The gauge norm of a point `x` with respect to `S` is the
//! smallest `r >= 0` with `x` in `r * C(S)`; for finite `S` it is the
//! minimum 1-norm of coefficients expressing `x` over the generators, so
//! every gauge evaluation is one equality-constrained 1-norm LP. Points
//! outside `span(S)` have infinite gauge; infinities are plain
//! `f64::INFINITY`, never NaN, and compare greater than any finite value.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linprog::{self, numeric_rank};

/// A finite generator set for the symmetric convex body `C(S)`.
///
/// Symmetry is implicit: the stored points generate the hull together with
/// their negations. Empty generator lists are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<DVector<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<DVector<f64>>) -> Self {
        assert!(!points.is_empty(), "a point set needs at least one generator");
        let dim = points[0].len();
        assert!(dim >= 1);
        for p in &points {
            assert_eq!(p.len(), dim, "all generators must share a dimension");
            assert!(p.iter().all(|v| v.is_finite()), "generators must be finite");
        }
        PointSet { dim, points }
    }

    /// Generators taken from the columns of a matrix.
    pub fn from_columns(mat: &DMatrix<f64>) -> Self {
        Self::new(mat.column_iter().map(|c| c.into_owned()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The generators stacked as matrix columns (the LP constraint matrix).
    pub fn as_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.points.iter().map(|p| p.as_slice().into()).collect::<Vec<nalgebra::DVectorView<f64>>>())
    }

    /// A copy with `extra` appended as an additional generator.
    pub fn with_point(&self, extra: &DVector<f64>) -> Self {
        assert_eq!(extra.len(), self.dim);
        let mut points = self.points.clone();
        points.push(extra.clone());
        PointSet::new(points)
    }

    /// Every generator scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        PointSet::new(self.points.iter().map(|p| p * factor).collect())
    }
}

/// Gauge norm of `x` with respect to `C(S)`: the minimum 1-norm of
/// coefficients expressing `x` over the generators, `f64::INFINITY` when
/// `x` lies outside `span(S)`.
pub fn gauge_norm(set: &PointSet, x: &DVector<f64>) -> f64 {
    assert_eq!(set.dim(), x.len(), "dimension mismatch");
    let sol = linprog::min_l1_solve(&set.as_matrix(), x, linprog::DEFAULT_TOL);
    if sol.is_optimal() {
        sol.objective
    } else {
        f64::INFINITY
    }
}

/// Smallest `r` with `C(S1)` contained in `r * C(S2)`.
///
/// The maximum of the (convex, even) gauge of `S2` over `C(S1)` is attained
/// at a generator of `S1` or its negation, so a finite max over generators
/// suffices.
pub fn set_gauge(s1: &PointSet, s2: &PointSet) -> f64 {
    assert_eq!(s1.dim(), s2.dim(), "dimension mismatch");
    s1.points()
        .iter()
        .map(|p| gauge_norm(s2, p))
        .fold(0.0, f64::max)
}

/// Multiplicative distance between the bodies generated by `S1` and `S2`:
/// `max{ ||S1||_{S2}, ||S2||_{S1} }`.
pub fn set_distance(s1: &PointSet, s2: &PointSet) -> f64 {
    set_gauge(s1, s2).max(set_gauge(s2, s1))
}

/// Multiplicative pair distance `d(x, y; B)` between two points relative to
/// the body `C(B)`: the distance between the augmented bodies `C(B u {x})`
/// and `C(B u {y})`.
///
/// Every generator of `B` has gauge at most 1 in either augmented body, so
/// only the gauges of the two new points can push the maximum above 1;
/// two gauge LPs and a clamp at 1 suffice.
pub fn pair_distance(x: &DVector<f64>, y: &DVector<f64>, body: &PointSet) -> f64 {
    assert_eq!(x.len(), body.dim(), "dimension mismatch");
    assert_eq!(y.len(), body.dim(), "dimension mismatch");
    let x_in_by = gauge_norm(&body.with_point(y), x);
    let y_in_bx = gauge_norm(&body.with_point(x), y);
    1.0_f64.max(x_in_by).max(y_in_bx)
}

/// True iff `x` lies in `C(S)` up to `tol`.
pub fn membership(set: &PointSet, x: &DVector<f64>, tol: f64) -> bool {
    gauge_norm(set, x) <= 1.0 + tol
}

/// True iff `q` lies in the multiplicative neighborhood
/// `N(p; eps, B) = { q | d(p, q; B) <= eps }`.
pub fn neighborhood_contains(p: &DVector<f64>, eps: f64, body: &PointSet, q: &DVector<f64>) -> bool {
    assert!(eps > 1.0, "neighborhood radius must exceed 1");
    pair_distance(p, q, body) <= eps
}

/// True iff all unordered pairs of distinct points keep pair distance
/// strictly above `eps`.
pub fn is_separated(points: &[DVector<f64>], eps: f64, body: &PointSet) -> bool {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if pair_distance(&points[i], &points[j], body) <= eps {
                return false;
            }
        }
    }
    true
}

/// Size of the maximal greedy `(eps; B)`-separated subset obtained by
/// scanning `candidates` in order; a lower bound on the packing number.
pub fn greedy_packing_count(candidates: &[DVector<f64>], eps: f64, body: &PointSet) -> usize {
    greedy_packing(candidates, eps, body).len()
}

/// The greedy `(eps; B)`-separated subset itself.
pub fn greedy_packing(candidates: &[DVector<f64>], eps: f64, body: &PointSet) -> Vec<DVector<f64>> {
    let mut kept: Vec<DVector<f64>> = Vec::new();
    for c in candidates {
        if kept.iter().all(|k| pair_distance(k, c, body) > eps) {
            kept.push(c.clone());
        }
    }
    kept
}

/// Monte-Carlo volume estimate together with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub volume: f64,
    pub std_error: f64,
}

/// Estimate `Vol(C(S))` by membership sampling over the bounding box of the
/// generators and their negations. Restricted to dimensions 1..=3; the
/// volume comparisons this supports are proof devices and desk-scale checks
/// suffice.
pub fn estimate_volume(set: &PointSet, samples: usize, seed: u64) -> Result<VolumeEstimate, DegenerateHull> {
    if numeric_rank(&set.as_matrix(), 1e-9) < set.dim() {
        return Err(DegenerateHull);
    }
    estimate_region_volume(set.dim(), &bounding_halfwidths(set), samples, seed, |x| {
        membership(set, x, 1e-9)
    })
    .ok_or(DegenerateHull)
}

/// Error for volume estimation of a hull that is not full-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("convex hull is not full-dimensional; its volume is zero")]
pub struct DegenerateHull;

/// Coordinate-wise half-widths of the tightest axis-aligned box around
/// `C(S)`: the hull's extreme points are among the signed generators, so
/// `h_j = max_i |p_i[j]|`.
pub fn bounding_halfwidths(set: &PointSet) -> Vec<f64> {
    (0..set.dim())
        .map(|j| set.points().iter().map(|p| p[j].abs()).fold(0.0, f64::max))
        .collect()
}

/// Membership sampling over an axis-aligned box `prod_j [-h_j, h_j]`.
/// Returns `None` for unusable boxes (zero half-width or dim > 3).
pub fn estimate_region_volume(
    dim: usize,
    halfwidths: &[f64],
    samples: usize,
    seed: u64,
    mut contains: impl FnMut(&DVector<f64>) -> bool,
) -> Option<VolumeEstimate> {
    if !(1..=3).contains(&dim) || halfwidths.iter().any(|&h| h <= 0.0) {
        return None;
    }
    assert!(samples > 0);
    let box_volume: f64 = halfwidths.iter().map(|h| 2.0 * h).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = DVector::from_fn(dim, |j, _| rng.gen_range(-halfwidths[j]..halfwidths[j]));
        if contains(&x) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    Some(VolumeEstimate {
        volume: p * box_volume,
        std_error: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    fn unit_axes() -> PointSet {
        PointSet::new(vec![dvector![1.0, 0.0], dvector![0.0, 1.0]])
    }

    #[test]
    fn generator_has_unit_gauge() {
        let s = unit_axes();
        assert!((gauge_norm(&s, &dvector![1.0, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn skewed_generators() {
        let s = PointSet::new(vec![dvector![1.0, 0.0], dvector![1.0, 1.0]]);
        assert!((gauge_norm(&s, &dvector![0.0, 1.0]) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn gauge_outside_span_is_infinite() {
        let s = PointSet::new(vec![dvector![1.0, 0.0]]);
        assert_eq!(gauge_norm(&s, &dvector![0.0, 1.0]), f64::INFINITY);
        assert!(f64::INFINITY > 1e300);
    }

    #[test]
    fn set_gauge_examples() {
        let s = unit_axes();
        assert!((set_gauge(&s, &s) - 1.0).abs() < 1e-12);
        let s1 = PointSet::new(vec![dvector![2.0, 0.0]]);
        let s2 = PointSet::new(vec![dvector![1.0, 0.0]]);
        assert!((set_gauge(&s1, &s2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_kappa_closed_form() {
        // W = {-a0 * eps, w} with sup |w| = 1; kappa_0 = max(1/eps, |a0|).
        let a0 = 1.7;
        let eps = 0.4;
        let w = PointSet::new(vec![dvector![-a0 * eps], dvector![1.0]]);
        let x_init = PointSet::new(vec![dvector![eps]]);
        let kappa = set_gauge(&w, &x_init);
        assert!((kappa - (1.0 / eps).max(a0)).abs() < 1e-10);
        // ||x||_W = |x| / max(|a0| eps, 1)
        let x = dvector![0.37];
        let expect = 0.37 / (a0 * eps).max(1.0);
        assert!((gauge_norm(&w, &x) - expect).abs() < 1e-10);
    }

    #[test]
    fn set_distance_scaling() {
        let s1 = unit_axes();
        let s2 = s1.scaled(3.0);
        assert!((set_distance(&s1, &s2) - 3.0).abs() < 1e-10);
        assert!((set_distance(&s1, &s1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pair_distance_examples() {
        let b = unit_axes();
        let x = dvector![0.3, -0.8];
        assert!((pair_distance(&x, &x, &b) - 1.0).abs() < 1e-12);
        // C(B) is the 1-norm ball; decomposing (0,2) over B u {(2,0)} still
        // needs 2 * e2, and symmetrically for the other side.
        let p = dvector![0.0, 2.0];
        let q = dvector![2.0, 0.0];
        assert!((pair_distance(&p, &q, &b) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn ball_witness_within_eps() {
        let b = unit_axes();
        let eps = 1.6;
        let x = dvector![0.5, 0.25];
        let y = &x + (eps - 1.0) * &b.points()[0];
        assert!(pair_distance(&x, &y, &b) <= eps + 1e-10);
        assert!(neighborhood_contains(&x, eps, &b, &y));
    }

    #[test]
    fn membership_examples() {
        let s = unit_axes();
        assert!(membership(&s, &dvector![0.0, 0.0], 1e-6));
        assert!(membership(&s, &dvector![1.0, 0.0], 1e-6));
        assert!(!membership(&s, &dvector![1.01, 0.0], 1e-6));
    }

    #[test]
    fn separation_basics() {
        let b = unit_axes();
        let x = dvector![5.0, 0.0];
        assert!(is_separated(std::slice::from_ref(&x), 2.0, &b));
        assert!(!is_separated(&[x.clone(), x.clone()], 1.0, &b));
    }

    #[test]
    fn greedy_packing_edge_cases() {
        let b = unit_axes();
        let x = dvector![5.0, 0.0];
        assert_eq!(greedy_packing_count(&[x.clone(), x.clone(), x], 1.5, &b), 1);
        assert_eq!(greedy_packing_count(&[], 1.5, &b), 0);
    }

    #[test]
    fn cross_polytope_area() {
        let s = unit_axes();
        let est = estimate_volume(&s, 100_000, 7).unwrap();
        assert!((est.volume - 2.0).abs() < 4.0 * est.std_error.max(0.01));
    }

    #[test]
    fn volume_homogeneity() {
        let s = PointSet::new(vec![dvector![1.0, 0.0], dvector![0.0, 1.0], dvector![1.0, 1.0]]);
        let a = estimate_volume(&s, 50_000, 3).unwrap();
        let b = estimate_volume(&s.scaled(2.0), 50_000, 3).unwrap();
        assert!((b.volume - 4.0 * a.volume).abs() < 4.0 * (4.0 * a.std_error + b.std_error));
    }

    #[test]
    fn degenerate_hull_rejected() {
        let s = PointSet::new(vec![dvector![1.0, 1.0], dvector![2.0, 2.0]]);
        assert_eq!(estimate_volume(&s, 1000, 1), Err(DegenerateHull));
    }
}
