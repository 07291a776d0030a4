//! Randomized invariants: solver-vs-oracle equivalence, the gauge-norm and
//! distance properties, and the structural identities of the closed loop.

mod common;

use ccstab::analysis;
use ccstab::controller::DataBank;
use ccstab::convex::{self, PointSet};
use ccstab::linprog::{self, LpStatus};
use ccstab::plant::{run_closed_loop, DisturbanceModel, LinearPlant};
use common::{brute_force_l1, random_body, random_vector, seeded};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

fn small_instance() -> impl Strategy<Value = (DMatrix<f64>, DVector<f64>)> {
    ((1usize..=3), (1usize..=6)).prop_flat_map(|(n, m)| {
        (
            proptest::collection::vec(-3.0..3.0f64, n * m),
            proptest::collection::vec(-3.0..3.0f64, n),
        )
            .prop_map(move |(mat, rhs)| {
                (
                    DMatrix::from_vec(n, m, mat),
                    DVector::from_vec(rhs),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lp_solver_matches_enumeration_oracle((x_mat, rhs) in small_instance()) {
        let sol = linprog::min_l1_solve(&x_mat, &rhs, linprog::DEFAULT_TOL);
        match brute_force_l1(&x_mat, &rhs) {
            Some(oracle) => {
                prop_assert!(sol.is_optimal());
                prop_assert!((sol.objective - oracle).abs() <= 1e-8,
                    "solver {} vs oracle {oracle}", sol.objective);
            }
            None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn lp_solution_norm_consistency((x_mat, rhs) in small_instance()) {
        let sol = linprog::min_l1_solve(&x_mat, &rhs, linprog::DEFAULT_TOL);
        if sol.is_optimal() {
            prop_assert!((sol.coefficients.lp_norm(1) - sol.objective).abs() <= 1e-9);
            prop_assert!((&x_mat * &sol.coefficients - &rhs).amax() <= 1e-8);
        }
    }
}

#[test]
fn gauge_norm_axioms() {
    let mut rng = seeded(101);
    for trial in 0..400 {
        let n = 2 + (trial % 2);
        let body = PointSet::new(random_body(&mut rng, n, 2));
        let x = random_vector(&mut rng, n, 3.0);
        let y = random_vector(&mut rng, n, 3.0);
        let gx = convex::gauge_norm(&body, &x);
        let gy = convex::gauge_norm(&body, &y);

        // Absolute homogeneity and symmetry.
        let alpha: f64 = rng.gen_range(-2.5..2.5);
        let scaled = convex::gauge_norm(&body, &(&x * alpha));
        assert!((scaled - alpha.abs() * gx).abs() <= 1e-8 * (1.0 + gx));
        let negated = convex::gauge_norm(&body, &(-&x));
        assert!((negated - gx).abs() <= 1e-8 * (1.0 + gx));

        // Triangle inequality and definiteness at zero.
        let gsum = convex::gauge_norm(&body, &(&x + &y));
        assert!(gsum <= gx + gy + 1e-8 * (1.0 + gx + gy));
        assert_eq!(convex::gauge_norm(&body, &DVector::zeros(n)), 0.0);
    }
}

#[test]
fn membership_iff_unit_gauge() {
    // x lies in the hull exactly when its gauge is at most one.
    let mut rng = seeded(103);
    for trial in 0..500 {
        let n = 2 + (trial % 2);
        let body = PointSet::new(random_body(&mut rng, n, 2));
        let x = random_vector(&mut rng, n, 2.0);
        let gauge = convex::gauge_norm(&body, &x);
        let inside = convex::membership(&body, &x, 1e-9);
        assert_eq!(inside, gauge <= 1.0 + 1e-9, "gauge {gauge}");
    }
}

#[test]
fn inclusion_reverses_gauge_order() {
    // If every generator of S1 lies in C(S2), then C(S1) is a subset of
    // C(S2) and the gauge with respect to S1 dominates the one for S2.
    let mut rng = seeded(107);
    let mut checked = 0;
    while checked < 300 {
        let n = 2 + (checked % 2);
        let s2 = PointSet::new(random_body(&mut rng, n, 2));
        let s1 = PointSet::new(
            (0..n)
                .map(|_| {
                    let p = random_vector(&mut rng, n, 2.0);
                    let g = convex::gauge_norm(&s2, &p);
                    p * (rng.gen_range(0.1..1.0) / g)
                })
                .collect(),
        );
        if ccstab::linprog::numeric_rank(&s1.as_matrix(), 1e-9) < n {
            continue;
        }
        let x = random_vector(&mut rng, n, 2.0);
        let g1 = convex::gauge_norm(&s1, &x);
        let g2 = convex::gauge_norm(&s2, &x);
        assert!(g1 >= g2 - 1e-8 * (1.0 + g2), "{g1} < {g2}");
        checked += 1;
    }
}

#[test]
fn gauge_scaling_in_the_generators() {
    // Shrinking the generators by gamma scales the norm up by gamma.
    let mut rng = seeded(109);
    for trial in 0..300 {
        let n = 2 + (trial % 2);
        let body = PointSet::new(random_body(&mut rng, n, 1));
        let gamma: f64 = rng.gen_range(0.2..5.0);
        let x = random_vector(&mut rng, n, 2.0);
        let direct = convex::gauge_norm(&body.scaled(1.0 / gamma), &x);
        let scaled = gamma * convex::gauge_norm(&body, &x);
        assert!((direct - scaled).abs() <= 1e-8 * (1.0 + scaled));
    }
}

#[test]
fn set_gauge_norm_equivalence() {
    // (1/||S1||_{S2}) ||x||_{S2} <= ||x||_{S1} <= ||S2||_{S1} ||x||_{S2}
    // whenever the set gauges are finite.
    let mut rng = seeded(113);
    for trial in 0..250 {
        let n = 2 + (trial % 2);
        let s1 = PointSet::new(random_body(&mut rng, n, 1));
        let s2 = PointSet::new(random_body(&mut rng, n, 1));
        let s1_in_s2 = convex::set_gauge(&s1, &s2);
        let s2_in_s1 = convex::set_gauge(&s2, &s1);
        let x = random_vector(&mut rng, n, 2.0);
        let g1 = convex::gauge_norm(&s1, &x);
        let g2 = convex::gauge_norm(&s2, &x);
        assert!(g1 >= g2 / s1_in_s2 - 1e-8 * (1.0 + g1));
        assert!(g1 <= s2_in_s1 * g2 + 1e-8 * (1.0 + g1));
    }
}

#[test]
fn pair_distance_properties() {
    // d(x,x) = 1; full symmetry including sign flips; multiplicative
    // triangle inequality.
    let mut rng = seeded(127);
    for trial in 0..350 {
        let n = 2 + (trial % 2);
        let body = PointSet::new(random_body(&mut rng, n, 1));
        let x = random_vector(&mut rng, n, 3.0);
        let y = random_vector(&mut rng, n, 3.0);
        let z = random_vector(&mut rng, n, 3.0);

        let dxx = convex::pair_distance(&x, &x, &body);
        assert!((dxx - 1.0).abs() <= 1e-9);

        let dxy = convex::pair_distance(&x, &y, &body);
        let dyx = convex::pair_distance(&y, &x, &body);
        let dynx = convex::pair_distance(&y, &(-&x), &body);
        assert!((dxy - dyx).abs() <= 1e-8 * dxy);
        assert!((dxy - dynx).abs() <= 1e-8 * dxy);

        let dxz = convex::pair_distance(&x, &z, &body);
        let dzy = convex::pair_distance(&z, &y, &body);
        assert!(dxy <= dxz * dzy * (1.0 + 1e-8));
    }
}

#[test]
fn separated_points_have_disjoint_neighborhoods() {
    // If d(x,y) > eps, no point lies in both sqrt(eps)-neighborhoods.
    let mut rng = seeded(131);
    let mut checked = 0;
    while checked < 200 {
        let n = 2 + (checked % 2);
        let body = PointSet::new(random_body(&mut rng, n, 1));
        let x = random_vector(&mut rng, n, 6.0);
        let y = random_vector(&mut rng, n, 6.0);
        let eps: f64 = rng.gen_range(1.2..4.0);
        if convex::pair_distance(&x, &y, &body) <= eps {
            continue;
        }
        for _ in 0..15 {
            let q = random_vector(&mut rng, n, 8.0);
            let in_both = convex::neighborhood_contains(&x, eps.sqrt(), &body, &q)
                && convex::neighborhood_contains(&y, eps.sqrt(), &body, &q);
            assert!(!in_both);
        }
        checked += 1;
    }
}

#[test]
fn neighborhood_ball_witnesses() {
    // y = x + (eps - 1) p with p in the body implies d(x,y) <= eps.
    let mut rng = seeded(137);
    for trial in 0..300 {
        let n = 2 + (trial % 2);
        let body = PointSet::new(random_body(&mut rng, n, 1));
        let x = random_vector(&mut rng, n, 4.0);
        let eps: f64 = rng.gen_range(1.05..4.0);
        // A random point of C(B): a convex-coefficient signed combination.
        let coeffs = random_vector(&mut rng, body.len(), 1.0);
        let scale = coeffs.lp_norm(1).max(1.0);
        let mut p = DVector::zeros(n);
        for (i, gen) in body.points().iter().enumerate() {
            p += gen * (coeffs[i] / scale);
        }
        let y = &x + p * (eps - 1.0);
        assert!(convex::pair_distance(&x, &y, &body) <= eps * (1.0 + 1e-8));
    }
}

#[test]
fn closed_loop_structural_identities() {
    // Along simulated runs: the recorded data reproduces the open-loop
    // dynamics, the input acts as data-driven deadbeat control, and the
    // closed loop admits the model-free disturbance-combination form.
    let mut rng = seeded(139);
    for trial in 0..10u64 {
        let n = 3;
        let plant = LinearPlant::random(n, 1000 + trial);
        let eps = 0.1;
        let bank0 = DataBank::init_no_prior(n, eps);
        let horizon = 15;
        let w = DisturbanceModel::UniformBox(vec![1.0; n]).realize(n, horizon, 2000 + trial);
        let x0 = random_vector(&mut rng, n, 1.0);
        let (traj, bank) = run_closed_loop(&plant, bank0.clone(), &w, &x0, horizon);

        // Open-loop consistency of the final bank: Xplus = A0 X + U + W
        // where W stacks realized and virtual disturbances column-aligned.
        let virtuals = analysis::virtual_disturbances(plant.a0(), &bank);
        // Newest first, matching the bank layout, then the virtual block.
        let mut w_cols: Vec<DVector<f64>> = traj.disturbances.iter().rev().cloned().collect();
        w_cols.extend(virtuals.iter().cloned());
        let w_mat = DMatrix::from_columns(&w_cols);
        let residual =
            (bank.successors() - plant.a0() * bank.states() - bank.inputs() - w_mat).amax();
        assert!(residual <= 1e-10, "open-loop residual {residual}");

        // Per-step identities, replayed against the growing bank.
        let mut replay = bank0;
        for t in 0..horizon {
            let decision = replay.control(&traj.states[t]);
            assert_eq!(decision.u, traj.inputs[t]);

            // ||lambda||_1 is exactly the gauge norm of the state with
            // respect to the recorded state columns.
            let state_set = PointSet::from_columns(replay.states());
            let gauge = convex::gauge_norm(&state_set, &traj.states[t]);
            assert!((decision.l1_value - gauge).abs() <= 1e-12);

            // Deadbeat identity: u_t + A0 x_t + W_{t-1} lambda = 0, with
            // W_{t-1} the lumped disturbance matrix of the current bank.
            let virtuals_t = analysis::virtual_disturbances(plant.a0(), &replay);
            let mut cols: Vec<DVector<f64>> =
                traj.disturbances[..t].iter().rev().cloned().collect();
            cols.extend(virtuals_t);
            let w_t = DMatrix::from_columns(&cols);
            let deadbeat =
                (&traj.inputs[t] + plant.a0() * &traj.states[t] + &w_t * &decision.lambda).amax();
            assert!(deadbeat <= 1e-8, "deadbeat residual {deadbeat} at t={t}");

            // Model-free closed loop: x_{t+1} = -W_{t-1} lambda + w_t.
            let model_free =
                (&traj.states[t + 1] + &w_t * &decision.lambda - &traj.disturbances[t]).amax();
            assert!(model_free <= 1e-8, "closed-loop residual {model_free} at t={t}");

            replay.update(&traj.states[t], &traj.inputs[t], &traj.states[t + 1]);
        }
    }
}

#[test]
fn kappa_non_increasing_and_contraction_cases() {
    // Appending observation columns can only shrink the gauge of W; and
    // when every disturbance lies in the hull of the observations, kappa
    // is at most one.
    let mut rng = seeded(149);
    let n = 2;
    let w_set = ccstab::analysis::DisturbanceSet::new(
        (0..3).map(|_| random_vector(&mut rng, n, 1.0)).collect(),
        vec![random_vector(&mut rng, n, 0.5)],
    );
    let mut observations = PointSet::new(vec![
        DVector::from_vec(vec![0.1, 0.0]),
        DVector::from_vec(vec![0.0, 0.1]),
    ]);
    let mut previous = analysis::kappa_tau(&w_set, &observations);
    for _ in 0..12 {
        observations = observations.with_point(&random_vector(&mut rng, n, 2.0));
        let current = analysis::kappa_tau(&w_set, &observations);
        assert!(current <= previous + 1e-9);
        previous = current;
    }

    // W is a subset of the hull of its own generators scaled up.
    let generous = w_set.point_set().scaled(1.5);
    assert!(analysis::kappa_tau(&w_set, &generous) <= 1.0 + 1e-9);
}

#[test]
fn projection_threshold_on_unstable_transitions() {
    // At every detected transition time, mu ||x_t||_W exceeds
    // (mu^2/(1-mu)) / ||W||_{X_{t-1}} and the rescaled state leaves the
    // observation hull.
    let n = 3;
    for seed in 0..6u64 {
        let plant = LinearPlant::random(n, 40 + seed);
        let bank0 = DataBank::init_no_prior(n, 0.1);
        let horizon = 30;
        let w = DisturbanceModel::UniformBox(vec![1.0; n]).realize(n, horizon, 90 + seed);
        let x0 = DVector::from_fn(n, |i, _| 0.3 * (i as f64 + 1.0));
        let (traj, bank) = run_closed_loop(&plant, bank0.clone(), &w, &x0, horizon);
        let w_set = analysis::DisturbanceSet::from_run(&traj, &plant, &bank);
        let w_points = w_set.point_set();
        let gauges = analysis::gauge_series(&w_points, &traj.states);
        let mu = 0.9;
        let (times, _) = analysis::detect_unstable_from_gauges(&traj.states, &gauges, mu, 0);
        for &t in &times {
            let mut obs = PointSet::from_columns(&bank.init_states());
            for x in &traj.states[..t] {
                obs = obs.with_point(x);
            }
            let kappa_t = analysis::kappa_tau(&w_set, &obs);
            assert!(
                mu * gauges[t] > mu * mu / (1.0 - mu) / kappa_t - 1e-9,
                "lower threshold violated at t={t}"
            );
            let rescaled = &traj.states[t] / (mu * gauges[t]);
            assert!(
                convex::gauge_norm(&obs, &rescaled) > 1.0 - 1e-9,
                "rescaled state inside the observation hull at t={t}"
            );
        }
    }
}
