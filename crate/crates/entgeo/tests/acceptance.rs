//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured numbers (run with `-- --nocapture` to see them
//! on success).

use std::time::Instant;

use entgeo::convexgeo::{
    dual_distance_certificate, fit_mvce, project_to_ellipsoid, project_to_ppt_set,
};
use entgeo::entdetect::{benchmark_fp_fn, bound_entanglement_sweep, distance_comparison};
use entgeo::infochannel::{
    dmc_capacity, erasure_capacities, superdense_verify, teleport_verify, TransitionMatrix,
};
use entgeo::qstate::{
    bell_state, chsh_value, from_bloch, haar_vector, hermitize, sample_state_with, stream_rng,
    DensityOperator, RVector, StateKind,
};
use rand::Rng;

fn eta_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 / 10.0).collect()
}

fn report(criterion: &str, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_bound_entanglement_table() {
    let t0 = Instant::now();
    let grid = eta_grid();
    let a_grid: Vec<f64> = (0..1000)
        .map(|k| 0.001 + k as f64 * (0.999 / 999.0))
        .collect();
    let rows = bound_entanglement_sweep(&grid, &a_grid, 1e-6).unwrap();
    let elapsed = t0.elapsed();

    let mut ok = true;
    let mut detail = String::new();
    for row in &rows {
        detail.push_str(&format!("{}:{} ", row.norm, row.detected));
        if row.norm <= 0.6 + 1e-12 && row.detected != row.total {
            ok = false;
        }
    }
    for pair in rows.windows(2) {
        if pair[1].detected > pair[0].detected {
            ok = false;
            detail.push_str("(counts increased) ");
        }
    }
    let last = rows.last().unwrap();
    let fraction = last.detected as f64 / last.total as f64;
    if fraction >= 0.30 {
        ok = false;
    }
    if elapsed.as_secs() >= 120 {
        ok = false;
    }
    detail.push_str(&format!(
        "; eta=1.0 fraction {:.3} (< 0.30 required), elapsed {:.2?} (< 2 min)",
        fraction, elapsed
    ));
    report("1 (bound-entanglement table)", ok, detail);
}

#[test]
fn criterion_2_misclassification_trends() {
    let t0 = Instant::now();
    let grid = eta_grid();
    let mut ok = true;
    let mut detail = String::new();
    for (da, db) in [(2usize, 2usize), (2, 3)] {
        let rows = benchmark_fp_fn(da, db, &grid, 1000, 7, 1e-6).unwrap();
        for row in &rows {
            if row.norm <= 0.3 + 1e-12 && row.false_negatives != 0 {
                ok = false;
                detail.push_str(&format!("{da}x{db} FN at eta {} ", row.norm));
            }
        }
        if rows.last().unwrap().false_positives != 0 {
            ok = false;
            detail.push_str(&format!("{da}x{db} FP at eta 1.0 "));
        }
        for pair in rows.windows(2) {
            if pair[1].false_positives > pair[0].false_positives {
                ok = false;
                detail.push_str(&format!("{da}x{db} FP increased at eta {} ", pair[1].norm));
            }
            if pair[1].false_negatives < pair[0].false_negatives {
                ok = false;
                detail.push_str(&format!("{da}x{db} FN decreased at eta {} ", pair[1].norm));
            }
        }
        detail.push_str(&format!(
            "{da}x{db} endpoints fp(1.0)={} fn(0.3)={}; ",
            rows.last().unwrap().false_positives,
            rows[2].false_negatives
        ));
    }
    let elapsed = t0.elapsed();
    if elapsed.as_secs() >= 600 {
        ok = false;
    }
    detail.push_str(&format!("elapsed {:.2?} (< 10 min)", elapsed));
    report("2 (misclassification trends)", ok, detail);
}

// KNOWN RED. The eta=0.5 clause demands that the half-scale ellipsoid
// distance upper-bound the exact separable distance (both in Bloch
// units) for 95% of NPT samples, which would need E(0.5) to sit inside
// the separable body. It cannot: the full-scale two-qubit ellipsoid has
// semi-axes sqrt(10) (local sectors) and sqrt(10/3) (correlation
// sector), while the state body ends at sqrt(2) locally and the
// separable body at sqrt(6)/3 along the maximally entangled ray. Both
// ratios give the same containment threshold eta <= 1/sqrt(5) ~ 0.447;
// at eta = 0.5 the ellipsoid reaches 0.913 on a ray where separability
// ends at 0.816, so its distances undershoot the exact one for ~30% of
// Hilbert-Schmidt NPT samples (the singlet itself is a counterexample:
// ellipsoid distance sqrt(6) - sqrt(5/6) ~ 1.537 against the exact
// 2 sqrt(2/3) ~ 1.633). Measured: ~70/100 at eta = 0.5 across seeds,
// ~97/100 at eta = 0.44, 100/100 for the eta = 1.0 lower-bound clause.
#[test]
fn criterion_3_distance_bracketing() {
    let rows = distance_comparison(100, &[0.5, 1.0], 0, 1e-6).unwrap();
    let upper = rows.iter().filter(|r| r.mvce[0].1 >= r.exact).count();
    let lower = rows.iter().filter(|r| r.mvce[1].1 <= r.exact).count();
    let ok = upper >= 95 && lower >= 95;
    report(
        "3 (distance bracketing)",
        ok,
        format!(
            "eta=0.5 above exact: {upper}/100 (>= 95 required), eta=1.0 below exact: \
             {lower}/100 (>= 95 required); the 0.5 clause exceeds the eta <= 1/sqrt(5) \
             containment bound of this geometry, see the comment above this test"
        ),
    );
}

#[test]
fn criterion_4_primal_dual_certificate() {
    let mut worst: f64 = 0.0;
    for dim in [3usize, 15, 35] {
        // a generic anisotropic ellipsoid fitted to seeded points
        let mut rng = stream_rng(1000 + dim as u64, &[]);
        let points: Vec<RVector> = (0..(3 * dim))
            .map(|_| RVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0f64)))
            .collect();
        let e = fit_mvce(&points, 1e-8).unwrap();
        let mut checked = 0;
        while checked < 100 {
            let r = RVector::from_fn(dim, |_, _| rng.gen_range(-5.0..5.0f64));
            if e.membership(&r) <= 1.0 {
                continue;
            }
            let primal = project_to_ellipsoid(&e, &r).unwrap().distance;
            let dual = dual_distance_certificate(&e, &r).unwrap();
            worst = worst.max((primal - dual).abs());
            checked += 1;
        }
    }
    report(
        "4 (primal-dual certificate)",
        worst <= 1e-8,
        format!("max |primal - dual| = {worst:.3e} over 100 points in dims 3, 15, 35"),
    );
}

#[test]
fn criterion_5_exact_quantities() {
    let mut ok = true;
    let mut detail = String::new();

    let singlet = bell_state(4).unwrap();
    let peak = chsh_value(&singlet, std::f64::consts::FRAC_PI_4).unwrap();
    if (peak - 2.0 * std::f64::consts::SQRT_2).abs() > 1e-9 {
        ok = false;
    }
    detail.push_str(&format!("chsh={peak:.12}; "));

    let mut worst_cap: f64 = 0.0;
    for k in 0..=100 {
        let eps = k as f64 / 100.0;
        let (c, ce) = erasure_capacities(eps).unwrap();
        worst_cap = worst_cap
            .max((c - (1.0 - eps)).abs())
            .max((ce - 2.0 * (1.0 - eps)).abs());
    }
    if worst_cap > 0.0 {
        ok = false;
    }
    detail.push_str(&format!("erasure max dev {worst_cap:.1e}; "));

    let rate = entgeo::infochannel::distillation_rate(&singlet).unwrap();
    if (rate - 1.0).abs() > 1e-10 {
        ok = false;
    }
    detail.push_str(&format!("distillation={rate:.12}; "));

    let report_sd = superdense_verify();
    let decoded = report_sd
        .trials
        .iter()
        .filter(|t| t.decoded == t.message)
        .count();
    if decoded != 4 {
        ok = false;
    }
    detail.push_str(&format!("superdense {decoded}/4; "));

    let mut worst_fid: f64 = 1.0;
    let mut worst_prob: f64 = 0.0;
    for trial in 0..20 {
        let mut rng = stream_rng(5, &[trial]);
        let v = haar_vector(2, &mut rng);
        let phi = DensityOperator::from_pure(&v, vec![2]).unwrap();
        let rep = teleport_verify(&phi).unwrap();
        for out in &rep.outcomes {
            worst_fid = worst_fid.min(out.fidelity);
            worst_prob = worst_prob.max((out.probability - 0.25).abs());
        }
    }
    if 1.0 - worst_fid > 1e-10 || worst_prob > 1e-10 {
        ok = false;
    }
    detail.push_str(&format!(
        "teleport min fidelity {worst_fid:.12}, outcome prob dev {worst_prob:.1e}"
    ));
    report("5 (exact protocol quantities)", ok, detail);
}

#[test]
fn criterion_6_capacity_closed_forms() {
    fn h2(p: f64) -> f64 {
        let term = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
        -(term(p) + term(1.0 - p))
    }
    let mut worst: f64 = 0.0;
    for p in [0.05, 0.11, 0.25] {
        let res = dmc_capacity(&TransitionMatrix::bsc(p), 1e-9).unwrap();
        worst = worst.max((res.capacity - (1.0 - h2(p))).abs());
    }
    for eps in [0.1, 0.5, 0.9] {
        let res = dmc_capacity(&TransitionMatrix::classical_erasure(eps), 1e-9).unwrap();
        worst = worst.max((res.capacity - (1.0 - eps)).abs());
    }
    report(
        "6 (capacity closed forms)",
        worst <= 1e-6,
        format!("max |capacity - closed form| = {worst:.3e}"),
    );
}

#[test]
fn criterion_7_invariant_suites() {
    let mut ok = true;
    let mut detail = String::new();

    // Bloch round trip across all benchmark dimensions
    let mut worst: f64 = 0.0;
    for (i, dims) in [(2usize, 2usize), (2, 3), (3, 3)].iter().enumerate() {
        for trial in 0..40u64 {
            let mut rng = stream_rng(70 + i as u64, &[trial]);
            let rho = sample_state_with(StateKind::MixedHs, *dims, &mut rng).unwrap();
            let back = from_bloch(&rho.to_bloch()).unwrap();
            worst = worst.max((back - rho.matrix()).norm());
        }
    }
    if worst > 1e-10 {
        ok = false;
    }
    detail.push_str(&format!("roundtrip(120) {worst:.1e}; "));

    // partial trace of tensor products returns the factors
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = stream_rng(71, &[trial]);
        let a = sample_state_with(StateKind::MixedHs, (2, 2), &mut rng).unwrap();
        let b = sample_state_with(StateKind::MixedHs, (3, 2), &mut rng).unwrap();
        let a = DensityOperator::new(a.matrix().clone(), vec![4]).unwrap();
        let b = DensityOperator::new(b.matrix().clone(), vec![6]).unwrap();
        let ab = a.tensor(&b);
        worst = worst.max((ab.partial_trace(0).unwrap().matrix() - a.matrix()).norm());
        worst = worst.max((ab.partial_trace(1).unwrap().matrix() - b.matrix()).norm());
    }
    if worst > 1e-12 {
        ok = false;
    }
    detail.push_str(&format!("factorization(100) {worst:.1e}; "));

    // partial transposition is a trace-preserving Hermitian involution
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = stream_rng(72, &[trial]);
        let rho = sample_state_with(StateKind::MixedHs, (2, 3), &mut rng).unwrap();
        let pt = rho.partial_transpose(0).unwrap();
        worst = worst.max((pt.trace().re - 1.0).abs());
        worst = worst.max((hermitize(&pt) - &pt).norm());
        let again = DensityOperator::new(pt, vec![2, 3]).map(|w| w.partial_transpose(0));
        if let Ok(Ok(back)) = again {
            worst = worst.max((back - rho.matrix()).norm());
        } else {
            // partial transposes of NPT states fail the PSD constructor;
            // involute on the raw matrix instead
            let pt = rho.partial_transpose(0).unwrap();
            let back = entgeo::qstate::partial_transpose_matrix(&pt, 2, 3, 0);
            worst = worst.max((back - rho.matrix()).norm());
        }
    }
    if worst > 1e-12 {
        ok = false;
    }
    detail.push_str(&format!("involution(100) {worst:.1e}; "));

    // fitted ellipsoids cover their inputs
    let mut worst: f64 = 0.0;
    let eps = 1e-6;
    for trial in 0..100u64 {
        let mut rng = stream_rng(73, &[trial]);
        let points: Vec<RVector> = (0..30)
            .map(|_| RVector::from_fn(4, |_, _| rng.gen_range(-2.0..2.0f64)))
            .collect();
        let e = fit_mvce(&points, eps).unwrap();
        for p in &points {
            worst = worst.max(e.membership(p) - (1.0 + eps));
        }
    }
    if worst > 0.0 {
        ok = false;
    }
    detail.push_str(&format!("covering(100) excess {worst:.1e}; "));

    // Dykstra: feasible output, distance history monotone toward the limit
    let tol = 1e-9;
    let mut worst_feas: f64 = 0.0;
    let mut worst_mono: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = stream_rng(74, &[trial]);
        let kind = if trial % 2 == 0 {
            StateKind::Separable
        } else {
            StateKind::EntangledFiltered
        };
        let rho = sample_state_with(kind, (2, 2), &mut rng).unwrap();
        let res = project_to_ppt_set(&rho, tol, 50_000).unwrap();
        let (_, min_eig) = res.sigma.is_ppt(tol).unwrap();
        worst_feas = worst_feas.max(-min_eig - tol);
        for pair in res.distance_history.windows(2) {
            worst_mono = worst_mono.max(pair[0] - pair[1] - 1e-12);
        }
    }
    if worst_feas > 0.0 || worst_mono > 0.0 {
        ok = false;
    }
    detail.push_str(&format!(
        "dykstra(100) feasibility excess {worst_feas:.1e}, monotonicity excess {worst_mono:.1e}; "
    ));

    // entropy subadditivity and concavity
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = stream_rng(75, &[trial]);
        let rho = sample_state_with(StateKind::MixedHs, (2, 3), &mut rng).unwrap();
        let s_ab = rho.von_neumann_entropy();
        let s_a = rho.partial_trace(0).unwrap().von_neumann_entropy();
        let s_b = rho.partial_trace(1).unwrap().von_neumann_entropy();
        worst = worst.max(s_ab - (s_a + s_b) - 1e-9);
    }
    if worst > 0.0 {
        ok = false;
    }
    detail.push_str(&format!("subadditivity(100) excess {worst:.1e}; "));

    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = stream_rng(76, &[trial]);
        let rho = sample_state_with(StateKind::MixedHs, (2, 2), &mut rng).unwrap();
        let sigma = sample_state_with(StateKind::MixedHs, (2, 2), &mut rng).unwrap();
        let l: f64 = rng.gen_range(0.0..1.0);
        let mix = DensityOperator::new(
            rho.matrix().scale(l) + sigma.matrix().scale(1.0 - l),
            vec![2, 2],
        )
        .unwrap();
        let lhs = mix.von_neumann_entropy();
        let rhs = l * rho.von_neumann_entropy() + (1.0 - l) * sigma.von_neumann_entropy();
        worst = worst.max(rhs - lhs - 1e-9);
    }
    if worst > 0.0 {
        ok = false;
    }
    detail.push_str(&format!("concavity(100) excess {worst:.1e}"));

    report("7 (invariant suites)", ok, detail);
}

// Exercised here so the nested-classifier property the benchmarks rely on
// is pinned alongside the acceptance runs.
#[test]
fn classifier_distances_are_monotone_in_scale() {
    let base = entgeo::entdetect::benchmark_base_ellipsoid(2, 2, 1e-6).unwrap();
    let mut rng = stream_rng(42, &[0]);
    for _ in 0..50 {
        let rho = sample_state_with(StateKind::MixedHs, (2, 2), &mut rng).unwrap();
        let mut last = f64::INFINITY;
        for eta in [0.2, 0.4, 0.6, 0.8, 1.0] {
            let e = entgeo::entdetect::scaled_classifier(&base, eta).unwrap();
            let (_, d) = entgeo::entdetect::classify(&rho, &e).unwrap();
            assert!(d <= last + 1e-9, "distance grew with scale");
            last = d;
        }
    }
}
