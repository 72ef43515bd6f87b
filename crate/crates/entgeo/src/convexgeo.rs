//! Convex geometry kernel: minimum-volume covering ellipsoids, exact
//! Euclidean projections onto them, tangent separating hyperplanes, the
//! primal-dual distance certificate, and the Frobenius projection onto
//! the PPT set by Dykstra's alternating scheme.

use nalgebra::Cholesky;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{
    hermitian_eigen, hermitize, partial_transpose_matrix, CMatrix, DensityOperator, RMatrix,
    RVector,
};

/// Ellipsoid `{ x : (x - c)^T A (x - c) <= 1 }` with symmetric positive
/// definite shape matrix `A`. The eigendecomposition of `A` is cached at
/// construction; projections reuse it.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: RVector,
    shape: RMatrix,
    axes: RMatrix,
    axis_weights: RVector,
}

impl Ellipsoid {
    pub fn new(center: RVector, shape: RMatrix) -> Result<Self> {
        let n = center.len();
        if shape.nrows() != n || shape.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: shape.nrows(),
            });
        }
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                asym = asym.max((shape[(i, j)] - shape[(j, i)]).abs());
            }
        }
        if asym > 1e-10 {
            return Err(Error::NotHermitian(asym));
        }
        let sym = (shape.clone() + shape.transpose()).scale(0.5);
        let eig = sym.clone().symmetric_eigen();
        let min_eig = eig.eigenvalues.min();
        if min_eig <= 0.0 {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self {
            center,
            shape: sym,
            axes: eig.eigenvectors,
            axis_weights: eig.eigenvalues,
        })
    }

    pub fn center(&self) -> &RVector {
        &self.center
    }

    pub fn shape(&self) -> &RMatrix {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Quadratic form value `(x - c)^T A (x - c)`; inside means <= 1.
    pub fn membership(&self, x: &RVector) -> f64 {
        let d = x - &self.center;
        (self.shape.clone() * &d).dot(&d)
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.membership(x) <= 1.0
    }

    /// log det A^{-1}; grows with volume.
    pub fn log_det_inverse(&self) -> f64 {
        -self.axis_weights.iter().map(|l| l.ln()).sum::<f64>()
    }
}

// ---------------------------------------------------------------------------
// Minimum-volume covering ellipsoid
// ---------------------------------------------------------------------------

const MVCE_MAX_ITER: usize = 1_000_000;
const MVCE_REFRESH_EVERY: usize = 512;

struct LiftedState {
    inv_m: RMatrix,
    w: Vec<f64>,
}

fn rebuild_lifted(q: &[RVector], u: &[f64]) -> Result<LiftedState> {
    let k = q[0].len();
    let mut m = RMatrix::zeros(k, k);
    for (qi, &ui) in q.iter().zip(u.iter()) {
        if ui > 0.0 {
            m.ger(ui, qi, qi, 1.0);
        }
    }
    let m = (m.clone() + m.transpose()).scale(0.5);
    let chol = Cholesky::new(m.clone()).ok_or_else(|| degenerate_error(&m))?;
    let inv_m = chol.inverse();
    let w = q.iter().map(|qi| (&inv_m * qi).dot(qi)).collect();
    Ok(LiftedState { inv_m, w })
}

fn degenerate_error(m: &RMatrix) -> Error {
    // the null eigenvector of the lifted moment matrix is normal to the
    // affine hull of the points
    let eig = m.clone().symmetric_eigen();
    let mut idx = 0;
    for i in 0..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[idx] {
            idx = i;
        }
    }
    let v = eig.eigenvectors.column(idx);
    let head: Vec<f64> = v.iter().take(v.len() - 1).copied().collect();
    let norm = head.iter().map(|x| x * x).sum::<f64>().sqrt();
    let dir = if norm > 0.0 {
        head.iter().map(|x| x / norm).collect()
    } else {
        head
    };
    Error::DegeneratePoints {
        null_direction: dir,
    }
}

/// Fits the minimum-volume ellipsoid covering `points` to relative duality
/// gap `eps` by Khachiyan barycentric ascent with Wolfe-Atwood away steps.
/// Every input point ends up with membership value <= 1 + eps.
pub fn fit_mvce(points: &[RVector], eps: f64) -> Result<Ellipsoid> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: eps,
            range: "(0, 0.1]",
        });
    }
    let m = points.len();
    if m == 0 {
        return Err(Error::DegeneratePoints {
            null_direction: vec![],
        });
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: points.iter().map(|p| p.len()).find(|&l| l != n).unwrap(),
        });
    }

    let q: Vec<RVector> = points
        .iter()
        .map(|p| {
            let mut v = RVector::zeros(n + 1);
            v.rows_mut(0, n).copy_from(p);
            v[n] = 1.0;
            v
        })
        .collect();
    let dim_l = (n + 1) as f64;

    let mut u = vec![1.0 / m as f64; m];
    let mut state = rebuild_lifted(&q, &u)?;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    let mut iterations = 0usize;

    while iterations < MVCE_MAX_ITER {
        let (mut j_plus, mut k_plus) = (0usize, f64::NEG_INFINITY);
        let (mut j_minus, mut k_minus) = (0usize, f64::INFINITY);
        for (i, (&wi, &ui)) in state.w.iter().zip(u.iter()).enumerate() {
            if wi > k_plus {
                k_plus = wi;
                j_plus = i;
            }
            if ui > 0.0 && wi < k_minus {
                k_minus = wi;
                j_minus = i;
            }
        }
        let gap_plus = k_plus / dim_l - 1.0;
        let gap_minus = 1.0 - k_minus / dim_l;
        residual = gap_plus.max(gap_minus);
        if residual <= eps {
            // distrust incrementally updated values near convergence
            state = rebuild_lifted(&q, &u)?;
            let k_chk = state.w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let k_min_chk = state
                .w
                .iter()
                .zip(u.iter())
                .filter(|(_, &ui)| ui > 0.0)
                .map(|(&wi, _)| wi)
                .fold(f64::INFINITY, f64::min);
            residual = (k_chk / dim_l - 1.0).max(1.0 - k_min_chk / dim_l);
            if residual <= eps {
                converged = true;
                break;
            }
            iterations += 1;
            continue;
        }

        let (j, kappa) = if gap_plus >= gap_minus {
            (j_plus, k_plus)
        } else {
            (j_minus, k_minus)
        };
        let mut lambda = (kappa - dim_l) / (dim_l * (kappa - 1.0));
        if gap_plus < gap_minus {
            // away step: shrink weight j, clamped so it stays nonnegative
            lambda = lambda.max(-u[j] / (1.0 - u[j]));
        }

        let z = &state.inv_m * &q[j];
        let denom = (1.0 - lambda) + lambda * state.w[j];
        if denom <= 0.0 || !lambda.is_finite() {
            state = rebuild_lifted(&q, &u)?;
            iterations += 1;
            continue;
        }
        for (wi, qi) in state.w.iter_mut().zip(q.iter()) {
            let zi = qi.dot(&z);
            *wi = (*wi - lambda * zi * zi / denom) / (1.0 - lambda);
        }
        state.inv_m.ger(-lambda / denom, &z, &z, 1.0);
        let sym = (state.inv_m.clone() + state.inv_m.transpose()).scale(0.5 / (1.0 - lambda));
        state.inv_m = sym;

        for (i, ui) in u.iter_mut().enumerate() {
            *ui *= 1.0 - lambda;
            if i == j {
                *ui += lambda;
            }
            if *ui < 0.0 {
                *ui = 0.0;
            }
        }

        iterations += 1;
        if iterations.is_multiple_of(MVCE_REFRESH_EVERY) {
            state = rebuild_lifted(&q, &u)?;
        }
    }

    if !converged {
        return Err(Error::NoConvergence {
            iterations: MVCE_MAX_ITER,
            residual,
        });
    }

    let mut center = RVector::zeros(n);
    for (p, &ui) in points.iter().zip(u.iter()) {
        center.axpy(ui, p, 1.0);
    }
    let mut scatter = RMatrix::zeros(n, n);
    for (p, &ui) in points.iter().zip(u.iter()) {
        if ui > 0.0 {
            let d = p - &center;
            scatter.ger(ui, &d, &d, 1.0);
        }
    }
    let scatter = (scatter.clone() + scatter.transpose()).scale(0.5);
    let chol = Cholesky::new(scatter.clone()).ok_or_else(|| degenerate_error(&scatter))?;
    let inv_s = chol.inverse();
    let kappa_max = points
        .iter()
        .map(|p| {
            let d = p - &center;
            (&inv_s * &d).dot(&d)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let shape = (inv_s.clone() + inv_s.transpose()).scale(0.5 / kappa_max);
    Ellipsoid::new(center, shape)
}

// ---------------------------------------------------------------------------
// Projection, witnesses and the dual certificate
// ---------------------------------------------------------------------------

/// Euclidean projection of a query point onto an ellipsoid.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    pub projection: RVector,
    pub distance: f64,
}

/// Exact projection: diagonalize the shape matrix and solve the secular
/// equation `sum_i l_i y_i^2 / (1 + mu l_i)^2 = 1` for the multiplier by
/// safeguarded Newton bisection to 1e-12. Interior points project to
/// themselves.
pub fn project_to_ellipsoid(e: &Ellipsoid, r: &RVector) -> Result<ProjectionResult> {
    if r.len() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: r.len(),
        });
    }
    let y = e.axes.transpose() * (r - &e.center);
    let lam = &e.axis_weights;
    let value = |mu: f64| -> f64 {
        let mut s = 0.0;
        for i in 0..y.len() {
            let t = 1.0 + mu * lam[i];
            s += lam[i] * y[i] * y[i] / (t * t);
        }
        s
    };
    if value(0.0) <= 1.0 {
        return Ok(ProjectionResult {
            projection: r.clone(),
            distance: 0.0,
        });
    }
    let slope = |mu: f64| -> f64 {
        let mut s = 0.0;
        for i in 0..y.len() {
            let t = 1.0 + mu * lam[i];
            s += -2.0 * lam[i] * lam[i] * y[i] * y[i] / (t * t * t);
        }
        s
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut grow = 0;
    while value(hi) > 1.0 {
        lo = hi;
        hi *= 2.0;
        grow += 1;
        if grow > 400 {
            return Err(Error::NoConvergence {
                iterations: grow,
                residual: value(hi) - 1.0,
            });
        }
    }
    let mut mu = 0.5 * (lo + hi);
    let mut ok = false;
    for _ in 0..200 {
        let f = value(mu) - 1.0;
        if f.abs() <= 1e-12 {
            ok = true;
            break;
        }
        if f > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        let step = mu - f / slope(mu);
        mu = if step > lo && step < hi {
            step
        } else {
            0.5 * (lo + hi)
        };
    }
    if !ok && (value(mu) - 1.0).abs() > 1e-9 {
        return Err(Error::NoConvergence {
            iterations: 200,
            residual: value(mu) - 1.0,
        });
    }
    let s_eig = RVector::from_fn(y.len(), |i, _| y[i] / (1.0 + mu * lam[i]));
    let projection = &e.center + &e.axes * s_eig;
    let distance = (r - &projection).norm();
    Ok(ProjectionResult {
        projection,
        distance,
    })
}

/// Affine hyperplane `{ x : normal . x = offset }` tangent to an ellipsoid
/// at the projection of an exterior query point; the query lies strictly
/// on the far side, the whole ellipsoid on the near side.
#[derive(Debug, Clone)]
pub struct PseudoWitness {
    pub normal: RVector,
    pub offset: f64,
}

impl PseudoWitness {
    pub fn evaluate(&self, x: &RVector) -> f64 {
        self.normal.dot(x)
    }
}

/// Tangent hyperplane at the projection point `s0`: normal `A (s0 - c)`,
/// offset `1 + normal . c`.
pub fn tangent_pseudo_witness(e: &Ellipsoid, r: &RVector) -> Result<PseudoWitness> {
    if e.membership(r) <= 1.0 {
        return Err(Error::InteriorPoint);
    }
    let proj = project_to_ellipsoid(e, r)?;
    let normal = e.shape() * (&proj.projection - &e.center);
    let offset = 1.0 + normal.dot(&e.center);
    Ok(PseudoWitness { normal, offset })
}

/// Distance to the ellipsoid through the dual program: maximize, over
/// unit-norm hyperplanes, the margin `w . r - sup_{x in E} w . x`, with
/// the supremum given by the closed-form support function
/// `w . c + sqrt(w^T A^{-1} w)`. The optimal direction solves its own
/// secular equation in the inverse spectrum. At the optimum this equals
/// the primal projection distance; interior queries return zero.
pub fn dual_distance_certificate(e: &Ellipsoid, r: &RVector) -> Result<f64> {
    if r.len() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: r.len(),
        });
    }
    if e.membership(r) <= 1.0 {
        return Ok(0.0);
    }
    let y = e.axes.transpose() * (r - &e.center);
    let beta = RVector::from_fn(e.dim(), |i, _| 1.0 / e.axis_weights[i]);
    let value = |s: f64| -> f64 {
        let mut acc = 0.0;
        for i in 0..y.len() {
            let t = beta[i] + s;
            acc += beta[i] * y[i] * y[i] / (t * t);
        }
        acc
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut grow = 0;
    while value(hi) > 1.0 {
        lo = hi;
        hi *= 2.0;
        grow += 1;
        if grow > 400 {
            return Err(Error::NoConvergence {
                iterations: grow,
                residual: value(hi) - 1.0,
            });
        }
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if value(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
    }
    let s = 0.5 * (lo + hi);
    let w_eig = RVector::from_fn(y.len(), |i, _| y[i] / (beta[i] + s));
    let w = (&e.axes * w_eig).normalize();

    // evaluate the margin with the support function, inverting the shape
    // matrix directly rather than reusing the spectral data
    let inv_shape = Cholesky::new(e.shape.clone())
        .ok_or(Error::NotPositive(0.0))?
        .inverse();
    let support = w.dot(&e.center) + (&inv_shape * &w).dot(&w).max(0.0).sqrt();
    Ok(w.dot(r) - support)
}

// ---------------------------------------------------------------------------
// Frobenius projection onto the PPT set (Dykstra)
// ---------------------------------------------------------------------------

/// Outcome of the alternating projection onto
/// `{ sigma : sigma >= 0, sigma^{T_A} >= 0, Tr sigma = 1 }`.
#[derive(Debug, Clone)]
pub struct PptProjection {
    pub sigma: DensityOperator,
    /// Frobenius distance from the input to `sigma`.
    pub distance: f64,
    pub iterations: usize,
    /// Frobenius distance from the input to the iterate after each cycle.
    pub distance_history: Vec<f64>,
    /// True for 2x2 and 2x3 systems, where PPT characterizes separability
    /// and the distance is the exact distance to the separable set.
    pub exact_separable: bool,
}

pub const DYKSTRA_DEFAULT_TOL: f64 = 1e-9;
pub const DYKSTRA_DEFAULT_MAX_ITER: usize = 50_000;

fn psd_project(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        if vals[k] > 0.0 {
            let col = vecs.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += col[i] * col[j].conj() * Complex64::new(vals[k], 0.0);
                }
            }
        }
    }
    out
}

/// Dykstra alternating projections onto the three convex sets
/// `sigma >= 0`, `sigma^{T_A} >= 0` and `{Hermitian, Tr = 1}`; unlike
/// plain alternation this converges to the actual Frobenius projection.
/// Stops once a full cycle moves the iterate by less than `tol`.
pub fn project_to_ppt_set(
    rho: &DensityOperator,
    tol: f64,
    max_iter: usize,
) -> Result<PptProjection> {
    if rho.dims().len() != 2 {
        return Err(Error::SubsystemOutOfRange {
            index: 2,
            count: rho.dims().len(),
        });
    }
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let n = da * db;
    let exact_separable = matches!((da, db), (2, 2) | (2, 3) | (3, 2));

    let target = rho.matrix().clone();
    let mut x = target.clone();
    let mut incr = [CMatrix::zeros(n, n), CMatrix::zeros(n, n), CMatrix::zeros(n, n)];
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    let mut movement = f64::INFINITY;

    while iterations < max_iter {
        let before = x.clone();
        for (step, p) in incr.iter_mut().enumerate() {
            let y = &x + &*p;
            let projected = match step {
                0 => psd_project(&y),
                1 => {
                    let pt = partial_transpose_matrix(&y, da, db, 0);
                    partial_transpose_matrix(&psd_project(&pt), da, db, 0)
                }
                _ => {
                    let h = hermitize(&y);
                    let shift = (1.0 - h.trace().re) / n as f64;
                    h + CMatrix::identity(n, n).scale(shift)
                }
            };
            *p = y - &projected;
            x = projected;
        }
        history.push((&x - &target).norm());
        iterations += 1;
        movement = (&x - before).norm();
        if movement < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            residual: movement,
        });
    }

    // final cleanup keeps the iterate inside the exact state set
    let mut sigma = psd_project(&hermitize(&x));
    let tr = sigma.trace().re;
    sigma.unscale_mut(tr);
    let sigma = DensityOperator::new(sigma, rho.dims().to_vec())?;
    let distance = (rho.matrix() - sigma.matrix()).norm();
    Ok(PptProjection {
        sigma,
        distance,
        iterations,
        distance_history: history,
        exact_separable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{bell_state, sample_state_with, stream_rng, StateKind, PSD_TOL};
    use proptest::prelude::*;
    use rand::Rng;

    fn unit_ball(dim: usize) -> Ellipsoid {
        Ellipsoid::new(RVector::zeros(dim), RMatrix::identity(dim, dim)).unwrap()
    }

    fn random_points(dim: usize, count: usize, seed: u64) -> Vec<RVector> {
        let mut rng = stream_rng(seed, &[dim as u64, count as u64]);
        (0..count)
            .map(|_| {
                let mut v = RVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
                let norm = v.norm();
                let radius: f64 = rng.gen_range(0.0f64..1.0).powf(1.0 / dim as f64);
                if norm > 0.0 {
                    v *= radius / norm;
                }
                v
            })
            .collect()
    }

    #[test]
    fn ellipsoid_validates_shape() {
        let bad = RMatrix::from_row_slice(2, 2, &[1.0, 0.5, -0.5, 1.0]);
        assert!(Ellipsoid::new(RVector::zeros(2), bad).is_err());
        let indef = RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(Ellipsoid::new(RVector::zeros(2), indef).is_err());
    }

    #[test]
    fn mvce_of_square_is_circumscribed_circle() {
        let pts = vec![
            RVector::from_row_slice(&[1.0, 1.0]),
            RVector::from_row_slice(&[1.0, -1.0]),
            RVector::from_row_slice(&[-1.0, 1.0]),
            RVector::from_row_slice(&[-1.0, -1.0]),
        ];
        let e = fit_mvce(&pts, 1e-9).unwrap();
        assert!(e.center().norm() < 1e-9);
        let expect = RMatrix::identity(2, 2).scale(0.5);
        assert!((e.shape() - expect).norm() < 1e-8);
    }

    #[test]
    fn mvce_covers_all_inputs() {
        let pts = random_points(5, 1000, 21);
        let eps = 1e-6;
        let e = fit_mvce(&pts, eps).unwrap();
        for p in &pts {
            assert!(e.membership(p) <= 1.0 + eps);
        }
    }

    #[test]
    fn mvce_translation_equivariance() {
        let pts = random_points(3, 40, 5);
        let shift = RVector::from_row_slice(&[2.5, -1.0, 0.75]);
        let moved: Vec<RVector> = pts.iter().map(|p| p + &shift).collect();
        let e0 = fit_mvce(&pts, 1e-8).unwrap();
        let e1 = fit_mvce(&moved, 1e-8).unwrap();
        assert!((e1.center() - e0.center() - shift).norm() < 1e-8);
        assert!((e1.shape() - e0.shape()).norm() < 1e-8);
    }

    #[test]
    fn mvce_scaling_covariance() {
        let pts = random_points(4, 60, 9);
        let c = 3.0;
        let scaled: Vec<RVector> = pts.iter().map(|p| p * c).collect();
        let e0 = fit_mvce(&pts, 1e-9).unwrap();
        let e1 = fit_mvce(&scaled, 1e-9).unwrap();
        assert!((e1.center() - e0.center() * c).norm() < 1e-8);
        assert!((e1.shape() - e0.shape() / (c * c)).norm() < 1e-8);
    }

    #[test]
    fn mvce_reports_deficient_subspace() {
        // points confined to the z = 0 plane
        let mut pts = random_points(2, 30, 3);
        let flat: Vec<RVector> = pts
            .drain(..)
            .map(|p| RVector::from_row_slice(&[p[0], p[1], 0.0]))
            .collect();
        match fit_mvce(&flat, 1e-6) {
            Err(Error::DegeneratePoints { null_direction }) => {
                assert!((null_direction[2].abs() - 1.0).abs() < 1e-8);
                assert!(null_direction[0].abs() < 1e-8);
            }
            other => panic!("expected degenerate error, got {other:?}"),
        }
    }

    #[test]
    fn mvce_monotone_under_added_points() {
        let pts = random_points(3, 25, 77);
        let before = fit_mvce(&pts, 1e-9).unwrap();

        // an exterior point must grow the ellipsoid
        let mut grown = pts.clone();
        grown.push(RVector::from_row_slice(&[2.0, 0.0, 0.0]));
        let after = fit_mvce(&grown, 1e-9).unwrap();
        assert!(after.log_det_inverse() > before.log_det_inverse() - 1e-9);

        // an interior point must leave the fit unchanged up to tolerance
        let mut same = pts.clone();
        same.push(RVector::zeros(3));
        let unchanged = fit_mvce(&same, 1e-9).unwrap();
        assert!(unchanged.log_det_inverse() > before.log_det_inverse() - 1e-9);
    }

    #[test]
    fn projection_on_unit_ball() {
        let e = unit_ball(4);
        let mut r = RVector::zeros(4);
        r[0] = 2.0;
        let res = project_to_ellipsoid(&e, &r).unwrap();
        assert!((res.distance - 1.0).abs() < 1e-12);
        assert!((res.projection[0] - 1.0).abs() < 1e-12);

        let inside = RVector::from_row_slice(&[0.2, 0.1, 0.0, -0.3]);
        let res = project_to_ellipsoid(&e, &inside).unwrap();
        assert_eq!(res.distance, 0.0);
        assert_eq!(res.projection, inside);
    }

    #[test]
    fn projection_matches_boundary_grid_search() {
        // brute-force oracle: walk the ellipse boundary on a fine angular grid
        let shape = RMatrix::from_row_slice(2, 2, &[0.8, 0.3, 0.3, 2.0]);
        let center = RVector::from_row_slice(&[0.4, -0.2]);
        let e = Ellipsoid::new(center.clone(), shape.clone()).unwrap();
        let eig = shape.symmetric_eigen();
        let mut rng = stream_rng(31, &[0]);
        for _ in 0..20 {
            let r = RVector::from_fn(2, |_, _| rng.gen_range(-4.0..4.0));
            if e.membership(&r) <= 1.0 {
                continue;
            }
            let mut best = f64::INFINITY;
            let steps = 200_000;
            for k in 0..steps {
                let t = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
                let u = RVector::from_row_slice(&[
                    t.cos() / eig.eigenvalues[0].sqrt(),
                    t.sin() / eig.eigenvalues[1].sqrt(),
                ]);
                let x = &center + &eig.eigenvectors * u;
                best = best.min((&x - &r).norm());
            }
            let res = project_to_ellipsoid(&e, &r).unwrap();
            assert!(
                (res.distance - best).abs() < 1e-4,
                "exact {} vs grid {}",
                res.distance,
                best
            );
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let pts = random_points(6, 40, 55);
        let e = fit_mvce(&pts, 1e-7).unwrap();
        let mut rng = stream_rng(4, &[6]);
        for _ in 0..25 {
            let r = RVector::from_fn(6, |_, _| rng.gen_range(-3.0..3.0));
            let first = project_to_ellipsoid(&e, &r).unwrap();
            let second = project_to_ellipsoid(&e, &first.projection).unwrap();
            assert!((&second.projection - &first.projection).norm() < 1e-10);
        }
    }

    #[test]
    fn witness_on_unit_ball() {
        let e = unit_ball(2);
        let r = RVector::from_row_slice(&[2.0, 0.0]);
        let w = tangent_pseudo_witness(&e, &r).unwrap();
        assert!((w.normal[0] - 1.0).abs() < 1e-10);
        assert!(w.normal[1].abs() < 1e-10);
        assert!((w.offset - 1.0).abs() < 1e-10);
        assert!(w.evaluate(&r) > w.offset);
    }

    #[test]
    fn witness_separates_sampled_ellipsoid_points() {
        let pts = random_points(3, 30, 101);
        let e = fit_mvce(&pts, 1e-7).unwrap();
        let r = RVector::from_row_slice(&[3.0, -2.0, 1.5]);
        let w = tangent_pseudo_witness(&e, &r).unwrap();
        assert!(w.evaluate(&r) > w.offset);

        // equality holds at the tangency point itself
        let s0 = project_to_ellipsoid(&e, &r).unwrap().projection;
        assert!((w.evaluate(&s0) - w.offset).abs() < 1e-9);

        let eig = e.shape().clone().symmetric_eigen();
        let mut rng = stream_rng(19, &[3]);
        for _ in 0..10_000 {
            let mut dir = RVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0f64));
            let norm = dir.norm();
            if norm == 0.0 {
                continue;
            }
            dir /= norm;
            let t: f64 = rng.gen_range(0.0..1.0);
            let scaled = RVector::from_fn(3, |i, _| dir[i] * t / eig.eigenvalues[i].sqrt());
            let x = e.center() + &eig.eigenvectors * scaled;
            assert!(e.membership(&x) <= 1.0 + 1e-12);
            assert!(w.evaluate(&x) <= w.offset + 1e-9);
        }
    }

    #[test]
    fn witness_rejects_interior_queries() {
        let e = unit_ball(3);
        let inside = RVector::from_row_slice(&[0.1, 0.2, 0.0]);
        assert!(matches!(
            tangent_pseudo_witness(&e, &inside),
            Err(Error::InteriorPoint)
        ));
    }

    #[test]
    fn dual_certificate_on_unit_ball() {
        let e = unit_ball(5);
        let mut r = RVector::zeros(5);
        r[0] = 2.0;
        assert!((dual_distance_certificate(&e, &r).unwrap() - 1.0).abs() < 1e-10);
        let inside = RVector::from_row_slice(&[0.1, 0.0, 0.0, 0.2, 0.0]);
        assert_eq!(dual_distance_certificate(&e, &inside).unwrap(), 0.0);
    }

    #[test]
    fn dual_equals_primal_on_random_queries() {
        let pts = random_points(3, 40, 61);
        let e = fit_mvce(&pts, 1e-8).unwrap();
        let mut rng = stream_rng(8, &[1]);
        let mut checked = 0;
        while checked < 100 {
            let r = RVector::from_fn(3, |_, _| rng.gen_range(-4.0..4.0));
            if e.membership(&r) <= 1.0 {
                continue;
            }
            let primal = project_to_ellipsoid(&e, &r).unwrap().distance;
            let dual = dual_distance_certificate(&e, &r).unwrap();
            assert!(
                (primal - dual).abs() <= 1e-8,
                "primal {primal} dual {dual}"
            );
            checked += 1;
        }
    }

    #[test]
    fn dykstra_keeps_separable_states_fixed() {
        let mut rng = stream_rng(40, &[2]);
        let rho = sample_state_with(StateKind::Separable, (2, 2), &mut rng).unwrap();
        let res = project_to_ppt_set(&rho, 1e-10, 50_000).unwrap();
        assert!(res.distance < 1e-8);
        assert!((res.sigma.matrix() - rho.matrix()).norm() < 1e-8);
        assert!(res.exact_separable);
    }

    #[test]
    fn dykstra_projects_singlet_to_werner_boundary() {
        // line-search oracle: rho_l = l singlet + (1-l) I/4 stays PPT up to
        // l = 1/3, giving distance (2/3) |singlet - I/4|_F = sqrt(3)/3
        let singlet = bell_state(4).unwrap();
        let res = project_to_ppt_set(&singlet, 1e-10, 50_000).unwrap();
        let expect = 3.0_f64.sqrt() / 3.0;
        assert!(
            (res.distance - expect).abs() < 1e-6,
            "distance {} vs {}",
            res.distance,
            expect
        );
        let (ppt, min_eig) = res.sigma.is_ppt(10.0 * PSD_TOL).unwrap();
        assert!(ppt, "projection must be PPT, min eig {min_eig}");

        // the oracle itself, frozen by scanning the mixing parameter
        let mixed = DensityOperator::maximally_mixed(vec![2, 2]);
        let mut best = f64::INFINITY;
        for k in 0..=100_000 {
            let l = k as f64 / 100_000.0;
            let m = singlet.matrix().scale(l) + mixed.matrix().scale(1.0 - l);
            let cand = DensityOperator::new(m, vec![2, 2]).unwrap();
            if cand.is_ppt(PSD_TOL).unwrap().0 {
                best = best.min((singlet.matrix() - cand.matrix()).norm());
            }
        }
        assert!((best - expect).abs() < 1e-4);
        assert!(res.distance <= best + 1e-6);
    }

    #[test]
    fn dykstra_history_grows_toward_the_distance() {
        let singlet = bell_state(4).unwrap();
        let res = project_to_ppt_set(&singlet, 1e-10, 50_000).unwrap();
        for pair in res.distance_history.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12);
        }
        let last = *res.distance_history.last().unwrap();
        assert!((last - res.distance).abs() < 1e-6);
    }

    #[test]
    fn dykstra_max_iter_is_enforced() {
        let singlet = bell_state(4).unwrap();
        assert!(matches!(
            project_to_ppt_set(&singlet, 1e-14, 3),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn dykstra_labels_large_systems_as_relaxation_only() {
        // beyond 2x2 and 2x3 the PPT set strictly contains the separable
        // set, so the distance is only a lower-bound relaxation
        let mut rng = stream_rng(91, &[0]);
        let rho = sample_state_with(StateKind::MixedHs, (3, 3), &mut rng).unwrap();
        let res = project_to_ppt_set(&rho, 1e-8, 50_000).unwrap();
        assert!(!res.exact_separable);

        let small = sample_state_with(StateKind::MixedHs, (2, 3), &mut rng).unwrap();
        let res = project_to_ppt_set(&small, 1e-8, 50_000).unwrap();
        assert!(res.exact_separable);
    }

    #[test]
    fn mvce_of_a_minimal_simplex() {
        // exactly n+1 affinely independent points: the fit must succeed
        // and circumscribe them
        let pts = vec![
            RVector::from_row_slice(&[0.0, 0.0, 0.0]),
            RVector::from_row_slice(&[1.0, 0.0, 0.0]),
            RVector::from_row_slice(&[0.0, 1.0, 0.0]),
            RVector::from_row_slice(&[0.0, 0.0, 1.0]),
        ];
        let e = fit_mvce(&pts, 1e-8).unwrap();
        for p in &pts {
            assert!(e.membership(p) <= 1.0 + 1e-8);
            // a simplex vertex set is touched by the optimal ellipsoid
            assert!(e.membership(p) >= 1.0 - 1e-6);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn prop_mvce_membership(seed in 0u64..100) {
            let pts = random_points(4, 30, seed);
            let e = fit_mvce(&pts, 1e-6).unwrap();
            for p in &pts {
                prop_assert!(e.membership(p) <= 1.0 + 1e-6);
            }
        }

        #[test]
        fn prop_primal_dual_gap(seed in 0u64..100) {
            let pts = random_points(3, 20, seed.wrapping_add(1000));
            let e = fit_mvce(&pts, 1e-8).unwrap();
            let mut rng = stream_rng(seed, &[7]);
            let r = RVector::from_fn(3, |_, _| rng.gen_range(-5.0..5.0));
            let primal = project_to_ellipsoid(&e, &r).unwrap().distance;
            let dual = dual_distance_certificate(&e, &r).unwrap();
            prop_assert!((primal - dual).abs() <= 1e-8);
        }
    }
}
