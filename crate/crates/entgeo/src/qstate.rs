//! Finite-dimensional quantum state algebra.
//!
//! Density operators carry their subsystem dimensions, so bipartite
//! operations (partial trace, partial transposition, PPT checks) need no
//! extra bookkeeping at the call site. States map to real Bloch vectors
//! through a traceless Hermitian operator basis (generalized Gell-Mann,
//! normalized to `Tr(s_i s_j) = 2 d_ij`), which is where all the convex
//! geometry in this crate lives.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Tolerance for Hermiticity and unit-trace checks.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues above `-PSD_TOL` count as nonnegative.
pub const PSD_TOL: f64 = 1e-10;
/// Basis elements must be traceless and Hermitian to this accuracy.
pub const BASIS_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Max entrywise magnitude of `m - m^dagger`.
fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// (m + m^dagger) / 2, the Hermitian part.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (RVector, CMatrix) {
    let eig = hermitize(m).symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = RVector::from_iterator(idx.len(), idx.iter().map(|&i| eig.eigenvalues[i]));
    let vecs = CMatrix::from_fn(m.nrows(), m.ncols(), |r, k| eig.eigenvectors[(r, idx[k])]);
    (vals, vecs)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let (vals, _) = hermitian_eigen(m);
    vals[0]
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Transpose of one tensor factor of a `da*db` square matrix.
pub fn partial_transpose_matrix(m: &CMatrix, da: usize, db: usize, part: usize) -> CMatrix {
    let n = da * db;
    debug_assert_eq!(m.nrows(), n);
    let mut out = CMatrix::zeros(n, n);
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    let (src_r, src_c) = if part == 0 {
                        (a2 * db + b, a * db + b2)
                    } else {
                        (a * db + b2, a2 * db + b)
                    };
                    out[(a * db + b, a2 * db + b2)] = m[(src_r, src_c)];
                }
            }
        }
    }
    out
}

/// Tr(a b) without forming the product matrix.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

/// A Hermitian, positive-semidefinite, unit-trace matrix together with the
/// ordered dimensions of its subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity at 1e-10.
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if n == 0 || matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.nrows(),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = min_eigenvalue(&matrix);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { matrix, dims })
    }

    /// |v><v| for a normalized state vector.
    pub fn from_pure(v: &CVector, dims: Vec<usize>) -> Result<Self> {
        let norm = v.norm();
        let w = v.unscale(norm);
        let m = CMatrix::from_fn(v.len(), v.len(), |i, j| w[i] * w[j].conj());
        Self::new(m, dims)
    }

    /// Maximally mixed state I/d on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        let m = CMatrix::identity(n, n).scale(1.0 / n as f64);
        Self { matrix: m, dims }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        trace_product(&self.matrix, &self.matrix).re
    }

    /// Kronecker product of two states; dims concatenate.
    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityOperator {
            matrix: kron(&self.matrix, &other.matrix),
            dims,
        }
    }

    fn bipartite_dims(&self) -> Result<(usize, usize)> {
        if self.dims.len() != 2 {
            return Err(Error::SubsystemOutOfRange {
                index: 2,
                count: self.dims.len(),
            });
        }
        Ok((self.dims[0], self.dims[1]))
    }

    /// Reduced state on the kept subsystem of a bipartite state.
    pub fn partial_trace(&self, keep: usize) -> Result<DensityOperator> {
        let (da, db) = self.bipartite_dims()?;
        if keep > 1 {
            return Err(Error::SubsystemOutOfRange {
                index: keep,
                count: 2,
            });
        }
        let m = &self.matrix;
        let (dk, dt) = if keep == 0 { (da, db) } else { (db, da) };
        let mut out = CMatrix::zeros(dk, dk);
        for x in 0..dk {
            for y in 0..dk {
                let mut acc = ZERO;
                for t in 0..dt {
                    let (i, j) = if keep == 0 {
                        (x * db + t, y * db + t)
                    } else {
                        (t * db + x, t * db + y)
                    };
                    acc += m[(i, j)];
                }
                out[(x, y)] = acc;
            }
        }
        DensityOperator::new(out, vec![dk])
    }

    /// Transpose of one tensor factor. Hermitian and unit trace, but in
    /// general no longer positive; that failure is the PPT criterion.
    pub fn partial_transpose(&self, part: usize) -> Result<CMatrix> {
        let (da, db) = self.bipartite_dims()?;
        if part > 1 {
            return Err(Error::SubsystemOutOfRange {
                index: part,
                count: 2,
            });
        }
        Ok(partial_transpose_matrix(&self.matrix, da, db, part))
    }

    /// Peres-Horodecki check: true iff the partial transpose has minimum
    /// eigenvalue >= -tol. Returns the eigenvalue alongside the verdict.
    pub fn is_ppt(&self, tol: f64) -> Result<(bool, f64)> {
        let pt = self.partial_transpose(0)?;
        let min_eig = min_eigenvalue(&pt);
        Ok((min_eig >= -tol, min_eig))
    }

    /// Majorization criterion: eigenvalues of the global state, sorted
    /// decreasing, must be dominated partial-sum-wise by those of the
    /// reduced state on A (zero-padded). A `false` verdict signals
    /// entanglement.
    pub fn majorization_check(&self) -> Result<bool> {
        let marginal = self.partial_trace(0)?;
        let (glob, _) = hermitian_eigen(&self.matrix);
        let (red, _) = hermitian_eigen(marginal.matrix());
        let mut glob: Vec<f64> = glob.iter().copied().collect();
        let mut red: Vec<f64> = red.iter().copied().collect();
        glob.sort_by(|a, b| b.total_cmp(a));
        red.sort_by(|a, b| b.total_cmp(a));
        red.resize(glob.len(), 0.0);
        let mut sum_g = 0.0;
        let mut sum_r = 0.0;
        for k in 0..glob.len() {
            sum_g += glob[k];
            sum_r += red[k];
            if sum_r < sum_g - 1e-10 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0) are clipped
    /// to zero; a validated state cannot carry anything more negative.
    pub fn von_neumann_entropy(&self) -> f64 {
        let (vals, _) = hermitian_eigen(&self.matrix);
        let mut s = 0.0;
        for &v in vals.iter() {
            debug_assert!(v >= -PSD_TOL, "eigenvalue {v} below clip range");
            if v > 0.0 {
                s -= v * v.log2();
            }
        }
        s
    }

    /// Bloch coordinates with respect to the generalized Gell-Mann basis of
    /// the total dimension: `r_i = (N / alpha) <s_i, rho>`.
    pub fn to_bloch(&self) -> BlochVector {
        let basis = HermitianBasis::new(self.dim()).expect("dim >= 2 for any valid state");
        let factor = self.dim() as f64 / basis.alpha();
        let coords = RVector::from_iterator(
            basis.len(),
            basis
                .elements()
                .iter()
                .map(|s| factor * trace_product(s, &self.matrix).re),
        );
        BlochVector {
            coords,
            dim: self.dim(),
        }
    }

    /// Rebuilds a state from Bloch coordinates, failing if the coordinates
    /// do not describe a positive operator.
    pub fn from_bloch(r: &BlochVector, dims: Vec<usize>) -> Result<Self> {
        let m = from_bloch(r)?;
        Self::new(m, dims)
    }
}

// ---------------------------------------------------------------------------
// Traceless Hermitian basis and Bloch coordinates
// ---------------------------------------------------------------------------

/// Generalized Gell-Mann basis of trace-free Hermitian matrices with
/// `Tr(s_i s_j) = alpha d_ij`, `alpha = 2`.
///
/// Element order: symmetric pair matrices `E_jk + E_kj` for j < k in row
/// lexicographic order, then antisymmetric `-i (E_jk - E_kj)` in the same
/// order, then the d-1 diagonal matrices.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<CMatrix>,
    alpha: f64,
}

impl HermitianBasis {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut elements = Vec::with_capacity(dim * dim - 1);
        for j in 0..dim {
            for k in (j + 1)..dim {
                let mut m = CMatrix::zeros(dim, dim);
                m[(j, k)] = ONE;
                m[(k, j)] = ONE;
                elements.push(m);
            }
        }
        for j in 0..dim {
            for k in (j + 1)..dim {
                let mut m = CMatrix::zeros(dim, dim);
                m[(j, k)] = c(0.0, -1.0);
                m[(k, j)] = c(0.0, 1.0);
                elements.push(m);
            }
        }
        for l in 1..dim {
            let scale = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
            let mut m = CMatrix::zeros(dim, dim);
            for i in 0..l {
                m[(i, i)] = c(scale, 0.0);
            }
            m[(l, l)] = c(-scale * l as f64, 0.0);
            elements.push(m);
        }
        Ok(Self {
            dim,
            elements,
            alpha: 2.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// See [`HermitianBasis`].
pub fn hermitian_basis(dim: usize) -> Result<HermitianBasis> {
    HermitianBasis::new(dim)
}

/// Real coordinates of an operator in the generalized Gell-Mann basis.
/// Arbitrary vectors are allowed; they need not describe a positive
/// operator, only [`from_bloch`] back-maps them to a Hermitian unit-trace
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    coords: RVector,
    dim: usize,
}

impl BlochVector {
    pub fn new(coords: RVector, dim: usize) -> Result<Self> {
        if coords.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                got: coords.len(),
            });
        }
        Ok(Self { coords, dim })
    }

    pub fn coords(&self) -> &RVector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn scaled(&self, factor: f64) -> BlochVector {
        BlochVector {
            coords: &self.coords * factor,
            dim: self.dim,
        }
    }
}

/// `(1/N) (I + sum_i r_i s_i)`: always Hermitian with unit trace, positive
/// only when the coordinates lie in the state body (callers check).
pub fn from_bloch(r: &BlochVector) -> Result<CMatrix> {
    let basis = HermitianBasis::new(r.dim)?;
    let n = r.dim;
    let mut m = CMatrix::identity(n, n);
    for (i, s) in basis.elements().iter().enumerate() {
        m += s.scale(r.coords[i]);
    }
    Ok(m.scale(1.0 / n as f64))
}

// ---------------------------------------------------------------------------
// Probability vectors
// ---------------------------------------------------------------------------

/// Point in the probability simplex: nonnegative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    probs: RVector,
}

impl ProbabilityVector {
    pub fn new(probs: RVector) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p < -1e-12) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotSimplex(sum));
        }
        Ok(Self {
            probs: probs.map(|p| p.max(0.0)),
        })
    }

    pub fn from_slice(probs: &[f64]) -> Result<Self> {
        Self::new(RVector::from_row_slice(probs))
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: RVector::from_element(n, 1.0 / n as f64),
        }
    }

    pub fn probs(&self) -> &RVector {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.len() == 0
    }
}

// ---------------------------------------------------------------------------
// Relative entropy
// ---------------------------------------------------------------------------

/// Quantum relative entropy `S(rho || sigma)` in bits, `Tr(rho log rho -
/// rho log sigma)`. Returns `f64::INFINITY` when the support of `rho`
/// leaks outside the support of `sigma`.
pub fn quantum_relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let (p, u) = hermitian_eigen(rho.matrix());
    let (q, v) = hermitian_eigen(sigma.matrix());
    let n = rho.dim();
    let support_tol = 1e-12;

    let mut s = 0.0;
    for i in 0..n {
        let pi = p[i].max(0.0);
        if pi > 0.0 {
            s += pi * pi.log2();
        }
    }
    for j in 0..n {
        let qj = q[j].max(0.0);
        // overlap of rho with the j-th eigenvector of sigma
        let mut mass = 0.0;
        for i in 0..n {
            let pi = p[i].max(0.0);
            if pi == 0.0 {
                continue;
            }
            let dot: Complex64 = u.column(i).dotc(&v.column(j));
            mass += pi * dot.norm_sqr();
        }
        if qj <= support_tol {
            if mass > 1e-10 {
                return Ok(f64::INFINITY);
            }
        } else {
            s -= mass * qj.log2();
        }
    }
    Ok(s.max(0.0))
}

// ---------------------------------------------------------------------------
// Canonical states and the CHSH functional
// ---------------------------------------------------------------------------

/// The four Bell states. `k = 1..4` follows the basis
/// `(|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2, (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2`;
/// the fourth is the singlet.
pub fn bell_state(k: usize) -> Result<DensityOperator> {
    let v = bell_vector(k)?;
    DensityOperator::from_pure(&v, vec![2, 2])
}

/// State vector of the k-th Bell state.
pub fn bell_vector(k: usize) -> Result<CVector> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match k {
        1 => [s, 0.0, 0.0, s],
        2 => [s, 0.0, 0.0, -s],
        3 => [0.0, s, s, 0.0],
        4 => [0.0, s, -s, 0.0],
        _ => {
            return Err(Error::ParameterOutOfRange {
                name: "k",
                value: k as f64,
                range: "1..=4",
            })
        }
    };
    Ok(CVector::from_iterator(4, amps.iter().map(|&a| c(a, 0.0))))
}

/// Pauli matrices (x, y, z).
pub fn pauli() -> [CMatrix; 3] {
    let sx = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
    let sy = CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]);
    let sz = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
    [sx, sy, sz]
}

/// CHSH combination for the standard two-setting family: A measures along
/// z and x, B along `-(sin t, 0, cos t)` and `(sin t, 0, -cos t)`.
/// The combination is `<A1 B1> + <A1 B2> + <A2 B1> - <A2 B2>`; for the
/// singlet it equals `2 (cos t + sin t)`, peaking at `2 sqrt 2` for
/// `t = pi/4`. Local realism bounds it by 2 in magnitude.
pub fn chsh_value(rho: &DensityOperator, theta: f64) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::UnsupportedDims(
            rho.dims().first().copied().unwrap_or(0),
            rho.dims().get(1).copied().unwrap_or(0),
        ));
    }
    let [sx, _, sz] = pauli();
    let a1 = sz.clone();
    let a2 = sx.clone();
    let b1 = -(sx.scale(theta.sin()) + sz.scale(theta.cos()));
    let b2 = sx.scale(theta.sin()) - sz.scale(theta.cos());
    let corr = |a: &CMatrix, b: &CMatrix| trace_product(&kron(a, b), rho.matrix()).re;
    Ok(corr(&a1, &b1) + corr(&a1, &b2) + corr(&a2, &b1) - corr(&a2, &b2))
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

/// Requested random-state ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    /// Uniform mixture of k product pure states, k uniform in 1..=4.
    Separable,
    /// Hilbert-Schmidt samples rejected until they fail the PPT test.
    EntangledFiltered,
    /// Haar-random pure state on the composite space.
    PureHaar,
    /// Hilbert-Schmidt measure: G G^dagger normalized, G complex Gaussian.
    MixedHs,
}

fn avalanche(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic stream keyed by `(seed, stream parts)`. Every absorbed
/// word passes through a full 64-bit avalanche, so distinct key tuples
/// give unrelated streams and every trial of a batch derives its own
/// generator; serial and parallel runs agree bit for bit.
pub fn stream_rng(seed: u64, stream: &[u64]) -> ChaCha12Rng {
    let golden = 0x9e37_79b9_7f4a_7c15u64;
    let mut state = avalanche(seed ^ golden);
    for &part in stream {
        state = avalanche(state.wrapping_add(golden).wrapping_add(part));
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(golden);
        chunk.copy_from_slice(&avalanche(state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Haar-random pure state vector in dimension d.
pub fn haar_vector(d: usize, rng: &mut impl Rng) -> CVector {
    let mut v = CVector::from_fn(d, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v /= c(norm, 0.0);
    v
}

fn hs_matrix(d: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    w.scale(1.0 / tr)
}

/// Draw a state of the requested kind with an explicit generator.
pub fn sample_state_with(
    kind: StateKind,
    dims: (usize, usize),
    rng: &mut impl Rng,
) -> Result<DensityOperator> {
    let (da, db) = dims;
    if da < 2 || db < 2 {
        return Err(Error::InvalidDimension(da.min(db)));
    }
    let n = da * db;
    match kind {
        StateKind::PureHaar => {
            let v = haar_vector(n, rng);
            DensityOperator::from_pure(&v, vec![da, db])
        }
        StateKind::MixedHs => DensityOperator::new(hs_matrix(n, rng), vec![da, db]),
        StateKind::Separable => {
            let k = rng.gen_range(1..=4usize);
            let mut m = CMatrix::zeros(n, n);
            for _ in 0..k {
                let va = haar_vector(da, rng);
                let vb = haar_vector(db, rng);
                let pa = CMatrix::from_fn(da, da, |i, j| va[i] * va[j].conj());
                let pb = CMatrix::from_fn(db, db, |i, j| vb[i] * vb[j].conj());
                m += kron(&pa, &pb).scale(1.0 / k as f64);
            }
            DensityOperator::new(m, vec![da, db])
        }
        StateKind::EntangledFiltered => {
            if n > 9 {
                return Err(Error::UnsupportedDims(da, db));
            }
            for _ in 0..100_000 {
                let rho = DensityOperator::new(hs_matrix(n, rng), vec![da, db])?;
                let (ppt, _) = rho.is_ppt(PSD_TOL)?;
                if !ppt {
                    return Ok(rho);
                }
            }
            Err(Error::NoConvergence {
                iterations: 100_000,
                residual: f64::NAN,
            })
        }
    }
}

/// Seeded convenience wrapper around [`sample_state_with`]; the same
/// `(kind, dims, seed)` triple always returns the same matrix.
pub fn sample_state(kind: StateKind, dims: (usize, usize), seed: u64) -> Result<DensityOperator> {
    let tag = match kind {
        StateKind::Separable => 1,
        StateKind::EntangledFiltered => 2,
        StateKind::PureHaar => 3,
        StateKind::MixedHs => 4,
    };
    let mut rng = stream_rng(seed, &[tag, dims.0 as u64, dims.1 as u64]);
    sample_state_with(kind, dims, &mut rng)
}
