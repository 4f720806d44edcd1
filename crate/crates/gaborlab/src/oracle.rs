//! Independent finite-dimensional oracle: Gabor frame operators on the
//! cyclic group Z_n with periodized sampled Gaussian windows.
//!
//! With sampling step 1/√n the pair (a_step, b_step) models the rectangular
//! lattice (α, β) = (a_step/√n, b_step/√n); the extreme eigenvalues of the
//! frame matrix approximate the continuous sharp bounds and the canonical
//! dual window realizes the reconstruction formula. Nothing here shares
//! code with the Janssen-series path, which is the point of the oracle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gabor::{sharp_bounds, GridSpec, TruncationSpec};
use crate::lattice::make_rectangular;

/// Cyclic time shift (T_a v)[j] = v[(j − a) mod n].
pub fn translate(v: &[Complex64], a: usize) -> Vec<Complex64> {
    let n = v.len();
    let a = a % n;
    (0..n).map(|j| v[(j + n - a) % n]).collect()
}

/// Cyclic modulation (M_b v)[j] = v[j] e^{2πi b j / n}.
pub fn modulate(v: &[Complex64], b: usize) -> Vec<Complex64> {
    let n = v.len();
    v.iter()
        .enumerate()
        .map(|(j, x)| {
            let angle = 2.0 * std::f64::consts::PI * ((b * j) % n) as f64 / n as f64;
            x * Complex64::from_polar(1.0, angle)
        })
        .collect()
}

/// Time-frequency shift π(a, b) = M_b T_a.
pub fn tf_shift(v: &[Complex64], a: usize, b: usize) -> Vec<Complex64> {
    modulate(&translate(v, a), b)
}

/// Periodized, sampled, normalized Gaussian window on Z_n, n a perfect
/// square: w[j] ∝ Σ_m g₀((j + mn)/√n) with g₀(t) = 2^{1/4} e^{−πt²}.
pub fn periodized_gaussian_window(n: usize) -> Result<Vec<Complex64>> {
    let s = (n as f64).sqrt().round() as usize;
    if s * s != n || n < 16 {
        return Err(Error::Domain(format!(
            "window dimension must be a perfect square >= 16, got {n}"
        )));
    }
    let mut w = vec![0.0f64; n];
    for (j, slot) in w.iter_mut().enumerate() {
        // m = ±3 puts |t| ≥ 2√n ≥ 8, where g₀ is far below the 1e-17 tail
        for m in -3i64..=3 {
            let t = (j as f64 + m as f64 * n as f64) / s as f64;
            *slot += 2.0f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp();
        }
    }
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(w.into_iter().map(|x| Complex64::new(x / norm, 0.0)).collect())
}

/// A Gabor system on Z_n: unit-norm window with time stride a_step and
/// frequency stride b_step, both dividing n, with a_step·b_step ≤ n.
#[derive(Debug, Clone)]
pub struct FiniteGaborSystem {
    n: usize,
    window: Vec<Complex64>,
    a_step: usize,
    b_step: usize,
}

impl FiniteGaborSystem {
    pub fn new(window: Vec<Complex64>, a_step: usize, b_step: usize) -> Result<Self> {
        let n = window.len();
        if n < 4 {
            return Err(Error::Domain(format!("dimension must be at least 4, got {n}")));
        }
        if a_step == 0 || b_step == 0 || !n.is_multiple_of(a_step) || !n.is_multiple_of(b_step) {
            return Err(Error::Domain(format!(
                "shift strides must divide the dimension, got ({a_step}, {b_step}) for n = {n}"
            )));
        }
        if a_step * b_step > n {
            return Err(Error::Domain(format!(
                "undersampled system: a_step * b_step = {} exceeds n = {n}",
                a_step * b_step
            )));
        }
        let norm = window.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "window must have unit norm, got {norm}"
            )));
        }
        Ok(Self {
            n,
            window,
            a_step,
            b_step,
        })
    }

    /// System with the periodized Gaussian window.
    pub fn gaussian(n: usize, a_step: usize, b_step: usize) -> Result<Self> {
        Self::new(periodized_gaussian_window(n)?, a_step, b_step)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[Complex64] {
        &self.window
    }

    pub fn a_step(&self) -> usize {
        self.a_step
    }

    pub fn b_step(&self) -> usize {
        self.b_step
    }

    /// Redundancy n / (a_step · b_step).
    pub fn density(&self) -> f64 {
        self.n as f64 / (self.a_step * self.b_step) as f64
    }
}

/// Dense Hermitian matrix, conjugate symmetry checked at construction.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    inner: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self> {
        if !inner.is_square() {
            return Err(Error::Domain(format!(
                "matrix must be square, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        for i in 0..inner.nrows() {
            for j in 0..=i {
                let dev = (inner[(i, j)] - inner[(j, i)].conj()).norm();
                if dev > 1e-12 {
                    return Err(Error::Domain(format!(
                        "matrix is not Hermitian: entry ({i}, {j}) deviates by {dev:e}"
                    )));
                }
            }
        }
        Ok(Self { inner })
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }
}

/// Frame matrix S = Σ_λ π(λ)w (π(λ)w)* over the (n/a)·(n/b) lattice of
/// time-frequency shifts; Hermitian positive semidefinite.
pub fn frame_matrix(sys: &FiniteGaborSystem) -> HermitianMatrix {
    let n = sys.n;
    let mut s = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n / sys.a_step {
        for l in 0..n / sys.b_step {
            let atom = tf_shift(&sys.window, k * sys.a_step, l * sys.b_step);
            for j in 0..n {
                let cj = atom[j].conj();
                for i in 0..n {
                    s[(i, j)] += atom[i] * cj;
                }
            }
        }
    }
    HermitianMatrix::new(s).expect("rank-one accumulation is Hermitian by construction")
}

/// Smallest and largest eigenvalue via a full Hermitian eigendecomposition.
pub fn extreme_eigenvalues(h: &HermitianMatrix) -> (f64, f64) {
    let eig = h.inner.clone().symmetric_eigen();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &l in eig.eigenvalues.iter() {
        min = min.min(l);
        max = max.max(l);
    }
    (min, max)
}

/// Canonical dual window g° = S⁻¹ w; errors if the system is not a frame
/// (smallest eigenvalue ≤ 1e-10).
pub fn canonical_dual(sys: &FiniteGaborSystem) -> Result<Vec<Complex64>> {
    let s = frame_matrix(sys);
    let eig = s.inner.symmetric_eigen();
    let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if lambda_min <= 1e-10 {
        return Err(Error::NotAFrame(format!(
            "smallest frame-matrix eigenvalue {lambda_min:e} is not positive"
        )));
    }
    let w = DVector::from_column_slice(sys.window());
    let coeffs = eig.eigenvectors.adjoint() * w;
    let scaled = DVector::from_iterator(
        sys.n,
        coeffs
            .iter()
            .zip(eig.eigenvalues.iter())
            .map(|(c, l)| c / Complex64::new(*l, 0.0)),
    );
    let dual = eig.eigenvectors * scaled;
    Ok(dual.iter().copied().collect())
}

/// One line of the discrete-vs-continuous comparison table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub a_ref: f64,
    pub b_ref: f64,
}

impl ConvergenceRow {
    pub fn deviation(&self) -> (f64, f64) {
        (
            (self.lambda_min - self.a_ref).abs(),
            (self.lambda_max - self.b_ref).abs(),
        )
    }
}

/// Discrete extreme eigenvalues of the rect(α, β) model at increasing
/// dimension, next to the continuous sharp bounds.
///
/// Each n must be a perfect square with α√n and β√n integers, and the
/// density 1/(αβ) an even integer so the continuous reference exists.
pub fn converge_compare(
    alpha: f64,
    beta: f64,
    n_list: &[usize],
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<Vec<ConvergenceRow>> {
    let density = 1.0 / (alpha * beta);
    let half = (density / 2.0).round();
    if half < 1.0 || (density - 2.0 * half).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "comparison requires an even integer density, got 1/(alpha*beta) = {density}"
        )));
    }
    let reference = sharp_bounds(&make_rectangular(alpha, beta)?, grid, trunc)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let s = (n as f64).sqrt().round();
        if s * s != n as f64 {
            return Err(Error::Domain(format!("n = {n} is not a perfect square")));
        }
        let a_exact = alpha * s;
        let b_exact = beta * s;
        if (a_exact - a_exact.round()).abs() > 1e-9 || (b_exact - b_exact.round()).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "n = {n} is incompatible: alpha*sqrt(n) = {a_exact} and beta*sqrt(n) = {b_exact} \
                 must both be integers"
            )));
        }
        let sys = FiniteGaborSystem::gaussian(n, a_exact.round() as usize, b_exact.round() as usize)?;
        let (lambda_min, lambda_max) = extreme_eigenvalues(&frame_matrix(&sys));
        rows.push(ConvergenceRow {
            n,
            lambda_min,
            lambda_max,
            a_ref: reference.lower,
            b_ref: reference.upper,
        });
    }
    Ok(rows)
}
