//! Gaussian short-time Fourier transform closed forms, lattice
//! periodizations of the spectrogram, and sharp / heuristic frame bounds
//! with condition numbers.
//!
//! For the normalized Gaussian window the sharp bounds at even integer
//! density are the extrema of a Fourier series with Gaussian coefficients
//! over the adjoint lattice,
//!
//! ```text
//! p̃(z) = δ · Σ_{λ° ∈ Λ°} e^{−π|λ°|²/2} e^{2πi σ(λ°, z)},
//! ```
//!
//! whose maximum sits at z = 0 while the minimum has to be located by
//! search. For arbitrary density the periodized spectrogram
//! p(z) = Σ_λ e^{−π|λ+z|²} brackets the bounds from inside.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{symplectic_form, Lattice2D};

const TWO_PI: f64 = 2.0 * PI;

/// Absolute tail budget for truncated lattice sums.
#[derive(Debug, Clone, Copy)]
pub struct TruncationSpec {
    tail_tol: f64,
}

impl TruncationSpec {
    pub fn new(tail_tol: f64) -> Result<Self> {
        if !(tail_tol > 0.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must be positive, got {tail_tol}"
            )));
        }
        Ok(Self { tail_tol })
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self { tail_tol: 1e-14 }
    }
}

/// Coarse-to-fine search controls for extrema over the fundamental cell.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    base_resolution: u32,
    refine_levels: u32,
    zoom_factor: u32,
}

impl GridSpec {
    pub fn new(base_resolution: u32, refine_levels: u32, zoom_factor: u32) -> Result<Self> {
        if base_resolution < 8 {
            return Err(Error::Domain(format!(
                "grid resolution must be at least 8, got {base_resolution}"
            )));
        }
        if zoom_factor < 2 {
            return Err(Error::Domain(format!(
                "zoom factor must be at least 2, got {zoom_factor}"
            )));
        }
        Ok(Self {
            base_resolution,
            refine_levels,
            zoom_factor,
        })
    }

    pub fn base_resolution(&self) -> u32 {
        self.base_resolution
    }

    pub fn refine_levels(&self) -> u32 {
        self.refine_levels
    }

    pub fn zoom_factor(&self) -> u32 {
        self.zoom_factor
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            base_resolution: 64,
            refine_levels: 3,
            zoom_factor: 8,
        }
    }
}

/// Sharp frame bounds A ≤ B with condition number B/A.
#[derive(Debug, Clone, Copy)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub cond: f64,
}

impl FrameBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0) || !(lower <= upper) {
            return Err(Error::Numerics(format!(
                "frame bounds must satisfy 0 < A <= B, got A = {lower}, B = {upper}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            cond: upper / lower,
        })
    }
}

/// STFT of the normalized Gaussian against itself,
/// V g₀(x, ω) = e^{−πixω} e^{−π(x²+ω²)/2}.
pub fn stft_gaussian(x: f64, omega: f64) -> Complex64 {
    Complex64::from_polar((-0.5 * PI * (x * x + omega * omega)).exp(), -PI * x * omega)
}

/// Gaussian spectrogram |V g₀|²(x, ω) = e^{−π(x²+ω²)}; radially symmetric.
pub fn spectrogram_gaussian(x: f64, omega: f64) -> f64 {
    (-PI * (x * x + omega * omega)).exp()
}

/// Truncation radius for Σ_{λ} e^{−c|λ+shift|²} with absolute tail below
/// `tol`: the lattice tail is dominated by a Gaussian integral once the
/// radius is padded by the covering radius.
pub(crate) fn gaussian_sum_radius(lat: &Lattice2D, c: f64, tol: f64) -> f64 {
    let rho = lat.covering_radius_bound();
    let prefactor = (TWO_PI * lat.density() / c).max(1.0);
    2.0 * rho + ((prefactor / tol).ln().max(0.0) / c).sqrt() + 0.5
}

/// Deterministic compensated accumulation: ascending magnitude order.
pub(crate) fn sum_ascending(terms: &mut Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    terms.iter().sum()
}

/// Periodized Gaussian spectrogram p(z) = Σ_{λ∈Λ} e^{−π|λ+z|²}.
///
/// Λ-periodic in z within twice the tail tolerance.
pub fn periodization_p(lat: &Lattice2D, z: [f64; 2], trunc: &TruncationSpec) -> f64 {
    let radius = gaussian_sum_radius(lat, PI, trunc.tail_tol());
    let center = [-z[0], -z[1]];
    let mut terms: Vec<f64> = lat
        .points_within(center, radius)
        .into_iter()
        .map(|p| {
            let dx = p[0] + z[0];
            let dy = p[1] + z[1];
            (-PI * (dx * dx + dy * dy)).exp()
        })
        .collect();
    sum_ascending(&mut terms)
}

/// Precomputed coefficient table of the Janssen-type series for one lattice.
///
/// Coefficients are sorted ascending once (they do not depend on z), so
/// every evaluation accumulates in the same deterministic order.
struct JanssenSeries {
    delta: f64,
    /// (coefficient, λ°₁, λ°₂), coefficient ascending
    terms: Vec<(f64, f64, f64)>,
}

impl JanssenSeries {
    fn build(lat: &Lattice2D, trunc: &TruncationSpec) -> Self {
        let delta = lat.density();
        let adjoint = lat.adjoint();
        let c = 0.5 * PI;
        let radius = gaussian_sum_radius(&adjoint, c, trunc.tail_tol() / delta);
        let mut terms: Vec<(f64, f64, f64)> = adjoint
            .points_within([0.0, 0.0], radius)
            .into_iter()
            .map(|p| ((-c * (p[0] * p[0] + p[1] * p[1])).exp(), p[0], p[1]))
            .collect();
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { delta, terms }
    }

    /// Real and imaginary part of the truncated series at z.
    fn eval_parts(&self, z: [f64; 2]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for &(coef, l1, l2) in &self.terms {
            let (s, c) = (TWO_PI * symplectic_form([l1, l2], z)).sin_cos();
            re += coef * c;
            im += coef * s;
        }
        (self.delta * re, self.delta * im)
    }

    fn eval(&self, z: [f64; 2]) -> Result<f64> {
        let (re, im) = self.eval_parts(z);
        if im.abs() >= 1e-12 {
            return Err(Error::Numerics(format!(
                "imaginary residue {im:.3e} of the symmetrized lattice sum at z = \
                 ({}, {}) exceeds 1e-12",
                z[0], z[1]
            )));
        }
        Ok(re)
    }
}

/// Janssen-type series p̃(z) = δ Σ_{λ°∈Λ°} e^{−π|λ°|²/2} e^{2πiσ(λ°,z)}.
///
/// Terms pair λ° with −λ°, so the imaginary part of the truncated sum must
/// cancel; a residue above 1e-12 is reported as a numerical-consistency
/// error.
pub fn janssen_series(lat: &Lattice2D, z: [f64; 2], trunc: &TruncationSpec) -> Result<f64> {
    JanssenSeries::build(lat, trunc).eval(z)
}

/// Minimum or maximum of `f` over the fundamental cell {M·t : t ∈ [0,1)²},
/// located on a coarse grid and sharpened by zoom refinement. Returns the
/// extremal value and its location in cell coordinates t.
fn search_cell<F>(
    lat: &Lattice2D,
    grid: &GridSpec,
    minimize: bool,
    f: F,
) -> Result<(f64, [f64; 2])>
where
    F: Fn([f64; 2]) -> Result<f64>,
{
    let basis = lat.basis();
    let eval_t = |t: [f64; 2]| -> Result<f64> { f(basis.apply(t[0], t[1])) };
    let better = |candidate: f64, incumbent: f64| {
        if minimize {
            candidate < incumbent
        } else {
            candidate > incumbent
        }
    };

    let n = grid.base_resolution() as usize;
    let mut best_t = [0.0, 0.0];
    let mut best_v = eval_t(best_t)?;
    for i in 0..n {
        for j in 0..n {
            let t = [i as f64 / n as f64, j as f64 / n as f64];
            let v = eval_t(t)?;
            if better(v, best_v) {
                best_v = v;
                best_t = t;
            }
        }
    }

    let zoom = grid.zoom_factor() as i64;
    let mut spacing = 1.0 / n as f64;
    for _ in 0..grid.refine_levels() {
        let step = spacing / zoom as f64;
        let center = best_t;
        for di in -zoom..=zoom {
            for dj in -zoom..=zoom {
                let t = [center[0] + di as f64 * step, center[1] + dj as f64 * step];
                let v = eval_t(t)?;
                if better(v, best_v) {
                    best_v = v;
                    best_t = t;
                }
            }
        }
        spacing = step;
    }
    Ok((best_v, best_t))
}

fn ensure_even_density(lat: &Lattice2D) -> Result<()> {
    let delta = lat.density();
    let half = (delta / 2.0).round();
    if half < 1.0 || (delta - 2.0 * half).abs() > 1e-9 {
        return Err(Error::UnsupportedDensity(format!(
            "sharp frame bounds require an even integer density (2, 4, 6, ...), got \
             {delta}; use the heuristic bounds for other densities"
        )));
    }
    Ok(())
}

/// Sharp frame bounds for even integer density, together with the location
/// of the minimizing z in the fundamental cell.
pub fn sharp_bounds_located(
    lat: &Lattice2D,
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<(FrameBounds, [f64; 2])> {
    ensure_even_density(lat)?;
    let series = JanssenSeries::build(lat, trunc);
    // the triangle inequality puts the maximum at the origin
    let upper = series.eval([0.0, 0.0])?;
    let (lower, best_t) = search_cell(lat, grid, true, |z| series.eval(z))?;
    if !(lower > 0.0) {
        return Err(Error::Numerics(format!(
            "located minimum {lower} of the Janssen series is not positive"
        )));
    }
    let argmin = lat.basis().apply(best_t[0], best_t[1]);
    Ok((FrameBounds::new(lower, upper)?, argmin))
}

/// Sharp frame bounds (A, B, B/A) of the Gaussian Gabor system; requires
/// the lattice density to be an even positive integer.
pub fn sharp_bounds(lat: &Lattice2D, grid: &GridSpec, trunc: &TruncationSpec) -> Result<FrameBounds> {
    sharp_bounds_located(lat, grid, trunc).map(|(bounds, _)| bounds)
}

/// Heuristic bracket: extrema of the periodized spectrogram over the
/// fundamental cell. Valid for any density; by the frame inequality these
/// satisfy A ≤ min p and max p ≤ B.
pub fn heuristic_bounds(lat: &Lattice2D, grid: &GridSpec, trunc: &TruncationSpec) -> (f64, f64) {
    let (min, _) = search_cell(lat, grid, true, |z| Ok(periodization_p(lat, z, trunc)))
        .expect("periodization evaluation cannot fail");
    let (max, _) = search_cell(lat, grid, false, |z| Ok(periodization_p(lat, z, trunc)))
        .expect("periodization evaluation cannot fail");
    (min, max)
}

/// Condition number B/A of the frame operator.
pub fn condition_number(lat: &Lattice2D, grid: &GridSpec, trunc: &TruncationSpec) -> Result<f64> {
    sharp_bounds(lat, grid, trunc).map(|b| b.cond)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{from_tau, make_hexagonal, make_rectangular, LatticeBasis, ModuliPoint};
    use rand::{Rng, SeedableRng};

    // Frozen oracle values (truncated double sums / theta products).
    const P_Z2_AT_0: f64 = 1.1803405990160962;
    const P_SQ2_AT_0: f64 = 2.014967440690169;
    const P_SQ2_CENTER: f64 = 1.9850883569821148;
    const A_SQUARE: f64 = 1.6692536833481464;
    const B_SQUARE: f64 = 2.3606811980321925;
    const A_HEX: f64 = 1.840742746635885;
    const B_HEX: f64 = 2.319190533927857;
    // z where the symplectic phases of the hexagonal density-2 series become
    // e^{2πi(k/3 − l/3)}: the deep hole of the lattice cell.
    const HEX_DEEP_HOLE: [f64; 2] = [0.3799178428257963, 0.2193456688254154];

    fn square2() -> Lattice2D {
        make_rectangular(0.5f64.sqrt(), 0.5f64.sqrt()).unwrap()
    }

    #[test]
    fn stft_closed_form() {
        let v = stft_gaussian(0.0, 0.0);
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15);
        let w = stft_gaussian(1.0, 0.0);
        assert!((w.re - (-0.5 * PI).exp()).abs() < 1e-15);
        assert!(w.im.abs() < 1e-15);
        let u = stft_gaussian(1.0, 1.0);
        assert!((u.re + (-PI).exp()).abs() < 1e-15);
        assert!(u.im.abs() < 1e-15);
    }

    #[test]
    fn stft_modulus_peaks_at_origin() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let x = rng.random_range(-2.0..2.0);
            let w = rng.random_range(-2.0..2.0);
            let m = stft_gaussian(x, w).norm();
            assert!(m <= 1.0);
            if x.hypot(w) > 1e-3 {
                assert!(m < 1.0);
            }
        }
    }

    #[test]
    fn spectrogram_matches_stft_square() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let x = rng.random_range(-2.5..2.5);
            let w = rng.random_range(-2.5..2.5);
            let direct = spectrogram_gaussian(x, w);
            let squared = stft_gaussian(x, w).norm_sqr();
            assert!((direct - squared).abs() < 1e-15);
            assert!((direct - spectrogram_gaussian(w, x)).abs() < 1e-15);
        }
    }

    #[test]
    fn periodization_reference_values() {
        let trunc = TruncationSpec::default();
        let z2 = make_rectangular(1.0, 1.0).unwrap();
        assert!((periodization_p(&z2, [0.0, 0.0], &trunc) - P_Z2_AT_0).abs() < 1e-13);
        let sq = square2();
        assert!((periodization_p(&sq, [0.0, 0.0], &trunc) - P_SQ2_AT_0).abs() < 1e-13);
        let c = 0.5 / 2.0f64.sqrt();
        assert!((periodization_p(&sq, [c, c], &trunc) - P_SQ2_CENTER).abs() < 1e-13);
    }

    #[test]
    fn periodization_is_lattice_periodic() {
        let trunc = TruncationSpec::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..10 {
            let tau = ModuliPoint::new(rng.random_range(-0.5..0.5), rng.random_range(0.9..1.8))
                .unwrap();
            let lat = from_tau(tau, 2.0).unwrap();
            let z = [rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4)];
            let k1 = rng.random_range(-2i32..3) as f64;
            let k2 = rng.random_range(-2i32..3) as f64;
            let shift = lat.basis().apply(k1, k2);
            let a = periodization_p(&lat, z, &trunc);
            let b = periodization_p(&lat, [z[0] + shift[0], z[1] + shift[1]], &trunc);
            assert!((a - b).abs() <= 2.0 * trunc.tail_tol(), "diff = {:e}", a - b);
        }
    }

    #[test]
    fn janssen_reference_values() {
        let trunc = TruncationSpec::default();
        let sq = square2();
        let b = janssen_series(&sq, [0.0, 0.0], &trunc).unwrap();
        assert!((b - B_SQUARE).abs() < 1e-13);
        let c = 0.5 / 2.0f64.sqrt();
        let a = janssen_series(&sq, [c, c], &trunc).unwrap();
        assert!((a - A_SQUARE).abs() < 1e-13);
        let hex = make_hexagonal(2.0).unwrap();
        let ah = janssen_series(&hex, HEX_DEEP_HOLE, &trunc).unwrap();
        assert!((ah - A_HEX).abs() < 1e-13);
    }

    #[test]
    fn janssen_truncation_is_consistent() {
        let lat = from_tau(ModuliPoint::new(0.21, 1.37).unwrap(), 2.0).unwrap();
        let loose = janssen_series(&lat, [0.11, -0.07], &TruncationSpec::new(1e-10).unwrap())
            .unwrap();
        let tight = janssen_series(&lat, [0.11, -0.07], &TruncationSpec::new(1e-16).unwrap())
            .unwrap();
        assert!((loose - tight).abs() < 2e-10);
    }

    #[test]
    fn sharp_bounds_square_density_two() {
        let (bounds, argmin) =
            sharp_bounds_located(&square2(), &GridSpec::default(), &TruncationSpec::default())
                .unwrap();
        assert!((bounds.lower - A_SQUARE).abs() < 1e-6);
        assert!((bounds.upper - B_SQUARE).abs() < 1e-12);
        assert!((bounds.cond - 2.0f64.sqrt()).abs() < 1e-6);
        // minimum sits at the deep hole, the cell center
        let c = 0.5 / 2.0f64.sqrt();
        let da = (argmin[0] - c).hypot(argmin[1] - c);
        let db = (argmin[0] - c).hypot(argmin[1] + c); // equivalent mod Λ
        assert!(da.min(db) < 1e-3, "argmin = {argmin:?}");
    }

    #[test]
    fn sharp_bounds_hexagonal_density_two() {
        let bounds = sharp_bounds(
            &make_hexagonal(2.0).unwrap(),
            &GridSpec::default(),
            &TruncationSpec::default(),
        )
        .unwrap();
        assert!((bounds.lower - A_HEX).abs() < 1e-6);
        assert!((bounds.upper - B_HEX).abs() < 1e-12);
        assert!((bounds.cond - 2.0f64.cbrt()).abs() < 1e-6);
        // hexagonal beats square at equal density
        let square = sharp_bounds(&square2(), &GridSpec::default(), &TruncationSpec::default())
            .unwrap();
        assert!(bounds.cond < square.cond);
    }

    #[test]
    fn sharp_bounds_rejects_odd_density() {
        let z2 = make_rectangular(1.0, 1.0).unwrap();
        let err = sharp_bounds(&z2, &GridSpec::default(), &TruncationSpec::default());
        assert!(matches!(err, Err(Error::UnsupportedDensity(_))));
        let odd = make_rectangular(1.0, 1.0 / 3.0).unwrap();
        assert!(sharp_bounds(&odd, &GridSpec::default(), &TruncationSpec::default()).is_err());
    }

    #[test]
    fn sharp_bounds_rotation_invariant() {
        let angle: f64 = 0.3;
        let (c, s) = (angle.cos(), angle.sin());
        let r = 0.5f64.sqrt();
        let rotated = Lattice2D::from_basis(
            LatticeBasis::new(c * r, -s * r, s * r, c * r).unwrap(),
        );
        let grid = GridSpec::default();
        let trunc = TruncationSpec::default();
        let plain = sharp_bounds(&square2(), &grid, &trunc).unwrap();
        let rot = sharp_bounds(&rotated, &grid, &trunc).unwrap();
        assert!((plain.lower - rot.lower).abs() < 1e-8);
        assert!((plain.upper - rot.upper).abs() < 1e-8);
        assert!((plain.cond - rot.cond).abs() < 1e-8);
    }

    #[test]
    fn sharp_bounds_unimodular_invariant() {
        let lat = from_tau(ModuliPoint::new(0.2, 1.1).unwrap(), 2.0).unwrap();
        let b = lat.basis();
        // recombined basis (b1, b1 + b2): same lattice
        let recombined = Lattice2D::from_basis(
            LatticeBasis::new(b.m11, b.m11 + b.m12, b.m21, b.m21 + b.m22).unwrap(),
        );
        let grid = GridSpec::default();
        let trunc = TruncationSpec::default();
        let x = sharp_bounds(&lat, &grid, &trunc).unwrap();
        let y = sharp_bounds(&recombined, &grid, &trunc).unwrap();
        assert!((x.lower - y.lower).abs() < 1e-8);
        assert!((x.upper - y.upper).abs() < 1e-8);
    }

    #[test]
    fn janssen_max_at_origin() {
        let trunc = TruncationSpec::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..3 {
            let tau = ModuliPoint::new(rng.random_range(-0.5..0.5), rng.random_range(0.9..1.7))
                .unwrap();
            let lat = from_tau(tau, 2.0).unwrap();
            let at_zero = janssen_series(&lat, [0.0, 0.0], &trunc).unwrap();
            for _ in 0..20 {
                let t = [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)];
                let z = lat.basis().apply(t[0], t[1]);
                let v = janssen_series(&lat, z, &trunc).unwrap();
                assert!(v <= at_zero + 1e-12);
            }
        }
    }

    #[test]
    fn heuristic_bracket_square_density_two() {
        let grid = GridSpec::default();
        let trunc = TruncationSpec::default();
        let (min_p, max_p) = heuristic_bounds(&square2(), &grid, &trunc);
        assert!((min_p - P_SQ2_CENTER).abs() < 1e-6);
        assert!((max_p - P_SQ2_AT_0).abs() < 1e-6);
        // sandwich against the sharp bounds
        let sharp = sharp_bounds(&square2(), &grid, &trunc).unwrap();
        assert!(sharp.lower <= min_p + 1e-9);
        assert!(max_p <= sharp.upper + 1e-9);
    }

    #[test]
    fn heuristic_handles_any_density() {
        let lat = make_rectangular(0.6, 0.7).unwrap(); // density ≈ 2.38
        let (min_p, max_p) = heuristic_bounds(&lat, &GridSpec::default(), &TruncationSpec::default());
        assert!(0.0 < min_p && min_p <= max_p);
    }

    #[test]
    fn condition_number_square_is_sqrt_two() {
        let cond = condition_number(&square2(), &GridSpec::default(), &TruncationSpec::default())
            .unwrap();
        assert!((cond - 2.0f64.sqrt()).abs() < 1e-6);
        assert!((cond * cond * 0.5 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(4, 3, 8).is_err());
        assert!(GridSpec::new(8, 0, 1).is_err());
        assert!(GridSpec::new(8, 0, 2).is_ok());
        assert!(TruncationSpec::new(0.0).is_err());
    }
}
