//! Full-rank planar lattices Λ = MZ², their densities and adjoints, and the
//! upper-half-plane parameterization of lattice shapes at fixed density.
//!
//! A lattice is stored as a 2×2 basis matrix whose columns generate the
//! point set. The density is 1/|det M|; the adjoint lattice is Λ° = δΛ.
//! Shapes of unit-determinant lattices modulo rotation are parameterized by
//! a point τ = x + iy of the upper half plane; τ = 1/2 + i√3/2 is the
//! hexagonal lattice and τ = i the square one.

use crate::error::{Error, Result};

/// 2×2 real basis matrix; the columns are the generating vectors of the
/// lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBasis {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl LatticeBasis {
    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self> {
        let basis = Self { m11, m12, m21, m22 };
        if !basis.det().is_finite() || basis.det().abs() == 0.0 {
            return Err(Error::Domain(format!(
                "lattice basis must be full rank, got det = {}",
                basis.det()
            )));
        }
        Ok(basis)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// First generating vector (first column).
    pub fn col1(&self) -> [f64; 2] {
        [self.m11, self.m21]
    }

    /// Second generating vector (second column).
    pub fn col2(&self) -> [f64; 2] {
        [self.m12, self.m22]
    }

    /// Image of the integer pair (n1, n2).
    pub fn apply(&self, n1: f64, n2: f64) -> [f64; 2] {
        [
            self.m11 * n1 + self.m12 * n2,
            self.m21 * n1 + self.m22 * n2,
        ]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            m11: self.m11 * factor,
            m12: self.m12 * factor,
            m21: self.m21 * factor,
            m22: self.m22 * factor,
        }
    }

    /// Smallest singular value; 1/σ_min is the operator norm of the inverse
    /// basis, which bounds the integer coordinates of points in a disc.
    pub fn sigma_min(&self) -> f64 {
        let g11 = self.m11 * self.m11 + self.m21 * self.m21;
        let g22 = self.m12 * self.m12 + self.m22 * self.m22;
        let g12 = self.m11 * self.m12 + self.m21 * self.m22;
        let tr = g11 + g22;
        let disc = ((g11 - g22) * 0.5).hypot(g12);
        (0.5 * tr - disc).max(0.0).sqrt()
    }
}

/// A full-rank planar lattice together with its density δ = 1/|det M|.
#[derive(Debug, Clone, Copy)]
pub struct Lattice2D {
    basis: LatticeBasis,
    density: f64,
}

impl Lattice2D {
    /// Builds a lattice from an explicit basis; the density is derived.
    pub fn from_basis(basis: LatticeBasis) -> Self {
        Self {
            basis,
            density: 1.0 / basis.det().abs(),
        }
    }

    fn with_density(basis: LatticeBasis, density: f64) -> Result<Self> {
        if (density * basis.det().abs() - 1.0).abs() > 1e-12 {
            return Err(Error::Numerics(format!(
                "density {} inconsistent with |det| = {}",
                density,
                basis.det().abs()
            )));
        }
        Ok(Self { basis, density })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    /// The adjoint lattice Λ° = δΛ; its density is 1/δ.
    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis.scaled(self.density),
            density: 1.0 / self.density,
        }
    }

    /// All lattice points within Euclidean distance `radius` of the origin.
    ///
    /// The integer search box comes from the inverse basis operator norm, so
    /// the enumeration provably covers the disc. Points on the boundary are
    /// kept with a 1e-12 tolerance on the radius test.
    pub fn points_in_radius(&self, radius: f64) -> Result<Vec<[f64; 2]>> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!(
                "enumeration radius must be positive, got {radius}"
            )));
        }
        Ok(self.points_within([0.0, 0.0], radius))
    }

    /// All lattice points λ with |λ - center| ≤ radius + 1e-12.
    pub(crate) fn points_within(&self, center: [f64; 2], radius: f64) -> Vec<[f64; 2]> {
        let reach = radius + center[0].hypot(center[1]);
        let bound = (reach / self.basis.sigma_min()).ceil() as i64 + 1;
        let tol = radius + 1e-12;
        let mut points = Vec::new();
        for n1 in -bound..=bound {
            for n2 in -bound..=bound {
                let v = self.basis.apply(n1 as f64, n2 as f64);
                let d = (v[0] - center[0]).hypot(v[1] - center[1]);
                if d <= tol {
                    points.push(v);
                }
            }
        }
        points
    }

    /// Gram matrix (g11, g12, g22) of a Lagrange-reduced basis with
    /// g11 ≤ g22 and g12 ≥ 0. Equal triples (up to tolerance) mean the two
    /// lattices agree up to an orthogonal transformation.
    pub fn reduced_gram(&self) -> (f64, f64, f64) {
        let (b1, b2) = lagrange_reduce(self.basis.col1(), self.basis.col2());
        let g11 = dot(b1, b1);
        let g22 = dot(b2, b2);
        let g12 = dot(b1, b2).abs();
        if g11 <= g22 {
            (g11, g12, g22)
        } else {
            (g22, g12, g11)
        }
    }

    /// Upper bound on the covering radius, from the reduced basis.
    pub(crate) fn covering_radius_bound(&self) -> f64 {
        let (b1, b2) = lagrange_reduce(self.basis.col1(), self.basis.col2());
        0.5 * (dot(b1, b1).sqrt() + dot(b2, b2).sqrt())
    }
}

/// Whether two lattices generate the same point set up to an orthogonal
/// transformation, tested on reduced Gram matrices.
pub fn same_lattice_shape(a: &Lattice2D, b: &Lattice2D, tol: f64) -> bool {
    let ga = a.reduced_gram();
    let gb = b.reduced_gram();
    let scale = ga.0.abs().max(ga.2.abs()).max(1.0);
    (ga.0 - gb.0).abs() <= tol * scale
        && (ga.1 - gb.1).abs() <= tol * scale
        && (ga.2 - gb.2).abs() <= tol * scale
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Lagrange–Gauss reduction: returns a basis of the same lattice with
/// |b1| ≤ |b2| and |⟨b1,b2⟩| ≤ |b1|²/2.
fn lagrange_reduce(mut b1: [f64; 2], mut b2: [f64; 2]) -> ([f64; 2], [f64; 2]) {
    for _ in 0..64 {
        if dot(b2, b2) < dot(b1, b1) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let mu = (dot(b1, b2) / dot(b1, b1)).round();
        if mu == 0.0 {
            break;
        }
        b2 = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
    }
    (b1, b2)
}

/// Standard symplectic form σ(a, b) = a1·b2 − a2·b1.
pub fn symplectic_form(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Rectangular lattice αZ × βZ of density 1/(αβ).
pub fn make_rectangular(alpha: f64, beta: f64) -> Result<Lattice2D> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "rectangular lattice parameters must be positive, got ({alpha}, {beta})"
        )));
    }
    let basis = LatticeBasis::new(alpha, 0.0, 0.0, beta)?;
    Lattice2D::with_density(basis, 1.0 / (alpha * beta))
}

/// Entries of the unit-determinant hexagonal generator matrix.
fn hexagonal_unit_basis() -> LatticeBasis {
    let c = (2.0 / 3.0f64.sqrt()).sqrt();
    LatticeBasis {
        m11: c,
        m12: 0.5 * c,
        m21: 0.0,
        m22: c * 3.0f64.sqrt() * 0.5,
    }
}

/// Hexagonal lattice of density δ.
pub fn make_hexagonal(delta: f64) -> Result<Lattice2D> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "hexagonal lattice density must be positive, got {delta}"
        )));
    }
    let basis = hexagonal_unit_basis().scaled(delta.sqrt().recip());
    Lattice2D::with_density(basis, delta)
}

/// A point τ = x + iy of the upper half plane, encoding a lattice shape at
/// fixed density up to rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliPoint {
    pub x: f64,
    pub y: f64,
}

impl ModuliPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "moduli point must lie in the upper half plane, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    /// Shape parameter of the hexagonal lattice, τ = 1/2 + i√3/2.
    pub fn hexagonal() -> Self {
        Self {
            x: 0.5,
            y: 3.0f64.sqrt() * 0.5,
        }
    }

    /// Shape parameter of the square lattice, τ = i.
    pub fn square() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn dist(&self, other: &ModuliPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Lattice of density δ with shape τ: basis δ^{-1/2} y^{-1/2} [[1, x], [0, y]].
///
/// τ = i gives the square lattice and τ = 1/2 + i√3/2 the hexagonal one.
pub fn from_tau(tau: ModuliPoint, delta: f64) -> Result<Lattice2D> {
    if !(tau.y > 0.0) {
        return Err(Error::Domain(format!(
            "moduli point must have positive imaginary part, got y = {}",
            tau.y
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "lattice density must be positive, got {delta}"
        )));
    }
    let s = 1.0 / (delta * tau.y).sqrt();
    let basis = LatticeBasis::new(s, s * tau.x, 0.0, s * tau.y)?;
    Lattice2D::with_density(basis, delta)
}

/// Reduces τ to the standard fundamental domain |x| ≤ 1/2, x² + y² ≥ 1 by
/// repeated unit translations and inversions τ → −1/τ. At most 64 rounds;
/// generic inputs settle in a handful.
pub fn reduce_tau(tau: ModuliPoint) -> Result<ModuliPoint> {
    let mut x = tau.x;
    let mut y = tau.y;
    if !(y > 0.0) {
        return Err(Error::Domain(format!(
            "moduli point must have positive imaginary part, got y = {y}"
        )));
    }
    for _ in 0..64 {
        x -= x.round();
        let norm2 = x * x + y * y;
        if norm2 >= 1.0 - 1e-12 {
            break;
        }
        x = -x / norm2;
        y /= norm2;
    }
    ModuliPoint::new(x, y)
}
