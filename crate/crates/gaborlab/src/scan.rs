//! Landscape scans and shape optimization over lattice moduli space at
//! fixed density: condition-number minimization, upper-bound minimization,
//! lower-bound maximization, the rectangular sweep, and Gaussian lattice
//! theta sums.
//!
//! Shapes are parameterized by τ in the standard fundamental domain of the
//! modular group (|x| ≤ 1/2, |τ| ≥ 1). Scans are embarrassingly parallel
//! over grid nodes; results are assembled in deterministic grid order.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gabor::{
    gaussian_sum_radius, sharp_bounds, sum_ascending, FrameBounds, GridSpec, TruncationSpec,
};
use crate::lattice::{from_tau, make_rectangular, Lattice2D, ModuliPoint};

/// One evaluated lattice shape.
#[derive(Debug, Clone, Copy)]
pub struct LandscapeSample {
    pub tau: ModuliPoint,
    pub bounds: FrameBounds,
}

/// Rectangular scan window in the τ plane with grid counts.
///
/// The window must sit inside the strip |x| ≤ 1/2, y ≥ √3/2; grid nodes
/// below the unit circle (outside the fundamental domain) are skipped at
/// scan time. Degenerate single-column or single-row grids (nx or ny = 1)
/// are allowed for point probes.
#[derive(Debug, Clone, Copy)]
pub struct ScanRegion {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: u32,
    pub ny: u32,
}

const Y_FLOOR: f64 = 0.8660254037844386; // √3/2
const DOMAIN_EPS: f64 = 1e-12;

impl ScanRegion {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: u32, ny: u32) -> Result<Self> {
        if nx < 1 || ny < 1 {
            return Err(Error::Domain(format!(
                "scan grid needs at least one node per axis, got {nx} x {ny}"
            )));
        }
        let x_ok = if nx >= 2 { x_min < x_max } else { x_min <= x_max };
        let y_ok = if ny >= 2 { y_min < y_max } else { y_min <= y_max };
        if !x_ok || !y_ok {
            return Err(Error::Domain(format!(
                "degenerate scan window [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if x_min < -0.5 - DOMAIN_EPS || x_max > 0.5 + DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "scan window must satisfy |x| <= 1/2, got [{x_min}, {x_max}]"
            )));
        }
        if y_min < Y_FLOOR - DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "scan window must satisfy y >= sqrt(3)/2, got y_min = {y_min}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        })
    }

    /// Window covering the full fundamental domain up to height `y_max`.
    pub fn fundamental_domain(y_max: f64, nx: u32, ny: u32) -> Result<Self> {
        Self::new(-0.5, 0.5, Y_FLOOR, y_max, nx, ny)
    }

    fn x_node(&self, i: u32) -> f64 {
        if self.nx == 1 {
            self.x_min
        } else {
            self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
        }
    }

    fn y_node(&self, j: u32) -> f64 {
        if self.ny == 1 {
            self.y_min
        } else {
            self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
        }
    }

    fn x_spacing(&self) -> f64 {
        if self.nx == 1 {
            0.0
        } else {
            (self.x_max - self.x_min) / (self.nx - 1) as f64
        }
    }

    fn y_spacing(&self) -> f64 {
        if self.ny == 1 {
            0.0
        } else {
            (self.y_max - self.y_min) / (self.ny - 1) as f64
        }
    }

    /// Grid nodes in deterministic row-major order (y outer, x inner).
    fn nodes(&self) -> Vec<ModuliPoint> {
        let mut out = Vec::with_capacity(self.nx as usize * self.ny as usize);
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(ModuliPoint {
                    x: self.x_node(i),
                    y: self.y_node(j),
                });
            }
        }
        out
    }

    fn clamp(&self, tau: ModuliPoint) -> ModuliPoint {
        ModuliPoint {
            x: tau.x.clamp(self.x_min, self.x_max),
            y: tau.y.clamp(self.y_min.max(Y_FLOOR - DOMAIN_EPS), self.y_max),
        }
    }
}

/// Whether τ lies in the (closed) modular fundamental domain.
fn in_fundamental_domain(tau: &ModuliPoint) -> bool {
    tau.x * tau.x + tau.y * tau.y >= 1.0 - DOMAIN_EPS
}

fn validate_even_delta(delta: f64) -> Result<()> {
    let half = (delta / 2.0).round();
    if half < 1.0 || (delta - 2.0 * half).abs() > 1e-9 {
        return Err(Error::UnsupportedDensity(format!(
            "landscape scans of sharp bounds require an even integer density, got {delta}"
        )));
    }
    Ok(())
}

/// Scan result: evaluated samples plus the grid nodes that fell outside the
/// fundamental domain and were skipped.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub samples: Vec<LandscapeSample>,
    pub skipped: Vec<ModuliPoint>,
}

/// Evaluates sharp bounds on every admissible node of the region grid.
pub fn scan_landscape(
    delta: f64,
    region: &ScanRegion,
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<ScanOutcome> {
    validate_even_delta(delta)?;
    let nodes = region.nodes();
    let evaluated: Vec<Option<LandscapeSample>> = nodes
        .par_iter()
        .map(|tau| -> Result<Option<LandscapeSample>> {
            if !in_fundamental_domain(tau) {
                return Ok(None);
            }
            let lat = from_tau(*tau, delta)?;
            let bounds = sharp_bounds(&lat, grid, trunc)?;
            Ok(Some(LandscapeSample { tau: *tau, bounds }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for (tau, sample) in nodes.into_iter().zip(evaluated) {
        match sample {
            Some(s) => samples.push(s),
            None => skipped.push(tau),
        }
    }
    Ok(ScanOutcome { samples, skipped })
}

/// Optimization target over the landscape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MinimizeCond,
    MinimizeUpper,
    MaximizeLower,
}

impl Objective {
    fn value(&self, bounds: &FrameBounds) -> f64 {
        match self {
            Objective::MinimizeCond => bounds.cond,
            Objective::MinimizeUpper => bounds.upper,
            Objective::MaximizeLower => -bounds.lower,
        }
    }
}

const REFINE_ROUNDS: u32 = 3;
const REFINE_SHRINK: f64 = 4.0;
const REFINE_HALF_NODES: i64 = 4; // 9 nodes per axis per round

/// Coarse-to-fine argmin of `f` over the region, starting from the best
/// grid node. Each round shrinks the window by a factor 4; three rounds on
/// a ≥ 40-node axis push the τ resolution below 1e-3.
fn refine_argmin<F>(
    region: &ScanRegion,
    start: (f64, ModuliPoint),
    f: F,
) -> Result<(f64, ModuliPoint)>
where
    F: Fn(ModuliPoint) -> Result<f64> + Sync,
{
    let mut best = start;
    let mut hx = region.x_spacing();
    let mut hy = region.y_spacing();
    for _ in 0..REFINE_ROUNDS {
        if hx == 0.0 && hy == 0.0 {
            break;
        }
        let center = best.1;
        let mut candidates = Vec::new();
        for dj in -REFINE_HALF_NODES..=REFINE_HALF_NODES {
            for di in -REFINE_HALF_NODES..=REFINE_HALF_NODES {
                let tau = region.clamp(ModuliPoint {
                    x: center.x + di as f64 * hx / REFINE_HALF_NODES as f64,
                    y: center.y + dj as f64 * hy / REFINE_HALF_NODES as f64,
                });
                if in_fundamental_domain(&tau) {
                    candidates.push(tau);
                }
            }
        }
        let values: Vec<(f64, ModuliPoint)> = candidates
            .par_iter()
            .map(|tau| f(*tau).map(|v| (v, *tau)))
            .collect::<Result<Vec<_>>>()?;
        for (v, tau) in values {
            if v < best.0 {
                best = (v, tau);
            }
        }
        hx /= REFINE_SHRINK;
        hy /= REFINE_SHRINK;
    }
    Ok(best)
}

/// Scans the region and refines the winner of the given objective.
pub fn argmin_objective(
    delta: f64,
    region: &ScanRegion,
    grid: &GridSpec,
    trunc: &TruncationSpec,
    objective: Objective,
) -> Result<LandscapeSample> {
    let outcome = scan_landscape(delta, region, grid, trunc)?;
    let coarse = outcome
        .samples
        .iter()
        .min_by(|a, b| objective.value(&a.bounds).total_cmp(&objective.value(&b.bounds)))
        .copied()
        .ok_or_else(|| {
            Error::Domain(format!(
                "scan region contains no admissible lattice shapes ({region:?})"
            ))
        })?;
    let start = (objective.value(&coarse.bounds), coarse.tau);
    let objective_at = |tau: ModuliPoint| -> Result<f64> {
        let bounds = sharp_bounds(&from_tau(tau, delta)?, grid, trunc)?;
        Ok(objective.value(&bounds))
    };
    let (_, tau) = refine_argmin(region, start, objective_at)?;
    let bounds = sharp_bounds(&from_tau(tau, delta)?, grid, trunc)?;
    Ok(LandscapeSample { tau, bounds })
}

/// Shape minimizing the condition number over the scan region.
pub fn argmin_condition(
    delta: f64,
    region: &ScanRegion,
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<LandscapeSample> {
    argmin_objective(delta, region, grid, trunc, Objective::MinimizeCond)
}

/// Frame bounds along the rectangular family αZ × βZ at fixed density:
/// β = 1/(δα) per sample.
pub fn rect_sweep(
    delta: f64,
    alpha_min: f64,
    alpha_max: f64,
    n: u32,
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<Vec<(f64, FrameBounds)>> {
    if !(alpha_min > 0.0) || !(alpha_min < alpha_max) {
        return Err(Error::Domain(format!(
            "sweep range must satisfy 0 < alpha_min < alpha_max, got [{alpha_min}, {alpha_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::Domain(format!("sweep needs at least 2 samples, got {n}")));
    }
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("density must be positive, got {delta}")));
    }
    (0..n)
        .into_par_iter()
        .map(|i| {
            let alpha = alpha_min + (alpha_max - alpha_min) * i as f64 / (n - 1) as f64;
            let beta = 1.0 / (delta * alpha);
            let bounds = sharp_bounds(&make_rectangular(alpha, beta)?, grid, trunc)?;
            Ok((alpha, bounds))
        })
        .collect()
}

/// Gaussian lattice theta sum Σ_{λ∈Λ} e^{−πt|λ|²}.
pub fn lattice_theta(lat: &Lattice2D, t: f64, trunc: &TruncationSpec) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "theta parameter must be positive, got {t}"
        )));
    }
    let c = PI * t;
    let radius = gaussian_sum_radius(lat, c, trunc.tail_tol());
    let mut terms: Vec<f64> = lat
        .points_within([0.0, 0.0], radius)
        .into_iter()
        .map(|p| (-c * (p[0] * p[0] + p[1] * p[1])).exp())
        .collect();
    Ok(sum_ascending(&mut terms))
}

/// Shape minimizing the Gaussian lattice theta sum at fixed density; by
/// Montgomery's theorem the minimum sits at the hexagonal point.
pub fn montgomery_argmin(
    t: f64,
    delta: f64,
    region: &ScanRegion,
    trunc: &TruncationSpec,
) -> Result<ModuliPoint> {
    if !(t > 0.0) || !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "theta parameter and density must be positive, got t = {t}, delta = {delta}"
        )));
    }
    let theta_at = |tau: ModuliPoint| -> Result<f64> {
        lattice_theta(&from_tau(tau, delta)?, t, trunc)
    };
    let nodes = region.nodes();
    let evaluated: Vec<Option<(f64, ModuliPoint)>> = nodes
        .par_iter()
        .map(|tau| -> Result<Option<(f64, ModuliPoint)>> {
            if !in_fundamental_domain(tau) {
                return Ok(None);
            }
            Ok(Some((theta_at(*tau)?, *tau)))
        })
        .collect::<Result<Vec<_>>>()?;
    let coarse = evaluated
        .into_iter()
        .flatten()
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })
        .ok_or_else(|| {
            Error::Domain(format!(
                "scan region contains no admissible lattice shapes ({region:?})"
            ))
        })?;
    let (_, tau) = refine_argmin(region, coarse, theta_at)?;
    Ok(tau)
}
