//! Landau's constants in Gamma closed form and numerical verification of
//! the identities tying their reciprocals to the lower frame bounds of the
//! hexagonal and square Gaussian Gabor systems at density 2.

use crate::error::Result;
use crate::gabor::{sharp_bounds, GridSpec, TruncationSpec};
use crate::lattice::{make_hexagonal, make_rectangular};
use crate::special::{gamma, hyp2f1, theta3, theta4, ThetaArg};

/// A named identity check: left side, right side, and |lhs − rhs|.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        }
    }
}

/// Hexagonal Landau constant Γ(1/3)Γ(5/6)/Γ(1/6) = 0.543259…
pub fn landau_hex() -> f64 {
    let third = gamma(1.0 / 3.0).expect("no pole");
    let five_sixths = gamma(5.0 / 6.0).expect("no pole");
    let sixth = gamma(1.0 / 6.0).expect("no pole");
    third * five_sixths / sixth
}

/// Rectangular Landau constant Γ(1/2)Γ(3/4)/Γ(1/4) = 0.59907…
pub fn landau_square() -> f64 {
    let half = gamma(0.5).expect("no pole");
    let three_quarters = gamma(0.75).expect("no pole");
    let quarter = gamma(0.25).expect("no pole");
    half * three_quarters / quarter
}

/// Checks A_square·L_square = 1 and A_hex·L_hex = 1 with both factors
/// computed by this library (the frame bounds via the Janssen series, the
/// constants via their Gamma closed forms).
pub fn verify_constants_link(
    grid: &GridSpec,
    trunc: &TruncationSpec,
) -> Result<Vec<IdentityReport>> {
    let r = 0.5f64.sqrt();
    let a_square = sharp_bounds(&make_rectangular(r, r)?, grid, trunc)?.lower;
    let a_hex = sharp_bounds(&make_hexagonal(2.0)?, grid, trunc)?.lower;
    Ok(vec![
        IdentityReport::new("square_lower_times_landau_square", a_square * landau_square(), 1.0),
        IdentityReport::new("hex_lower_times_landau_hex", a_hex * landau_hex(), 1.0),
    ])
}

/// The chain of identities behind the square-lattice evaluation: the lower
/// bound as a theta square, the modulus value 1/2 at τ = i, Gauss'
/// summation of ₂F₁ at 1/2, and Ramanujan's theta connection.
pub fn verify_proof_chain() -> Vec<IdentityReport> {
    // one extra refinement level to push the located minimum below 1e-9
    let grid = GridSpec::new(64, 4, 8).expect("valid grid");
    let trunc = TruncationSpec::default();
    let r = 0.5f64.sqrt();
    let a_square = sharp_bounds(
        &make_rectangular(r, r).expect("valid lattice"),
        &grid,
        &trunc,
    )
    .expect("square lattice of density 2 has sharp bounds")
    .lower;

    let i_arg = ThetaArg::new(1.0).expect("t = 1 is valid");
    let th3 = theta3(i_arg);
    let th4 = theta4(i_arg);

    let gauss_lhs = hyp2f1(0.5, 0.5, 1.0, 0.5).expect("series converges at 1/2");
    let gauss_rhs = gamma(0.5).expect("no pole") * gamma(1.0).expect("no pole")
        / (gamma(0.75).expect("no pole") * gamma(0.75).expect("no pole"));

    let modulus = th4.powi(4) / th3.powi(4);
    let ramanujan_lhs = hyp2f1(0.5, 0.5, 1.0, 1.0 - modulus).expect("argument below 1");

    vec![
        IdentityReport::new("lower_bound_is_two_theta4_squared", 2.0 * th4 * th4, a_square),
        IdentityReport::new("modulus_at_i_is_one_half", modulus, 0.5),
        IdentityReport::new("gauss_summation_half_half", gauss_lhs, gauss_rhs),
        IdentityReport::new("ramanujan_theta_connection", ramanujan_lhs, th3 * th3),
    ]
}
