//! Numerical toolkit for Gaussian Gabor frames over planar lattices.
//!
//! The crate computes sharp frame bounds (valid at even integer lattice
//! density) via a Fourier series with Gaussian coefficients over the
//! adjoint lattice, heuristic bounds from the periodized spectrogram at any
//! density, and condition numbers; scans lattice moduli space for the
//! shapes optimizing each quantity; evaluates the Landau constants in Gamma
//! closed form and verifies the identities linking them to the frame
//! bounds; and cross-checks everything against an independent
//! finite-dimensional Gabor frame operator whose extreme eigenvalues
//! approximate the continuous bounds.

pub mod error;
pub mod gabor;
pub mod landau;
pub mod lattice;
pub mod oracle;
pub mod scan;
pub mod special;

pub use error::{Error, Result};
pub use gabor::{
    condition_number, heuristic_bounds, janssen_series, periodization_p, sharp_bounds,
    sharp_bounds_located, spectrogram_gaussian, stft_gaussian, FrameBounds, GridSpec,
    TruncationSpec,
};
pub use landau::{landau_hex, landau_square, verify_constants_link, verify_proof_chain, IdentityReport};
pub use lattice::{
    from_tau, make_hexagonal, make_rectangular, reduce_tau, same_lattice_shape, symplectic_form,
    Lattice2D, LatticeBasis, ModuliPoint,
};
pub use oracle::{
    canonical_dual, converge_compare, extreme_eigenvalues, frame_matrix, modulate,
    periodized_gaussian_window, tf_shift, translate, ConvergenceRow, FiniteGaborSystem,
    HermitianMatrix,
};
pub use scan::{
    argmin_condition, argmin_objective, lattice_theta, montgomery_argmin, rect_sweep,
    scan_landscape, LandscapeSample, Objective, ScanOutcome, ScanRegion,
};
pub use special::{gamma, hyp2f1, rising_factorial, theta3, theta4, ThetaArg};
