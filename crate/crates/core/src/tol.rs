//! Tolerance policy.
//!
//! All geometric predicates use a single relative on-line tolerance derived
//! from the diameter of the object at hand: tau = `REL_TOL` * diameter, with
//! diameter clamped below by 1 so degenerate (single-point) objects still get
//! a usable absolute tolerance. Oracles and engines must agree on this policy,
//! so it lives in one place.

/// Relative on-line tolerance: a point z is "on" the line (theta, mu) when
/// |z.theta - mu| <= REL_TOL * diameter.
pub const REL_TOL: f64 = 1e-9;

/// Relative perturbation size for candidate-line enumeration, applied to the
/// minimum positive inter-vertex distance.
pub const REL_PERTURBATION: f64 = 1e-7;

/// Tolerance for matrix identities (projection sums, reconstructions).
pub const MATRIX_TOL: f64 = 1e-10;

/// Eigenvalues closer than this are merged into one spectral point.
pub const EIGEN_DISTINCT_TOL: f64 = 1e-8;

/// Unit-vector check tolerance.
pub const UNIT_TOL: f64 = 1e-12;

/// On-line tolerance for an object of the given diameter.
pub fn on_line_tol(diameter: f64) -> f64 {
    if diameter > 0.0 {
        REL_TOL * diameter
    } else {
        REL_TOL
    }
}
