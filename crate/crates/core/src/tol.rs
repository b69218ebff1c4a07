//! Central tolerance policy.
//!
//! Absolute tolerances are always derived from a problem scale so that
//! verdicts are invariant under rescaling of the basis or of ξ. Every
//! verdict-producing routine reports the tolerance it actually used.

/// Structural residuals (Jacobi identity, form invariance, bracket closure
/// of embedded subalgebras) relative to the problem scale.
pub const STRUCTURAL_REL: f64 = 1e-9;

/// Relative residual allowed when re-expressing a matrix over the basis by
/// least squares. Non-orthogonal bases lose a few digits through the Gram
/// solve, hence looser than `STRUCTURAL_REL`.
pub const REEXPRESS_REL: f64 = 1e-8;

/// Required ratio between the smallest retained singular value and the
/// largest discarded one when determining a numeric rank. Below this the
/// rank is ambiguous and the operation fails loudly.
pub const RANK_GAP: f64 = 1e3;

/// Singular values below `RANK_ZERO_REL * s_max` are candidate zeros.
pub const RANK_ZERO_REL: f64 = 1e-7;

/// Normalized defect below which a sampled f_ξ is judged constant.
pub const DEFECT_CONSTANT: f64 = 1e-7;

/// Normalized defect above which f_ξ is judged non-constant. The two-sided
/// band between the thresholds maps to an inconclusive verdict.
pub const DEFECT_NON_CONSTANT_FACTOR: f64 = 100.0;

/// Eigenvalues of a Gram matrix within `SIGNATURE_ZERO_REL * spectral_radius`
/// of zero count as degenerate directions.
pub const SIGNATURE_ZERO_REL: f64 = 1e-9;

/// Relative drift of the orbit invariant b(Ad(g)ξ, Ad(g)ξ) tolerated before
/// a sample is considered numerically unusable.
pub const ORBIT_DRIFT_REL: f64 = 1e-6;

/// Absolute tolerance for a given problem scale.
pub fn abs_tol(scale: f64) -> f64 {
    STRUCTURAL_REL * scale.max(1.0)
}
