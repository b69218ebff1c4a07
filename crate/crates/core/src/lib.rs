//! Numerical workbench for constant-length Killing vector fields on
//! normal homogeneous spaces G/H.
//!
//! A pair (g, h) is presented by bases of square real matrices. The
//! invariant form b (Killing form on semisimple factors) splits
//! g = h + m, and an element ξ ∈ g has constant length on G/H exactly
//! when f_ξ(g) = b(pr_h(Ad(g)ξ), pr_h(Ad(g)ξ)) does not depend on g.
//! The crate builds the classified families of such pairs, samples f_ξ
//! over the group, searches for counterexamples, and cross-checks the
//! equivalent criteria: open orbits of the centralizer, the moment-map
//! norm, the compact-dual carryover and the product-space implications.

pub mod algebra;
pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod mat;
pub mod octonion;
pub mod orbit;
pub mod tol;
pub mod verifier;

pub use algebra::{AdSpectrum, AlgebraElement, MatrixLieAlgebra};
pub use catalog::{build_pair, CatalogEntry, ExpectedVerdict};
pub use decomposition::{CompactDualPair, HomogeneousPair};
pub use error::{Error, Result};
pub use mat::Mat;
pub use orbit::KillingElement;
pub use verifier::{verify_constant_length, DefectReport, Verdict, VerifyConfig};
