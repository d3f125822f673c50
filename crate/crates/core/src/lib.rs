//! Koszul matrix factorizations attached to MOY planar diagrams.
//!
//! The crate builds the factorizations of single lines, wide edges, double
//! lines and trivalent vertices, glues them along boundary parameters,
//! simplifies the result by excluding variables, and computes graded
//! homology and its Euler characteristic. A small rewriting evaluator for the
//! MOY bracket provides the decategorified cross-check.

pub mod error;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod quotient;

pub use error::Error;
pub use laurent::{quantum_integer, LaurentPoly};
pub use poly::{Monomial, Poly, VarId, VarKind, Q};
pub use quotient::{jacobi_algebra, QuotientRing, Rule};
pub mod mf;
pub use mf::{ExplicitMf, KoszulMf, KoszulRow, MfSum, Summand};
pub mod reduce;
pub use reduce::{auto_reduce, canonical_form, ReductionTrace};
pub mod diagram;
pub use diagram::{parse_diagram, Diagram};
pub mod homology;
pub use homology::{euler_characteristic, graded_homology, HomologyResult};
pub mod moy;
pub use moy::{bracket, MoyGraph};
pub mod selftest;
