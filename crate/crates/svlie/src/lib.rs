//! Exact structure-constant computations for the extended
//! Schrodinger-Virasoro Lie algebra and a family of related algebras.
//!
//! The library realizes each algebra as an explicit bracket table over a
//! countable basis indexed by integers and half-integers, and verifies
//! structural statements about them by exact linear algebra over the
//! rationals, restricted to finite index windows:
//!
//! - bracket evaluation, Jacobi and grading checks, centers, ideals,
//!   generated subspaces ([`algebra`]);
//! - derivations of graded slices, inner matching, degree-zero derivation
//!   solving ([`derivations`]);
//! - Lie and Leibniz 2-cocycles, second cohomology on windows, invariant
//!   bilinear forms ([`cohomology`]);
//! - the universal central extension built from wedges modulo the Jacobi
//!   span, with its distinguished central elements ([`extension`]);
//! - the automorphism group of the extended algebra: a four-parameter
//!   family, inner factors generated by nilpotent exponentials, and the
//!   lift to the central extension ([`automorphisms`]).
//!
//! Every computation is exact: scalars are arbitrary-precision rationals
//! and all solvers run fraction-free reductions to canonical echelon
//! forms. There are no floating-point tolerances anywhere.

pub mod algebra;
pub mod automorphisms;
pub mod cohomology;
pub mod derivations;
pub mod element;
pub mod extension;
pub mod linalg;
pub mod parse;
pub mod rational;
pub mod report;
pub mod symbol;

pub use algebra::AlgebraId;
pub use element::Element;
pub use rational::Rational;
pub use symbol::{BasisSymbol, Kind, Window};

/// Version string stamped into machine-readable reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
