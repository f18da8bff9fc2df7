//! Exact homological algebra for bound quiver algebras: resolutions, Ext and
//! Tor, dominant dimension, the canonical bimodule and Hochschild
//! (co)homology.

pub mod algebra;
pub mod error;
pub mod field;
pub mod hom;
pub mod invariants;
pub mod matrix;
pub mod module;
pub mod quiver;
pub mod resolution;
pub mod verify;

pub use algebra::{Algebra, BasisElement, FDAlgebra, Provenance};
pub use error::{Error, LinalgError, ParseError, Result};
pub use field::{Field, Rational, Scalar};
pub use hom::{hom_basis, hom_space, iso_probable, HomSpace, IsoVerdict};
pub use invariants::InvariantBound;
pub use matrix::{Basis, ExactMatrix};
pub use module::{FDModule, ModuleMorphism};
pub use quiver::{build_algebra, parse_presentation, BuildOptions, Presentation, Quiver};
pub use resolution::{ext_dim, resolve, tor_dim, Resolution};
pub use verify::{family, verify_statements, Cutoffs, Entry, RandomSpec, Status, VerificationReport};
