//! Exact constructions on commutative monoids.
//!
//! A [`MonoidValue`] wraps any [`Monoid`]: a finite addition table, a
//! finitely generated submonoid of `N^d`, a finitely presented monoid, or a
//! value built from those by one of five constructions:
//!
//! * [`regularize`]: the largest cancellative quotient,
//! * [`formal_difference`]: group completion by formal differences,
//! * [`divisible_hull`]: formal fractions `x / n`,
//! * [`unique_quotient`]: the quotient by `n*x = n*y`,
//! * [`modulate`]: formal nonnegative rational combinations.
//!
//! The [`diagram`] module types these constructions by category and checks
//! that different composites agree on formal expressions.

pub mod backends;
pub mod catalog;
pub mod diagram;
pub mod element;
pub mod embeddings;
pub mod error;
pub mod flags;
pub mod lattice;
pub mod monoid;
pub mod predicates;

pub use element::Element;
pub use embeddings::{
    cut_scalar_mul, divisible_hull, formal_difference, modulate, regularize, scalar_mul, unique_quotient,
    CanonicalMap, EmbeddingKind, RelationMode,
};
pub use error::{Error, Result};
pub use flags::{CategoryFlags, Decision, EqResult, TriState};
pub use lattice::{AbelianGroupStructure, Matrix};
pub use monoid::{nsum, Bounds, Division, Monoid, MonoidValue};

/// Natural numbers of arbitrary size.
pub type Natural = num_bigint::BigUint;
/// Integers of arbitrary size.
pub type Integer = num_bigint::BigInt;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Integer matrix used for relation lattices.
pub type IntMatrix = Matrix<Integer>;
