//! Magnitude-type homology theories of finite digraphs.
//!
//! Computes eulerian, ordinary and discriminant magnitude homology, (regular)
//! path homology, complexes of injective words and the spectral sequences of
//! the length filtration on the (injective) nerve of the reachability
//! category, together with the decategorified invariants and small-graph
//! sweeps built on them.
//!
//! Linear algebra is generic over the coefficient [`scalar::Field`]; the
//! aliases below fix the usual choices.

pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod nerve;
pub mod path;
pub mod scalar;
pub mod snf;
pub mod spectral;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, Distance, DistanceMatrix};

/// Exact rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers used for Smith normal forms.
pub type Integer = num_bigint::BigInt;
/// The field with two elements.
pub type F2 = scalar::Zp<2>;
/// The field with three elements.
pub type F3 = scalar::Zp<3>;
