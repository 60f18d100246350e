//! Exact commutative algebra kernels for multigraded polynomial rings.
//!
//! The crate provides the pieces needed to study ideals of points in a
//! product of projective spaces: coefficient fields, sparse polynomials,
//! Buchberger's algorithm with the usual pair criteria, ideal operations
//! (sum, product, intersection, quotient, saturation) and Hilbert functions
//! computed by counting standard monomials.

pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod mingens;
pub mod monomial;
pub mod ring;

pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use ideal::Ideal;
pub use monomial::{Monomial, MAX_VARS};
pub use ring::{MonomialOrder, Poly, Ring};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),
    #[error("invalid factor dimensions {0:?}")]
    InvalidShape(Vec<usize>),
    #[error("{0} variables exceed the supported maximum of {max}", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("ideal is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("multidegree has {got} entries, ring has {expected} factors")]
    DegreeArity { expected: usize, got: usize },
}
