//! Finite point configurations in products of projective spaces: their
//! ideals, combinatorial criteria for the arithmetically Cohen-Macaulay
//! property, an algebraic ACM oracle and a verification lab.

pub mod acm;
pub mod config;
pub mod error;
pub mod lab;
pub mod point_ideals;

pub use acm::{acm, acm_decide, AcmOptions, AcmVerdict, Certificate, FastPath};
pub use config::{
    d_membership, Configuration, DMembership, FactorShape, IntConfig, MultiPoint, ProjPoint,
};
pub use error::ConfigError;
pub use mpacm_algebra as algebra;
