//! Exact nonresonance criteria for rank-one local systems on complements of
//! projective hyperplane arrangements, with checkable certificates and an
//! independent twisted-cohomology oracle for real line arrangements.

pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod local_system;
pub mod lp;
pub mod oracle;

pub use error::{Error, Result};
