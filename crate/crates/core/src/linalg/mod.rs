//! Exact scalar and matrix arithmetic over Q and over cyclotomic fields.

pub mod cyclotomic;
pub mod matrix;
pub mod rational;

pub use cyclotomic::{cyclo_rank, CycloElement, CyclotomicField};
pub use matrix::{nullspace, rat_rank, RatMatrix};
pub use rational::{format_rational, parse_rational, Rational};
