//! Liouville-function toolkit: sieves for `λ` and `μ`, Dirichlet convolution,
//! sublinear summatory functions, exact step-function quadrature, and an
//! experiment harness over grids of `x`.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod cli;
pub mod compensated;
pub mod dirichlet;
pub mod error;
pub mod experiments;
pub mod rational;
pub mod stepquad;
pub mod summatory;

pub use error::{Error, Result};
