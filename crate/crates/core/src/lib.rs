//! Exact computations around the norm form `x^2 - d y^2` over `F_q[T]`.
//!
//! The crate finds the smallest irreducible value of the form, computes the
//! divisor class number of `F_q(T, sqrt(d))` by point counting, evaluates the
//! effective-Chebotarev degree bound in exact `Q[sqrt(q)]` arithmetic, and
//! tabulates split primes against the Chebotarev error term.

pub mod bounds;
pub mod census;
pub mod config;
pub mod error;
pub mod ffield;
pub mod polyring;
pub mod quadfield;
pub mod search;
pub mod zeta;

pub use config::Config;
pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec};
pub use polyring::{Degree, Polynomial};
