//! Exact Schubert calculus with twisted divided-difference operators.
//!
//! The crate computes ordinary, double, twisted and double twisted Schubert
//! polynomials, skew and twisted skew divided-difference operators, Bruhat
//! chain witnesses with their Pieri consequences, and localizations at torus
//! fixed points. Most objects are available through two independent routes
//! (an operator recursion and a combinatorial sum) so that each can check
//! the other.

pub mod cli;
pub mod error;
pub mod operators;
pub mod permutation;
pub mod polyring;
pub mod schubert;
pub mod symchains;
pub mod verify;

pub use error::{Error, Result};
pub use operators::{OpTerm, OperatorExpr};
pub use permutation::{Permutation, ReducedWord};
pub use polyring::{Monomial, MultiPoly};
