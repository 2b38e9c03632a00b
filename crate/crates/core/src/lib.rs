//! Exact computations around tensorlike functors on the arrow category
//! `A(Z[t], σ)`, logarithmic `K_{2,L}` groups and relative `K_2` presentations.
//!
//! Everything is finite integer linear algebra: each group that appears is
//! finitely presented and decided through Hermite and Smith normal forms.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod fpab;
pub mod functors;
pub mod json;
pub mod k2l;
pub mod lambda;
pub mod matrix;
pub mod msk2;
pub mod normal_form;
pub mod sring;
pub mod tietze;
pub mod zrings;

pub use error::{Error, Result};
