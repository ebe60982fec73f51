//! Canonical bases of higher-level Fock spaces for `U'_v(sl_e^)` and
//! `U_v(sl_inf)`, and the relative decomposition matrix linking them.

pub mod abacus;
pub mod canonical;
pub mod combinatorics;
pub mod crystal;
pub mod error;
pub mod factorize;
pub mod fock;
pub mod laurent;
pub mod matrix;

pub use combinatorics::{Dominance, Modulus, Multicharge, Multipartition, Node};
pub use error::{Error, Result};
pub use factorize::{Factorization, VerificationReport};
pub use fock::{FockSpace, FockVector};
pub use laurent::LaurentPoly;
pub use matrix::PolyMatrix;
