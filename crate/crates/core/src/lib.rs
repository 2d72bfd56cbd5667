//! The centrally extended Heisenberg algebra CEHeis: structure constants,
//! real form and η₄ identification, Boson and two-mode CCR representations on
//! truncated Fock spaces, the splitting formula, the vacuum moment generating
//! function of `a + a† + h`, and the group law of the associated group.
//!
//! Analytic formulas are checked against a dense matrix-exponential oracle in
//! [`fock`].

pub mod boson;
pub mod cli;
pub mod error;
pub mod fock;
pub mod group;
pub mod lie;
pub mod real_form;
pub mod splitting;
pub mod two_mode;

pub use error::{Error, Result};

/// Complex scalar used for every coefficient.
pub type ComplexScalar = num_complex::Complex64;
