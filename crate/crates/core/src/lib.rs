//! Exact computations around root data, Lusztig symbols, Fourier pairings
//! and harmonic analysis on small finite reductive groups.

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod q_threshold;
pub mod root_data;
pub mod weyl;
pub mod symbols;
pub mod fourier;
pub mod rank_lemma;
pub mod finite;
pub mod acceptance;
