//! Exact rational and cyclotomic arithmetic, dense matrices.

mod cyclo;
mod matrix;
mod rational;

pub use cyclo::{CycloNumber, MAX_CONDUCTOR};
pub use matrix::{in_span, rank_mod_p, CycloMatrix, RationalMatrix};
pub use rational::{fmt_rational, parse_rational, rat, ri, Rational};
