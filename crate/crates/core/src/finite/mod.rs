//! Brute-force harmonic analysis on GL_n(F_q) for tiny n and q.

pub mod checks;
pub mod class_fn;
pub mod decompose;
pub mod field;
pub mod gl;
pub mod hecke;
pub mod unipotent;

pub use class_fn::{
    inner_product, is_cuspidal, normalized_restriction, parabolic_restriction, twisted_induction, ClassFunction,
    InductionKernel,
};
pub use decompose::{Decomposition, Harmonic, LeviData};
pub use field::GaloisField;
pub use gl::{build_gl, build_gl_with_limit, Bruhat, Classes, GlModel, Parabolic, Subgroup, TorusClass};
