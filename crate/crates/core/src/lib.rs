//! Exact-arithmetic toolkit for higher {g_n, h_n}-derivations on
//! finite-dimensional associative algebras over the rationals.
//!
//! The crate provides:
//!
//! - [`rational`] / [`matrix`]: exact rational scalars and dense
//!   rational linear algebra — no floating point anywhere;
//! - [`algebra`]: algebras via structure constants, with matrix-algebra,
//!   upper-triangular, and dual-number builtins and inner derivations;
//! - [`maps`]: {g,h}-derivation and Jordan {g,h}-derivation checkers on
//!   basis pairs, plus an inner-plus-scalar triple generator;
//! - [`higher`]: truncated higher derivation systems, the recursion that
//!   builds them from a characterizing sequence of {g,h}-derivations,
//!   the inverse extraction, the closed-form evaluation over integer
//!   compositions, and a randomized falsification search;
//! - [`symbolic`]: the same closed form as a formal noncommutative
//!   polynomial in the generator symbols `F_1, F_2, ...`.
//!
//! All values are immutable and all operations pure, so everything is
//! safe to share across threads. With the default `parallel` feature the
//! falsification search fans its trials out with rayon; results are
//! byte-identical to the sequential fallback because trial `i` always
//! derives its generator from `(seed, i)`.

pub mod algebra;
pub mod error;
pub mod higher;
pub mod maps;
pub mod matrix;
pub mod rational;
pub mod sample;
pub mod symbolic;

pub use algebra::{builtin, dual_numbers, matrix_algebra, upper_triangular, Algebra, Semiprimeness};
pub use error::{Error, Result};
pub use higher::{
    build_from_char, closed_form_from_char, extract_char, first_higher_violation,
    first_jordan_higher_violation, is_higher_derivation, is_jordan_higher_derivation,
    ordinary_higher, search_jordan_counterexample, search_jordan_counterexample_sequential,
    CharSequence, CharSequenceWire, HigherIdentity, HigherSystem, HigherViolation,
};
pub use maps::{
    first_gh_violation, first_jordan_gh_violation, gh_from_inner_plus_scalar, is_gh_derivation,
    is_jordan_gh_derivation, GhIdentity, GhViolation, LinearMap, MapTriple,
};
pub use matrix::{Matrix, Vector};
pub use rational::Rational;
pub use symbolic::{
    coefficient, compositions, evaluate, expand_f, expand_via_recursion, Composition, NCMonomial,
    NCPolynomial,
};
