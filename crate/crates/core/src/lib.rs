//! Exact calculus of diagonal quadratic forms over generic field models.
//!
//! Forms are counted multisets of square classes ([`DiagonalForm`]). The
//! crate computes exterior and symmetric powers by class-grouped
//! convolution ([`power`]), decides isometry through a canonical Witt
//! decomposition ([`normal`]), encodes closed-form results for hyperbolic
//! forms and trace forms of symbol algebras ([`closed`]), and sweeps them
//! against the brute-force engine ([`harness`]).
//!
//! The generic model: every named atom is an independent square class, as
//! in an iterated Laurent series field `R((t_1))...((t_r))`. In
//! [`FieldMode::MinusOneSquare`] the base is `C` instead, so `-1` is a square.

pub mod closed;
pub mod combinatorics;
pub mod error;
pub mod form;
pub mod harness;
pub mod normal;
pub mod power;
pub mod square_class;

#[cfg(test)]
mod test_support;

pub use closed::{ClosedForm, TraceParams};
pub use error::{Error, Result};
pub use form::DiagonalForm;
pub use normal::{isometric, normalize, NormalForm};
pub use square_class::{Atom, FieldMode, SquareClass};
