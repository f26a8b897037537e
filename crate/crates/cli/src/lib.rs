//! Expression language and command-line front end for `qf-core`.

pub mod ast;
mod commands;
pub mod eval;
pub mod parser;

pub use ast::{Entry, Expr};
pub use commands::{run, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE};
pub use eval::{evaluate, EvalError};
pub use parser::{parse, ParseError};
