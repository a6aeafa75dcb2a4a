//! Expression parser, text and JSON formats, and the command line for
//! `cayley-core`.

pub mod cli;
mod error;
pub mod expr;
pub mod format;

pub use cli::run;
pub use error::{Error, ParseError};
pub use expr::{eval_expression, parse_element, parse_expr, Backend, Expr, Literal, Value};
