//! Text formats: the expression language and model documents.

mod expr;
mod model;

pub use expr::{parse_expr, Expr, Func, ParseError};
pub use model::{parse_model, ModelDocument, ModelError, ModelErrorKind};
