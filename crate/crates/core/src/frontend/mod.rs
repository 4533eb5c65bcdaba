//! Java text to typed AST.

mod ast;
mod comments;
mod lexer;
mod parser;

pub use ast::{AstNode, NodeId, Role, SourceUnit};
pub use comments::strip_comments;
pub use parser::parse_java;

use crate::error::{Error, Result};

/// Strip comments and parse, stamping `path` onto any error.
pub fn parse_source(source: &str, path: &str) -> Result<SourceUnit> {
    let clean = strip_comments(source).map_err(|e| match e {
        Error::Parse { line, message, .. } => Error::Parse {
            path: path.to_string(),
            line,
            message,
        },
        other => other,
    })?;
    parse_java(&clean, path)
}
