//! Text syntax for forms and polynomials.
//!
//! ```text
//! form    := wedge { ("+" | "-") wedge }
//! wedge   := product { "^" product }
//! product := unary { "*" unary }
//! unary   := "-" unary | power
//! power   := atom [ "**" INT ]
//! atom    := NUM | NUM "/" NUM | "i" | "z" INT | "zb" INT
//!          | "dz" INT | "dzb" INT | "(" form ")"
//! ```
//!
//! `^` is the wedge product and `**` a power. Both operands of `*` may not
//! carry differentials, and a power base must be free of them.

mod eval;
mod lexer;
mod parser;

use std::fmt;

pub use eval::{evaluate, parse_form, parse_polynomial};
pub use parser::{parse, Expr};

/// Syntax or range error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
