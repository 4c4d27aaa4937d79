//! A small language for sum-product identities.
//!
//! ```text
//! identity "rr-a" {
//!   den 1;
//!   sum {
//!     indices n;
//!     exponent n^2;
//!     denoms (q; n);
//!   }
//!   product { 1/poch(q, q^5) * 1/poch(q^4, q^5) }
//! }
//! ```
//!
//! A file is an optional `version 1;` header followed by one or more
//! identities. The sum side lists its indices, an optional sign made of
//! `(-1)^L`, `(-1)^binom(L,2)` and `i^L` atoms, a rational exponent of degree
//! at most two (`binom(e,2)` is available), one denominator `(q^s; n)`
//! standing for `(q^s; q^s)_n` per index, and optional explicit bounds. The
//! product side multiplies `poch(x, b)` and `poch(x, b, n)` factors, each
//! optionally inverted with `1/`. `#` starts a comment.

mod ast;
mod eval;
mod lexer;
mod parser;
mod poly;
mod verify;

use std::fmt;
use std::path::Path;

use thiserror::Error;

pub use ast::{Denom, IdentitySpec, LinForm, ProductFactor, SignAtom, SignRule, SumSide};
pub use eval::{auto_bounds, eval_product, eval_sum, eval_sum_with};
pub use poly::Poly;
pub use verify::{compare, verify, verify_all, verify_with, Status, VerifyReport};

use crate::error::SeriesError;

/// Syntax error at a source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}, found {}", self.line, self.col, self.expected.join(" or "), self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{line}:{col}: {message}")]
    Semantic { line: usize, col: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unbounded enumeration: {0}")]
    UnboundedEnumeration(String),
    #[error("`{identity}`: negative exponent at lattice point {point:?}")]
    NegativeExponent { identity: String, point: Vec<i64> },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Parses every identity in `text`.
pub fn parse(text: &str) -> Result<Vec<IdentitySpec>, LangError> {
    parser::parse_text(text)
}

/// Parses text expected to hold exactly one identity.
pub fn parse_one(text: &str) -> Result<IdentitySpec, LangError> {
    let mut v = parse(text)?;
    if v.len() != 1 {
        return Err(LangError::Semantic {
            line: 1,
            col: 1,
            message: format!("expected one identity, found {}", v.len()),
        });
    }
    Ok(v.remove(0))
}

pub fn parse_file(path: &Path) -> Result<Vec<IdentitySpec>, LangError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LangError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text)
}

/// Parses a standalone exponent polynomial over the named indices.
pub fn parse_poly(text: &str, indices: &[&str]) -> Result<Poly, LangError> {
    parser::parse_poly_text(text, indices)
}

#[cfg(test)]
mod tests;
