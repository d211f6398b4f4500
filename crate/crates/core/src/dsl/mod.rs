//! Textual syntax for actions and templates.
//!
//! ```text
//! file    := { def | expr } ;
//! def     := NAME "=" expr NEWLINE ;
//! expr    := "w" | "w*" | "_" | NAME | lattice ;
//! lattice := "[" [ row { ";" row } ] "]" ;
//! row     := expr { expr } ;
//! ```
//!
//! Comments run from `#` to end of line. Names are substituted at parse
//! time and must be defined before use. When a file holds several bare
//! expressions, the last one is the main expression.

mod lexer;
mod parser;
mod print;

use indexmap::IndexMap;
use thiserror::Error;

use crate::action::{Action, ProcessLattice};
use crate::template::{Template, Term};

pub use parser::Parser;
pub use print::{print_action, print_canonical, print_lattice};

/// Default bound on lattice nesting accepted by the parser.
pub const DEFAULT_DEPTH_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        Self { line, col, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("invalid name '{0}'")]
    InvalidName(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("duplicate definition of '{0}'")]
    DuplicateDefinition(String),
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("nesting depth exceeds limit of {0}")]
    DepthLimit(usize),
    #[error("no expression")]
    NoExpression,
    #[error("hole not allowed here")]
    UnexpectedHole,
    #[error("expected a lattice")]
    ExpectedLattice,
}

impl ParseErrorKind {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, ParseErrorKind::DepthLimit(_))
    }
}

/// A parsed source file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceProgram {
    /// Definitions in source order, already resolved.
    pub definitions: IndexMap<String, Term>,
    pub main: Option<Term>,
    /// 1-based line and column of the main expression.
    pub main_pos: Option<(usize, usize)>,
}

/// Parses a whole file with the default depth limit.
pub fn parse(text: &str) -> Result<SourceProgram, ParseError> {
    Parser::default().parse(text)
}

/// Parses the main expression of `text`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    Parser::default().parse_term(text)
}

/// Parses a hole-free expression.
pub fn parse_action(text: &str) -> Result<Action, ParseError> {
    Parser::default().parse_action(text)
}

/// Parses a hole-free lattice.
pub fn parse_lattice(text: &str) -> Result<ProcessLattice, ParseError> {
    Parser::default().parse_lattice(text)
}

/// Parses a lattice that may contain holes.
pub fn parse_template(text: &str) -> Result<Template, ParseError> {
    Parser::default().parse_template(text)
}

#[cfg(test)]
pub(crate) fn action(src: &str) -> Action {
    parse_action(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

#[cfg(test)]
pub(crate) fn lattice(src: &str) -> ProcessLattice {
    parse_lattice(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

#[cfg(test)]
pub(crate) fn template(src: &str) -> Template {
    parse_template(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}
