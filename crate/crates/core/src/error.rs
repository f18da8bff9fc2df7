use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entries from different fields ({0} and {1})")]
    FieldMismatch(Field, Field),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },
    #[error("line {line}: relation paths are not parallel")]
    NonParallel { line: usize },
    #[error("line {line}: relation path has length {len}, need at least 2")]
    ShortPath { line: usize, len: usize },
    #[error("line {line}: arrows `{name}` do not compose left to right")]
    NotComposable { line: usize, name: String },
    #[error("missing `vertices` declaration")]
    MissingVertices,
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ideal is not admissible within {0} path lengths")]
    NonNilpotent(usize),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("modules or morphisms live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
