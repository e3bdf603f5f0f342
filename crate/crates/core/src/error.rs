use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("cannot compose morphisms {0} -> {1} and {2} -> {3}")]
    CompositionMismatch(usize, usize, usize, usize),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("degree {degree} exceeds truncation {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },
    #[error("modules live over different fields, groups or truncations")]
    ContextMismatch,
    #[error("invalid module structure: {0}")]
    InvalidModule(String),
    #[error("not a submodule: {0}")]
    InvalidSubmodule(String),
    #[error("invalid module morphism: {0}")]
    InvalidMorphismOfModules(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
