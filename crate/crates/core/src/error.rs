use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },
    #[error("line {line}: path `{path}` is not composable")]
    NonComposable { line: usize, path: String },
    #[error("line {line}: terms of the relation are not parallel")]
    NonParallel { line: usize },
    #[error("line {line}: {message}")]
    BadRelation { line: usize, message: String },
    #[error("quiver: {0}")]
    Quiver(String),
    #[error("algebra is not finite-dimensional within path length {0}")]
    NotFiniteDimensional(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("module does not satisfy the relations: {0}")]
    RelationViolation(String),
    #[error("ideal does not annihilate the module")]
    NotAnnihilating,
    #[error("cannot form the quotient by the whole algebra")]
    WholeAlgebra,
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("symbolic oracle budget exceeded: {0}")]
    Budget(String),
    #[error("module file: {0}")]
    ModuleFile(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
