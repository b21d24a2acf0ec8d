use thiserror::Error;

/// Errors reported by the library. Each variant falls into one of the
/// categories returned by [`Error::category`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: unknown arrow `{id}`")]
    UnknownArrow { line: usize, id: String },

    #[error("line {line}: arrows `{first}` and `{second}` are not composable")]
    NotComposable { line: usize, first: String, second: String },

    #[error("line {line}: only monomial relations are supported")]
    NonMonomial { line: usize },

    #[error("the algebra is infinite-dimensional: relation-free path {witness} can be repeated")]
    InfiniteDimensional { witness: String },

    #[error("unsupported algebra: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

/// Coarse error classes, mapped to process exit codes by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Input,
    Invariant,
    Resource,
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Invariant(_) => Category::Invariant,
            Error::Resource(_) => Category::Resource,
            _ => Category::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
