use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex `{0}` receives no edge")]
    NoSourcesViolation(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("not a groupoid element: {0}")]
    NotInGroupoid(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("axioms verified to depth {verified}, element needs depth {needed}")]
    DepthInsufficient { verified: usize, needed: usize },
    #[error("vectors live over different base units")]
    BaseMismatch,
    #[error("element is zero")]
    ZeroElement,
    #[error("no certificate found up to depth {0}")]
    Exhausted(usize),
    #[error("shift power is not injective on the cylinder set: {0}")]
    NotInjective(String),
    #[error("images of the cylinder sets differ: {0}")]
    ImageMismatch(String),
    #[error("shift space is not the edge shift of the graph: {0}")]
    NotEdgeShift(String),
    #[error("invalid shift of finite type: {0}")]
    InvalidSft(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, col, msg: msg.into() }
    }

    /// Errors raised while reading user input rather than by the algebra.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownEdge(_)
                | Error::UnknownVertex(_)
                | Error::UnknownSymbol(_)
                | Error::Io(_)
        )
    }
}
