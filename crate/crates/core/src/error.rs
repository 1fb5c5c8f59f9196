use thiserror::Error;

/// Errors raised by the poset, algebra and file-format layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("`{0}` is not strictly below `{1}`")]
    NotComparable(String, String),
    #[error("operation is undefined on the empty poset")]
    EmptyPoset,
    #[error("label `{0}` already present")]
    LabelClash(String),
    #[error("poset has no unique minimal element")]
    NoBottom,
    #[error("monomials live in different variable sets")]
    VariableMismatch,
    #[error("monomial `{0}` is not an element of the lcm-lattice")]
    NotInLattice(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the void complex has no chain complex")]
    VoidComplex,
    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
