use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("variable `{0}` repeated as input of a single atom")]
    RepeatedInput(String),
    #[error("variable `{0}` repeated as output of a single atom")]
    RepeatedOutput(String),
    #[error("variable `{0}` used as input by more than one atom")]
    InputUsedTwice(String),
    #[error("variable `{0}` used as output by more than one atom")]
    OutputUsedTwice(String),
    #[error("generator `{name}` has type ({p},{q}) but atom has {got_p} inputs and {got_q} outputs")]
    ArityMismatch { name: String, p: usize, q: usize, got_p: usize, got_q: usize },
    #[error("free-variable ordering does not match the free variables: {0}")]
    OrderMismatch(String),
    #[error("free variable `{0}` clashes between factors")]
    FreeVariableClash(String),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("type mismatch: expected ({0},{1}), got ({2},{3})")]
    TypeMismatch(usize, usize, usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("expected an element of the empty signature")]
    NonemptySignature,
    #[error("the zero ideal has no compatible polynomial family")]
    ZeroIdeal,
    #[error("polynomial must be nonzero and monic: {0}")]
    NotMonic(String),
    #[error("compatibility violated at {0}")]
    Incompatible(String),
    #[error("jumps escape the {0}x{0} rectangle")]
    JumpsEscapeBound(usize),
    #[error("symmetrizer contraction did not factor: {0}")]
    FactorizationFailed(String),
    #[error("matrix is singular")]
    Singular,
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("at position {pos}: {inner}")]
    Located { pos: usize, inner: Box<Error> },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// Attaches a source position unless one is already present.
    pub fn at(self, pos: usize) -> Self {
        match self {
            Error::Parse { .. } | Error::Located { .. } => self,
            other => Error::Located { pos, inner: Box::new(other) },
        }
    }

    /// The underlying error with any position stripped.
    pub fn kind(&self) -> &Error {
        match self {
            Error::Located { inner, .. } => inner.kind(),
            other => other,
        }
    }
}
