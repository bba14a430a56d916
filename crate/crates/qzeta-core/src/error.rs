//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while parsing input or running a computation.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a polynomial, group, weight or JSON-level expression.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// An identifier that is not a declared variable.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// Structured input violates a documented precondition.
    #[error("invalid input: {0}")]
    Contract(String),

    /// An enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: needed {needed}, limit {limit}")]
    Budget { needed: u128, limit: u128 },

    /// The counting oracle could not validate a polynomial class in L.
    #[error("non-polynomial class (heuristic limits): {0}")]
    NonPolynomialClass(String),

    /// A quotient presentation whose discrepancies are not all positive.
    #[error("input is not log terminal: {0}")]
    NotLogTerminal(String),

    /// No semi-quasihomogeneous structure with isolated principal part.
    #[error("no admissible weight: {0}")]
    NoWeight(String),

    /// Principal part (or full polynomial) fails the isolatedness requirement.
    #[error("singularity is not isolated: {0}")]
    NotIsolated(String),

    /// A stratum cannot be put in the required local normal-crossings shape.
    #[error("stratum presentation unavailable: {0}")]
    Presentation(String),

    /// Specialization requested on a value it is not defined for.
    #[error("non-specializable input: {0}")]
    NonSpecializable(String),

    /// A verification fixture did not reproduce its expected value.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Internal invariant violated; indicates a bug, reported loudly.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
