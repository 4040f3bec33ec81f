use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("structure constants are not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("bad system of idempotents: {0}")]
    BadSystem(String),
    #[error("idempotent {0} is not in the declared system")]
    NotInSystem(String),
    #[error("rewriting system is not confluent: {0}")]
    NotConfluent(String),
    #[error("normal forms exceed the length cap {0}")]
    InfiniteDimensional(usize),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid Q-set: {0}")]
    InvalidQSet(String),
    #[error("associativity constraints violated on ({0})")]
    AssociativityViolated(String),
    #[error("computation needs {required} matrix entries, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("composite of consecutive differentials is not zero")]
    CompositionNotZero,
    #[error("Tor does not vanish: Tor_{degree} at factor {factor}")]
    TorHypothesisFails { factor: usize, degree: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("lifted cochain leaves the non-cycle subcomplex")]
    LiftNotInSubcomplex,
    #[error("long exact sequence fails to be exact: {0}")]
    ExactnessFailure(String),
    #[error("bimodule is not certified projective: {0}")]
    NotProjective(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::CompositionNotZero
            | Error::LiftNotInSubcomplex
            | Error::ExactnessFailure(_)
            | Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
