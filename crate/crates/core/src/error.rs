use thiserror::Error;

use crate::bt1::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in [2, 97]")]
    NotPrime(u32),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry {value} out of range for F_{p}")]
    EntryOutOfRange { value: i64, p: u32 },

    #[error("matrix is singular")]
    Singular,

    #[error("module has odd dimension {0}")]
    OddDimension(usize),

    #[error("module is not BT1: {}", join_violations(.0))]
    NotBt1(Vec<Violation>),

    #[error("module carries no form")]
    NoForm,

    #[error("subspace is not stable under F and V")]
    NotStable,

    #[error("form restricted to the subspace is degenerate")]
    DegenerateRestriction,

    #[error("stable images disagree: multiplicative rank {multiplicative}, etale rank {etale}")]
    RankMismatch { multiplicative: usize, etale: usize },

    #[error("no nondegenerate compatible form found")]
    NoPolarization,

    #[error("invalid Ekedahl-Oort type {0:?}")]
    InvalidEoType(Vec<usize>),

    #[error("canonical filtration failure: {0}")]
    Filtration(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("module is not in word form and could not be canonicalized: {0}")]
    NotWordForm(String),

    #[error("census is not self-dual: {f_words} copies of F, {v_words} copies of V")]
    NotSelfDual { f_words: usize, v_words: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("json: {0}")]
    Json(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
