use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size constraint violated: {0}")]
    Size(String),

    /// An exact division that an integrality lemma guarantees had a remainder.
    #[error("integrality lemma violated for input {input:?}")]
    LemmaViolation { input: Vec<i64> },

    #[error("pole at the primitive {l}-th root of unity (valuation {valuation})")]
    Pole { l: u64, valuation: i64 },

    #[error("element is not homogeneous (degrees {0:?})")]
    NotHomogeneous(Vec<i64>),

    #[error("expected a degree-0 element, found degree {0}")]
    NotDegreeZero(i64),

    #[error("operands live over different exchange tables")]
    TableMismatch,

    #[error("generator {0} is outside the table")]
    UnknownGenerator(String),

    #[error("series constant term is not the unit")]
    NotInS1,

    #[error("series input has valuation 0, expected at least 1")]
    ValuationZero,

    #[error("substitution does not preserve exchange exponents between generators {0} and {1}")]
    IncompatibleSubstitution(usize, usize),

    #[error("bracket leaked outside the screening window at site {0}")]
    WindowLeak(i64),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
