use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched cyclotomic orders {0} and {1}")]
    OrderMismatch(u64, u64),

    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },

    #[error("pole at s = 1")]
    Pole,

    #[error("argument out of range: {0}")]
    Domain(String),

    #[error("character mod {modulus} is not primitive (conductor {conductor})")]
    NotPrimitive { modulus: u64, conductor: u64 },

    #[error("excluded case: n = 1 with the trivial character")]
    ExcludedCase,

    #[error("trivial zero: L({chi}, {s}) = 0")]
    TrivialZero { chi: String, s: i64 },

    #[error("field is not totally real")]
    NotTotallyReal,

    #[error("malformed subgroup: {0}")]
    MalformedSubgroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::OrderMismatch(..) => "order_mismatch",
            Error::NotCoprime { .. } => "not_coprime",
            Error::Pole => "pole",
            Error::Domain(_) => "domain",
            Error::NotPrimitive { .. } => "not_primitive",
            Error::ExcludedCase => "excluded_case",
            Error::TrivialZero { .. } => "trivial_zero",
            Error::NotTotallyReal => "not_totally_real",
            Error::MalformedSubgroup(_) => "malformed_subgroup",
            Error::Parse(_) => "parse",
            Error::Unsupported(_) => "unsupported",
        }
    }

    /// True when the input was well-formed but a mathematical precondition
    /// (pole, trivial zero, excluded case, ...) refused it.
    pub fn is_refusal(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::MalformedSubgroup(_))
    }
}
