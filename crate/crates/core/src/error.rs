use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names are part of the command-line contract: [`Error::name`]
/// is printed verbatim when a computation fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent at offset {0}")]
    NegativeExponent(usize),
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error("coefficient denominator `{0}` is not invertible in the coefficient field")]
    DivisorNotInvertible(String),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("polynomial and basis use different term orders")]
    OrderMismatch,
    #[error("degree truncation requires homogeneous input")]
    InhomogeneousTruncation,
    #[error("`{0}` is not a permutation in one-line notation")]
    NotAPermutation(String),
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("characteristic {characteristic} divides the group order {order}")]
    ModularCaseUnsupported { characteristic: u64, order: usize },
    #[error("operation requires characteristic zero")]
    NonZeroCharacteristic,
    #[error("group closure unavailable; an explicit degree bound is required")]
    MissingDegreeBound,
    #[error("no primitive {order}-th root of unity exists in GF({q})")]
    RootOfUnityUnavailable { order: u64, q: u64 },
    #[error("Hilbert ideal generator is not homogeneous: {0}")]
    NonHomogeneousResult(String),
    #[error("accepted invariants do not generate the Hilbert ideal up to degree {0}")]
    IncompleteGeneration(u32),
    #[error("denominator is not cleared by the supplied degrees")]
    InexactDivision,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Stable identifier of the error class.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::NegativeExponent(_) => "NegativeExponent",
            Error::MalformedExpression(_) => "MalformedExpression",
            Error::DivisorNotInvertible(_) => "DivisorNotInvertible",
            Error::RingMismatch => "RingMismatch",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::OrderMismatch => "OrderMismatch",
            Error::InhomogeneousTruncation => "InhomogeneousTruncation",
            Error::NotAPermutation(_) => "NotAPermutation",
            Error::ClosureCapExceeded(_) => "ClosureCapExceeded",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ModularCaseUnsupported { .. } => "ModularCaseUnsupported",
            Error::NonZeroCharacteristic => "NonZeroCharacteristic",
            Error::MissingDegreeBound => "MissingDegreeBound",
            Error::RootOfUnityUnavailable { .. } => "RootOfUnityUnavailable",
            Error::NonHomogeneousResult(_) => "NonHomogeneousResult",
            Error::IncompleteGeneration(_) => "IncompleteGeneration",
            Error::InexactDivision => "InexactDivision",
            Error::InvalidRing(_) => "InvalidRing",
            Error::InvalidAction(_) => "InvalidAction",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    /// True for errors caused by malformed input text rather than by the
    /// mathematics of a well-formed request.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownVariable(_)
                | Error::NegativeExponent(_)
                | Error::MalformedExpression(_)
                | Error::DivisorNotInvertible(_)
                | Error::InvalidRing(_)
                | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
