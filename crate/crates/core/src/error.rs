use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library reports.
///
/// [`Error::kind`] gives the stable, machine-readable name of the variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(u64, u64),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("characteristic {characteristic} divides {n}")]
    TameViolation { characteristic: u64, n: u64 },
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("exponent denominator {denominator} does not divide the root denominator {root_denominator}")]
    ExponentDenominatorExceedsN {
        denominator: u64,
        root_denominator: u64,
    },
    #[error("variable t{index} is outside t1..t{count}")]
    VariableOutOfRange { index: usize, count: usize },
    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("series is not a unit (valuation {0})")]
    NotAUnit(String),
    #[error("root choice {0} is not an n-th root of the leading coefficient {1}")]
    LeadingCoefficientRootInvalid(String, String),
    #[error("series is not a unit times a monomial")]
    NotUnitTimesMonomial,
    #[error("comparison order {order} exceeds truncation order {truncation}")]
    OrderExceedsTruncation { order: String, truncation: String },
    #[error("relation {relation}: {detail}")]
    BadRadicandShape { relation: usize, detail: String },
    #[error("relation {relation}: the field lacks a primitive {n}-th root of unity")]
    MissingRootsOfUnity { relation: usize, n: u64 },
    #[error("relation {relation}: leading coefficient {coefficient} has no {n}-th root in the field")]
    LeadingCoefficientHasNoRoot {
        relation: usize,
        coefficient: String,
        n: u64,
    },
    #[error("involution fails at half-edge {0}")]
    NotInvolution(String),
    #[error("leg labels are not a bijection onto 1..n: {0}")]
    LegLabelNotBijective(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("genus {genus} with {legs} legs is not a stable pair")]
    UnstablePair { genus: u32, legs: u32 },
    #[error("vertex {0} is not trivalent")]
    NotTrivalent(String),
    #[error("graph is not maximally degenerate")]
    NotMaxDegenerate,
    #[error("ribbon structure does not match the graph: {0}")]
    RibbonMismatch(String),
    #[error("morphism does not match the graph: {0}")]
    MorphismMismatch(String),
    #[error("points are not pairwise distinct")]
    PointsNotDistinct,
    #[error("characteristic two: +1 and -1 coincide")]
    CharacteristicTwo,
}

impl Error {
    /// Variant name, used in `ERROR <Kind>: <detail>` lines.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            DivisionByZero => "DivisionByZero",
            FieldMismatch(..) => "FieldMismatch",
            NotPrime(_) => "NotPrime",
            TameViolation { .. } => "TameViolation",
            SyntaxError { .. } => "SyntaxError",
            ExponentDenominatorExceedsN { .. } => "ExponentDenominatorExceedsN",
            VariableOutOfRange { .. } => "VariableOutOfRange",
            ArityMismatch { .. } => "ArityMismatch",
            NotAUnit(_) => "NotAUnit",
            LeadingCoefficientRootInvalid(..) => "LeadingCoefficientRootInvalid",
            NotUnitTimesMonomial => "NotUnitTimesMonomial",
            OrderExceedsTruncation { .. } => "OrderExceedsTruncation",
            BadRadicandShape { .. } => "BadRadicandShape",
            MissingRootsOfUnity { .. } => "MissingRootsOfUnity",
            LeadingCoefficientHasNoRoot { .. } => "LeadingCoefficientHasNoRoot",
            NotInvolution(_) => "NotInvolution",
            LegLabelNotBijective(_) => "LegLabelNotBijective",
            Disconnected => "Disconnected",
            MalformedGraph(_) => "MalformedGraph",
            UnstablePair { .. } => "UnstablePair",
            NotTrivalent(_) => "NotTrivalent",
            NotMaxDegenerate => "NotMaxDegenerate",
            RibbonMismatch(_) => "RibbonMismatch",
            MorphismMismatch(_) => "MorphismMismatch",
            PointsNotDistinct => "PointsNotDistinct",
            CharacteristicTwo => "CharacteristicTwo",
        }
    }
}
