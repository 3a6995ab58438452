use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("characteristic {0} exceeds the supported range (p < 2^32)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("exponent {r} shares the characteristic {p}")]
    ExponentSharesCharacteristic { r: u64, p: u64 },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic other than 3")]
    CharacteristicThree,
    #[error("requested level {requested} is above level {available}")]
    LevelOutOfRange { requested: usize, available: usize },
    #[error("modulus is not monic of degree >= 1")]
    NotMonic,
    #[error("modulus is reducible over the field beneath it")]
    ReducibleModulus,
    #[error("conjugation scale must be nonzero")]
    ZeroScale,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("derivative vanishes (inseparable polynomial)")]
    VanishingDerivative,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("outer polynomial g is reducible")]
    ReducibleG,
    #[error("characteristic divides the degree {0}")]
    CharacteristicDividesDegree(usize),
    #[error("field hypotheses fail: {0}")]
    HypothesisFailure(String),
    #[error("polynomial is not of the centered form a*x^d + c")]
    NotCentered,
    #[error("previous iterate is reducible")]
    PreviousIterateReducible,
    #[error("operation requires characteristic greater than 3")]
    CharacteristicAtMostThree,
    #[error("both coefficients are zero")]
    BothCoefficientsZero,
    #[error("critical points are not separable")]
    InseparableDerivative,
    #[error("required square root does not exist")]
    SquareRootMissing,
    #[error("tower extension failed: {0}")]
    TowerBuildFailure(String),
    #[error("derivative is constant")]
    ConstantDerivative,
    #[error("g = x +/- 2 is excluded")]
    ExcludedG,
    #[error("polynomial is not of the shape a_p*x^p - a_1*x - a_0 with a_p*a_1 != 0")]
    MalformedShape,
    #[error("input polynomial is reducible")]
    ReducibleInput,
    #[error("a_1 is not a (p-1)-th power")]
    NoWitnessA,
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
