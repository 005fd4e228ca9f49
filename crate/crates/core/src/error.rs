use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested characteristic is not a prime.
    NotPrime(u64),
    /// The characteristic does not fit the single-word arithmetic (p < 2^31).
    CharTooLarge(u64),
    /// Inversion of zero, or colon by the zero polynomial.
    DivisionByZero,
    /// Scalars from different prime fields were combined.
    CharMismatch { left: u32, right: u32 },
    /// Polynomials from different rings (or orders) were combined.
    RingMismatch,
    /// An exponent left the representable range.
    ExponentOverflow { bound: u64 },
    /// The quotient is not finite-dimensional.
    NotZeroDimensional,
    /// The relations generate the unit ideal.
    ZeroRing,
    /// A relation is not homogeneous under the grading weights.
    GradingError { relation: usize },
    /// Every Jacobian candidate vanishes in the quotient.
    SingularEverywhere,
    /// A prime list was empty.
    EmptyFamily,
    /// The certificate c is zero in the ring.
    ZeroCertificate,
    /// The certificate c maps to zero in the target ring.
    CertificateKilled,
    /// A putative ring map does not kill a relation of the source ring.
    MapError { relation: usize },
    /// Integral closure was asked of a non-monomial ideal.
    NotMonomial { generator: usize },
    /// All partial derivatives vanish.
    DegenerateJacobian,
    /// The ideal is not primary to the homogeneous maximal ideal.
    NotCofinite,
    /// Expected I contained in the bigger ideal.
    NotNested,
    /// Parameter elements do not form a (suitable) system of parameters.
    ParameterError(String),
    /// The quantity is only computed for certified Cohen-Macaulay presentations.
    NotComputed(String),
    /// A Kodaira-type check was run on an element of too small degree.
    DegreeTooSmall { index: usize, degree: u64, a_invariant: i64 },
    /// A precondition on the inputs failed.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::CharTooLarge(p) => write!(f, "characteristic {p} exceeds 2^31"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::CharMismatch { left, right } => {
                write!(f, "characteristic mismatch: {left} vs {right}")
            }
            Error::RingMismatch => f.write_str("operands live in different rings"),
            Error::ExponentOverflow { bound } => {
                write!(f, "exponent overflow (bound {bound})")
            }
            Error::NotZeroDimensional => f.write_str("ideal is not zero-dimensional"),
            Error::ZeroRing => f.write_str("relations generate the unit ideal"),
            Error::GradingError { relation } => {
                write!(f, "relation #{relation} is not homogeneous")
            }
            Error::SingularEverywhere => {
                f.write_str("every Jacobian candidate vanishes in the ring")
            }
            Error::EmptyFamily => f.write_str("empty prime list"),
            Error::ZeroCertificate => f.write_str("certificate is zero in the ring"),
            Error::CertificateKilled => f.write_str("certificate maps to zero"),
            Error::MapError { relation } => {
                write!(f, "map does not send relation #{relation} to zero")
            }
            Error::NotMonomial { generator } => {
                write!(f, "generator #{generator} is not a monomial")
            }
            Error::DegenerateJacobian => f.write_str("all partial derivatives vanish"),
            Error::NotCofinite => f.write_str("ideal is not primary to the maximal ideal"),
            Error::NotNested => f.write_str("first ideal is not contained in the second"),
            Error::ParameterError(msg) => write!(f, "parameter error: {msg}"),
            Error::NotComputed(msg) => write!(f, "not computed: {msg}"),
            Error::DegreeTooSmall { index, degree, a_invariant } => write!(
                f,
                "parameter #{index} has degree {degree}, not above the a-invariant {a_invariant}"
            ),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::CharTooLarge(_) => "char-too-large",
            Error::DivisionByZero => "division-by-zero",
            Error::CharMismatch { .. } => "char-mismatch",
            Error::RingMismatch => "ring-mismatch",
            Error::ExponentOverflow { .. } => "exponent-overflow",
            Error::NotZeroDimensional => "not-zero-dimensional",
            Error::ZeroRing => "zero-ring",
            Error::GradingError { .. } => "grading-error",
            Error::SingularEverywhere => "singular-everywhere",
            Error::EmptyFamily => "empty-family",
            Error::ZeroCertificate => "zero-certificate",
            Error::CertificateKilled => "certificate-killed",
            Error::MapError { .. } => "map-error",
            Error::NotMonomial { .. } => "not-monomial",
            Error::DegenerateJacobian => "degenerate-jacobian",
            Error::NotCofinite => "not-cofinite",
            Error::NotNested => "not-nested",
            Error::ParameterError(_) => "parameter-error",
            Error::NotComputed(_) => "not-computed",
            Error::DegreeTooSmall { .. } => "degree-too-small",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
