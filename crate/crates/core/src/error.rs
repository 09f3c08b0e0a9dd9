use thiserror::Error;

/// Errors surfaced by the library. Every variant is a caller error or a
/// precondition violation; verification mismatches are reported through
/// [`crate::Mismatch`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid level shape D={d}, C={c}: {reason}")]
    InvalidShape { d: u64, c: u64, reason: &'static str },

    #[error("no primitive quadratic character of conductor {0}")]
    InvalidConductor(u64),

    #[error("invalid Eisenstein index (M={m}, L={l}, f={f}): {reason}")]
    InvalidIndex {
        m: u64,
        l: u64,
        f: u64,
        reason: &'static str,
    },

    #[error("invalid cusp representative {0:?}")]
    InvalidCusp((u64, u64, u64, u64)),

    #[error("{0} is not a divisor of the level")]
    InvalidDivisor(u64),

    #[error("quadratic extension mismatch: g^2 = {left} vs g^2 = {right}")]
    DiscMismatch { left: i64, right: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("argument {0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),

    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, u64),

    #[error("character of conductor {conductor} is undefined at {value}")]
    CharacterUndefined { conductor: u64, value: String },

    #[error("trivial character has no B_1 in this library")]
    TrivialCharacter,

    #[error("operator needs truncation {needed}, series has {available}")]
    InsufficientTruncation { needed: usize, available: usize },

    #[error("the prime {0} divides the conductor")]
    PrimeDividesConductor(u64),

    #[error("matrix ({a}, {b}; {c}, {d}) is not in Gamma0({level})")]
    NotInGamma0 {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        level: u64,
    },

    #[error("matrix has determinant {0}, expected 1")]
    BadDeterminant(i128),

    #[error("numeric period: {0}")]
    Convergence(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("zero lattice generator")]
    ZeroGenerator,

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// First point at which a verification harness found a disagreement.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Mismatch {
    /// Hecke prime or auxiliary parameter involved, if any.
    pub prime: Option<u64>,
    /// Coefficient index (or sample number) of the first failure.
    pub n: u64,
    pub expected: String,
    pub found: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.prime {
            Some(p) => write!(
                f,
                "mismatch at (l={p}, n={}): expected {}, found {}",
                self.n, self.expected, self.found
            ),
            None => write!(
                f,
                "mismatch at n={}: expected {}, found {}",
                self.n, self.expected, self.found
            ),
        }
    }
}
