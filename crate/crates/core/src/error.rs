use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("word is not in the derived subgroup (exponent sums {ex}, {ey})")]
    NotInDerivedSubgroup { ex: i64, ey: i64 },

    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("point violates the conic a(s-a)-b(u+b-at)=1 (residual {residual:e})")]
    ConicViolation { residual: f64 },

    #[error("traces differ: {left} vs {right}")]
    TraceMismatch { left: String, right: String },

    #[error("trace {trace} is parabolic or central (tr^2 = 4)")]
    ParabolicTrace { trace: String },

    #[error("pair has reducible trace coordinates (|J| = {j_abs:e}); quotient map undefined")]
    ReduciblePair { j_abs: f64 },

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{context}: residual {residual:e} exceeds {bound:e}")]
    Residual {
        context: String,
        residual: f64,
        bound: f64,
    },

    #[error("identity check failed: {0}")]
    IdentityViolation(String),
}

impl Error {
    /// True for violations of a mathematical precondition (as opposed to
    /// malformed input or an internal inconsistency).
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse { .. } | Error::IdentityViolation(_) | Error::Residual { .. }
        )
    }

    /// Process exit code: 2 for malformed input, 1 for a failed numeric or
    /// identity check, 3 for a violated precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Residual { .. } | Error::IdentityViolation(_) => 1,
            _ => 3,
        }
    }
}
