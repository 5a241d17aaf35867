use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variants that indicate a broken internal invariant (for example
/// [`Error::LiftDiverged`] or [`Error::IdentityViolated`]) are fatal: they are
/// never expected on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("no built-in modulus for GF({p}^{e}); supply one explicitly")]
    NoBuiltinModulus { p: u32, e: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field GF({p}^{e}) is too large for the dense element encoding")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap {cap} (enumerated {reached} elements)")]
    OrderExceedsCap { reached: usize, cap: usize },
    #[error("generator {0} is not an element of the ambient group")]
    NotASubgroupElement(String),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error(
        "field does not split a simple module of dimension {dim}: End(S) has dimension {degree}; \
         extend the field by degree {degree}"
    )]
    FieldNotSplitting { dim: usize, degree: usize },
    #[error("MeatAxe gave up on a module of dimension {dim} after {attempts} random elements")]
    MeatAxeExhausted { dim: usize, attempts: usize },
    #[error("idempotent lifting did not converge within {0} steps")]
    LiftDiverged(usize),
    #[error("projective cover construction failed: {0}")]
    LiftFailed(String),
    #[error("algebra is not symmetric (certified: {certified})")]
    NotSymmetric { certified: bool },
    #[error("negative projective multiplicity: {0}")]
    NegativeMultiplicity(String),
    #[error("tensor relation space is not stable under the right action")]
    RelationNotStable,
    #[error("identity {which} violated: {lhs} != {rhs}")]
    IdentityViolated { which: String, lhs: i64, rhs: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
