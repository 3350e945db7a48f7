//! Shared error type for the whole crate.

use thiserror::Error;

/// Everything that can go wrong while building fields, codes, or schedules.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested characteristic is not a prime number.
    #[error("not prime: {0}")]
    NotPrime(u64),
    /// The requested field order does not fit the u64-encoding budget.
    #[error("field too large: {p}^{k} exceeds 2^32")]
    FieldTooLarge { p: u64, k: u32 },
    /// Arithmetic was attempted between elements of different fields.
    #[error("mixed fields: operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    /// A subfield/extension relation was required but the degrees do not divide.
    #[error("degree {sub} does not divide degree {sup}")]
    NotASubfield { sub: u32, sup: u32 },
    /// The provided elements do not form a basis over the prime field.
    #[error("not a basis")]
    NotABasis,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// A subspace expected to be stable under the Frobenius map is not.
    #[error("not Galois-stable")]
    NotGaloisStable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// No place of degree two exists on the curve (or none was found).
    #[error("no degree-2 place")]
    NoDegreeTwoPlace,
    /// The divisor support intersects the evaluation set.
    #[error("supp G meets D")]
    SupportMeetsEvaluation,
    /// CSS assembly requires the first code to sit inside the second.
    #[error("C1 is not contained in C2")]
    NotNested,
    /// An enumeration would exceed the operation budget; use the search path.
    #[error("budget exceeded ({needed} > {budget}): use search")]
    BudgetExceeded { needed: u128, budget: u128 },
    /// The asymptotic rate window is empty for the requested parameters.
    #[error("no positive-rate window: {0}")]
    EmptyWindow(String),
    /// A function was evaluated at one of its poles.
    #[error("evaluation at a pole")]
    PoleAtEvaluation,
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal consistency check failed; this is a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
