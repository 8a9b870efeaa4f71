use thiserror::Error;

use crate::group::ElementIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({a}, {b}) = {value} is outside 0..{order}")]
    NotClosed { a: usize, b: usize, value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: ElementIndex },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: ElementIndex, b: ElementIndex, c: ElementIndex },
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("invalid action: {b}^{n} is not 1 modulo {m}, or {b} is not a unit")]
    InvalidAction { m: u64, n: u64, b: u64 },
    #[error("generated group exceeds the closure cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("permutation error: {0}")]
    BadPermutation(String),
    #[error("element {element} is outside 0..{order}")]
    BadElement { element: usize, order: usize },

    #[error("the two operations have different identities ({star} vs {circ})")]
    IdentityMismatch { star: ElementIndex, circ: ElementIndex },
    #[error("tables have different orders ({star} vs {circ})")]
    OrderMismatch { star: usize, circ: usize },
    #[error("brace law fails at (a, b, c) = ({a}, {b}, {c})")]
    BraceLawViolation { a: ElementIndex, b: ElementIndex, c: ElementIndex },
    #[error("subset is not a subgroup of the additive group")]
    NotAStarSubgroup,
    #[error("subgroup is not stable")]
    NotStable,
    #[error("automorphism counts {numerator} / {denominator} do not divide")]
    NonIntegralQuotient { numerator: usize, denominator: usize },

    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constants are not associative on basis ({i}, {j}, {k})")]
    AlgebraNotAssociative { i: usize, j: usize, k: usize },
    #[error("algebra is not nilpotent: powers stabilise at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("algebra needs A^3 = 0 for the flipped brace, nilpotency index is {index}")]
    NilpotencyTooDeep { index: usize },
    #[error("enumeration of {size} elements exceeds the budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),

    #[error("subgroups are not complementary: |L|={left}, |R|={right}, |G|={order}, |L∩R|={meet}")]
    NotComplementary { left: usize, right: usize, order: usize, meet: usize },
    #[error("product map G_L x G_R -> G is not bijective")]
    NotExhaustive,
    #[error("invalid family spec: {0}")]
    InvalidFamily(String),
    #[error("criterion only applies to the (9, 6, 2) semidirect example")]
    WrongParent,
}

impl Error {
    /// True for errors that come from a size cap rather than invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. }
                | Error::OrderCapExceeded { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}
