//! Braces from exact factorizations and semidirect products, and the
//! closed-form counts for squarefree semidirect families.

mod family;
mod semidirect;
mod zappa;

pub use family::{
    divisor_count, family_formula_report, prime_factors, additive_subgroups_mult_stable, sigma, Counts, Family,
    FamilySpec, FormulaReport,
};
pub use semidirect::{semidirect_biskew, stability_criterion_z9z6, SemidirectPair, Z9Z6Direction};
pub use zappa::{
    a5_factorization, exact_factorization, stable_iff_normalized_check, zappa_szep_brace,
    ExactFactorization,
};
