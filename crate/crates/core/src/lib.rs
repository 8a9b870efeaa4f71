//! Finite skew braces built from radical algebras, exact factorizations and
//! semidirect products, with exhaustive enumeration of stable subgroups and
//! Galois correspondence ratios.

pub mod brace;
pub mod constructions;
pub mod error;
pub mod group;
pub mod radical;

pub use brace::{validate_skew_brace, GcRatio, Provenance, SkewBrace};
pub use error::{Error, Result};
pub use group::{ElementIndex, FiniteGroup, Limits, SubgroupSet};
pub use radical::{degraaf_algebra, FpAlgebra, FpVector, SubspaceBasis};
