//! Skew braces: two group tables on one index set satisfying
//! `a ∘ (b ⋆ c) = (a ∘ b) ⋆ a⁻¹ ⋆ (a ∘ c)`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, enumerate_subgroups, is_homomorphism, is_normal, ElementIndex,
    ElementMap, FiniteGroup, Limits, SubgroupSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Radical,
    ZappaSzep,
    Semidirect,
    Raw,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Radical => "radical",
            Provenance::ZappaSzep => "zappa_szep",
            Provenance::Semidirect => "semidirect",
            Provenance::Raw => "raw",
        })
    }
}

/// A validated skew brace `(B, ∘, ⋆)` with additive group `(B, ⋆)`.
#[derive(Debug, Clone)]
pub struct SkewBrace {
    star: FiniteGroup,
    circ: FiniteGroup,
    provenance: Provenance,
}

/// First triple violating `a ∘ (b ⋆ c) = (a ∘ b) ⋆ a⁻¹ ⋆ (a ∘ c)`, scanning
/// `a` then `b` then `c` in increasing order.
fn brace_law_witness(
    star: &FiniteGroup,
    circ: &FiniteGroup,
) -> Option<(ElementIndex, ElementIndex, ElementIndex)> {
    let n = star.order();
    (0..n).into_par_iter().find_map_first(|a| {
        let a_inv = star.inv(a);
        let circ_row = circ.row(a);
        for b in 0..n {
            let left_b = star.mul(circ_row[b] as usize, a_inv);
            let star_row = star.row(b);
            for c in 0..n {
                let lhs = circ_row[star_row[c] as usize] as usize;
                let rhs = star.mul(left_b, circ_row[c] as usize);
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
        None
    })
}

impl SkewBrace {
    /// Validates the brace law over all `n³` triples.
    pub fn new(star: FiniteGroup, circ: FiniteGroup, provenance: Provenance) -> Result<Self> {
        if star.order() != circ.order() {
            return Err(Error::OrderMismatch {
                star: star.order(),
                circ: circ.order(),
            });
        }
        if star.identity() != circ.identity() {
            return Err(Error::IdentityMismatch {
                star: star.identity(),
                circ: circ.identity(),
            });
        }
        if let Some((a, b, c)) = brace_law_witness(&star, &circ) {
            return Err(Error::BraceLawViolation { a, b, c });
        }
        Ok(SkewBrace {
            star,
            circ,
            provenance,
        })
    }

    pub fn order(&self) -> usize {
        self.star.order()
    }

    /// The additive group `(B, ⋆)`.
    pub fn star(&self) -> &FiniteGroup {
        &self.star
    }

    /// The multiplicative group `(B, ∘)`.
    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// True iff `a ⋆ (b ∘ c) = (a ⋆ b) ∘ ā ∘ (a ⋆ c)` also holds.
    pub fn is_bi_skew(&self) -> bool {
        brace_law_witness(&self.circ, &self.star).is_none()
    }

    /// The brace with the roles of the two operations exchanged, if it is one.
    pub fn swapped(&self) -> Result<SkewBrace> {
        SkewBrace::new(self.circ.clone(), self.star.clone(), self.provenance)
    }

    /// `ρ_g(x) = (g ∘ x) ⋆ g⁻¹`, an automorphism of `(B, ⋆)`.
    pub fn rho(&self, g: ElementIndex) -> ElementMap {
        let g_inv = self.star.inv(g);
        (0..self.order())
            .map(|x| self.star.mul(self.circ.mul(g, x), g_inv))
            .collect()
    }

    /// `ρ_g(H) ⊆ H` for every `g`.
    pub fn is_circ_stable(&self, h: &SubgroupSet) -> Result<bool> {
        if !h.is_subgroup_of(&self.star) {
            return Err(Error::NotAStarSubgroup);
        }
        Ok(self.stable_unchecked(h))
    }

    fn stable_unchecked(&self, h: &SubgroupSet) -> bool {
        // ρ_g is a ⋆-automorphism, so generators of H suffice
        let gens = h.generators(&self.star);
        (0..self.order()).all(|g| {
            let g_inv = self.star.inv(g);
            gens.iter()
                .all(|&x| h.contains(self.star.mul(self.circ.mul(g, x), g_inv)))
        })
    }

    /// All ∘-stable subgroups of `(B, ⋆)` in canonical order.
    pub fn stable_subgroups(&self, limits: &Limits) -> Result<Vec<SubgroupSet>> {
        let subs = enumerate_subgroups(&self.star, limits)?;
        Ok(self.filter_stable(subs))
    }

    fn filter_stable(&self, subs: Vec<SubgroupSet>) -> Vec<SubgroupSet> {
        let stable: Vec<SubgroupSet> = subs
            .into_par_iter()
            .filter(|h| self.stable_unchecked(h))
            .collect();
        for h in &stable {
            assert!(
                h.is_subgroup_of(&self.circ),
                "stable subgroup is not closed under the circle operation"
            );
        }
        stable
    }

    /// A ∘-stable subgroup that is also normal in `(B, ∘)`.
    pub fn is_ideal(&self, h: &SubgroupSet) -> Result<bool> {
        if !self.is_circ_stable(h)? {
            return Err(Error::NotStable);
        }
        Ok(is_normal(&self.circ, h))
    }

    /// Stable subgroups of `(B, ⋆)` over subgroups of `(B, ∘)`.
    pub fn gc_ratio(&self, limits: &Limits) -> Result<GcRatio> {
        let (stable, circ_subs) = rayon::join(
            || self.stable_subgroups(limits),
            || enumerate_subgroups(&self.circ, limits),
        );
        Ok(GcRatio::new(stable?, circ_subs?.len()))
    }

    /// Number of maps that are automorphisms of both `(B, ⋆)` and `(B, ∘)`.
    pub fn automorphism_count(&self, limits: &Limits) -> Result<usize> {
        let auts = automorphism_group(&self.star, limits)?;
        Ok(auts
            .par_iter()
            .filter(|phi| is_homomorphism(phi, &self.circ, &self.circ))
            .count())
    }

    /// `|Aut(B, ∘)| / |Aut_sb(B, ∘, ⋆)|`.
    pub fn hgs_count(&self, limits: &Limits) -> Result<usize> {
        let circ_auts = automorphism_group(&self.circ, limits)?.len();
        let brace_auts = self.automorphism_count(limits)?;
        if brace_auts == 0 || circ_auts % brace_auts != 0 {
            return Err(Error::NonIntegralQuotient {
                numerator: circ_auts,
                denominator: brace_auts,
            });
        }
        Ok(circ_auts / brace_auts)
    }
}

/// Validates two raw tables as a skew brace with `star` additive.
pub fn validate_skew_brace(
    star_table: &[Vec<ElementIndex>],
    circ_table: &[Vec<ElementIndex>],
) -> Result<SkewBrace> {
    let star = FiniteGroup::from_table(star_table)?;
    let circ = FiniteGroup::from_table(circ_table)?;
    SkewBrace::new(star, circ, Provenance::Raw)
}

/// The λ(G) brace, both operations equal to the operation of `g`.
pub fn trivial_brace(g: &FiniteGroup) -> SkewBrace {
    SkewBrace::new(g.clone(), g.clone(), Provenance::Raw).expect("⋆ = ∘ is always a brace")
}

/// Galois correspondence ratio, kept unreduced.
#[derive(Debug, Clone, PartialEq)]
pub struct GcRatio {
    pub numerator: usize,
    pub denominator: usize,
    pub stable: Vec<SubgroupSet>,
}

impl GcRatio {
    pub fn new(stable: Vec<SubgroupSet>, denominator: usize) -> Self {
        GcRatio {
            numerator: stable.len(),
            denominator,
            stable,
        }
    }

    /// Lowest terms.
    pub fn reduced(&self) -> (usize, usize) {
        let g = self.numerator.gcd(&self.denominator).max(1);
        (self.numerator / g, self.denominator / g)
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn unreduced(&self) -> (usize, usize) {
        (self.numerator, self.denominator)
    }
}

impl fmt::Display for GcRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
