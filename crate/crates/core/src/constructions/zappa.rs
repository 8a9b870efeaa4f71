use crate::brace::{Provenance, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{
    generated_subgroup, permutation_closure, ElementIndex, FiniteGroup, PermutationGens,
    SubgroupSet,
};

/// `G = G_L G_R` with `G_L ∩ G_R = {e}`, every element stored as the unique
/// pair `(g_L, g_R)` with `g = g_L g_R⁻¹`.
#[derive(Debug, Clone)]
pub struct ExactFactorization {
    parent: FiniteGroup,
    left: SubgroupSet,
    right: SubgroupSet,
    decomp: Vec<(ElementIndex, ElementIndex)>,
}

impl ExactFactorization {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn left(&self) -> &SubgroupSet {
        &self.left
    }

    pub fn right(&self) -> &SubgroupSet {
        &self.right
    }

    /// `(g_L, g_R)` with `g = g_L g_R⁻¹`.
    pub fn decompose(&self, g: ElementIndex) -> (ElementIndex, ElementIndex) {
        self.decomp[g]
    }

    /// `H` is normalized by every element of `G_L`.
    pub fn normalized_by_left(&self, h: &SubgroupSet) -> bool {
        let g = &self.parent;
        let gens = h.generators(g);
        self.left.iter().all(|x| {
            let xi = g.inv(x);
            gens.iter().all(|&y| h.contains(g.mul(g.mul(x, y), xi)))
        })
    }
}

/// Checks that the subgroups generated by the two seeds are complementary
/// and tabulates the decomposition of every element.
pub fn exact_factorization(
    g: &FiniteGroup,
    left_seed: &[ElementIndex],
    right_seed: &[ElementIndex],
) -> Result<ExactFactorization> {
    let left = generated_subgroup(g, left_seed)?;
    let right = generated_subgroup(g, right_seed)?;
    let meet = left.iter().filter(|&x| right.contains(x)).count();
    if left.size() * right.size() != g.order() || meet != 1 {
        return Err(Error::NotComplementary {
            left: left.size(),
            right: right.size(),
            order: g.order(),
            meet,
        });
    }
    const UNSET: usize = usize::MAX;
    let mut decomp = vec![(UNSET, UNSET); g.order()];
    for l in left.iter() {
        for r in right.iter() {
            let x = g.mul(l, g.inv(r));
            if decomp[x].0 != UNSET {
                return Err(Error::NotExhaustive);
            }
            decomp[x] = (l, r);
        }
    }
    if decomp.iter().any(|&(l, _)| l == UNSET) {
        return Err(Error::NotExhaustive);
    }
    Ok(ExactFactorization {
        parent: g.clone(),
        left,
        right,
        decomp,
    })
}

/// `⋆` is the parent operation and `g_L g_R⁻¹ ∘ h = g_L h g_R⁻¹`, so that
/// `(G, ∘) ≅ G_L × G_R`.
pub fn zappa_szep_brace(f: &ExactFactorization) -> Result<SkewBrace> {
    let g = &f.parent;
    let n = g.order();
    let mut rows = Vec::with_capacity(n);
    for x in 0..n {
        let (l, r) = f.decomp[x];
        let r_inv = g.inv(r);
        rows.push((0..n).map(|h| g.mul(g.mul(l, h), r_inv)).collect::<Vec<_>>());
    }
    let mut circ = FiniteGroup::from_table(&rows)?;
    if let Some(labels) = g.labels() {
        circ = circ.with_labels(labels.to_vec());
    }
    SkewBrace::new(g.clone(), circ, Provenance::ZappaSzep)
}

/// `(∘-stable in the brace, normalized by G_L)`; the two always agree.
pub fn stable_iff_normalized_check(
    f: &ExactFactorization,
    brace: &SkewBrace,
    h: &SubgroupSet,
) -> Result<(bool, bool)> {
    if brace.star() != f.parent() {
        return Err(Error::WrongParent);
    }
    Ok((brace.is_circ_stable(h)?, f.normalized_by_left(h)))
}

/// `A₅ = C₅ · A₄` with `C₅ = ⟨(1 2 3 4 5)⟩` and `A₄` the stabilizer of 5.
pub fn a5_factorization() -> Result<ExactFactorization> {
    let gens = PermutationGens::parse_cycles(5, &["(1 2 3 4 5)", "(1 2 3)"])?;
    let closure = permutation_closure(&gens, 60)?;
    let sigma = closure
        .index_of(&gens.generators()[0])
        .expect("generator lies in its closure");
    let stabilizer = closure.stabilizer(4);
    exact_factorization(&closure.group, &[sigma], &stabilizer)
}
