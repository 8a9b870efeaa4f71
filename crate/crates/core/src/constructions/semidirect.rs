use crate::brace::{Provenance, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{
    cyclic_group, direct_product, pow_mod, semidirect_product_cyclic, FiniteGroup, SubgroupSet,
};

/// The two braces on `Z/m × Z/n` from `(G, +)` and `(G, ·) = Z/m ⋊_b Z/n`,
/// both indexed by `r * n + s`.
#[derive(Debug, Clone)]
pub struct SemidirectPair {
    pub m: usize,
    pub n: usize,
    pub b: u64,
    /// `⋆ = +`, `∘ = ·`: its stable subgroups are the `·`-stable subgroups
    /// of `(G, +)`.
    pub mult_galois: SkewBrace,
    /// `⋆ = ·`, `∘ = +`: its stable subgroups are the `+`-stable subgroups
    /// of `(G, ·)`.
    pub add_galois: SkewBrace,
}

impl SemidirectPair {
    pub fn additive(&self) -> &FiniteGroup {
        self.mult_galois.star()
    }

    pub fn multiplicative(&self) -> &FiniteGroup {
        self.add_galois.star()
    }

    pub fn index(&self, r: usize, s: usize) -> usize {
        (r % self.m) * self.n + s % self.n
    }

    pub fn pair(&self, x: usize) -> (usize, usize) {
        (x / self.n, x % self.n)
    }
}

/// Builds both braces of the bi-skew brace `(G, ·, +)`.
pub fn semidirect_biskew(m: usize, n: usize, b: u64) -> Result<SemidirectPair> {
    let mult = semidirect_product_cyclic(m, n, b)?;
    let add = direct_product(&cyclic_group(m)?, &cyclic_group(n)?)?;
    let labels: Vec<String> = (0..m * n).map(|x| format!("({},{})", x / n, x % n)).collect();
    let add = add.with_labels(labels);
    let mult_galois = SkewBrace::new(add.clone(), mult.clone(), Provenance::Semidirect)?;
    let add_galois = SkewBrace::new(mult, add, Provenance::Semidirect)?;
    Ok(SemidirectPair {
        m,
        n,
        b,
        mult_galois,
        add_galois,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z9Z6Direction {
    /// `·`-stable subgroups of `(G, +)`.
    Mult,
    /// `+`-stable subgroups of `(G, ·)`.
    Add,
}

/// Closed-form stability tests for `Z/9 ⋊_2 Z/6`:
/// `·`-stable iff `(r, s) ∈ H ⇒ (r, 0) ∈ H`, and
/// `+`-stable iff `(r, s) ∈ H ⇒ (2^s - 1, 0) ∈ H`.
pub fn stability_criterion_z9z6(
    pair: &SemidirectPair,
    h: &SubgroupSet,
    direction: Z9Z6Direction,
) -> Result<bool> {
    if (pair.m, pair.n, pair.b % 9) != (9, 6, 2) || h.parent_order() != 54 {
        return Err(Error::WrongParent);
    }
    Ok(h.iter().all(|x| {
        let (r, s) = pair.pair(x);
        let needed = match direction {
            Z9Z6Direction::Mult => r,
            Z9Z6Direction::Add => (pow_mod(2, s as u64, 9) as usize + 8) % 9,
        };
        h.contains(pair.index(needed, 0))
    }))
}
