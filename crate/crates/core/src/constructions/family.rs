//! Squarefree families `Z/m ⋊_b Z/n` and their closed-form subgroup counts.
//!
//! Direction 1 is the brace with `∘ = +`: its stable subgroups are the
//! `+`-stable subgroups of `(G, ·)` and its ratio is taken over the subgroups
//! of `(G, +)`. Direction 2 is the brace with `∘ = ·`, ratio over the
//! subgroups of `(G, ·)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{enumerate_subgroups, pow_mod, Limits};

use super::semidirect::semidirect_biskew;

pub fn sigma(m: u64) -> u64 {
    (1..=m).filter(|d| m % d == 0).sum()
}

pub fn divisor_count(m: u64) -> u64 {
    (1..=m).filter(|d| m % d == 0).count() as u64
}

/// Prime factors with multiplicity, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        while m % d == 0 {
            out.push(d);
            m /= d;
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn is_squarefree(m: u64) -> bool {
    let f = prime_factors(m);
    f.windows(2).all(|w| w[0] != w[1])
}

/// Multiplicative order of `b` modulo `p`, assuming `gcd(b, p) = 1`.
fn mult_order(b: u64, p: u64) -> u64 {
    (1..=p).find(|&k| pow_mod(b, k, p) == 1 % p).unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Pq,
    ProductPq,
    GeneralizedDihedral,
    CustomSemidirect,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Pq => "pq",
            Family::ProductPq => "product_pq",
            Family::GeneralizedDihedral => "generalized_dihedral",
            Family::CustomSemidirect => "custom_semidirect",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pq" => Ok(Family::Pq),
            "product_pq" | "product" => Ok(Family::ProductPq),
            "generalized_dihedral" | "dihedral" => Ok(Family::GeneralizedDihedral),
            "custom_semidirect" | "custom" => Ok(Family::CustomSemidirect),
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

/// A validated `(m, n, b)` with `m`, `n` squarefree and coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    family: Family,
    m: u64,
    n: u64,
    b: u64,
    m_primes: Vec<u64>,
    n_primes: Vec<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, m: u64, n: u64, b: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        if m < 2 || n < 2 {
            return bad(format!("need m, n > 1, got m={m}, n={n}"));
        }
        if !is_squarefree(m) || !is_squarefree(n) {
            return bad(format!("m={m} and n={n} must be squarefree"));
        }
        if m.gcd(&n) != 1 {
            return bad(format!("m={m} and n={n} must be coprime"));
        }
        if b.gcd(&m) != 1 || pow_mod(b, n, m) != 1 {
            return bad(format!("b={b} is not a unit with b^{n} = 1 mod {m}"));
        }
        let m_primes = prime_factors(m);
        let n_primes = prime_factors(n);
        let orders: Vec<u64> = m_primes.iter().map(|&p| mult_order(b, p)).collect();
        match family {
            Family::Pq => {
                if m_primes.len() != 1 || n_primes.len() != 1 || orders[0] != n {
                    return bad(format!("pq needs primes q | p - 1 and b of order q mod p, got m={m}, n={n}, b={b}"));
                }
            }
            Family::ProductPq => {
                let mut sorted = orders.clone();
                sorted.sort_unstable();
                if sorted != n_primes {
                    return bad(format!(
                        "product_pq needs b to have a distinct prime order q_i modulo each p_i, covering n={n}; orders are {orders:?}"
                    ));
                }
            }
            Family::GeneralizedDihedral => {
                if orders.iter().any(|&o| o != n) {
                    return bad(format!(
                        "generalized_dihedral needs b of order {n} modulo every prime of m; orders are {orders:?}"
                    ));
                }
            }
            Family::CustomSemidirect => {}
        }
        Ok(FamilySpec {
            family,
            m,
            n,
            b,
            m_primes,
            n_primes,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Number of primes dividing `m`.
    pub fn g(&self) -> u32 {
        self.m_primes.len() as u32
    }

    /// Number of primes dividing `n`.
    pub fn h(&self) -> u32 {
        self.n_primes.len() as u32
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    /// Closed-form predictions. `None` where the family has no formula.
    pub fn predicted(&self) -> Counts {
        let (g, h) = (self.g(), self.h());
        let n_sub_add = 1u64 << (g + h);
        match self.family {
            Family::Pq => {
                let p = self.m;
                Counts {
                    n_sub_add: Some(4),
                    n_sub_mult: Some(p + 3),
                    n_stable_dir1: Some(3),
                    n_stable_dir2: Some(4),
                }
            }
            Family::ProductPq => Counts {
                n_sub_add: Some(4u64.pow(g)),
                n_sub_mult: Some(self.m_primes.iter().map(|p| p + 3).product()),
                n_stable_dir1: Some(3u64.pow(g)),
                n_stable_dir2: Some(4u64.pow(g)),
            },
            Family::GeneralizedDihedral => Counts {
                n_sub_add: Some(n_sub_add),
                n_sub_mult: Some((1 << g) + ((1 << h) - 1) * sigma(self.m)),
                n_stable_dir1: Some((1 << h) + (1 << g) - 1),
                n_stable_dir2: Some(n_sub_add),
            },
            Family::CustomSemidirect => {
                // <(r, 0), (0, s)> with r | m, s | n is +-stable iff r | b^s - 1
                let m_divs: Vec<u64> = (1..=self.m).filter(|d| self.m % d == 0).collect();
                let n_divs: Vec<u64> = (1..=self.n).filter(|d| self.n % d == 0).collect();
                let stable = m_divs
                    .iter()
                    .flat_map(|&r| n_divs.iter().map(move |&s| (r, s)))
                    .filter(|&(r, s)| (pow_mod(self.b, s % self.n, self.m) + self.m - 1) % self.m % r == 0)
                    .count() as u64;
                Counts {
                    n_sub_add: Some(n_sub_add),
                    n_sub_mult: None,
                    n_stable_dir1: Some(stable),
                    n_stable_dir2: Some(n_sub_add),
                }
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m={} n={} b={}", self.family, self.m, self.n, self.b)
    }
}

/// The four counts that determine both ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub n_sub_add: Option<u64>,
    pub n_sub_mult: Option<u64>,
    /// `+`-stable subgroups of `(G, ·)`.
    pub n_stable_dir1: Option<u64>,
    /// `·`-stable subgroups of `(G, +)`.
    pub n_stable_dir2: Option<u64>,
}

impl Counts {
    pub fn entries(&self) -> [(&'static str, Option<u64>); 4] {
        [
            ("n_sub_add", self.n_sub_add),
            ("n_sub_mult", self.n_sub_mult),
            ("n_stable_dir1", self.n_stable_dir1),
            ("n_stable_dir2", self.n_stable_dir2),
        ]
    }

    /// `n_stable_dir1 / n_sub_add`, unreduced.
    pub fn ratio1(&self) -> Option<(u64, u64)> {
        Some((self.n_stable_dir1?, self.n_sub_add?))
    }

    /// `n_stable_dir2 / n_sub_mult`, unreduced.
    pub fn ratio2(&self) -> Option<(u64, u64)> {
        Some((self.n_stable_dir2?, self.n_sub_mult?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaReport {
    pub spec: FamilySpec,
    pub predicted: Counts,
    /// `None` when the group was too large to enumerate.
    pub enumerated: Option<Counts>,
    /// For the generalized dihedral family, `ratio2 ≤ 2 (2/3)^g` on the
    /// enumerated values.
    pub bound_holds: Option<bool>,
}

impl FormulaReport {
    pub fn verified(&self) -> bool {
        self.enumerated.is_some()
    }

    /// Per entry: `Some(predicted == enumerated)` when both are known.
    pub fn matches(&self) -> Vec<(&'static str, Option<bool>)> {
        let enumerated = self.enumerated.unwrap_or_default();
        self.predicted
            .entries()
            .iter()
            .zip(enumerated.entries())
            .map(|(&(name, p), (_, e))| (name, p.zip(e).map(|(p, e)| p == e)))
            .collect()
    }

    /// Enumerated, and every available prediction and bound confirmed.
    pub fn all_match(&self) -> bool {
        self.verified()
            && self.matches().iter().all(|(_, m)| m.unwrap_or(true))
            && self.bound_holds.unwrap_or(true)
    }
}

/// Enumerates both braces of the spec and compares with the closed forms.
/// A cap error is not fatal: the report then holds predictions only.
pub fn family_formula_report(spec: &FamilySpec, limits: &Limits) -> Result<FormulaReport> {
    let predicted = spec.predicted();
    let enumerated = match enumerate_counts(spec, limits) {
        Ok(c) => Some(c),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e),
    };
    let bound_holds = match (spec.family, enumerated.and_then(|c| c.ratio2())) {
        (Family::GeneralizedDihedral, Some((num, den))) => {
            // num / den ≤ 2 (2/3)^g
            let g = spec.g();
            Some(num as u128 * 3u128.pow(g) <= 2 * 2u128.pow(g) * den as u128)
        }
        _ => None,
    };
    Ok(FormulaReport {
        spec: spec.clone(),
        predicted,
        enumerated,
        bound_holds,
    })
}

fn enumerate_counts(spec: &FamilySpec, limits: &Limits) -> Result<Counts> {
    limits.check_order(spec.order() as usize)?;
    let pair = semidirect_biskew(spec.m as usize, spec.n as usize, spec.b)?;
    let add_subs = enumerate_subgroups(pair.additive(), limits)?;
    let mult_subs = enumerate_subgroups(pair.multiplicative(), limits)?;
    let dir1 = pair.add_galois.stable_subgroups(limits)?;
    let dir2 = pair.mult_galois.stable_subgroups(limits)?;
    Ok(Counts {
        n_sub_add: Some(add_subs.len() as u64),
        n_sub_mult: Some(mult_subs.len() as u64),
        n_stable_dir1: Some(dir1.len() as u64),
        n_stable_dir2: Some(dir2.len() as u64),
    })
}

/// Every subgroup of `(G, +)` is `·`-stable.
pub fn additive_subgroups_mult_stable(spec: &FamilySpec, limits: &Limits) -> Result<bool> {
    limits.check_order(spec.order() as usize)?;
    let pair = semidirect_biskew(spec.m as usize, spec.n as usize, spec.b)?;
    let subs = enumerate_subgroups(pair.additive(), limits)?;
    for h in &subs {
        if !pair.mult_galois.is_circ_stable(h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
