//! Finite groups stored as dense operation tables.
//!
//! Elements are the indices `0..n`. Every constructor validates the group
//! axioms; associativity is checked exhaustively unless the table comes from a
//! trusted constructor and the order is above [`Limits::assoc_check_cap`].

mod morphism;
mod perm;
mod subgroup;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use morphism::{automorphism_group, find_isomorphism, is_homomorphism, is_isomorphic};
pub use perm::{
    closure_from_permutations, format_cycles, max_point, permutation_closure, PermutationClosure,
    PermutationGens,
};
pub use subgroup::{enumerate_subgroups, generated_subgroup, is_normal, SubgroupSet};

/// Index of an element inside its owning group, always `< order`.
pub type ElementIndex = usize;

/// A map between element sets, `map[x]` is the image of `x`.
pub type ElementMap = Vec<ElementIndex>;

/// Size limits for the exhaustive algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group handled by subgroup enumeration and brace construction.
    pub order_cap: usize,
    /// Largest group handled by automorphism and isomorphism search.
    pub aut_cap: usize,
    /// Trusted constructors skip the O(n^3) associativity check above this order.
    pub assoc_check_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: 2000,
            aut_cap: 200,
            assoc_check_cap: 1024,
        }
    }
}

impl Limits {
    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order_cap {
            return Err(Error::OrderCapExceeded {
                order,
                cap: self.order_cap,
            });
        }
        Ok(())
    }

    pub fn check_aut_order(&self, order: usize) -> Result<()> {
        if order > self.aut_cap {
            return Err(Error::OrderCapExceeded {
                order,
                cap: self.aut_cap,
            });
        }
        Ok(())
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: ElementIndex,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
    associativity_checked: bool,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("associativity_checked", &self.associativity_checked)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from an explicit `n x n` table, checking every axiom.
    pub fn from_table(rows: &[Vec<ElementIndex>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyGroup);
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: a,
                    len: row.len(),
                    expected: order,
                });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(Error::NotClosed { a, b, value, order });
                }
                table.push(value as u32);
            }
        }
        Self::validated(order, table, None, true)
    }

    /// Table produced by one of this crate's constructors. Associativity is
    /// only checked up to `assoc_cap`.
    pub(crate) fn from_trusted(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        assoc_cap: usize,
    ) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        Self::validated(order, table, labels, order <= assoc_cap)
    }

    fn validated(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        check_assoc: bool,
    ) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;

        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(Error::NoInverse { element: x })?;
            inverse[x] = y as u32;
        }

        if check_assoc {
            let witness = (0..order).into_par_iter().find_map_first(|a| {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
            if let Some((a, b, c)) = witness {
                return Err(Error::NotAssociative { a, b, c });
            }
        }

        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
            associativity_checked: check_assoc,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: ElementIndex) -> ElementIndex {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> ElementIndex {
        self.identity
    }

    pub fn row(&self, a: ElementIndex) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// False when the associativity check was skipped for a large trusted table.
    pub fn associativity_checked(&self) -> bool {
        self.associativity_checked
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: ElementIndex) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn to_table(&self) -> Vec<Vec<ElementIndex>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_element(&self, x: ElementIndex) -> Result<()> {
        if x >= self.order {
            return Err(Error::BadElement {
                element: x,
                order: self.order,
            });
        }
        Ok(())
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: ElementIndex, k: usize) -> ElementIndex {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: ElementIndex) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    /// Sorted multiset of element orders, used as a cheap isomorphism invariant.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut orders = self.element_orders();
        orders.sort_unstable();
        orders
    }
}

/// Cyclic group `Z/k` with `i * j = (i + j) mod k`.
pub fn cyclic_group(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::EmptyGroup);
    }
    let mut table = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            table.push(((i + j) % k) as u32);
        }
    }
    FiniteGroup::from_trusted(k, table, None, Limits::default().assoc_check_cap)
}

/// Direct product with `(g, h)` stored at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (n, m) = (g.order(), h.order());
    let order = n * m;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (xg, xh) = (x / m, x % m);
        for y in 0..order {
            let (yg, yh) = (y / m, y % m);
            table.push((g.mul(xg, yg) * m + h.mul(xh, yh)) as u32);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", g.label(x / m), h.label(x % m)))
        .collect();
    FiniteGroup::from_trusted(order, table, Some(labels), Limits::default().assoc_check_cap)
}

pub(crate) fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

/// `Z/m x| Z/n` with `(r, s)(r', s') = (r + b^s r', s + s')`, indexed `r * n + s`.
pub fn semidirect_product_cyclic(m: usize, n: usize, b: u64) -> Result<FiniteGroup> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGroup);
    }
    let (m64, n64) = (m as u64, n as u64);
    let is_unit = m == 1 || num_integer::gcd(b % m64, m64) == 1;
    if !is_unit || pow_mod(b, n64, m64) != 1 % m64 {
        return Err(Error::InvalidAction { m: m64, n: n64, b });
    }
    let powers: Vec<usize> = (0..n).map(|s| pow_mod(b, s as u64, m64) as usize).collect();
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (r, s) = (x / n, x % n);
        for y in 0..order {
            let (r2, s2) = (y / n, y % n);
            let rr = (r + powers[s] * r2) % m;
            table.push((rr * n + (s + s2) % n) as u32);
        }
    }
    let labels = (0..order).map(|x| format!("({},{})", x / n, x % n)).collect();
    FiniteGroup::from_trusted(order, table, Some(labels), Limits::default().assoc_check_cap)
}

/// Symmetric group on three points as permutations, convenient for tests.
pub fn symmetric_group_s3() -> FiniteGroup {
    let gens = PermutationGens::parse_cycles(3, &["(1 2)", "(1 2 3)"]).expect("valid cycles");
    closure_from_permutations(&gens, 6).expect("S3 closes")
}
