use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::SubgroupSet;

use super::{encode, FpVector};

/// A subspace of `F_p^dim` held as its unique reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let (mut result, mut base, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn pivot(row: &[u32]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// `target -= factor * row` over F_p.
fn axpy(target: &mut [u32], factor: u32, row: &[u32], p: u32) {
    if factor == 0 {
        return;
    }
    let p64 = p as u64;
    for (t, &r) in target.iter_mut().zip(row) {
        *t = ((*t as u64 + (p64 - factor as u64) * r as u64) % p64) as u32;
    }
}

impl SubspaceBasis {
    pub fn zero(p: u32, dim: usize) -> Self {
        SubspaceBasis {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    /// Row reduces `vectors` into the canonical echelon basis of their span.
    pub fn span(p: u32, dim: usize, vectors: &[Vec<u32>]) -> Self {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for v in vectors {
            let mut v: Vec<u32> = v.iter().map(|&x| x % p).collect();
            for r in &rows {
                let c = pivot(r).expect("echelon rows are nonzero");
                let f = v[c];
                axpy(&mut v, f, r, p);
            }
            if let Some(c) = pivot(&v) {
                let s = inv_mod(v[c], p);
                for x in v.iter_mut() {
                    *x = (*x as u64 * s as u64 % p as u64) as u32;
                }
                for r in rows.iter_mut() {
                    let f = r[c];
                    axpy(r, f, &v, p);
                }
                rows.push(v);
            }
        }
        rows.sort_by_key(|r| pivot(r));
        SubspaceBasis { p, dim, rows }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Pivot columns, 0-indexed.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().filter_map(|r| pivot(r)).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut v: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for r in &self.rows {
            let c = pivot(r).expect("echelon rows are nonzero");
            let f = v[c];
            axpy(&mut v, f, r, self.p);
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_vector(&self, v: &FpVector) -> bool {
        self.contains(v.coords())
    }

    /// Every vector of the subspace, in no particular order.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.dim]];
        for r in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for k in 0..self.p {
                    let mut w = v.clone();
                    for (x, &y) in w.iter_mut().zip(r) {
                        *x = ((*x as u64 + k as u64 * y as u64) % self.p as u64) as u32;
                    }
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// The subspace as a subgroup of the additive group, using the base-p
    /// element encoding.
    pub fn to_subgroup(&self) -> SubgroupSet {
        let order = (self.p as usize).pow(self.dim as u32);
        let mut bits = FixedBitSet::with_capacity(order);
        for v in self.vectors() {
            bits.insert(encode(self.p, &v));
        }
        SubgroupSet::from_bits(bits)
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// All subspaces of `F_p^dim`, ordered by rank, then pivot pattern, then
/// the free echelon entries read as a base-p counter.
pub fn enumerate_subspaces(p: u32, dim: usize, budget: usize) -> Result<Vec<SubspaceBasis>> {
    let size = (p as usize).saturating_pow(dim as u32);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut out = Vec::new();
    for rank in 0..=dim {
        for pivots in combinations(dim, rank) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| {
                    let pivots = &pivots;
                    (c + 1..dim)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let mut counter = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![0u32; dim]; rank];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for (&(i, j), &v) in free.iter().zip(&counter) {
                    rows[i][j] = v;
                }
                out.push(SubspaceBasis { p, dim, rows });
                // advance the counter, last position fastest
                let mut done = true;
                for k in (0..counter.len()).rev() {
                    counter[k] += 1;
                    if counter[k] < p {
                        done = false;
                        break;
                    }
                    counter[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of subspaces of F_p^d via the Gaussian binomial sum.
    fn gaussian_total(p: u64, d: u32) -> u64 {
        (0..=d)
            .map(|k| {
                let mut num = 1u64;
                let mut den = 1u64;
                for i in 0..k {
                    num *= p.pow(d - i) - 1;
                    den *= p.pow(i + 1) - 1;
                }
                num / den
            })
            .sum()
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for (p, d) in [(2, 1), (3, 1), (3, 2), (2, 3), (3, 3), (3, 4), (5, 4), (7, 4), (2, 5)] {
            let n = enumerate_subspaces(p, d, 1 << 20).unwrap().len() as u64;
            assert_eq!(n, gaussian_total(p as u64, d as u32), "p={p} d={d}");
        }
        assert_eq!(enumerate_subspaces(3, 2, 100).unwrap().len(), 6);
        assert_eq!(
            enumerate_subspaces(3, 4, 50).unwrap_err(),
            Error::BudgetExceeded { size: 81, budget: 50 }
        );
    }

    #[test]
    fn enumerated_bases_are_canonical_and_distinct() {
        let all = enumerate_subspaces(3, 3, 1000).unwrap();
        for s in &all {
            assert_eq!(&SubspaceBasis::span(3, 3, s.rows()), s);
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn span_and_membership() {
        let s = SubspaceBasis::span(5, 3, &[vec![2, 4, 0], vec![1, 2, 1]]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.pivots(), vec![0, 2]);
        assert!(s.contains(&[3, 1, 4]));
        assert!(!s.contains(&[0, 1, 0]));
        assert_eq!(s.vectors().len(), 25);
        assert_eq!(s.to_subgroup().size(), 25);
    }
}
