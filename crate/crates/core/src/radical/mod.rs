//! Finite nilpotent algebras over `F_p` given by structure constants, their
//! circle groups `x ∘ y = x + y + xy`, and the braces they define.
//!
//! Elements of `F_p^d` are encoded as group indices by `Σ x_i p^i`, so the
//! additive group, the circle group and every subspace share one index set.

mod subspace;

use crate::brace::{Provenance, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};

pub use subspace::{enumerate_subspaces, SubspaceBasis};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn encode(p: u32, coords: &[u32]) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub(crate) fn decode(p: u32, dim: usize, mut index: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(dim);
    for _ in 0..dim {
        out.push((index % p as usize) as u32);
        index /= p as usize;
    }
    out
}

/// A vector of residues modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    coords: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, coords: Vec<u32>) -> Self {
        let coords = coords.into_iter().map(|x| x % p).collect();
        FpVector { p, coords }
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        FpVector {
            p,
            coords: vec![0; dim],
        }
    }

    pub fn basis(p: u32, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(p, dim);
        v.coords[i] = 1;
        v
    }

    pub fn from_index(p: u32, dim: usize, index: usize) -> Self {
        FpVector {
            p,
            coords: decode(p, dim, index),
        }
    }

    pub fn index(&self) -> usize {
        encode(self.p, &self.coords)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let p = self.p;
        FpVector {
            p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn neg(&self) -> FpVector {
        let p = self.p;
        FpVector {
            p,
            coords: self.coords.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn scale(&self, k: u64) -> FpVector {
        let p = self.p as u64;
        FpVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .map(|&a| (a as u64 * (k % p) % p) as u32)
                .collect(),
        }
    }
}

/// A finite-dimensional associative nilpotent algebra over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlgebra {
    p: u32,
    dim: usize,
    /// `sc[i * dim + j]` is the product `e_i e_j`.
    sc: Vec<Vec<u32>>,
    labels: Vec<String>,
    nilpotency_index: usize,
}

impl FpAlgebra {
    /// Validates structure constants `sc[i][j] = e_i e_j`.
    pub fn new(p: u32, dim: usize, sc: Vec<Vec<Vec<u32>>>, labels: Option<Vec<String>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime { p: p as u64 });
        }
        if sc.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: sc.len(),
            });
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for row in sc {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
                flat.push(v.into_iter().map(|x| x % p).collect());
            }
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::InvalidAlgebra(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut alg = FpAlgebra {
            p,
            dim,
            sc: flat,
            labels,
            nilpotency_index: 0,
        };
        alg.check_associative()?;
        alg.nilpotency_index = alg.compute_nilpotency()?;
        Ok(alg)
    }

    /// Builds from a sparse list of nonzero basis products `(i, j, e_i e_j)`.
    pub fn from_products(
        p: u32,
        dim: usize,
        products: &[(usize, usize, Vec<u32>)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut sc = vec![vec![vec![0u32; dim]; dim]; dim];
        for (i, j, v) in products {
            if *i >= dim || *j >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "product ({i}, {j}) outside dimension {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            sc[*i][*j] = v.clone();
        }
        Self::new(p, dim, sc, labels)
    }

    pub fn zero_algebra(p: u32, dim: usize) -> Result<Self> {
        Self::from_products(p, dim, &[], None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Least `e` with `A^e = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    /// `p^dim`, the number of elements.
    pub fn size(&self) -> usize {
        (self.p as usize).saturating_pow(self.dim as u32)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.sc[i * self.dim + j]
    }

    /// Nonzero basis products `(i, j, e_i e_j)`.
    pub fn products(&self) -> Vec<(usize, usize, Vec<u32>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.basis_product(i, j);
                if v.iter().any(|&x| x != 0) {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }

    fn mul_coords(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let coeff = xi as u64 * yj as u64 % p;
                for (o, &s) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o = (*o + coeff * s as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    fn check_vec(&self, x: &FpVector) -> Result<()> {
        if x.dim() != self.dim || x.p() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &FpVector, y: &FpVector) -> Result<FpVector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(FpVector {
            p: self.p,
            coords: self.mul_coords(&x.coords, &y.coords),
        })
    }

    /// `x ∘ y = x + y + xy`.
    pub fn circle(&self, x: &FpVector, y: &FpVector) -> Result<FpVector> {
        Ok(x.add(y).add(&self.multiply(x, y)?))
    }

    /// `-x + x² - x³ + …`, a finite sum because `A` is nilpotent.
    pub fn circle_inverse(&self, x: &FpVector) -> Result<FpVector> {
        self.check_vec(x)?;
        let mut acc = FpVector::zero(self.p, self.dim);
        let mut power = x.clone();
        let mut k = 1;
        while !power.is_zero() {
            let term = if k % 2 == 1 { power.neg() } else { power.clone() };
            acc = acc.add(&term);
            power = self.multiply(&power, x)?;
            k += 1;
        }
        Ok(acc)
    }

    /// `x ∘ x ∘ … ∘ x` with `m ≥ 1` factors.
    pub fn circle_power(&self, x: &FpVector, m: usize) -> Result<FpVector> {
        self.check_vec(x)?;
        if m == 0 {
            return Ok(FpVector::zero(self.p, self.dim));
        }
        let mut acc = x.clone();
        for _ in 1..m {
            acc = self.circle(&acc, x)?;
        }
        Ok(acc)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ek = FpVector::basis(self.p, d, k);
                    let ei = FpVector::basis(self.p, d, i);
                    let left = self.mul_coords(self.basis_product(i, j), &ek.coords);
                    let right = self.mul_coords(&ei.coords, self.basis_product(j, k));
                    if left != right {
                        return Err(Error::AlgebraNotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Iterates `A^{k+1} = A^k · A` on row-reduced spanning sets.
    fn compute_nilpotency(&self) -> Result<usize> {
        let d = self.dim;
        let mut power = SubspaceBasis::span(
            self.p,
            d,
            &(0..d).map(|i| FpVector::basis(self.p, d, i).coords).collect::<Vec<_>>(),
        );
        let mut e = 1;
        while power.rank() > 0 {
            let mut products = Vec::new();
            for row in power.rows() {
                for j in 0..d {
                    products.push(self.mul_coords(row, &FpVector::basis(self.p, d, j).coords));
                }
            }
            let next = SubspaceBasis::span(self.p, d, &products);
            if next.rank() == power.rank() {
                return Err(Error::NotNilpotent {
                    stable_dim: next.rank(),
                });
            }
            power = next;
            e += 1;
        }
        Ok(e)
    }

    fn elements(&self) -> Vec<Vec<u32>> {
        (0..self.size()).map(|x| decode(self.p, self.dim, x)).collect()
    }

    /// `(A, +)`, elementary abelian of order `p^dim`.
    pub fn additive_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let n = self.size();
        limits.check_order(n)?;
        let elems = self.elements();
        let p = self.p;
        let mut table = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                let s: Vec<u32> = x.iter().zip(y).map(|(&a, &b)| (a + b) % p).collect();
                table.push(encode(p, &s) as u32);
            }
        }
        FiniteGroup::from_trusted(n, table, Some(self.element_labels()), limits.assoc_check_cap)
    }

    /// `(A, ∘)` on the same indexing as [`FpAlgebra::additive_group`].
    pub fn circle_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let n = self.size();
        limits.check_order(n)?;
        let elems = self.elements();
        let p = self.p;
        let mut table = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                let xy = self.mul_coords(x, y);
                let s: Vec<u32> = x
                    .iter()
                    .zip(y)
                    .zip(&xy)
                    .map(|((&a, &b), &c)| (a + b + c) % p)
                    .collect();
                table.push(encode(p, &s) as u32);
            }
        }
        FiniteGroup::from_trusted(n, table, Some(self.element_labels()), limits.assoc_check_cap)
    }

    fn element_labels(&self) -> Vec<String> {
        (0..self.size())
            .map(|x| {
                let c = decode(self.p, self.dim, x);
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("[{}]", parts.join(","))
            })
            .collect()
    }

    fn ideals(&self, budget: usize, left: bool) -> Result<Vec<SubspaceBasis>> {
        let d = self.dim;
        let subspaces = enumerate_subspaces(self.p, d, budget)?;
        Ok(subspaces
            .into_iter()
            .filter(|s| {
                s.rows().iter().all(|v| {
                    (0..d).all(|i| {
                        let e = FpVector::basis(self.p, d, i);
                        let prod = if left {
                            self.mul_coords(&e.coords, v)
                        } else {
                            self.mul_coords(v, &e.coords)
                        };
                        s.contains(&prod)
                    })
                })
            })
            .collect())
    }

    /// Subspaces `J` with `A J ⊆ J`, tested on basis products only.
    pub fn left_ideals(&self, budget: usize) -> Result<Vec<SubspaceBasis>> {
        self.ideals(budget, true)
    }

    /// Subspaces `J` with `J A ⊆ J`.
    pub fn right_ideals(&self, budget: usize) -> Result<Vec<SubspaceBasis>> {
        self.ideals(budget, false)
    }

    /// The brace `(A, ∘, +)`: additive group `+`, multiplicative group `∘`.
    pub fn brace(&self, limits: &Limits) -> Result<SkewBrace> {
        let (star, circ) = (self.additive_group(limits)?, self.circle_group(limits)?);
        SkewBrace::new(star, circ, Provenance::Radical)
    }

    /// The brace `(A, +, ∘)` with `∘` as the additive group; needs `A³ = 0`.
    pub fn flipped_brace(&self, limits: &Limits) -> Result<SkewBrace> {
        if self.nilpotency_index > 3 {
            return Err(Error::NilpotencyTooDeep {
                index: self.nilpotency_index,
            });
        }
        let (star, circ) = (self.circle_group(limits)?, self.additive_group(limits)?);
        SkewBrace::new(star, circ, Provenance::Radical)
    }
}

/// Four-dimensional algebra on `a, b, c, d` with `a² = c`, `ab = d` and all
/// other basis products zero.
pub fn degraaf_algebra(p: u32) -> Result<FpAlgebra> {
    if p <= 2 {
        return Err(Error::InvalidAlgebra(format!(
            "the a² = c, ab = d algebra needs p > 2, got {p}"
        )));
    }
    FpAlgebra::from_products(
        p,
        4,
        &[(0, 0, vec![0, 0, 1, 0]), (0, 1, vec![0, 0, 0, 1])],
        Some(["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()),
    )
}

/// The subalgebra of `n x n` matrices over `F_p` generated by `gens`.
/// Every generator must be strictly upper triangular, which makes the
/// result nilpotent.
pub fn matrix_algebra(p: u32, n: usize, gens: &[Vec<Vec<u32>>]) -> Result<FpAlgebra> {
    for g in gens {
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.len(),
            });
        }
        for (i, row) in g.iter().enumerate() {
            if row[..=i].iter().any(|&x| x % p != 0) {
                return Err(Error::InvalidAlgebra(
                    "generators must be strictly upper triangular".into(),
                ));
            }
        }
    }
    let flat = |m: &Vec<Vec<u32>>| -> Vec<u32> { m.iter().flatten().map(|&x| x % p).collect() };
    let matmul = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k] as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let o = &mut out[i * n + j];
                    *o = ((*o as u64 + x * b[k * n + j] as u64) % p as u64) as u32;
                }
            }
        }
        out
    };

    let gen_vecs: Vec<Vec<u32>> = gens.iter().map(flat).collect();
    let mut span = SubspaceBasis::span(p, n * n, &gen_vecs);
    loop {
        let mut vectors: Vec<Vec<u32>> = span.rows().to_vec();
        for r in span.rows() {
            for g in &gen_vecs {
                vectors.push(matmul(r, g));
            }
        }
        let next = SubspaceBasis::span(p, n * n, &vectors);
        if next.rank() == span.rank() {
            break;
        }
        span = next;
    }

    // coordinates in a reduced echelon basis are read off at the pivots
    let basis = span.rows().to_vec();
    let pivots = span.pivots();
    let dim = basis.len();
    let mut sc = vec![vec![vec![0u32; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = matmul(&basis[i], &basis[j]);
            sc[i][j] = pivots.iter().map(|&c| prod[c]).collect();
        }
    }
    FpAlgebra::new(p, dim, sc, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, c: &[u32]) -> FpVector {
        FpVector::new(p, c.to_vec())
    }

    #[test]
    fn encoding_round_trip() {
        for x in 0..81 {
            assert_eq!(encode(3, &decode(3, 4, x)), x);
        }
        assert_eq!(encode(5, &[1, 2, 0, 0]), 11);
    }

    #[test]
    fn zero_algebra_basics() {
        let a = FpAlgebra::zero_algebra(3, 2).unwrap();
        assert_eq!(a.nilpotency_index(), 2);
        let x = v(3, &[1, 2]);
        let y = v(3, &[2, 2]);
        assert_eq!(a.circle(&x, &y).unwrap(), x.add(&y));
        let l = Limits::default();
        assert_eq!(a.additive_group(&l).unwrap(), a.circle_group(&l).unwrap());
        assert_eq!(a.left_ideals(1000).unwrap().len(), 6);
        assert_eq!(a.right_ideals(1000).unwrap().len(), 6);
    }

    #[test]
    fn degraaf_structure() {
        assert!(degraaf_algebra(2).is_err());
        let a = degraaf_algebra(3).unwrap();
        assert_eq!(a.nilpotency_index(), 3);
        let a5 = degraaf_algebra(5).unwrap();
        assert_eq!(a5.nilpotency_index(), 3);
        let (ea, eb) = (FpVector::basis(5, 4, 0), FpVector::basis(5, 4, 1));
        assert_eq!(a5.multiply(&ea, &eb).unwrap(), FpVector::basis(5, 4, 3));
        assert!(a5.multiply(&eb, &ea).unwrap().is_zero());
    }

    #[test]
    fn degraaf_products_on_general_elements() {
        let a = degraaf_algebra(5).unwrap();
        let ea = FpVector::basis(5, 4, 0);
        let eb = FpVector::basis(5, 4, 1);
        for r in 0..625 {
            let x = FpVector::from_index(5, 4, r);
            let c = x.coords().to_vec();
            // a·r = r1 c + r2 d
            assert_eq!(a.multiply(&ea, &x).unwrap(), v(5, &[0, 0, c[0], c[1]]));
            // r·a = r1 c and r·b = r1 d
            assert_eq!(a.multiply(&x, &ea).unwrap(), v(5, &[0, 0, c[0], 0]));
            assert_eq!(a.multiply(&x, &eb).unwrap(), v(5, &[0, 0, 0, c[0]]));
        }
        assert!(a.multiply(&FpVector::zero(5, 4), &ea).unwrap().is_zero());
        assert!(a.multiply(&FpVector::zero(5, 3), &ea).is_err());
    }

    #[test]
    fn circle_examples() {
        let a = degraaf_algebra(5).unwrap();
        let ea = FpVector::basis(5, 4, 0);
        // a ∘ a = 2a + c
        assert_eq!(a.circle(&ea, &ea).unwrap(), v(5, &[2, 0, 1, 0]));
        // inverse of a is -a + c
        let inv = a.circle_inverse(&ea).unwrap();
        assert_eq!(inv, v(5, &[4, 0, 1, 0]));
        assert!(a.circle(&ea, &inv).unwrap().is_zero());
        // a^{∘m} = m a + C(m, 2) c
        for m in 1..=7usize {
            let k = (m * (m - 1) / 2 % 5) as u32;
            assert_eq!(a.circle_power(&ea, m).unwrap(), v(5, &[(m % 5) as u32, 0, k, 0]));
        }
        assert_eq!(a.circle_power(&ea, 1).unwrap(), ea);
        let zero = FpVector::zero(5, 4);
        assert!(a.circle_inverse(&zero).unwrap().is_zero());
        assert_eq!(a.circle(&zero, &ea).unwrap(), ea);
    }

    #[test]
    fn circle_inverse_sweep() {
        let a = degraaf_algebra(3).unwrap();
        for x in 0..81 {
            let x = FpVector::from_index(3, 4, x);
            let y = a.circle_inverse(&x).unwrap();
            assert!(a.circle(&x, &y).unwrap().is_zero());
            assert!(a.circle(&y, &x).unwrap().is_zero());
            // exponent p
            assert!(a.circle_power(&x, 3).unwrap().is_zero());
        }
    }

    #[test]
    fn invalid_algebras() {
        // e1 e1 = e1 is idempotent
        let err = FpAlgebra::from_products(3, 1, &[(0, 0, vec![1])], None).unwrap_err();
        assert!(matches!(err, Error::NotNilpotent { .. }));
        // e1 e1 = e2, e2 e1 = e3 but e1 e2 = 0 breaks associativity
        let err = FpAlgebra::from_products(
            3,
            3,
            &[(0, 0, vec![0, 1, 0]), (1, 0, vec![0, 0, 1])],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlgebraNotAssociative { .. }));
        assert!(matches!(
            FpAlgebra::zero_algebra(4, 2),
            Err(Error::NotPrime { p: 4 })
        ));
        assert!(FpAlgebra::from_products(3, 2, &[(0, 2, vec![0, 0])], None).is_err());
    }

    #[test]
    fn matrix_algebra_full_upper_triangular() {
        // E12 and E23 generate all strictly upper triangular 3x3 matrices
        let e12 = vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]];
        let e23 = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]];
        let a = matrix_algebra(3, 3, &[e12, e23]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency_index(), 3);
        let bad = vec![vec![1, 0], vec![0, 0]];
        assert!(matrix_algebra(3, 2, &[bad]).is_err());
    }

    #[test]
    fn truncated_polynomial_algebra_is_deep() {
        // x F_3[x]/(x^4): basis x, x², x³
        let a = FpAlgebra::from_products(
            3,
            3,
            &[
                (0, 0, vec![0, 1, 0]),
                (0, 1, vec![0, 0, 1]),
                (1, 0, vec![0, 0, 1]),
            ],
            None,
        )
        .unwrap();
        assert_eq!(a.nilpotency_index(), 4);
        assert!(matches!(
            a.flipped_brace(&Limits::default()),
            Err(Error::NilpotencyTooDeep { index: 4 })
        ));
    }
}
