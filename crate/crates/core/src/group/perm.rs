use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{FiniteGroup, Limits};

/// Generators of a permutation group on `{0, .., degree - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGens {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl PermutationGens {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadPermutation("degree must be at least 1".into()));
        }
        if generators.is_empty() {
            return Err(Error::BadPermutation("need at least one generator".into()));
        }
        for g in &generators {
            if g.len() != degree {
                return Err(Error::BadPermutation(format!(
                    "generator has length {}, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::BadPermutation(format!("{g:?} is not a bijection")));
                }
            }
        }
        Ok(PermutationGens { degree, generators })
    }

    /// Parses generators in 1-indexed cycle notation such as `"(1 2 3)(4 5)"`
    /// or `"(1,2,3)"`. The empty string or `"()"` is the identity.
    pub fn parse_cycles(degree: usize, cycles: &[&str]) -> Result<Self> {
        let generators = cycles
            .iter()
            .map(|s| parse_cycle_string(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }
}

/// Largest point mentioned in a cycle string, useful for inferring a degree.
pub fn max_point(cycles: &str) -> Option<usize> {
    cycles
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
}

fn parse_cycle_string(degree: usize, s: &str) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::BadPermutation(format!("expected '(' in {s:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::BadPermutation(format!("unclosed cycle in {s:?}")))?;
        let body = &rest[1..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let p: usize = t
                    .parse()
                    .map_err(|_| Error::BadPermutation(format!("bad point {t:?} in {s:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::BadPermutation(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        // apply this cycle after the ones already read (cycles compose right to left)
        let mut cycle: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for (i, &p) in points.iter().enumerate() {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadPermutation(format!("repeated point in {s:?}")));
            }
            cycle[p] = points[(i + 1) % points.len()];
        }
        perm = (0..degree).map(|x| perm[cycle[x]]).collect();
        rest = rest[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Result of a breadth-first closure: the abstract group plus the
/// permutation behind each element index.
#[derive(Debug, Clone)]
pub struct PermutationClosure {
    pub group: FiniteGroup,
    pub elements: Vec<Vec<usize>>,
}

impl PermutationClosure {
    /// Index of the element represented by `perm`, if it is in the group.
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.elements.iter().position(|p| p == perm)
    }

    /// Elements that fix `point` (0-indexed).
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i][point] == point)
            .collect()
    }
}

pub fn format_cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Composition `(a * b)(x) = a(b(x))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn permutation_closure(gens: &PermutationGens, cap: usize) -> Result<PermutationClosure> {
    let degree = gens.degree();
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        for g in gens.generators() {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&compose(a, b)] as u32);
        }
    }
    let labels = elements.iter().map(|p| format_cycles(p)).collect();
    let group =
        FiniteGroup::from_trusted(n, table, Some(labels), Limits::default().assoc_check_cap)?;
    Ok(PermutationClosure { group, elements })
}

/// Group generated by `gens`, element 0 being the identity permutation.
pub fn closure_from_permutations(gens: &PermutationGens, cap: usize) -> Result<FiniteGroup> {
    permutation_closure(gens, cap).map(|c| c.group)
}
