use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{ElementIndex, FiniteGroup, Limits};

/// A subset of a parent group's elements, stored as a membership indicator.
///
/// Values built through this module are always subgroups; [`SubgroupSet::from_elements`]
/// validates the closure conditions for arbitrary input.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    parent_order: usize,
    members: FixedBitSet,
    size: usize,
}

impl std::fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupSet")
            .field("size", &self.size)
            .field("members", &self.elements())
            .finish()
    }
}

/// Canonical order: by size, then lexicographically by sorted member list.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SubgroupSet {
    pub(crate) fn from_bits(members: FixedBitSet) -> Self {
        SubgroupSet {
            parent_order: members.len(),
            size: members.count_ones(..),
            members,
        }
    }

    /// Validates that `elements` form a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elements: &[ElementIndex]) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(g.order());
        for &x in elements {
            g.check_element(x)?;
            members.insert(x);
        }
        let set = Self::from_bits(members);
        if !set.is_subgroup_of(g) {
            return Err(Error::NotAStarSubgroup);
        }
        Ok(set)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(g.identity());
        Self::from_bits(members)
    }

    pub fn full(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        Self::from_bits(members)
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, x: ElementIndex) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementIndex> + '_ {
        self.members.ones()
    }

    /// Sorted member list, which doubles as the canonical key.
    pub fn elements(&self) -> Vec<ElementIndex> {
        self.members.ones().collect()
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Identity, closure under the operation and inverses, and Lagrange.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        if self.parent_order != g.order() || !self.contains(g.identity()) {
            return false;
        }
        if g.order() % self.size != 0 {
            return false;
        }
        let elems = self.elements();
        elems.iter().all(|&a| {
            self.contains(g.inv(a)) && elems.iter().all(|&b| self.contains(g.mul(a, b)))
        })
    }

    /// The subgroup as a group in its own right, with element `i` standing for
    /// the `i`-th smallest member. Labels are carried over from `g`.
    pub fn as_group(&self, g: &FiniteGroup) -> Result<FiniteGroup> {
        let elems = self.elements();
        let mut position = vec![usize::MAX; g.order()];
        for (i, &x) in elems.iter().enumerate() {
            position[x] = i;
        }
        let k = elems.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &elems {
            for &y in &elems {
                let z = position[g.mul(x, y)];
                if z == usize::MAX {
                    return Err(Error::NotAStarSubgroup);
                }
                table.push(z as u32);
            }
        }
        let labels = elems.iter().map(|&x| g.label(x)).collect();
        FiniteGroup::from_trusted(k, table, Some(labels), Limits::default().assoc_check_cap)
    }

    /// Small generating set, chosen greedily from the members.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<ElementIndex> {
        let mut gens = Vec::new();
        let mut current = SubgroupSet::trivial(g);
        for x in self.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = join_with(g, &current, &gens, x);
            }
            if current.size == self.size {
                break;
            }
        }
        gens
    }
}

/// Closure of `start` under right multiplication by `gens`. For a finite group
/// this is the subgroup generated by `start ∪ gens` whenever `start` is itself
/// a subgroup or just the identity.
fn close(g: &FiniteGroup, start: &FixedBitSet, gens: &[ElementIndex]) -> FixedBitSet {
    let mut members = start.clone();
    let mut queue: Vec<ElementIndex> = start.ones().collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !members.put(y) {
                queue.push(y);
            }
        }
    }
    members
}

/// `⟨current, x⟩`, where `current_gens` generates `current`.
fn join_with(
    g: &FiniteGroup,
    current: &SubgroupSet,
    current_gens: &[ElementIndex],
    x: ElementIndex,
) -> SubgroupSet {
    let mut gens = current_gens.to_vec();
    if !gens.contains(&x) {
        gens.push(x);
    }
    SubgroupSet::from_bits(close(g, current.members(), &gens))
}

/// Smallest subgroup containing `seed`.
pub fn generated_subgroup(g: &FiniteGroup, seed: &[ElementIndex]) -> Result<SubgroupSet> {
    for &x in seed {
        g.check_element(x)?;
    }
    let mut start = FixedBitSet::with_capacity(g.order());
    start.insert(g.identity());
    Ok(SubgroupSet::from_bits(close(g, &start, seed)))
}

fn cyclic_subgroup(g: &FiniteGroup, x: ElementIndex) -> FixedBitSet {
    let mut members = FixedBitSet::with_capacity(g.order());
    let mut acc = g.identity();
    loop {
        members.insert(acc);
        acc = g.mul(acc, x);
        if acc == g.identity() {
            break;
        }
    }
    members
}

/// Every subgroup of `g` exactly once, in canonical order.
///
/// Starts from the cyclic subgroups and repeatedly joins each newly found
/// subgroup with every cyclic subgroup it does not contain, until no new
/// subgroup appears. Every subgroup is a join of cyclic subgroups, so the
/// fixpoint is the whole lattice.
pub fn enumerate_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<SubgroupSet>> {
    limits.check_order(g.order())?;

    // one generator per cyclic subgroup
    let mut cyclic: Vec<(ElementIndex, FixedBitSet)> = Vec::new();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    for x in 0..g.order() {
        let c = cyclic_subgroup(g, x);
        if seen.insert(c.clone(), ()).is_none() {
            cyclic.push((x, c));
        }
    }

    // (members, generators) for every subgroup found so far
    let mut found: HashMap<FixedBitSet, Vec<ElementIndex>> = HashMap::new();
    let mut frontier: Vec<(FixedBitSet, Vec<ElementIndex>)> = Vec::new();
    for (x, c) in &cyclic {
        let gens = if *x == g.identity() { vec![] } else { vec![*x] };
        found.insert(c.clone(), gens.clone());
        frontier.push((c.clone(), gens));
    }

    while !frontier.is_empty() {
        let joins: Vec<(FixedBitSet, Vec<ElementIndex>)> = frontier
            .par_iter()
            .flat_map_iter(|(members, gens)| {
                cyclic
                    .iter()
                    .filter(|(x, _)| !members.contains(*x))
                    .map(|(x, _)| {
                        let mut new_gens = gens.clone();
                        new_gens.push(*x);
                        let joined = close(g, members, &new_gens);
                        (joined, new_gens)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();

        let mut next = Vec::new();
        for (members, gens) in joins {
            if !found.contains_key(&members) {
                found.insert(members.clone(), gens.clone());
                next.push((members, gens));
            }
        }
        frontier = next;
    }

    let mut all: Vec<SubgroupSet> = found.into_keys().map(SubgroupSet::from_bits).collect();
    all.par_sort_unstable();
    Ok(all)
}

/// `x H x⁻¹ = H` for every `x` in `g`.
pub fn is_normal(g: &FiniteGroup, h: &SubgroupSet) -> bool {
    let gens = h.generators(g);
    (0..g.order()).all(|x| {
        let xi = g.inv(x);
        gens.iter().all(|&y| h.contains(g.mul(g.mul(x, y), xi)))
    })
}
