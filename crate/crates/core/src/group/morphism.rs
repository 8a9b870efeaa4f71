//! Automorphisms and isomorphisms by backtracking over generator images.

use crate::error::Result;

use super::{ElementIndex, ElementMap, FiniteGroup, Limits, SubgroupSet};

/// Generators chosen greedily by decreasing element order, each one outside
/// the subgroup generated by the previous ones.
fn generating_sequence(g: &FiniteGroup, orders: &[usize]) -> Vec<ElementIndex> {
    let mut by_order: Vec<ElementIndex> = (0..g.order()).collect();
    by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let full = SubgroupSet::full(g);
    let mut gens = Vec::new();
    let mut current = SubgroupSet::trivial(g);
    for x in by_order {
        if current.size() == full.size() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = super::generated_subgroup(g, &gens).expect("valid elements");
        }
    }
    gens
}

/// Extends generator images to a map by walking the Cayley graph. Returns
/// `None` if some edge is inconsistent or the map is not injective.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[ElementIndex],
    images: &[ElementIndex],
) -> Option<ElementMap> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let want = h.mul(map[x], t);
            if map[y] == UNSET {
                map[y] = want;
                queue.push(y);
            } else if map[y] != want {
                return None;
            }
        }
    }
    let mut hit = vec![false; h.order()];
    for &v in &map {
        if std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    Some(map)
}

/// Depth-first search over images of `gens`; calls `visit` on every
/// bijective homomorphism and stops early when it returns `false`.
fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    visit: &mut dyn FnMut(ElementMap) -> bool,
) -> bool {
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let gens = generating_sequence(g, &g_orders);
    let mut images = Vec::with_capacity(gens.len());

    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[ElementIndex],
        g_orders: &[usize],
        h_orders: &[usize],
        images: &mut Vec<ElementIndex>,
        visit: &mut dyn FnMut(ElementMap) -> bool,
    ) -> bool {
        let k = images.len();
        if k == gens.len() {
            if let Some(map) = extend(g, h, gens, images) {
                return visit(map);
            }
            return true;
        }
        // images of independent generators stay independent under an isomorphism
        let span = super::generated_subgroup(h, images).expect("valid elements");
        for y in 0..h.order() {
            if h_orders[y] != g_orders[gens[k]] || span.contains(y) {
                continue;
            }
            images.push(y);
            let go_on = rec(g, h, gens, g_orders, h_orders, images, visit);
            images.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(g, h, &gens, &g_orders, &h_orders, &mut images, visit)
}

pub fn is_homomorphism(map: &[ElementIndex], g: &FiniteGroup, h: &FiniteGroup) -> bool {
    map.len() == g.order()
        && (0..g.order())
            .all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

/// Every automorphism of `g`, sorted lexicographically.
pub fn automorphism_group(g: &FiniteGroup, limits: &Limits) -> Result<Vec<ElementMap>> {
    limits.check_aut_order(g.order())?;
    let mut out = Vec::new();
    search(g, g, &mut |map| {
        out.push(map);
        true
    });
    out.sort();
    Ok(out)
}

pub fn find_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Option<ElementMap>> {
    limits.check_aut_order(g.order())?;
    limits.check_aut_order(h.order())?;
    if g.order() != h.order() || g.order_histogram() != h.order_histogram() {
        return Ok(None);
    }
    let mut found = None;
    search(g, h, &mut |map| {
        found = Some(map);
        false
    });
    Ok(found)
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(g, h, limits)?.is_some())
}
