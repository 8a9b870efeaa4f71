use proptest::prelude::*;
use skewbrace::constructions::{
    a5_factorization, family_formula_report, additive_subgroups_mult_stable, semidirect_biskew,
    stable_iff_normalized_check, zappa_szep_brace, Family, FamilySpec,
};
use skewbrace::group::{
    automorphism_group, cyclic_group, direct_product, enumerate_subgroups, is_isomorphic,
};
use skewbrace::Limits;

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn a5_brace() {
    let f = a5_factorization().unwrap();
    let b = zappa_szep_brace(&f).unwrap();
    let r = b.gc_ratio(&limits()).unwrap();
    assert_eq!(r.unreduced(), (4, 20));
    let orders: Vec<usize> = r.stable.iter().map(|h| h.size()).collect();
    assert_eq!(orders, vec![1, 5, 10, 60]);

    // (G, ∘) is C5 × A4
    let c5 = f.left().as_group(f.parent()).unwrap();
    let a4 = f.right().as_group(f.parent()).unwrap();
    let prod = direct_product(&c5, &a4).unwrap();
    assert!(is_isomorphic(b.circ(), &prod, &limits()).unwrap());

    // an involution outside the dihedral stable subgroup is not normalized by C5
    let subs = enumerate_subgroups(f.parent(), &limits()).unwrap();
    let order2: Vec<_> = subs.iter().filter(|h| h.size() == 2).collect();
    assert_eq!(order2.len(), 15);
    for h in order2 {
        assert_eq!(stable_iff_normalized_check(&f, &b, h).unwrap(), (false, false));
    }
}

#[test]
fn z9z6_ratios() {
    let pair = semidirect_biskew(9, 6, 2).unwrap();
    assert_eq!(enumerate_subgroups(pair.additive(), &limits()).unwrap().len(), 20);
    let mult_subs = enumerate_subgroups(pair.multiplicative(), &limits()).unwrap();
    assert_eq!(mult_subs.len(), brute_force_subgroup_count(pair.multiplicative()));
    // 26 cyclic; the non-cyclic ones are <(a,0),(0,b)> for a in {1,3}, b in
    // {1,2,3} plus the conjugates <(3,0),(r,1)> and <(3,0),(r,3)>, r = 1, 2
    assert_eq!(mult_subs.len(), 36);
    let cyclic = mult_subs
        .iter()
        .filter(|h| {
            h.iter()
                .any(|x| pair.multiplicative().element_order(x) == h.size())
        })
        .count();
    assert_eq!(cyclic, 26);
    let r1 = pair.mult_galois.gc_ratio(&limits()).unwrap();
    let r2 = pair.add_galois.gc_ratio(&limits()).unwrap();
    assert_eq!(r1.unreduced(), (12, 36));
    assert_eq!(r2.unreduced(), (9, 20));
    assert!(pair.mult_galois.is_bi_skew() && pair.add_galois.is_bi_skew());
}

/// Closes every set of at most three generators by brute force.
fn brute_force_subgroup_count(g: &skewbrace::FiniteGroup) -> usize {
    use std::collections::BTreeSet;
    let n = g.order();
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut seen = vec![false; n];
        seen[g.identity()] = true;
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..n).filter(|&x| seen[x]).collect()
    };
    let mut two: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            two.insert(close(&[a, b]));
        }
    }
    let mut all = two.clone();
    for h in &two {
        for c in 0..n {
            let mut gens = h.clone();
            gens.push(c);
            all.insert(close(&gens));
        }
    }
    all.len()
}

/// Automorphisms of Z/9 × Z/6 ≅ Z/9 × Z/3 × Z/2 counted directly: choose
/// images of (1,0), (0,2), (0,3) with the right orders and keep the
/// bijective assignments.
fn aut_z9z6_oracle() -> usize {
    let add = |x: (usize, usize), y: (usize, usize)| ((x.0 + y.0) % 9, (x.1 + y.1) % 6);
    let mul = |k: usize, x: (usize, usize)| ((k * x.0) % 9, (k * x.1) % 6);
    let elems: Vec<(usize, usize)> = (0..9).flat_map(|r| (0..6).map(move |s| (r, s))).collect();
    let kills = |k: usize| -> Vec<(usize, usize)> {
        elems.iter().copied().filter(|&x| mul(k, x) == (0, 0)).collect()
    };
    let mut count = 0;
    for x in kills(9) {
        for y in kills(3) {
            for z in kills(2) {
                let mut seen = [false; 54];
                let mut ok = true;
                for a in 0..9 {
                    for b in 0..3 {
                        for c in 0..2 {
                            let v = add(add(mul(a, x), mul(b, y)), mul(c, z));
                            let i = v.0 * 6 + v.1;
                            if std::mem::replace(&mut seen[i], true) {
                                ok = false;
                            }
                        }
                    }
                }
                count += ok as usize;
            }
        }
    }
    count
}

#[test]
fn z9z6_automorphisms() {
    let add = direct_product(&cyclic_group(9).unwrap(), &cyclic_group(6).unwrap()).unwrap();
    let auts = automorphism_group(&add, &limits()).unwrap();
    assert_eq!(auts.len(), aut_z9z6_oracle());
    assert_eq!(auts.len(), 108);

    let pair = semidirect_biskew(9, 6, 2).unwrap();
    let hgs = pair.add_galois.hgs_count(&limits()).unwrap();
    assert!(hgs >= 1);
    assert_eq!(108 % hgs, 0);
}

#[test]
fn additive_subgroups_stable_specs() {
    for (family, m, n, b) in [
        (Family::Pq, 7, 3, 2),
        (Family::GeneralizedDihedral, 15, 2, 14),
        (Family::Pq, 31, 5, 2),
    ] {
        let spec = FamilySpec::new(family, m, n, b).unwrap();
        assert!(additive_subgroups_mult_stable(&spec, &limits()).unwrap(), "{spec}");
    }
    assert!(FamilySpec::new(Family::CustomSemidirect, 9, 6, 2).is_err());
}

#[test]
fn dihedral_h1_ratio_exceeds_half() {
    for (m, b) in [(3u64, 2u64), (15, 14), (21, 20), (35, 34)] {
        let spec = FamilySpec::new(Family::GeneralizedDihedral, m, 2, b).unwrap();
        let r = family_formula_report(&spec, &limits()).unwrap();
        assert!(r.all_match(), "{spec}: {r:?}");
        let g = spec.g();
        let (num, den) = r.enumerated.unwrap().ratio1().unwrap();
        assert_eq!((num, den), ((1 << g) + 1, 1 << (g + 1)));
        assert!(2 * num > den);
    }
}

fn semidirect_params() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..14, 1usize..7, 1u64..40).prop_filter_map("b^n must be 1 mod m", |(m, n, b)| {
        let m64 = m as u64;
        let unit = num_integer::gcd(b % m64, m64) == 1;
        let mut acc = 1 % m64;
        for _ in 0..n {
            acc = acc * b % m64;
        }
        (unit && acc == 1 % m64).then_some((m, n, b % m64))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn semidirect_pairs_are_bi_skew((m, n, b) in semidirect_params()) {
        let pair = semidirect_biskew(m, n, b).unwrap();
        prop_assert!(pair.mult_galois.is_bi_skew());
        prop_assert!(pair.add_galois.is_bi_skew());
        for brace in [&pair.mult_galois, &pair.add_galois] {
            let stable = brace.stable_subgroups(&limits()).unwrap();
            prop_assert_eq!(stable.first().map(|h| h.size()), Some(1));
            prop_assert_eq!(stable.last().map(|h| h.size()), Some(m * n));
        }
    }
}
