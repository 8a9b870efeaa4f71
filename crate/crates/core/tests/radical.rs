use proptest::prelude::*;
use skewbrace::group::enumerate_subgroups;
use skewbrace::radical::{degraaf_algebra, matrix_algebra, FpAlgebra, FpVector};
use skewbrace::{Limits, SubgroupSet};

fn limits() -> Limits {
    Limits::default()
}

fn as_subgroups(spaces: &[skewbrace::SubspaceBasis]) -> Vec<SubgroupSet> {
    let mut out: Vec<SubgroupSet> = spaces.iter().map(|s| s.to_subgroup()).collect();
    out.sort();
    out
}

#[test]
fn degraaf_p3_counts() {
    let a = degraaf_algebra(3).unwrap();
    let p = 3usize;
    assert_eq!(a.left_ideals(1 << 12).unwrap().len(), p * p + 3 * p + 5);
    assert_eq!(a.right_ideals(1 << 12).unwrap().len(), 2 * p * p + 3 * p + 5);
    let circ = a.circle_group(&limits()).unwrap();
    let add = a.additive_group(&limits()).unwrap();
    assert_eq!(
        enumerate_subgroups(&circ, &limits()).unwrap().len(),
        2 * p.pow(3) + 4 * p * p + 3 * p + 5
    );
    assert_eq!(
        enumerate_subgroups(&add, &limits()).unwrap().len(),
        p.pow(4) + 3 * p.pow(3) + 4 * p * p + 3 * p + 5
    );
}

#[test]
fn degraaf_p3_ratios_and_ideal_correspondence() {
    let a = degraaf_algebra(3).unwrap();
    let b = a.brace(&limits()).unwrap();
    let r = b.gc_ratio(&limits()).unwrap();
    assert_eq!(r.unreduced(), (23, 104));
    assert_eq!(r.stable, as_subgroups(&a.left_ideals(1 << 12).unwrap()));

    let f = a.flipped_brace(&limits()).unwrap();
    let r = f.gc_ratio(&limits()).unwrap();
    assert_eq!(r.unreduced(), (32, 212));
    assert_eq!(r.stable, as_subgroups(&a.right_ideals(1 << 12).unwrap()));
    assert!(b.is_bi_skew());
    assert!(f.is_bi_skew());
}

#[test]
fn closed_form_circle_powers() {
    // x^{∘m} = m x + C(m, 2) x², and x² = r² c + r s d
    for p in [3u32, 5] {
        let a = degraaf_algebra(p).unwrap();
        let pp = p as usize;
        for idx in 0..pp.pow(4) {
            let x = FpVector::from_index(p, 4, idx);
            let [r, s, t, u] = [0, 1, 2, 3].map(|i| x.coords()[i] as usize);
            let mut acc = x.clone();
            for m in 1..=pp {
                let c2 = m * (m - 1) / 2;
                let expected = FpVector::new(
                    p,
                    vec![
                        (m * r) as u32,
                        (m * s) as u32,
                        ((m * t + c2 * r * r) % pp) as u32,
                        ((m * u + c2 * r * s) % pp) as u32,
                    ],
                );
                assert_eq!(acc, expected, "p={p} x={idx} m={m}");
                assert_eq!(a.circle_power(&x, m).unwrap(), expected);
                acc = a.circle(&acc, &x).unwrap();
            }
            // exponent p
            assert!(a.circle_power(&x, pp).unwrap().is_zero());
        }
    }
}

#[test]
fn deep_algebra_is_not_bi_skew() {
    // x F_3[x]/(x^4) has x³ ≠ 0, and the mirrored law fails
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
    let b = a.brace(&limits()).unwrap();
    assert!(!b.is_bi_skew());
    assert!(b.swapped().is_err());
}

#[test]
fn ideals_are_closed_under_both_operations() {
    let a = degraaf_algebra(3).unwrap();
    let add = a.additive_group(&limits()).unwrap();
    let circ = a.circle_group(&limits()).unwrap();
    for j in a.left_ideals(1 << 12).unwrap().iter().chain(&a.right_ideals(1 << 12).unwrap()) {
        let h = j.to_subgroup();
        assert!(h.is_subgroup_of(&add));
        assert!(h.is_subgroup_of(&circ));
    }
}

fn strictly_upper(p: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(0..p, n * (n - 1) / 2).prop_map(move |entries| {
        let mut m = vec![vec![0u32; n]; n];
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = it.next().unwrap();
            }
        }
        m
    })
}

fn small_algebra() -> impl Strategy<Value = FpAlgebra> {
    prop_oneof![
        prop::collection::vec(strictly_upper(2, 4), 1..3)
            .prop_map(|g| matrix_algebra(2, 4, &g).unwrap()),
        prop::collection::vec(strictly_upper(3, 3), 1..3)
            .prop_map(|g| matrix_algebra(3, 3, &g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circle_is_a_group_law(a in small_algebra()) {
        let n = a.size();
        let p = a.p();
        let d = a.dim();
        for i in 0..n {
            let x = FpVector::from_index(p, d, i);
            let inv = a.circle_inverse(&x).unwrap();
            prop_assert!(a.circle(&x, &inv).unwrap().is_zero());
            prop_assert!(a.circle(&inv, &x).unwrap().is_zero());
            for j in (0..n).step_by(3) {
                let y = FpVector::from_index(p, d, j);
                for k in (0..n).step_by(5) {
                    let z = FpVector::from_index(p, d, k);
                    let l = a.circle(&a.circle(&x, &y).unwrap(), &z).unwrap();
                    let r = a.circle(&x, &a.circle(&y, &z).unwrap()).unwrap();
                    prop_assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn left_ideals_are_stable_subgroups(a in small_algebra()) {
        let b = a.brace(&limits()).unwrap();
        let stable = b.stable_subgroups(&limits()).unwrap();
        prop_assert_eq!(stable, as_subgroups(&a.left_ideals(1 << 12).unwrap()));
    }

    #[test]
    fn right_ideals_are_stable_when_cube_vanishes(a in small_algebra()) {
        prop_assume!(a.nilpotency_index() <= 3);
        let f = a.flipped_brace(&limits()).unwrap();
        let stable = f.stable_subgroups(&limits()).unwrap();
        prop_assert_eq!(stable, as_subgroups(&a.right_ideals(1 << 12).unwrap()));
    }
}
