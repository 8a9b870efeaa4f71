//! Acceptance criteria 1 to 13. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed; exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewbrace::brace::trivial_brace;
use skewbrace::constructions::{
    a5_factorization, family_formula_report, additive_subgroups_mult_stable, semidirect_biskew,
    stability_criterion_z9z6, zappa_szep_brace, Family, FamilySpec, Z9Z6Direction,
};
use skewbrace::group::{
    automorphism_group, cyclic_group, direct_product, enumerate_subgroups, symmetric_group_s3,
};
use skewbrace::radical::{degraaf_algebra, FpAlgebra, SubspaceBasis};
use skewbrace::{Limits, SubgroupSet};
use skewbrace_cli::fuzz::mutation_fuzz;
use skewbrace_cli::regression::{random_algebra, rho_violations, suite};

const BUDGET: usize = 1 << 20;
const SEED: u64 = 0x5eed;

/// Outcome of one criterion: overall verdict plus the individual checks.
struct Verdict {
    checks: Vec<(String, bool)>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, actual: T) {
        let ok = expected == actual;
        let label = if ok {
            format!("{name} = {actual:?}")
        } else {
            format!("{name}: expected {expected:?}, got {actual:?}")
        };
        self.check(label, ok);
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            format!("runtime {:.2}s < {}s", elapsed.as_secs_f64(), limit.as_secs()),
            elapsed < limit,
        );
    }

    fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn limits() -> Limits {
    Limits::default()
}

fn as_subgroups(spaces: &[SubspaceBasis]) -> Vec<SubgroupSet> {
    let mut v: Vec<SubgroupSet> = spaces.iter().map(SubspaceBasis::to_subgroup).collect();
    v.sort();
    v
}

fn left_closed(p: u64) -> usize {
    (p * p + 3 * p + 5) as usize
}

fn right_closed(p: u64) -> usize {
    (2 * p * p + 3 * p + 5) as usize
}

fn circ_closed(p: u64) -> usize {
    (2 * p.pow(3) + 4 * p * p + 3 * p + 5) as usize
}

fn add_closed(p: u64) -> usize {
    (p.pow(4) + 3 * p.pow(3) + 4 * p * p + 3 * p + 5) as usize
}

/// Number of subspaces of F_p^d as a sum of Gaussian binomials.
fn gaussian_subspaces(p: u64, d: u32) -> u64 {
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

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let alg = degraaf_algebra(3).unwrap();
    let left = alg.left_ideals(BUDGET).unwrap();
    let circ_subs = enumerate_subgroups(&alg.circle_group(&limits()).unwrap(), &limits()).unwrap();
    let r = alg.brace(&limits()).unwrap().gc_ratio(&limits()).unwrap();
    v.eq("left ideals", 23, left.len());
    v.eq("circle subgroups", 104, circ_subs.len());
    v.eq("ratio", (23, 104), r.unreduced());
    v.eq("closed form", (23, 104), (left_closed(3), circ_closed(3)));
    v.within(start.elapsed(), Duration::from_secs(5));
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let alg = degraaf_algebra(3).unwrap();
    let right = alg.right_ideals(BUDGET).unwrap();
    let add_subs = enumerate_subgroups(&alg.additive_group(&limits()).unwrap(), &limits()).unwrap();
    let r = alg.flipped_brace(&limits()).unwrap().gc_ratio(&limits()).unwrap();
    v.eq("right ideals", 32, right.len());
    v.eq("additive subgroups", 212, add_subs.len());
    v.eq("ratio", (32, 212), r.unreduced());
    v.eq("closed form", (32, 212), (right_closed(3), add_closed(3)));
    v.within(start.elapsed(), Duration::from_secs(10));
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let alg = degraaf_algebra(5).unwrap();
    let left = alg.left_ideals(BUDGET).unwrap().len();
    let right = alg.right_ideals(BUDGET).unwrap().len();
    let circ = enumerate_subgroups(&alg.circle_group(&limits()).unwrap(), &limits()).unwrap().len();
    let add = enumerate_subgroups(&alg.additive_group(&limits()).unwrap(), &limits()).unwrap().len();
    v.eq("left ideals", 45, left);
    v.eq("left closed form", 45, left_closed(5));
    v.eq("right ideals", 70, right);
    v.eq("right closed form", 70, right_closed(5));
    v.eq("circle subgroups", 370, circ);
    v.eq("circle closed form", 370, circ_closed(5));
    // the stated 1394 is not the value of the quoted polynomial at p = 5
    v.eq("additive subgroups vs closed form", add_closed(5), add);
    v.eq("closed form vs Gaussian binomials", gaussian_subspaces(5, 4) as usize, add_closed(5));
    println!(
        "    note: additive subgroups at p=5 stated as 1394; the closed form and enumeration give {add}"
    );
    v.within(start.elapsed(), Duration::from_secs(600));
    v
}

fn stable_equals_ideals(alg: &FpAlgebra, v: &mut Verdict, name: &str) {
    let left = as_subgroups(&alg.left_ideals(BUDGET).unwrap());
    let stable = alg.brace(&limits()).unwrap().stable_subgroups(&limits()).unwrap();
    v.check(format!("{name}: stable = left ideals ({})", left.len()), left == stable);
    if alg.nilpotency_index() <= 3 {
        let right = as_subgroups(&alg.right_ideals(BUDGET).unwrap());
        let stable = alg.flipped_brace(&limits()).unwrap().stable_subgroups(&limits()).unwrap();
        v.check(format!("{name}: flipped stable = right ideals ({})", right.len()), right == stable);
    }
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    for p in [3, 5] {
        stable_equals_ideals(&degraaf_algebra(p).unwrap(), &mut v, &format!("degraaf p={p}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..3 {
        let alg = random_algebra(&mut rng).unwrap();
        let name = format!("random {k} (p={}, dim={}, index {})", alg.p(), alg.dim(), alg.nilpotency_index());
        stable_equals_ideals(&alg, &mut v, &name);
    }
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let f = a5_factorization().unwrap();
    let b = zappa_szep_brace(&f).unwrap();
    let r = b.gc_ratio(&limits()).unwrap();
    let orders: Vec<usize> = r.stable.iter().map(|h| h.size()).collect();
    let circ_subs = enumerate_subgroups(b.circ(), &limits()).unwrap();
    v.eq("stable subgroups", 4, r.numerator);
    v.eq("stable orders", vec![1, 5, 10, 60], orders);
    v.eq("subgroups of (G, circ)", 20, circ_subs.len());
    v.eq("ratio", (4, 20), r.unreduced());
    v.within(start.elapsed(), Duration::from_secs(30));
    v
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let pair = semidirect_biskew(9, 6, 2).unwrap();
    let add_subs = enumerate_subgroups(pair.additive(), &limits()).unwrap();
    let mult_subs = enumerate_subgroups(pair.multiplicative(), &limits()).unwrap();
    let r_mult = pair.mult_galois.gc_ratio(&limits()).unwrap();
    let r_add = pair.add_galois.gc_ratio(&limits()).unwrap();
    v.eq("subgroups of (G, +)", 20, add_subs.len());
    v.eq("subgroups of (G, ·)", 32, mult_subs.len());
    v.eq("·-stable subgroups of (G, +)", 12, r_mult.numerator);
    v.eq("+-stable subgroups of (G, ·)", 9, r_add.numerator);
    v.eq("ratio, · direction", (12, 32), r_mult.unreduced());
    v.eq("ratio, + direction", (9, 20), r_add.unreduced());
    let mut agree = 0;
    for h in &add_subs {
        let mult_ok = stability_criterion_z9z6(&pair, h, Z9Z6Direction::Mult).unwrap()
            == pair.mult_galois.is_circ_stable(h).unwrap();
        let generic = h.is_subgroup_of(pair.multiplicative())
            && pair.add_galois.is_circ_stable(h).unwrap();
        let add_ok = stability_criterion_z9z6(&pair, h, Z9Z6Direction::Add).unwrap() == generic;
        agree += usize::from(mult_ok && add_ok);
    }
    v.eq("shortcut criteria agree", 20, agree);
    v.within(start.elapsed(), Duration::from_secs(5));
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    for (family, m, n, b) in [
        (Family::Pq, 7, 3, 2),
        (Family::GeneralizedDihedral, 15, 2, 14),
        (Family::Pq, 31, 5, 2),
    ] {
        let spec = FamilySpec::new(family, m, n, b).unwrap();
        v.check(
            format!("({m},{n},{b}) every additive subgroup ·-stable"),
            additive_subgroups_mult_stable(&spec, &limits()).unwrap(),
        );
    }
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let pair = semidirect_biskew(7, 3, 2).unwrap();
    let r1 = pair.add_galois.gc_ratio(&limits()).unwrap();
    let r2 = pair.mult_galois.gc_ratio(&limits()).unwrap();
    v.eq("ratio1", (3, 4), r1.unreduced());
    v.eq("ratio2", (4, 10), r2.unreduced());
    v.within(start.elapsed(), Duration::from_secs(1));
    v
}

fn sigma(m: u64) -> u64 {
    (1..=m).filter(|d| m % d == 0).sum()
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let spec = FamilySpec::new(Family::GeneralizedDihedral, 15, 2, 14).unwrap();
    let r = family_formula_report(&spec, &limits()).unwrap();
    let c = r.enumerated.unwrap_or_default();
    let (g, h) = (2u32, 1u32);
    v.eq("m=15 +-stable", Some(2u64.pow(h) + 2u64.pow(g) - 1), c.n_stable_dir1);
    v.eq("m=15 subgroups of (G,+)", Some(2u64.pow(g + h)), c.n_sub_add);
    v.eq("m=15 subgroups of (G,·)", Some(2u64.pow(g) + (2u64.pow(h) - 1) * sigma(15)), c.n_sub_mult);
    v.eq("m=15 ratios", (Some((5, 8)), Some((8, 28))), (c.ratio1(), c.ratio2()));
    // 8/28 ≤ 2 (2/3)^2 = 8/9
    v.eq("m=15 bound", Some(true), r.bound_holds);
    v.check("m=15 bound, direct", 8 * 9 <= 8 * 28);

    let spec = FamilySpec::new(Family::GeneralizedDihedral, 105, 2, 104).unwrap();
    let r = family_formula_report(&spec, &limits()).unwrap();
    v.check("m=105 enumerated at order 210", r.verified());
    let c = r.enumerated.unwrap_or_default();
    v.eq("m=105 ratios", (Some((9, 16)), Some((16, 200))), (c.ratio1(), c.ratio2()));
    v.eq("m=105 subgroups of (G,·)", Some(8 + sigma(105)), c.n_sub_mult);
    v.within(start.elapsed(), Duration::from_secs(120));
    v
}

fn criterion_10() -> Verdict {
    let mut v = Verdict::new();
    let braces = suite(&limits()).unwrap();
    for (k, (name, b)) in braces.iter().take(3).enumerate() {
        let seed = SEED + k as u64;
        let first = mutation_fuzz(b, 100, seed);
        let second = mutation_fuzz(b, 100, seed);
        v.eq(&format!("{name} rejected"), (100, 100), (first.attempted, first.rejected));
        v.check(format!("{name} deterministic"), first == second);
    }
    v
}

fn criterion_11() -> Verdict {
    let mut v = Verdict::new();
    for (name, b) in suite(&limits()).unwrap() {
        v.eq(&format!("{name} violations"), 0, rho_violations(&b));
    }
    v
}

/// `|Aut(circ)| / |Aut_sb|` for the (9, 6, 2) brace with `∘ = +`, frozen as a
/// regression value: 108 automorphisms of Z/9 × Z/6, of which 6 also respect
/// the semidirect product (cross-checked by an independent brute force).
const Z9Z6_HGS: usize = 18;

fn criterion_12() -> Verdict {
    let mut v = Verdict::new();
    v.eq("trivial brace Z6", 1, trivial_brace(&cyclic_group(6).unwrap()).hgs_count(&limits()).unwrap());
    v.eq("lambda(S3)", 1, trivial_brace(&symmetric_group_s3()).hgs_count(&limits()).unwrap());
    let add = direct_product(&cyclic_group(9).unwrap(), &cyclic_group(6).unwrap()).unwrap();
    let auts = automorphism_group(&add, &limits()).unwrap();
    let pair = semidirect_biskew(9, 6, 2).unwrap();
    let brace_auts = pair.add_galois.automorphism_count(&limits()).unwrap();
    let hgs = pair.add_galois.hgs_count(&limits());
    v.check(
        format!("quotient {} / {brace_auts} is a positive integer", auts.len()),
        matches!(hgs, Ok(k) if k > 0) && auts.len() % brace_auts == 0,
    );
    v.eq("frozen quotient", Z9Z6_HGS, hgs.unwrap_or(0));
    v.eq("|Aut(Z/9 x Z/6)|", 12, auts.len());
    v
}

fn criterion_13() -> Verdict {
    let mut v = Verdict::new();
    let run = |jobs: &str, format: &str| {
        skewbrace_cli::run_args(["skewbrace", "--jobs", jobs, "--format", format, "paper-examples"])
    };
    for format in ["json", "text", "csv"] {
        let (c1, out1, _) = run("1", format);
        let (c4, out4, _) = run("4", format);
        v.check(format!("{format} output identical for jobs 1 and 4"), out1 == out4 && c1 == c4);
    }
    v
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 13] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        let verdict = run();
        let status = if verdict.pass() { "PASS" } else { "FAIL" };
        let failing: Vec<&str> = verdict
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        if failing.is_empty() {
            println!("criterion {n:>2}: {status} ({} checks)", verdict.checks.len());
        } else {
            println!("criterion {n:>2}: {status} [{}]", failing.join("; "));
            failed.push(n);
        }
        for (name, ok) in &verdict.checks {
            println!("    {} {name}", if *ok { "ok  " } else { "FAIL" });
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 13 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
