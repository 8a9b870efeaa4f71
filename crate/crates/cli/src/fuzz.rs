//! Single-entry mutations of a circle table.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewbrace::{validate_skew_brace, Error, SkewBrace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzSummary {
    pub attempted: usize,
    pub rejected: usize,
    /// Rejections per error kind, keyed by variant name.
    pub by_kind: BTreeMap<String, usize>,
    /// Mutations `(a, b, new value)` that still validated.
    pub accepted: Vec<(usize, usize, usize)>,
}

pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

/// Changes one entry of the circle table to a different value, drawn from
/// ChaCha8 seeded with `seed`, and revalidates; repeated `count` times.
pub fn mutation_fuzz(brace: &SkewBrace, count: usize, seed: u64) -> FuzzSummary {
    let n = brace.order();
    let star = brace.star().to_table();
    let base = brace.circ().to_table();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = FuzzSummary {
        attempted: 0,
        rejected: 0,
        by_kind: BTreeMap::new(),
        accepted: Vec::new(),
    };
    if n < 2 {
        return summary;
    }
    for _ in 0..count {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let value = (base[a][b] + rng.gen_range(1..n)) % n;
        let mut circ = base.clone();
        circ[a][b] = value;
        summary.attempted += 1;
        match validate_skew_brace(&star, &circ) {
            Ok(_) => summary.accepted.push((a, b, value)),
            Err(e) => {
                summary.rejected += 1;
                *summary.by_kind.entry(error_kind(&e)).or_default() += 1;
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewbrace::brace::trivial_brace;
    use skewbrace::group::symmetric_group_s3;

    #[test]
    fn s3_mutations_rejected_and_reproducible() {
        let b = trivial_brace(&symmetric_group_s3());
        let s = mutation_fuzz(&b, 30, 11);
        assert_eq!(s.rejected, 30);
        assert_eq!(s, mutation_fuzz(&b, 30, 11));
    }

    #[test]
    fn kind_names() {
        assert_eq!(error_kind(&Error::NoIdentity), "NoIdentity");
        assert_eq!(
            error_kind(&Error::BraceLawViolation { a: 1, b: 2, c: 3 }),
            "BraceLawViolation"
        );
    }
}
