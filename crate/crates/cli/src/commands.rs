//! `verify`, `ratio` and `ideals`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};
use skewbrace::constructions::{a5_factorization, exact_factorization, zappa_szep_brace, Family};
use skewbrace::group::{permutation_closure, PermutationGens};
use skewbrace::radical::{FpAlgebra, SubspaceBasis};
use skewbrace::{validate_skew_brace, Error, SkewBrace};

use crate::args::{Direction, IdealsArgs, RatioArgs, RunConfig, Side, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::family::resolve_spec;
use crate::fuzz::{error_kind, mutation_fuzz};
use crate::input::{self, InputDoc};
use crate::report::{gc_ratio_json, ratio_text, subgroup_json, subgroup_text, Caps, Outcome, Report};

pub(crate) fn outcome(
    command: &str,
    args: Value,
    digest: String,
    config: &RunConfig,
    result: Value,
    text: String,
    flags: Vec<String>,
) -> Outcome {
    let mut flags = flags;
    flags.sort();
    flags.dedup();
    Outcome {
        report: Report {
            command: command.to_string(),
            args,
            input_digest: digest,
            caps: Caps::from_config(config),
            result,
            flags,
            timing_ms: None,
        },
        text,
        table: None,
        exit: 0,
        diagnostics: Vec::new(),
    }
}

/// Digest of the canonical argument echo, for commands without an input file.
pub(crate) fn args_digest(args: &Value) -> String {
    input::digest(args.to_string().as_bytes())
}

fn witness(e: &Error) -> Value {
    match e {
        Error::BraceLawViolation { a, b, c } => json!([a, b, c]),
        Error::NotAssociative { a, b, c } => json!([a, b, c]),
        Error::NoInverse { element } => json!([element]),
        Error::NotClosed { a, b, .. } => json!([a, b]),
        Error::AlgebraNotAssociative { i, j, k } => json!([i, j, k]),
        _ => Value::Null,
    }
}

fn invalid(kind: &str, e: &Error) -> Value {
    json!({
        "kind": kind,
        "valid": false,
        "error": error_kind(e),
        "message": e.to_string(),
        "witness": witness(e),
    })
}

pub fn cmd_verify(args: &VerifyArgs, config: &RunConfig) -> CliResult<Outcome> {
    let limits = config.limits();
    let file = input::load(&args.file)?;
    let doc = input::parse_document(&file)?;
    let echo = json!({"file": args.file.display().to_string(), "mutations": args.mutations});
    let mut text = String::new();

    let (result, brace) = match doc {
        InputDoc::Algebra(a) => match a.build() {
            Err(CliError::Library(e)) if !e.is_cap() => (invalid("algebra", &e), None),
            Err(e) => return Err(e),
            Ok(alg) => {
                let brace = alg.brace(&limits)?;
                let result = json!({
                    "kind": "algebra",
                    "valid": true,
                    "p": alg.p(),
                    "dim": alg.dim(),
                    "order": brace.order(),
                    "nilpotency_index": alg.nilpotency_index(),
                    "bi_skew": brace.is_bi_skew(),
                });
                (result, Some(brace))
            }
        },
        InputDoc::Brace(b) => match validate_skew_brace(&b.star, &b.circ) {
            Err(e) if e.is_cap() => return Err(e.into()),
            Err(e) => (invalid("brace", &e), None),
            Ok(brace) => {
                let result = json!({
                    "kind": "brace",
                    "valid": true,
                    "order": brace.order(),
                    "bi_skew": brace.is_bi_skew(),
                });
                (result, Some(brace))
            }
        },
    };

    let mut result = result;
    let valid = result["valid"] == json!(true);
    if valid {
        let _ = writeln!(
            text,
            "valid {} of order {}",
            result["kind"].as_str().unwrap_or_default(),
            result["order"]
        );
        if let Some(k) = result.get("nilpotency_index") {
            let _ = writeln!(text, "nilpotency index: {k}");
        }
        let _ = writeln!(text, "bi-skew: {}", result["bi_skew"]);
    } else {
        let _ = writeln!(text, "invalid {}: {}", result["kind"].as_str().unwrap_or_default(), result["message"].as_str().unwrap_or_default());
        if !result["witness"].is_null() {
            let _ = writeln!(text, "witness: {}", result["witness"]);
        }
    }

    let mut exit = if valid { 0 } else { 1 };
    if let (Some(brace), true) = (brace, args.mutations > 0) {
        let s = mutation_fuzz(&brace, args.mutations, config.seed);
        let _ = writeln!(text, "mutations: {} of {} rejected", s.rejected, s.attempted);
        for (kind, count) in &s.by_kind {
            let _ = writeln!(text, "  {kind}: {count}");
        }
        if !s.accepted.is_empty() {
            exit = 1;
        }
        result["mutations"] = json!({
            "seed": config.seed,
            "attempted": s.attempted,
            "rejected": s.rejected,
            "by_kind": s.by_kind,
            "accepted": s.accepted,
        });
    }

    let mut out = outcome("verify", echo, file.digest, config, result, text, vec![]);
    out.exit = exit;
    Ok(out)
}

/// One brace to report on, with a short name and a description of its
/// operations.
struct Labeled {
    name: String,
    operations: String,
    brace: SkewBrace,
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Config(format!("missing --{flag}")))
}

fn orient(primary: Labeled, swapped_name: &str, swapped_ops: &str, dir: Direction) -> CliResult<Vec<Labeled>> {
    let flip = |b: &Labeled| -> CliResult<Labeled> {
        Ok(Labeled {
            name: swapped_name.to_string(),
            operations: swapped_ops.to_string(),
            brace: b.brace.swapped()?,
        })
    };
    Ok(match dir {
        Direction::Circ => vec![primary],
        Direction::Add => vec![flip(&primary)?],
        Direction::Both => {
            let other = flip(&primary)?;
            vec![primary, other]
        }
    })
}

fn parse_perm(degree: usize, cycles: &str) -> CliResult<Vec<usize>> {
    let gens = PermutationGens::parse_cycles(degree, &[cycles])?;
    Ok(gens.generators()[0].clone())
}

fn ratio_sources(args: &RatioArgs, config: &RunConfig) -> CliResult<(Vec<Labeled>, String, Vec<String>)> {
    let limits = config.limits();
    let mut flags = Vec::new();
    if let Some(tag) = &args.family {
        let m = require(args.m, "m")?;
        let (n, b) = if tag == "semidirect" {
            flags.push("family:unchecked_semidirect".to_string());
            (require(args.n, "n")?, require(args.b, "b")?)
        } else {
            let family = Family::from_str(tag).map_err(|e| CliError::Config(e.to_string()))?;
            let spec = resolve_spec(family, m, args.n, args.b)?;
            flags.push(format!("family:{}", spec.family()));
            (spec.n(), spec.b())
        };
        limits.check_order((m * n) as usize)?;
        let pair = skewbrace::constructions::semidirect_biskew(m as usize, n as usize, b)?;
        let primary = Labeled {
            name: "mult_galois".into(),
            operations: "⋆ = +, ∘ = ·".into(),
            brace: pair.mult_galois,
        };
        let dir = args.direction.unwrap_or(Direction::Both);
        let digest = input::digest(format!("semidirect:{m}:{n}:{b}").as_bytes());
        return Ok((orient(primary, "add_galois", "⋆ = ·, ∘ = +", dir)?, digest, flags));
    }
    if let Some(source) = &args.algebra {
        let (alg, digest) = input::resolve_algebra(source, args.p, args.dim)?;
        let dir = args.direction.unwrap_or(Direction::Circ);
        flags.push("provenance:radical".into());
        let mut out = Vec::new();
        if matches!(dir, Direction::Circ | Direction::Both) {
            out.push(Labeled {
                name: "radical".into(),
                operations: "⋆ = +, ∘ = circle".into(),
                brace: alg.brace(&limits)?,
            });
        }
        if matches!(dir, Direction::Add | Direction::Both) {
            out.push(Labeled {
                name: "flipped".into(),
                operations: "⋆ = circle, ∘ = +".into(),
                brace: alg.flipped_brace(&limits)?,
            });
        }
        return Ok((out, digest, flags));
    }
    if let Some(kind) = &args.zappa_szep {
        flags.push("provenance:zappa_szep".into());
        let (f, digest) = match kind.as_str() {
            "a5" => (a5_factorization()?, input::digest(b"zappa-szep:a5")),
            "perm" => {
                let degree = require(args.degree, "degree")?;
                if args.gens.is_empty() || args.left.is_empty() || args.right.is_empty() {
                    return Err(CliError::Config("--zappa-szep perm needs --gens, --left and --right".into()));
                }
                let gens: Vec<&str> = args.gens.iter().map(String::as_str).collect();
                let closure = permutation_closure(&PermutationGens::parse_cycles(degree, &gens)?, limits.order_cap)?;
                let seed = |list: &[String]| -> CliResult<Vec<usize>> {
                    list.iter()
                        .map(|s| {
                            let perm = parse_perm(degree, s)?;
                            closure.index_of(&perm).ok_or_else(|| {
                                Error::BadPermutation(format!("{s} is not in the generated group")).into()
                            })
                        })
                        .collect()
                };
                let (left, right) = (seed(&args.left)?, seed(&args.right)?);
                let key = format!("zappa-szep:{degree}:{}:{}:{}", args.gens.join(";"), args.left.join(";"), args.right.join(";"));
                (exact_factorization(&closure.group, &left, &right)?, input::digest(key.as_bytes()))
            }
            other => return Err(CliError::Config(format!("unknown --zappa-szep source {other:?}; use a5 or perm"))),
        };
        let primary = Labeled {
            name: "zappa_szep".into(),
            operations: "⋆ = parent, ∘ = g_L h g_R⁻¹".into(),
            brace: zappa_szep_brace(&f)?,
        };
        let dir = args.direction.unwrap_or(Direction::Circ);
        return Ok((orient(primary, "zappa_szep_swapped", "⋆ = g_L h g_R⁻¹, ∘ = parent", dir)?, digest, flags));
    }
    if let Some(path) = &args.brace {
        let file = input::load(path)?;
        let InputDoc::Brace(b) = input::parse_document(&file)? else {
            return Err(CliError::parse(&file.name, "expected a brace file"));
        };
        limits.check_order(b.star.len())?;
        let primary = Labeled {
            name: "brace".into(),
            operations: "from file".into(),
            brace: validate_skew_brace(&b.star, &b.circ)?,
        };
        let dir = args.direction.unwrap_or(Direction::Circ);
        return Ok((orient(primary, "swapped", "from file, swapped", dir)?, file.digest, flags));
    }
    Err(CliError::Config(
        "ratio needs one of --family, --algebra, --zappa-szep or --brace".into(),
    ))
}

fn ratio_echo(args: &RatioArgs) -> Value {
    let mut echo = serde_json::Map::new();
    let mut put = |k: &str, v: Value| {
        if !v.is_null() {
            echo.insert(k.to_string(), v);
        }
    };
    put("family", json!(args.family));
    put("m", json!(args.m));
    put("n", json!(args.n));
    put("b", json!(args.b));
    put("algebra", json!(args.algebra));
    put("p", json!(args.p));
    put("dim", json!(args.dim));
    put("zappa_szep", json!(args.zappa_szep));
    put("degree", json!(args.degree));
    if !args.gens.is_empty() {
        put("gens", json!(args.gens));
        put("left", json!(args.left));
        put("right", json!(args.right));
    }
    put("brace", json!(args.brace.as_ref().map(|p| p.display().to_string())));
    put("direction", json!(args.direction.map(|d| format!("{d:?}").to_lowercase())));
    put("counts_only", json!(args.counts_only));
    Value::Object(echo)
}

pub fn cmd_ratio(args: &RatioArgs, config: &RunConfig) -> CliResult<Outcome> {
    let limits = config.limits();
    let (braces, digest, flags) = ratio_sources(args, config)?;
    let mut text = String::new();
    let mut results = Vec::new();
    for b in &braces {
        let r = b.brace.gc_ratio(&limits)?;
        let star = b.brace.star();
        let mut entry = json!({
            "name": b.name,
            "operations": b.operations,
            "order": b.brace.order(),
            "bi_skew": b.brace.is_bi_skew(),
            "ratio": gc_ratio_json(&r),
            "stable_count": r.numerator,
            "circ_subgroup_count": r.denominator,
        });
        let _ = writeln!(
            text,
            "{} ({}), order {}: GC = {}",
            b.name,
            b.operations,
            b.brace.order(),
            ratio_text(r.numerator as u64, r.denominator as u64)
        );
        if !args.counts_only {
            entry["stable"] = Value::Array(r.stable.iter().map(|h| subgroup_json(star, h)).collect());
            let _ = writeln!(text, "  stable subgroups of the additive group:");
            for h in &r.stable {
                let _ = writeln!(text, "    {}", subgroup_text(star, h));
            }
        }
        results.push(entry);
    }
    let result = json!({"braces": results});
    Ok(outcome("ratio", ratio_echo(args), digest, config, result, text, flags))
}

/// `(1 3 4)` style, 1-indexed.
pub fn pivot_pattern(pivots: &[usize]) -> String {
    let parts: Vec<String> = pivots.iter().map(|p| (p + 1).to_string()).collect();
    format!("({})", parts.join(" "))
}

fn ideal_groups(ideals: &[SubspaceBasis]) -> BTreeMap<(usize, Vec<usize>), Vec<&SubspaceBasis>> {
    let mut groups: BTreeMap<(usize, Vec<usize>), Vec<&SubspaceBasis>> = BTreeMap::new();
    for s in ideals {
        groups.entry((s.rank(), s.pivots())).or_default().push(s);
    }
    for list in groups.values_mut() {
        list.sort_by(|a, b| a.rows().cmp(b.rows()));
    }
    groups
}

fn side_report(alg: &FpAlgebra, side: Side, budget: usize, text: &mut String) -> CliResult<Value> {
    let (name, ideals) = match side {
        Side::Left => ("left", alg.left_ideals(budget)?),
        Side::Right => ("right", alg.right_ideals(budget)?),
        Side::Both => unreachable!("split by the caller"),
    };
    let groups = ideal_groups(&ideals);
    let _ = writeln!(text, "{name} ideals: {}", ideals.len());
    let mut out = Vec::new();
    for ((rank, pivots), list) in &groups {
        let pattern = pivot_pattern(pivots);
        let _ = writeln!(text, "  {pattern}: {}", list.len());
        out.push(json!({
            "rank": rank,
            "pivots": pivots,
            "pattern": pattern,
            "count": list.len(),
            "bases": list.iter().map(|s| s.rows().to_vec()).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({"side": name, "count": ideals.len(), "groups": out}))
}

pub fn cmd_ideals(args: &IdealsArgs, config: &RunConfig) -> CliResult<Outcome> {
    let (alg, digest) = input::resolve_algebra(&args.algebra, args.p, args.dim)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "algebra over F_{} of dimension {}, nilpotency index {}",
        alg.p(),
        alg.dim(),
        alg.nilpotency_index()
    );
    let sides = match args.side {
        Side::Both => vec![Side::Left, Side::Right],
        s => vec![s],
    };
    let mut reports = Vec::new();
    for s in sides {
        reports.push(side_report(&alg, s, config.budget(), &mut text)?);
    }
    let echo = json!({
        "algebra": args.algebra,
        "p": args.p,
        "dim": args.dim,
        "side": format!("{:?}", args.side).to_lowercase(),
    });
    let result = json!({
        "algebra": {
            "p": alg.p(),
            "dim": alg.dim(),
            "labels": alg.labels(),
            "nilpotency_index": alg.nilpotency_index(),
        },
        "sides": reports,
    });
    Ok(outcome("ideals", echo, digest, config, result, text, vec![]))
}
