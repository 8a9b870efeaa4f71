//! Family sweeps: closed-form counts against enumeration, one row per spec.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};
use skewbrace::constructions::{family_formula_report, Counts, Family, FamilySpec, FormulaReport};
use skewbrace::{Error, Limits};

use crate::args::{FamilyArgs, RunConfig};
use crate::commands::{args_digest, outcome};
use crate::error::{CliError, CliResult};
use crate::input;
use crate::report::{ratio_json, Outcome, Table};

pub const CSV_COLUMNS: [&str; 15] = [
    "family",
    "m",
    "n",
    "b",
    "g",
    "h",
    "n_sub_add",
    "n_sub_mult",
    "n_stable_dir1",
    "n_stable_dir2",
    "ratio1_num",
    "ratio1_den",
    "ratio2_num",
    "ratio2_den",
    "predicted_match",
];

/// Fills in `n` and `b` when omitted: the dihedral family defaults to
/// `n = 2, b = m - 1`; otherwise `n` is required and `b` is the smallest
/// value giving a valid spec.
pub fn resolve_spec(family: Family, m: u64, n: Option<u64>, b: Option<u64>) -> skewbrace::Result<FamilySpec> {
    let n = match (n, family) {
        (Some(n), _) => n,
        (None, Family::GeneralizedDihedral) => 2,
        (None, _) => return Err(Error::InvalidFamily(format!("n is required for {family}"))),
    };
    if let Some(b) = b {
        return FamilySpec::new(family, m, n, b);
    }
    if family == Family::GeneralizedDihedral && n == 2 && m > 2 {
        return FamilySpec::new(family, m, n, m - 1);
    }
    (2..m.max(2))
        .find_map(|b| FamilySpec::new(family, m, n, b).ok())
        .ok_or_else(|| Error::InvalidFamily(format!("no b < {m} gives a valid {family} spec with n={n}")))
}

/// A requested spec before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecRequest {
    pub family: String,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub b: Option<u64>,
    /// Problem found while reading the request itself.
    pub problem: Option<String>,
}

impl SpecRequest {
    fn resolve(&self) -> Result<FamilySpec, String> {
        if let Some(p) = &self.problem {
            return Err(p.clone());
        }
        let family = Family::from_str(&self.family).map_err(|e| e.to_string())?;
        let m = self.m.ok_or("m is required")?;
        resolve_spec(family, m, self.n, self.b).map_err(|e| e.to_string())
    }
}

/// `family=pq m=7 n=3 b=2`; blank lines and `#` comments are skipped.
pub fn parse_batch(text: &str) -> Vec<SpecRequest> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let mut req = SpecRequest {
            family: String::new(),
            m: None,
            n: None,
            b: None,
            problem: None,
        };
        let mut problems = Vec::new();
        for token in line.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                problems.push(format!("expected key=value, got {token:?}"));
                continue;
            };
            let number = || value.parse::<u64>().map_err(|_| format!("{key}={value:?} is not a non-negative integer"));
            match key {
                "family" => req.family = value.to_string(),
                "m" => number().map(|v| req.m = Some(v)).unwrap_or_else(|e| problems.push(e)),
                "n" => number().map(|v| req.n = Some(v)).unwrap_or_else(|e| problems.push(e)),
                "b" => number().map(|v| req.b = Some(v)).unwrap_or_else(|e| problems.push(e)),
                other => problems.push(format!("unknown key {other:?}")),
            }
        }
        if req.family.is_empty() {
            problems.push("family is required".into());
        }
        if !problems.is_empty() {
            req.problem = Some(format!("line {}: {}", lineno + 1, problems.join("; ")));
        }
        out.push(req);
    }
    out
}

/// Grid tokens such as `dihedral m=15,105 n=2`; a token without `=` starts a
/// new grid.
pub fn parse_grid(tokens: &[String]) -> CliResult<Vec<SpecRequest>> {
    type Keys = Vec<(String, Vec<u64>)>;
    let mut grids: Vec<(String, Keys)> = Vec::new();
    for token in tokens.iter().flat_map(|t| t.split_whitespace()) {
        match token.split_once('=') {
            None => grids.push((token.to_string(), Vec::new())),
            Some((key, values)) => {
                let grid = grids
                    .last_mut()
                    .ok_or_else(|| CliError::Config(format!("grid value {token:?} before a family name")))?;
                if !matches!(key, "m" | "n" | "b") {
                    return Err(CliError::Config(format!("unknown grid key {key:?}")));
                }
                let parsed = values
                    .split(',')
                    .map(|v| v.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Config(format!("bad grid values in {token:?}")))?;
                grid.1.push((key.to_string(), parsed));
            }
        }
    }
    let mut out = Vec::new();
    for (family, keys) in grids {
        let list = |k: &str| -> Vec<Option<u64>> {
            keys.iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.iter().copied().map(Some).collect())
                .unwrap_or_else(|| vec![None])
        };
        for m in list("m") {
            for n in list("n") {
                for b in list("b") {
                    out.push(SpecRequest {
                        family: family.clone(),
                        m,
                        n,
                        b,
                        problem: None,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub request: SpecRequest,
    pub report: Result<FormulaReport, String>,
}

impl FamilyRow {
    /// `true`, `false`, `unverified` (too large to enumerate) or `error`.
    pub fn status(&self) -> &'static str {
        match &self.report {
            Err(_) => "error",
            Ok(r) if !r.verified() => "unverified",
            Ok(r) if r.all_match() => "true",
            Ok(_) => "false",
        }
    }

    /// Enumerated counts where available, predictions otherwise.
    pub fn counts(&self) -> Option<Counts> {
        let r = self.report.as_ref().ok()?;
        Some(r.enumerated.unwrap_or(r.predicted))
    }

    fn csv_row(&self) -> Vec<String> {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        match &self.report {
            Err(_) => {
                let mut row = vec![self.request.family.clone(), opt(self.request.m), opt(self.request.n), opt(self.request.b)];
                row.resize(CSV_COLUMNS.len() - 1, String::new());
                row.push(self.status().into());
                row
            }
            Ok(r) => {
                let c = self.counts().unwrap_or_default();
                let (r1, r2) = (c.ratio1(), c.ratio2());
                vec![
                    r.spec.family().to_string(),
                    r.spec.m().to_string(),
                    r.spec.n().to_string(),
                    r.spec.b().to_string(),
                    r.spec.g().to_string(),
                    r.spec.h().to_string(),
                    opt(c.n_sub_add),
                    opt(c.n_sub_mult),
                    opt(c.n_stable_dir1),
                    opt(c.n_stable_dir2),
                    opt(r1.map(|r| r.0)),
                    opt(r1.map(|r| r.1)),
                    opt(r2.map(|r| r.0)),
                    opt(r2.map(|r| r.1)),
                    self.status().into(),
                ]
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let counts_json = |c: &Counts| {
            let mut map = serde_json::Map::new();
            for (k, v) in c.entries() {
                map.insert(k.into(), json!(v));
            }
            Value::Object(map)
        };
        match &self.report {
            Err(e) => json!({
                "family": self.request.family,
                "m": self.request.m,
                "n": self.request.n,
                "b": self.request.b,
                "predicted_match": self.status(),
                "error": e,
            }),
            Ok(r) => {
                let c = self.counts().unwrap_or_default();
                let ratio = |x: Option<(u64, u64)>| x.map(|(a, b)| ratio_json(a, b)).unwrap_or(Value::Null);
                let matches: serde_json::Map<String, Value> =
                    r.matches().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                json!({
                    "family": r.spec.family().to_string(),
                    "m": r.spec.m(),
                    "n": r.spec.n(),
                    "b": r.spec.b(),
                    "g": r.spec.g(),
                    "h": r.spec.h(),
                    "order": r.spec.order(),
                    "predicted": counts_json(&r.predicted),
                    "enumerated": r.enumerated.as_ref().map(counts_json),
                    "matches": matches,
                    "bound_holds": r.bound_holds,
                    "ratio1": ratio(c.ratio1()),
                    "ratio2": ratio(c.ratio2()),
                    "predicted_match": self.status(),
                })
            }
        }
    }
}

/// Evaluates every request on the current rayon pool; output order follows
/// the input order.
pub fn evaluate(requests: &[SpecRequest], limits: &Limits) -> Vec<FamilyRow> {
    requests
        .par_iter()
        .map(|req| FamilyRow {
            request: req.clone(),
            report: req
                .resolve()
                .and_then(|spec| family_formula_report(&spec, limits).map_err(|e| e.to_string())),
        })
        .collect()
}

pub fn rows_table(rows: &[FamilyRow]) -> Table {
    Table {
        columns: CSV_COLUMNS.iter().map(|c| c.to_string()).collect(),
        rows: rows.iter().map(FamilyRow::csv_row).collect(),
    }
}

fn rows_text(rows: &[FamilyRow]) -> String {
    let mut text = String::new();
    if rows.is_empty() {
        text.push_str("no specs\n");
    }
    for row in rows {
        match &row.report {
            Err(e) => {
                let _ = writeln!(text, "{} m={:?}: error: {e}", row.request.family, row.request.m);
            }
            Ok(r) => {
                let c = row.counts().unwrap_or_default();
                let show = |x: Option<(u64, u64)>| x.map(|(a, b)| format!("{a}/{b}")).unwrap_or_else(|| "?".into());
                let _ = writeln!(
                    text,
                    "{}: ratio1 {} ratio2 {} match {}",
                    r.spec,
                    show(c.ratio1()),
                    show(c.ratio2()),
                    row.status()
                );
            }
        }
    }
    text
}

pub fn cmd_family(args: &FamilyArgs, config: &RunConfig) -> CliResult<Outcome> {
    let (requests, digest, echo) = match &args.batch {
        Some(path) => {
            let file = input::load(path)?;
            let text = String::from_utf8(file.bytes.clone())
                .map_err(|_| CliError::parse(&file.name, "batch file is not UTF-8"))?;
            let echo = json!({"batch": path.display().to_string()});
            (parse_batch(&text), file.digest, echo)
        }
        None => {
            let family = args
                .family
                .clone()
                .ok_or_else(|| CliError::Config("family needs --batch or --family with --m".into()))?;
            if args.m.is_empty() {
                return Err(CliError::Config("--family needs at least one --m".into()));
            }
            let requests: Vec<SpecRequest> = args
                .m
                .iter()
                .map(|&m| SpecRequest {
                    family: family.clone(),
                    m: Some(m),
                    n: args.n,
                    b: args.b,
                    problem: None,
                })
                .collect();
            let echo = json!({"family": family, "m": args.m, "n": args.n, "b": args.b});
            let digest = args_digest(&echo);
            (requests, digest, echo)
        }
    };
    let rows = evaluate(&requests, &config.limits());
    let diagnostics: Vec<String> = rows
        .iter()
        .filter_map(|r| r.report.as_ref().err().map(|e| format!("{}: {e}", r.request.family)))
        .collect();
    let failed = rows.iter().any(|r| matches!(r.status(), "error" | "false"));
    let mut flags = Vec::new();
    if rows.iter().any(|r| r.status() == "unverified") {
        flags.push("cap:unverified_rows".to_string());
    }
    let result = json!({
        "count": rows.len(),
        "rows": rows.iter().map(FamilyRow::to_json).collect::<Vec<_>>(),
    });
    let mut out = outcome("family", echo, digest, config, result, rows_text(&rows), flags);
    out.table = Some(rows_table(&rows));
    out.exit = i32::from(failed);
    out.diagnostics = diagnostics;
    Ok(out)
}
