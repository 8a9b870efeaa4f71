//! JSON input files for algebras and raw braces.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use skewbrace::radical::{degraaf_algebra, FpAlgebra};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<u32>,
}

/// `{p, dim, labels?, products: [{i, j, value}]}`, 0-indexed, unlisted
/// products zero.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

impl AlgebraFile {
    pub fn build(&self) -> CliResult<FpAlgebra> {
        let products: Vec<(usize, usize, Vec<u32>)> = self
            .products
            .iter()
            .map(|e| (e.i, e.j, e.value.clone()))
            .collect();
        Ok(FpAlgebra::from_products(
            self.p,
            self.dim,
            &products,
            self.labels.clone(),
        )?)
    }
}

/// `{star: [[..]], circ: [[..]]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceFile {
    pub star: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub enum InputDoc {
    Algebra(AlgebraFile),
    Brace(BraceFile),
}

/// Bytes of a file plus their hex sha256.
pub struct LoadedFile {
    pub name: String,
    pub bytes: Vec<u8>,
    pub digest: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load(path: &Path) -> CliResult<LoadedFile> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::parse(name.clone(), format!("cannot read file: {e}")))?;
    Ok(LoadedFile {
        digest: digest(&bytes),
        name,
        bytes,
    })
}

fn json_error(name: &str, e: serde_json::Error) -> CliError {
    CliError::parse(
        name,
        format!("line {}, column {}: {e}", e.line(), e.column()),
    )
}

/// Decides between the two schemas by their distinguishing keys.
pub fn parse_document(file: &LoadedFile) -> CliResult<InputDoc> {
    if file.bytes.iter().all(|b| b.is_ascii_whitespace()) {
        return Err(CliError::parse(&file.name, "empty input"));
    }
    let value: serde_json::Value =
        serde_json::from_slice(&file.bytes).map_err(|e| json_error(&file.name, e))?;
    let is_brace = value.get("star").is_some() || value.get("circ").is_some();
    if is_brace {
        serde_json::from_value(value)
            .map(InputDoc::Brace)
            .map_err(|e| CliError::parse(&file.name, e.to_string()))
    } else {
        serde_json::from_value(value)
            .map(InputDoc::Algebra)
            .map_err(|e| CliError::parse(&file.name, e.to_string()))
    }
}

/// `degraaf` (with `p`), `zero` (with `p` and `dim`) or a path to an algebra
/// file. Returns the algebra and the digest of its source.
pub fn resolve_algebra(
    source: &str,
    p: Option<u32>,
    dim: Option<usize>,
) -> CliResult<(FpAlgebra, String)> {
    if source == "zero" {
        let (Some(p), Some(dim)) = (p, dim) else {
            return Err(CliError::Config("--algebra zero needs --p and --dim".into()));
        };
        let alg = FpAlgebra::zero_algebra(p, dim)?;
        return Ok((alg, digest(format!("zero:{p}:{dim}").as_bytes())));
    }
    if source == "degraaf" {
        let p = p.ok_or_else(|| CliError::Config("--algebra degraaf needs --p".into()))?;
        let alg = degraaf_algebra(p)?;
        return Ok((alg, digest(format!("degraaf:{p}").as_bytes())));
    }
    let file = load(Path::new(source))?;
    match parse_document(&file)? {
        InputDoc::Algebra(a) => Ok((a.build()?, file.digest)),
        InputDoc::Brace(_) => Err(CliError::parse(
            &file.name,
            "expected an algebra file, found a brace file",
        )),
    }
}

/// The algebra file describing the a² = c, ab = d table.
pub fn degraaf_document(p: u32) -> String {
    let doc = serde_json::json!({
        "p": p,
        "dim": 4,
        "labels": ["a", "b", "c", "d"],
        "products": [
            {"i": 0, "j": 0, "value": [0, 0, 1, 0]},
            {"i": 0, "j": 1, "value": [0, 0, 0, 1]},
        ],
    });
    serde_json::to_string_pretty(&doc).expect("static document serializes")
}
