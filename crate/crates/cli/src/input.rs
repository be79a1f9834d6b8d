//! Problem files: parsing and schema validation with JSON-pointer errors.

use gitkit::cone::MAX_RANK;
use gitkit::downgrade::DowngradeClaim;
use gitkit::toric_git::GitClaim;
use gitkit::{IntMatrix, IntVector};
use serde::Serialize;
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Debug, Serialize)]
pub struct ProblemInput {
    pub rank: usize,
    pub cone_rays: Vec<IntVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subtorus_embedding: Option<Vec<Vec<i64>>>,
    #[serde(skip)]
    pub options: Options,
    #[serde(skip)]
    pub git_claims: Vec<GitClaim>,
    #[serde(skip)]
    pub downgrade_claims: Vec<DowngradeClaim>,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub box_bound: Option<u64>,
    pub format: Option<String>,
}

impl ProblemInput {
    /// The embedding as an `n × n'` matrix.
    pub fn embedding(&self) -> Result<IntMatrix, Failure> {
        let rows = self.subtorus_embedding.as_ref().ok_or_else(|| {
            Failure::invalid("/subtorus_embedding", "this command needs a subtorus embedding")
        })?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(self.rank, cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = (*x).into();
            }
        }
        Ok(m)
    }
}

pub fn parse(text: &str) -> Result<ProblemInput, Failure> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Failure::invalid("", format!("malformed JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Failure::invalid("", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "rank" | "cone_rays" | "subtorus_embedding" | "options" | "claims") {
            return Err(Failure::invalid(&format!("/{key}"), "unknown field"));
        }
    }

    let rank = match obj.get("rank").and_then(Value::as_u64) {
        Some(r) if r >= 1 => r as usize,
        _ => return Err(Failure::invalid("/rank", "expected a positive integer")),
    };
    if rank > MAX_RANK {
        return Err(Failure::unsupported("/rank", format!("rank {rank} exceeds the supported maximum {MAX_RANK}")));
    }

    let rays = obj
        .get("cone_rays")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::invalid("/cone_rays", "expected an array of integer vectors"))?;
    let cone_rays = rays
        .iter()
        .enumerate()
        .map(|(i, r)| int_row(r, Some(rank), &format!("/cone_rays/{i}")).map(|x| IntVector::from_i64s(&x)))
        .collect::<Result<Vec<_>, _>>()?;

    let subtorus_embedding = match obj.get("subtorus_embedding") {
        None | Some(Value::Null) => None,
        Some(Value::Array(rows)) => {
            if rows.len() != rank {
                return Err(Failure::invalid(
                    "/subtorus_embedding",
                    format!("expected {rank} rows, found {}", rows.len()),
                ));
            }
            let width = rows.first().and_then(Value::as_array).map(Vec::len);
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, r)| int_row(r, width, &format!("/subtorus_embedding/{i}")))
                .collect::<Result<Vec<_>, _>>()?;
            if width.unwrap_or(0) > rank {
                return Err(Failure::invalid("/subtorus_embedding/0", "more columns than rows"));
            }
            Some(parsed)
        }
        Some(_) => return Err(Failure::invalid("/subtorus_embedding", "expected a matrix")),
    };

    let mut options = Options::default();
    if let Some(o) = obj.get("options") {
        let o = o.as_object().ok_or_else(|| Failure::invalid("/options", "expected an object"))?;
        for (key, value) in o {
            match key.as_str() {
                "box" => {
                    options.box_bound = Some(
                        value
                            .as_u64()
                            .ok_or_else(|| Failure::invalid("/options/box", "expected a nonnegative integer"))?,
                    )
                }
                "format" => match value.as_str() {
                    Some(f @ ("json" | "md")) => options.format = Some(f.to_string()),
                    _ => return Err(Failure::invalid("/options/format", "expected \"json\" or \"md\"")),
                },
                _ => return Err(Failure::invalid(&format!("/options/{key}"), "unknown option")),
            }
        }
    }

    let k = subtorus_embedding.as_ref().and_then(|m| m.first()).map_or(0, Vec::len);
    let mut git_claims = Vec::new();
    let mut downgrade_claims = Vec::new();
    if let Some(c) = obj.get("claims") {
        let c = c.as_object().ok_or_else(|| Failure::invalid("/claims", "expected an object"))?;
        for (key, value) in c {
            let list = value
                .as_array()
                .ok_or_else(|| Failure::invalid(&format!("/claims/{key}"), "expected an array"))?;
            match key.as_str() {
                "git" => {
                    for (i, claim) in list.iter().enumerate() {
                        let at = format!("/claims/git/{i}");
                        git_claims.push(GitClaim {
                            weights: vector_list(claim.get("weights"), rank, &format!("{at}/weights"))?,
                            cone: vector_list(claim.get("cone"), rank, &format!("{at}/cone"))?,
                        });
                        if git_claims.last().is_some_and(|g| g.weights.is_empty()) {
                            return Err(Failure::invalid(&format!("{at}/weights"), "expected at least one weight"));
                        }
                    }
                }
                "downgrade" => {
                    for (i, claim) in list.iter().enumerate() {
                        let at = format!("/claims/downgrade/{i}");
                        let weight = claim
                            .get("weight")
                            .ok_or_else(|| Failure::invalid(&format!("{at}/weight"), "missing"))
                            .and_then(|w| int_row(w, Some(k), &format!("{at}/weight")))?;
                        downgrade_claims.push(DowngradeClaim {
                            weight: IntVector::from_i64s(&weight),
                            union: vector_list(claim.get("union"), rank, &format!("{at}/union"))?,
                            cone: vector_list(claim.get("cone"), k, &format!("{at}/cone"))?,
                        });
                    }
                }
                _ => return Err(Failure::invalid(&format!("/claims/{key}"), "unknown claim kind")),
            }
        }
    }

    Ok(ProblemInput {
        rank,
        cone_rays,
        subtorus_embedding,
        options,
        git_claims,
        downgrade_claims,
    })
}

fn int_row(value: &Value, len: Option<usize>, at: &str) -> Result<Vec<i64>, Failure> {
    let items = value
        .as_array()
        .ok_or_else(|| Failure::invalid(at, "expected an array of integers"))?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(Failure::invalid(at, format!("expected {n} entries, found {}", items.len())));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(j, x)| {
            x.as_i64()
                .ok_or_else(|| Failure::invalid(&format!("{at}/{j}"), "expected an integer"))
        })
        .collect()
}

fn vector_list(value: Option<&Value>, len: usize, at: &str) -> Result<Vec<IntVector>, Failure> {
    let items = value
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::invalid(at, "expected an array of integer vectors"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| int_row(x, Some(len), &format!("{at}/{i}")).map(|r| IntVector::from_i64s(&r)))
        .collect()
}
