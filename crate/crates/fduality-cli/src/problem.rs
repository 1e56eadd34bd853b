//! Problem and polytope files. Indices on disk are 1-based.

use fduality::f_process::{validate, Case, PartitionedFraming};
use fduality::lattice::FanMatrix;
use fduality::polytope::{HPolytope, VPolytope};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::io::Read;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub name: String,
    /// Rows of `V`, one per coordinate of `N`.
    pub fan_matrix: Vec<Vec<i64>>,
    pub framing: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    /// Consecutive blocks, used when `partition` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_case: Option<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_cap: Option<u32>,
}

pub fn rows_to_columns(rows: &[Vec<i64>]) -> Result<(usize, Vec<Vec<i64>>), String> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if n == 0 || m == 0 {
        return Err("fan_matrix is empty".into());
    }
    if let Some(i) = rows.iter().position(|r| r.len() != m) {
        return Err(format!("fan_matrix row {} has {} entries, expected {m}", i + 1, rows[i].len()));
    }
    Ok((n, (0..m).map(|j| rows.iter().map(|r| r[j]).collect()).collect()))
}

pub fn columns_to_rows(v: &FanMatrix) -> Vec<Vec<i64>> {
    (0..v.n).map(|i| v.columns.iter().map(|c| c[i]).collect()).collect()
}

pub fn one_based(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    parts.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect()
}

impl ProblemFile {
    pub fn from_framing(name: &str, pf: &PartitionedFraming) -> Self {
        ProblemFile {
            name: name.to_string(),
            fan_matrix: columns_to_rows(&pf.v),
            framing: pf.a.clone(),
            partition: Some(one_based(&pf.partition)),
            part_sizes: None,
            expect_case: None,
            h_cap: None,
        }
    }

    fn partition0(&self, m: usize) -> Result<Vec<Vec<usize>>, String> {
        match (&self.partition, &self.part_sizes) {
            (Some(p), sizes) => {
                if let Some(s) = sizes {
                    let got: Vec<usize> = p.iter().map(Vec::len).collect();
                    if &got != s {
                        return Err(format!("part_sizes {s:?} disagree with partition sizes {got:?}"));
                    }
                }
                p.iter()
                    .map(|part| {
                        part.iter()
                            .map(|&i| if i == 0 { Err("partition indices are 1-based".to_string()) } else { Ok(i - 1) })
                            .collect()
                    })
                    .collect()
            }
            (None, Some(s)) => {
                if s.iter().sum::<usize>() != m {
                    return Err(format!("part_sizes {s:?} do not add up to {m} columns"));
                }
                let mut start = 0;
                Ok(s.iter()
                    .map(|&len| {
                        let p: Vec<usize> = (start..start + len).collect();
                        start += len;
                        p
                    })
                    .collect())
            }
            (None, None) => Ok(vec![(0..m).collect()]),
        }
    }

    /// The framing, with every violated condition reported.
    pub fn to_framing(&self) -> Result<PartitionedFraming, String> {
        let (n, columns) = rows_to_columns(&self.fan_matrix)?;
        let v = FanMatrix::new(n, columns).map_err(|e| e.to_string())?;
        let partition = self.partition0(v.m())?;
        let pf = PartitionedFraming { v, a: self.framing.clone(), partition };
        let diag = validate(&pf);
        if !diag.issues.is_empty() {
            let msgs: Vec<String> = diag.issues.iter().map(ToString::to_string).collect();
            return Err(msgs.join("; "));
        }
        Ok(pf)
    }
}

/// Either explicit vertices or a framed fan matrix.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PolytopeFile {
    Vertices { vertices: Vec<Vec<i64>> },
    Framed { fan_matrix: Vec<Vec<i64>>, framing: Vec<i64> },
}

impl PolytopeFile {
    pub fn to_polytope(&self) -> Result<VPolytope, String> {
        match self {
            PolytopeFile::Vertices { vertices } => {
                let n = vertices.first().map_or(0, Vec::len);
                VPolytope::from_integer_points(n, vertices).map_err(|e| e.to_string())
            }
            PolytopeFile::Framed { fan_matrix, framing } => {
                let (n, columns) = rows_to_columns(fan_matrix)?;
                let v = FanMatrix::new(n, columns).map_err(|e| e.to_string())?;
                HPolytope::from_framing(&v, framing).and_then(|h| h.vertices()).map_err(|e| e.to_string())
            }
        }
    }
}

/// `-` reads stdin. `.toml` files are TOML; anything else is tried as JSON, then TOML.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    if path.extension().is_some_and(|e| e == "toml") {
        return toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()));
    }
    match serde_json::from_str(&text) {
        Ok(v) => Ok(v),
        Err(je) => toml::from_str(&text).map_err(|_| format!("{}: {je}", path.display())),
    }
}
