//! Graph documents (JSON) and matrix output formats.
//!
//! A graph document looks like
//!
//! ```json
//! {
//!   "nodes": ["a", "b"],
//!   "edges": [{"head": "a", "tail": "b", "weight": 2}],
//!   "partition": {"boundary_size": 2},
//!   "voltages": [3, 1]
//! }
//! ```
//!
//! Weights and voltages may be JSON numbers, strings such as `"3/4"`, or
//! `{"num": 3, "den": 4}` objects. Numbers are read exactly from their
//! decimal text, so `0.1` is one tenth.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Edge, NetworkSystem, NodeLabel, Violations};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid network: {0}")]
    Invalid(#[from] Violations),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl IoError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Field {
            path: path.into(),
            message: message.into(),
        }
    }

    /// I/O failures are distinguished from content errors by the CLI.
    pub fn is_file_error(&self) -> bool {
        matches!(self, IoError::File { .. })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    nodes: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    partition: Option<RawPartition>,
    #[serde(default)]
    voltages: Option<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    head: String,
    tail: String,
    weight: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartition {
    boundary_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub head: String,
    pub tail: String,
    pub weight: Rational,
}

/// The contents of a graph file, before structural validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub boundary_size: Option<usize>,
    pub voltages: Option<Vec<Rational>>,
}

fn integer_value(v: &Value, path: &str) -> Result<BigInt, IoError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(IoError::field(path, "expected an integer")),
    };
    BigInt::from_str(text.trim()).map_err(|_| IoError::field(path, format!("expected an integer, got `{text}`")))
}

/// Reads a number, a `"p/q"` string or a `{"num", "den"}` object exactly.
pub fn rational_value(v: &Value, path: &str) -> Result<Rational, IoError> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| IoError::field(path, e)),
        Value::String(s) => parse_rational(s).map_err(|e| IoError::field(path, e)),
        Value::Object(map) => {
            let part = |key: &str| {
                map.get(key)
                    .ok_or_else(|| IoError::field(path, format!("missing `{key}`")))
                    .and_then(|x| integer_value(x, &format!("{path}.{key}")))
            };
            if let Some(extra) = map.keys().find(|k| *k != "num" && *k != "den") {
                return Err(IoError::field(path, format!("unknown field `{extra}`")));
            }
            let (num, den) = (part("num")?, part("den")?);
            if den == BigInt::from(0) {
                return Err(IoError::field(path, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        Value::Null => Err(IoError::field(path, "missing value")),
        _ => Err(IoError::field(
            path,
            "expected a number, a \"p/q\" string or {num, den}",
        )),
    }
}

pub fn parse_document(bytes: &[u8]) -> Result<GraphDocument, IoError> {
    let raw: RawDocument = serde_json::from_slice(bytes).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let edges = raw
        .edges
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            Ok(EdgeRecord {
                weight: rational_value(&e.weight, &format!("edges[{k}].weight"))?,
                head: e.head,
                tail: e.tail,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let voltages = raw
        .voltages
        .map(|vs| {
            vs.iter()
                .enumerate()
                .map(|(k, v)| rational_value(v, &format!("voltages[{k}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(GraphDocument {
        nodes: raw.nodes,
        edges,
        boundary_size: raw.partition.map(|p| p.boundary_size),
        voltages,
    })
}

impl GraphDocument {
    pub fn to_system(&self) -> Result<NetworkSystem, IoError> {
        let mut weights: HashMap<Edge, Rational> = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, rec) in self.edges.iter().enumerate() {
            let edge = Edge::new(rec.head.as_str(), rec.tail.as_str());
            if let Some(prev) = weights.get(&edge) {
                if *prev != rec.weight {
                    return Err(IoError::field(
                        format!("edges[{k}].weight"),
                        format!(
                            "repeated edge {edge} has weight {} but an earlier copy has {prev}",
                            rec.weight
                        ),
                    ));
                }
            }
            weights.insert(edge.clone(), rec.weight.clone());
            edges.push(edge);
        }
        let nodes = self.nodes.iter().map(|n| NodeLabel::new(n.as_str())).collect();
        Ok(NetworkSystem::build(nodes, edges, weights)?)
    }

    pub fn from_system(sys: &NetworkSystem) -> Self {
        Self {
            nodes: sys.nodes().iter().map(|n| n.as_str().to_string()).collect(),
            edges: sys
                .edges()
                .iter()
                .enumerate()
                .map(|(j, e)| EdgeRecord {
                    head: e.head.as_str().to_string(),
                    tail: e.tail.as_str().to_string(),
                    weight: sys.edge_weight(j),
                })
                .collect(),
            boundary_size: None,
            voltages: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = serde_json::json!({
            "nodes": self.nodes,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "head": e.head,
                "tail": e.tail,
                "weight": e.weight.to_json(),
            })).collect::<Vec<_>>(),
        });
        if let Some(k) = self.boundary_size {
            doc["partition"] = serde_json::json!({ "boundary_size": k });
        }
        if let Some(vs) = &self.voltages {
            doc["voltages"] = vs.iter().map(Scalar::to_json).collect();
        }
        doc
    }

    pub fn emit(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_json()).expect("json value serializes");
        text.push('\n');
        text
    }
}

/// Parses a graph document straight into a validated system.
pub fn parse_graph(bytes: &[u8]) -> Result<NetworkSystem, IoError> {
    parse_document(bytes)?.to_system()
}

pub fn emit_graph(sys: &NetworkSystem) -> String {
    GraphDocument::from_system(sys).emit()
}

pub fn read_document(path: &std::path::Path) -> Result<GraphDocument, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_document(&bytes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    MatrixMarket,
    MatrixMarketArray,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "mm" | "matrix-market" | "coordinate" => Ok(Self::MatrixMarket),
            "mm-array" | "array" => Ok(Self::MatrixMarketArray),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format `{other}` (expected json|mm|mm-array|csv)")),
        }
    }
}

/// Serialized matrix text. `lossy` is set when some rational entry had no
/// exact decimal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    pub lossy: bool,
}

pub fn emit_matrix<S: Scalar>(m: &Matrix<S>, format: MatrixFormat) -> Emitted {
    let mut lossy = false;
    let mut dec = |x: &S| {
        let (text, exact) = x.to_decimal();
        lossy |= !exact;
        text
    };
    let mut out = String::new();
    match format {
        MatrixFormat::Json => {
            out.push('[');
            for i in 0..m.rows() {
                let row: Vec<Value> = m.row(i).iter().map(Scalar::to_json).collect();
                let sep = if i == 0 { "\n  " } else { ",\n  " };
                out.push_str(sep);
                out.push_str(&serde_json::to_string(&row).expect("json row"));
            }
            out.push_str(if m.rows() == 0 { "]\n" } else { "\n]\n" });
        }
        MatrixFormat::MatrixMarket => {
            out.push_str("%%MatrixMarket matrix coordinate real general\n");
            let nonzero: Vec<_> = m.entries().filter(|(_, _, v)| !v.is_zero()).collect();
            let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), nonzero.len());
            for (i, j, v) in nonzero {
                let _ = writeln!(out, "{} {} {}", i + 1, j + 1, dec(v));
            }
        }
        MatrixFormat::MatrixMarketArray => {
            out.push_str("%%MatrixMarket matrix array real general\n");
            let _ = writeln!(out, "{} {}", m.rows(), m.cols());
            for j in 0..m.cols() {
                for i in 0..m.rows() {
                    let _ = writeln!(out, "{}", dec(&m[(i, j)]));
                }
            }
        }
        MatrixFormat::Csv => {
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(&mut dec).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
    }
    Emitted { text: out, lossy }
}

/// Reads the JSON rows form written by [`emit_matrix`].
pub fn parse_matrix_json(text: &str) -> Result<Matrix<Rational>, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rows = value
        .as_array()
        .ok_or_else(|| IoError::field("$", "expected an array of rows"))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| IoError::field(format!("[{i}]"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(j, v)| rational_value(v, &format!("[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).map_err(|e| IoError::field("$", e.to_string()))
}

/// Voltages given inline as comma-separated numbers, e.g. `3,1`.
pub fn parse_inline_voltages(text: &str) -> Result<Vec<Rational>, IoError> {
    text.split(',')
        .enumerate()
        .map(|(k, item)| parse_rational(item).map_err(|e| IoError::field(format!("voltages[{k}]"), e)))
        .collect()
}

/// A one-column CSV of voltages. Blank lines are skipped, as is a first line
/// that is not a number (a header).
pub fn parse_voltage_csv(text: &str) -> Result<Vec<Rational>, IoError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let cell = line.split(',').next().unwrap_or("").trim();
        if cell.is_empty() {
            continue;
        }
        match parse_rational(cell) {
            Ok(v) => out.push(v),
            Err(_) if k == 0 => {}
            Err(e) => return Err(IoError::field(format!("line {}", k + 1), e)),
        }
    }
    Ok(out)
}
