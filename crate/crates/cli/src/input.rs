//! Flag values and input files.

use std::fs;
use std::path::Path;

use elr_core::{DiscreteFunctional, FunctionalSpec, Interval, NodeMultiset, ProbabilityVector};
use serde::Deserialize;

use crate::CliError;

fn number(field: &'static str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::invalid(field, format!("`{}` is not a number", s.trim())))
}

/// `x0,x1,...`
pub fn list(field: &'static str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| number(field, x)).collect()
}

/// `lo,hi`
pub fn pair(field: &'static str, s: &str) -> Result<[f64; 2], CliError> {
    match list(field, s)?.as_slice() {
        &[lo, hi] => Ok([lo, hi]),
        other => Err(CliError::invalid(field, format!("expected `lo,hi`, got {} values", other.len()))),
    }
}

pub fn interval(field: &'static str, s: &str) -> Result<Interval, CliError> {
    let [lo, hi] = pair(field, s)?;
    Interval::new(lo, hi).map_err(|e| CliError::invalid(field, e.to_string()))
}

/// `x,y:2,z` — a node with an optional `:multiplicity`.
pub fn nodes(s: &str) -> Result<NodeMultiset, CliError> {
    let mut entries = Vec::new();
    for item in s.split(',').filter(|x| !x.trim().is_empty()) {
        let (node, mult) = match item.split_once(':') {
            Some((node, mult)) => (
                node,
                mult.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::invalid("nodes", format!("bad multiplicity in `{item}`")))?,
            ),
            None => (item, 1),
        };
        entries.push((number("nodes", node)?, mult));
    }
    NodeMultiset::new(entries).map_err(|e| CliError::invalid("nodes", e.to_string()))
}

/// `N,q,s`
pub fn zm_triple(s: &str) -> Result<(usize, f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::invalid("zm", format!("expected `N,q,s`, got `{s}`")));
    }
    let n = parts[0]
        .trim()
        .parse::<usize>()
        .map_err(|_| CliError::invalid("zm", format!("N must be a positive integer, got `{}`", parts[0])))?;
    Ok((n, number("zm", parts[1])?, number("zm", parts[2])?))
}

fn read(field: &'static str, path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::invalid(field, format!("{}: {e}", path.display())))
}

pub fn functional_file(path: &Path) -> Result<DiscreteFunctional, CliError> {
    let spec: FunctionalSpec = serde_json::from_str(&read("functional-file", path)?)
        .map_err(|e| CliError::invalid("functional-file", e.to_string()))?;
    DiscreteFunctional::try_from(spec).map_err(|e| CliError::invalid("functional-file", e.to_string()))
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

/// Numeric CSV rows; a leading row that does not parse is taken as a header.
fn csv_columns(field: &'static str, text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::invalid(field, e.to_string()))?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(|x| x.parse::<f64>()).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(CliError::invalid(field, format!("row {} is not numeric", i + 1))),
        }
    }
    Ok(rows)
}

fn probability(field: &'static str, values: Vec<f64>) -> Result<ProbabilityVector, CliError> {
    ProbabilityVector::new(values).map_err(|e| CliError::invalid(field, e.to_string()))
}

#[derive(Deserialize)]
struct RawPair {
    p: Vec<f64>,
    q: Vec<f64>,
}

/// A file holding both distributions: JSON `{"p": [...], "q": [...]}` or
/// two-column CSV.
pub fn pair_file(path: &Path) -> Result<(ProbabilityVector, ProbabilityVector), CliError> {
    let text = read("p-file", path)?;
    let (p, q) = if is_json(&text) {
        let raw: RawPair = serde_json::from_str(&text).map_err(|e| CliError::invalid("p-file", e.to_string()))?;
        (raw.p, raw.q)
    } else {
        let rows = csv_columns("p-file", &text)?;
        if let Some(bad) = rows.iter().position(|r| r.len() != 2) {
            return Err(CliError::invalid("p-file", format!("row {} does not have two columns", bad + 1)));
        }
        rows.into_iter().map(|r| (r[0], r[1])).unzip()
    };
    Ok((probability("p", p)?, probability("q", q)?))
}

/// A file holding one distribution: a JSON array or a one-column CSV.
pub fn vector_file(field: &'static str, path: &Path) -> Result<ProbabilityVector, CliError> {
    let text = read(field, path)?;
    let values = if is_json(&text) {
        serde_json::from_str::<Vec<f64>>(&text).map_err(|e| CliError::invalid(field, e.to_string()))?
    } else {
        csv_columns(field, &text)?.into_iter().flatten().collect()
    };
    probability(field, values)
}
