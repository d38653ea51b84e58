//! Line-oriented fixture formats: projection matrices, `|`-separated tables,
//! weight tables and printed branching rules.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie_core::SimpleAlgebra;
use crate::subalgebra::{embedding_from_projection, Embedding, SemisimpleAlgebra};
use crate::weyl_weights::Weight;

fn fixture_err(msg: impl Into<String>) -> Error {
    Error::Fixture(msg.into())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses a whitespace- or comma-separated integer row.
pub fn parse_int_row(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.replace('−', "-")
                .parse::<i64>()
                .map_err(|_| fixture_err(format!("bad integer `{t}` in `{s}`")))
        })
        .collect()
}

/// Splits every content line on `|`.
pub fn records(text: &str) -> Vec<Vec<String>> {
    content_lines(text)
        .map(|(_, l)| l.split('|').map(|f| f.trim().to_string()).collect())
        .collect()
}

/// A projection matrix together with its deletion data and expectations.
///
/// ```text
/// ambient: B3
/// node: 3
/// sub: A3
/// 0 1 0
/// 1 0 0
/// 0 1 1
/// relative: 2m_1+3m_3 mod 4
/// ```
#[derive(Debug, Clone)]
pub struct ProjectionFixture {
    pub ambient: SimpleAlgebra,
    pub node: usize,
    pub sub: SemisimpleAlgebra,
    pub rows: Vec<Vec<i64>>,
    pub h1: Option<Vec<i64>>,
    pub nodes: Option<Vec<usize>>,
    /// Remaining `key: value` lines, in file order.
    pub entries: Vec<(String, String)>,
}

impl ProjectionFixture {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ambient = None;
        let mut node = None;
        let mut sub = None;
        let mut rows = Vec::new();
        let mut h1 = None;
        let mut nodes = None;
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            let Some((key, value)) = line.split_once(':') else {
                rows.push(parse_int_row(line)?);
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "ambient" => ambient = Some(SimpleAlgebra::parse(value)?),
                "node" => {
                    node = Some(value.parse::<usize>().map_err(|_| {
                        fixture_err(format!("line {lineno}: bad node `{value}`"))
                    })?)
                }
                "sub" => sub = Some(SemisimpleAlgebra::from_str(value)?),
                "h1" => h1 = Some(parse_int_row(value)?),
                "nodes" => {
                    nodes = Some(
                        parse_int_row(value)?
                            .into_iter()
                            .map(|x| x as usize)
                            .collect(),
                    )
                }
                k => entries.push((k.to_string(), value.to_string())),
            }
        }
        let ambient = ambient.ok_or_else(|| fixture_err("missing `ambient:`"))?;
        let node = node.ok_or_else(|| fixture_err("missing `node:`"))?;
        let sub = sub.ok_or_else(|| fixture_err("missing `sub:`"))?;
        for r in rows.iter().chain(&h1) {
            if r.len() != ambient.rank() {
                return Err(fixture_err(format!(
                    "row {r:?} has {} entries, {} has rank {}",
                    r.len(),
                    ambient.name(),
                    ambient.rank()
                )));
            }
        }
        Ok(ProjectionFixture {
            ambient,
            node,
            sub,
            rows,
            h1,
            nodes,
            entries,
        })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// The full projection matrix, `h1` row last when present.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let mut m = self.rows.clone();
        m.extend(self.h1.clone());
        m
    }

    pub fn embedding(&self) -> Result<Embedding> {
        let emb = embedding_from_projection(&self.ambient, &self.sub, self.matrix())?;
        match &self.nodes {
            Some(n) => emb.with_nodes(n.clone()),
            None => Ok(emb),
        }
    }
}

/// One row of a printed weight table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightTableRow {
    pub weight: Weight,
    pub label: i64,
    pub image: Weight,
}

/// Tab-separated `weight  label  image`; an image may carry a trailing
/// `[label]`, which must agree with the label column.
pub fn parse_weight_table(text: &str) -> Result<Vec<WeightTableRow>> {
    content_lines(text)
        .map(|(lineno, line)| {
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(fixture_err(format!(
                    "line {lineno}: expected 3 tab-separated columns"
                )));
            }
            let weight: Weight = cols[0].parse()?;
            let label: i64 = cols[1]
                .replace('−', "-")
                .parse()
                .map_err(|_| fixture_err(format!("line {lineno}: bad label `{}`", cols[1])))?;
            let (img, tag) = match cols[2].split_once('[') {
                Some((w, t)) => (w, Some(t.trim_end_matches(']'))),
                None => (cols[2], None),
            };
            if let Some(t) = tag {
                if t.parse::<i64>().ok() != Some(label) {
                    return Err(fixture_err(format!(
                        "line {lineno}: image tag [{t}] disagrees with label {label}"
                    )));
                }
            }
            Ok(WeightTableRow {
                weight,
                label,
                image: img.parse()?,
            })
        })
        .collect()
}

/// A branching rule as printed: `(λ) ⊃ (μ)(ν)[l]+2×(…)[l']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedBranching {
    pub highest: Weight,
    /// `(concatenated sub weight, label, multiplicity)`, sorted, equal
    /// summands merged.
    pub summands: Vec<(Vec<i64>, i64, u64)>,
}

fn parse_summand(s: &str) -> Result<(Vec<i64>, i64, u64)> {
    let bad = || fixture_err(format!("cannot parse summand `{s}`"));
    let (mult, body) = match s.split_once('×') {
        Some((k, b)) => (k.trim().parse::<u64>().map_err(|_| bad())?, b.trim()),
        None => (1, s),
    };
    let (weights, label) = body.rsplit_once('[').ok_or_else(bad)?;
    let label: i64 = label
        .trim_end_matches(']')
        .replace('−', "-")
        .parse()
        .map_err(|_| bad())?;
    let mut coords = Vec::new();
    for chunk in weights.split(')') {
        let chunk = chunk.trim().trim_start_matches('(');
        if chunk.is_empty() {
            continue;
        }
        coords.extend(parse_int_row(chunk)?);
    }
    Ok((coords, label, mult))
}

pub fn parse_branching(s: &str) -> Result<PrintedBranching> {
    let (lhs, rhs) = s
        .split_once('⊃')
        .ok_or_else(|| fixture_err(format!("missing `⊃` in `{s}`")))?;
    let highest: Weight = lhs.trim().parse()?;
    let mut merged: BTreeMap<(Vec<i64>, i64), u64> = BTreeMap::new();
    let compact: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
    let mut depth = 0;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, c) in compact.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&compact[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&compact[start..]);
    for p in parts {
        let (w, l, m) = parse_summand(p)?;
        *merged.entry((w, l)).or_default() += m;
    }
    Ok(PrintedBranching {
        highest,
        summands: merged.into_iter().map(|((w, l), m)| (w, l, m)).collect(),
    })
}
