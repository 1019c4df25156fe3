//! Report files: one CSV row per contrast set and a JSON document with the
//! run settings, all sets and the summary metrics.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use csmine_core::{AnnotatedContrastSet, Condition, ContrastSet, DataSet, Test};

use crate::summary::Metrics;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub group: String,
    pub conditions: String,
    pub pass: usize,
    pub minsupp: f64,
    pub p: usize,
    pub n: usize,
    pub p_new: usize,
    pub quality: f64,
    pub redundancy: f64,
}

impl ReportRow {
    pub fn new(set: &AnnotatedContrastSet, ds: &DataSet) -> ReportRow {
        ReportRow {
            group: ds.groups()[set.set.group].clone(),
            conditions: set.set.display(ds).to_string(),
            pass: set.pass,
            minsupp: set.minsupp,
            p: set.p,
            n: set.n,
            p_new: set.p_new,
            quality: set.quality,
            redundancy: set.redundancy.value,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("row {row}: unknown group `{group}`")]
    UnknownGroup { row: usize, group: String },
    #[error("row {row}: cannot parse `{text}` at offset {offset}: {problem}")]
    Conditions {
        row: usize,
        text: String,
        offset: usize,
        problem: &'static str,
    },
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), ReportError> {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    // headers are only written with the first record
    if rows.is_empty() {
        w.write_record(["group", "conditions", "pass", "minsupp", "p", "n", "p_new", "quality", "redundancy"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>, ReportError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Into::into)
}

/// Turns report rows back into contrast sets over `ds`.
pub fn parse_rows(rows: &[ReportRow], ds: &DataSet) -> Result<Vec<ContrastSet>, ReportError> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let row = i + 1;
            let group = ds.group_index(&r.group).ok_or_else(|| ReportError::UnknownGroup {
                row,
                group: r.group.clone(),
            })?;
            parse_conditions(&r.conditions, ds, group).map_err(|(offset, problem)| ReportError::Conditions {
                row,
                text: r.conditions.clone(),
                offset,
                problem,
            })
        })
        .collect()
}

const AND: &str = " AND ";

/// Parses the display grammar. Names and labels may contain spaces, so at
/// each step the longest attribute name (and label) that fits wins.
pub fn parse_conditions(text: &str, ds: &DataSet, group: usize) -> Result<ContrastSet, (usize, &'static str)> {
    let mut cs = ContrastSet::new(group);
    let mut pos = 0;
    if text.is_empty() {
        return Ok(cs);
    }
    loop {
        let rest = &text[pos..];
        let (attr, after_name) = ds
            .attributes()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let tail = rest.strip_prefix(a.name.as_str())?;
                [" = ", " != ", " in "].iter().any(|op| tail.starts_with(op)).then_some((i, a.name.len()))
            })
            .max_by_key(|&(_, len)| len)
            .ok_or((pos, "expected an attribute name followed by an operator"))?;
        pos += after_name;
        let a = &ds.attributes()[attr];
        let rest = &text[pos..];
        if let Some(tail) = rest.strip_prefix(" in ") {
            if !a.is_numeric() {
                return Err((pos, "interval on a nominal attribute"));
            }
            pos += 4;
            let close = tail.find(')').ok_or((pos, "unterminated interval"))?;
            let body = &tail[..close];
            let (lo, hi) = body.split_once(", ").ok_or((pos, "expected `lo, hi`"))?;
            let number = |s: &str| s.parse::<f64>().map_err(|_| (pos, "bad interval bound"));
            match (lo, hi) {
                ("(-inf", "inf") => return Err((pos, "unbounded interval")),
                ("(-inf", hi) => cs.push(Condition::new(attr, Test::LessThan(number(hi)?))),
                (lo, hi) => {
                    let lo = lo.strip_prefix('[').ok_or((pos, "expected `[`"))?;
                    cs.push(Condition::new(attr, Test::AtLeast(number(lo)?)));
                    if hi != "inf" {
                        cs.push(Condition::new(attr, Test::LessThan(number(hi)?)));
                    }
                }
            }
            pos += close + 1;
        } else {
            let (op, negated) = if rest.starts_with(" = ") { (3, false) } else { (4, true) };
            if a.is_numeric() {
                return Err((pos, "equality on a numeric attribute"));
            }
            pos += op;
            let rest = &text[pos..];
            let (k, len) = a
                .labels()
                .iter()
                .enumerate()
                .filter(|(_, l)| {
                    rest.strip_prefix(l.as_str())
                        .is_some_and(|t| t.is_empty() || t.starts_with(AND))
                })
                .map(|(k, l)| (k, l.len()))
                .max_by_key(|&(_, len)| len)
                .ok_or((pos, "unknown label"))?;
            let test = if negated { Test::NotEquals(k as u32) } else { Test::Equals(k as u32) };
            cs.push(Condition::new(attr, test));
            pos += len;
        }
        if pos == text.len() {
            return Ok(cs);
        }
        if !text[pos..].starts_with(AND) {
            return Err((pos, "expected ` AND `"));
        }
        pos += AND.len();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub positives: usize,
    pub negatives: usize,
    pub sets: Vec<ReportRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonReport {
    pub input: String,
    pub relation: String,
    pub examples: usize,
    pub settings: serde_json::Value,
    pub redundancy_threshold: f64,
    pub groups: Vec<GroupReport>,
    /// Metrics before the redundancy filter.
    pub initial: Metrics,
    /// Metrics of the sets kept by the filter.
    pub filtered: Metrics,
}
