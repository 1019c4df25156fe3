//! Reader and writer for the ARFF subset the miner needs: `@relation`,
//! numeric and explicit nominal `@attribute`s, dense comma-separated `@data`,
//! `?` for missing cells and `%` comment lines.

use std::fmt::Write as _;
use std::path::Path;

use csmine_core::{Attribute, AttributeKind, Table, Value};

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("line {line}: {kind}")]
pub struct ArffError {
    pub line: usize,
    pub kind: ArffErrorKind,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ArffErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported attribute type `{0}`")]
    UnsupportedType(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("nominal attribute `{attribute}`: {problem}")]
    BadDomain { attribute: String, problem: String },
    #[error("value `{value}` is not declared for nominal attribute `{attribute}`")]
    UnknownNominal { attribute: String, value: String },
    #[error("`{token}` is not a number (attribute `{attribute}`)")]
    NotNumeric { attribute: String, token: String },
    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("sparse rows are not supported")]
    Sparse,
    #[error("unterminated quote")]
    UnterminatedQuote,
    #[error("no @data section")]
    MissingData,
    #[error("no attributes declared")]
    NoAttributes,
}

fn err(line: usize, kind: ArffErrorKind) -> ArffError {
    ArffError { line, kind }
}

/// Splits on commas outside single or double quotes; tokens are trimmed and
/// unquoted.
fn split_fields(s: &str) -> Result<Vec<String>, ArffErrorKind> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    let mut quoted = false;
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) if c == '\\' => {
                if let Some(next) = chars.next() {
                    cur.push(next);
                }
            }
            Some(_) => cur.push(c),
            None => match c {
                '\'' | '"' => {
                    quote = Some(c);
                    quoted = true;
                }
                ',' => {
                    out.push(finish(&mut cur, &mut quoted));
                }
                _ => cur.push(c),
            },
        }
    }
    if quote.is_some() {
        return Err(ArffErrorKind::UnterminatedQuote);
    }
    out.push(finish(&mut cur, &mut quoted));
    Ok(out)
}

fn finish(cur: &mut String, quoted: &mut bool) -> String {
    let token = if *quoted {
        cur.clone()
    } else {
        cur.trim().to_string()
    };
    cur.clear();
    *quoted = false;
    token.trim().to_string()
}

/// Reads one possibly quoted word; returns it and the remainder.
fn take_word(s: &str) -> Result<(String, &str), ArffErrorKind> {
    let s = s.trim_start();
    let mut chars = s.char_indices();
    match chars.next() {
        None => Ok((String::new(), "")),
        Some((_, q @ ('\'' | '"'))) => {
            let mut word = String::new();
            let mut escaped = false;
            for (i, c) in chars {
                if escaped {
                    word.push(c);
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == q {
                    return Ok((word, &s[i + 1..]));
                } else {
                    word.push(c);
                }
            }
            Err(ArffErrorKind::UnterminatedQuote)
        }
        Some(_) => {
            let end = s.find(char::is_whitespace).unwrap_or(s.len());
            Ok((s[..end].to_string(), &s[end..]))
        }
    }
}

fn parse_attribute(rest: &str, line: usize) -> Result<Attribute, ArffError> {
    let (name, ty) = take_word(rest).map_err(|k| err(line, k))?;
    let ty = ty.trim();
    if name.is_empty() || ty.is_empty() {
        return Err(err(line, ArffErrorKind::MalformedHeader(format!("@attribute {rest}"))));
    }
    if let Some(inner) = ty.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| err(line, ArffErrorKind::MalformedHeader(format!("unclosed domain for `{name}`"))))?;
        let labels = split_fields(inner).map_err(|k| err(line, k))?;
        for (i, l) in labels.iter().enumerate() {
            let problem = if l.is_empty() {
                Some("empty label".to_string())
            } else if labels[..i].contains(l) {
                Some(format!("duplicate label `{l}`"))
            } else {
                None
            };
            if let Some(problem) = problem {
                return Err(err(line, ArffErrorKind::BadDomain { attribute: name, problem }));
            }
        }
        return Ok(Attribute::nominal(name, labels));
    }
    match ty.to_ascii_lowercase().as_str() {
        "numeric" | "real" | "integer" => Ok(Attribute::numeric(name)),
        other => Err(err(line, ArffErrorKind::UnsupportedType(other.to_string()))),
    }
}

fn parse_row(fields: Vec<String>, attributes: &[Attribute], line: usize) -> Result<Vec<Value>, ArffError> {
    if fields.len() != attributes.len() {
        return Err(err(
            line,
            ArffErrorKind::Arity {
                expected: attributes.len(),
                found: fields.len(),
            },
        ));
    }
    fields
        .into_iter()
        .zip(attributes)
        .map(|(tok, attr)| {
            if tok == "?" {
                return Ok(Value::Missing);
            }
            match &attr.kind {
                AttributeKind::Numeric => match tok.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(Value::Numeric(x)),
                    _ => Err(err(
                        line,
                        ArffErrorKind::NotNumeric {
                            attribute: attr.name.clone(),
                            token: tok,
                        },
                    )),
                },
                AttributeKind::Nominal(_) => attr.label_index(&tok).map(Value::Nominal).ok_or_else(|| {
                    err(
                        line,
                        ArffErrorKind::UnknownNominal {
                            attribute: attr.name.clone(),
                            value: tok,
                        },
                    )
                }),
            }
        })
        .collect()
}

fn keyword<'a>(line: &'a str, kw: &str) -> Option<&'a str> {
    let head = line.get(..kw.len())?;
    if !head.eq_ignore_ascii_case(kw) {
        return None;
    }
    let rest = &line[kw.len()..];
    (rest.is_empty() || rest.starts_with(char::is_whitespace)).then_some(rest)
}

pub fn parse(text: &str) -> Result<Table, ArffError> {
    let mut table = Table::default();
    let mut in_data = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if in_data {
            if line.starts_with('{') {
                return Err(err(line_no, ArffErrorKind::Sparse));
            }
            let fields = split_fields(line).map_err(|k| err(line_no, k))?;
            table.rows.push(parse_row(fields, &table.attributes, line_no)?);
        } else if let Some(rest) = keyword(line, "@relation") {
            let (name, _) = take_word(rest).map_err(|k| err(line_no, k))?;
            table.relation = name;
        } else if let Some(rest) = keyword(line, "@attribute") {
            let attr = parse_attribute(rest, line_no)?;
            if table.attributes.iter().any(|a| a.name == attr.name) {
                return Err(err(line_no, ArffErrorKind::DuplicateAttribute(attr.name)));
            }
            table.attributes.push(attr);
        } else if keyword(line, "@data").is_some() {
            if table.attributes.is_empty() {
                return Err(err(line_no, ArffErrorKind::NoAttributes));
            }
            in_data = true;
        } else {
            return Err(err(line_no, ArffErrorKind::MalformedHeader(line.to_string())));
        }
    }
    if !in_data {
        return Err(err(last_line, ArffErrorKind::MissingData));
    }
    Ok(table)
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ArffError },
}

pub fn read(path: &Path) -> Result<Table, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|source| ReadError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn quote(s: &str) -> String {
    let plain = !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '\'' | '"' | '{' | '}' | '%' | '\\'))
        && s != "?";
    if plain {
        s.to_string()
    } else {
        let escaped = s.replace('\\', "\\\\").replace('\'', "\\'");
        format!("'{escaped}'")
    }
}

pub fn write(table: &Table) -> String {
    let mut out = String::new();
    let relation = if table.relation.is_empty() { "data" } else { &table.relation };
    let _ = writeln!(out, "@relation {}\n", quote(relation));
    for attr in &table.attributes {
        match &attr.kind {
            AttributeKind::Numeric => {
                let _ = writeln!(out, "@attribute {} numeric", quote(&attr.name));
            }
            AttributeKind::Nominal(labels) => {
                let domain: Vec<String> = labels.iter().map(|l| quote(l)).collect();
                let _ = writeln!(out, "@attribute {} {{{}}}", quote(&attr.name), domain.join(","));
            }
        }
    }
    out.push_str("\n@data\n");
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&table.attributes)
            .map(|(v, attr)| match v {
                Value::Missing => "?".to_string(),
                Value::Numeric(x) => format!("{x}"),
                Value::Nominal(k) => quote(&attr.labels()[*k as usize]),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
