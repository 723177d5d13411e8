//! The plain-text model interchange format.
//!
//! ```text
//! incidence-model v1
//! lines 35
//! generator pg3 q=2
//! 0 1
//! 0 2
//! ...
//! ```
//!
//! The generator line is optional. Pairs are the strict upper triangle of
//! the relation, sorted, one per line; reflexivity and symmetry are implied.
//! Every line, including the last, ends with `\n`.

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf::PrimeField;
use crate::incidence::IncidenceStructure;

pub const HEADER: &str = "incidence-model v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Pg3 { q: u32 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Pg3 { q } => write!(f, "pg3 q={q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub generator: Option<Generator>,
    pub structure: IncidenceStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("cannot serialize a structure with no lines")]
    Empty,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_number(text: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(
            line,
            column,
            format!("expected {what}, found {text:?}"),
        ));
    }
    if text.len() > 1 && text.starts_with('0') {
        return Err(err(line, column, format!("{what} has a leading zero")));
    }
    text.parse()
        .map_err(|_| err(line, column, format!("{what} is too large")))
}

/// Parses and validates a model file. Nothing is constructed unless the
/// whole input is valid.
pub fn parse_model(text: &str) -> Result<ModelFile, ParseError> {
    let Some(body) = text.strip_suffix('\n') else {
        let last = text.lines().count().max(1);
        return Err(err(last, 1, "missing final newline (truncated file?)"));
    };
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((no, other)) => {
            return Err(err(
                no,
                1,
                format!("expected header {HEADER:?}, found {other:?}"),
            ))
        }
        None => return Err(err(1, 1, "empty file")),
    }

    let n = match lines.next() {
        Some((no, l)) => {
            let count = l
                .strip_prefix("lines ")
                .ok_or_else(|| err(no, 1, "expected `lines <n>`"))?;
            let n = parse_number(count, no, 7, "line count")?;
            if n == 0 {
                return Err(err(no, 7, "line count must be positive"));
            }
            n
        }
        None => return Err(err(2, 1, "missing `lines <n>` (truncated file?)")),
    };

    let mut generator = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (no, l) in lines {
        if pairs.is_empty() && generator.is_none() && l.starts_with("generator") {
            let q = l
                .strip_prefix("generator pg3 q=")
                .ok_or_else(|| err(no, 1, "expected `generator pg3 q=<q>`"))?;
            let q = parse_number(q, no, 17, "q")?;
            let q = u32::try_from(q).map_err(|_| err(no, 17, "q is too large"))?;
            PrimeField::new(q).map_err(|e| err(no, 17, e.to_string()))?;
            generator = Some(Generator::Pg3 { q });
            continue;
        }
        let mut parts = l.split(' ');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(no, 1, format!("expected `<i> <j>`, found {l:?}")));
        };
        let i = parse_number(a, no, 1, "line id")?;
        let j = parse_number(b, no, a.len() + 2, "line id")?;
        if i >= n {
            return Err(err(no, 1, format!("line id {i} out of range (lines {n})")));
        }
        if j >= n {
            return Err(err(
                no,
                a.len() + 2,
                format!("line id {j} out of range (lines {n})"),
            ));
        }
        if i == j {
            return Err(err(no, 1, "reflexive pair must be omitted"));
        }
        if i > j {
            return Err(err(no, 1, "pairs must be ordered i<j"));
        }
        if let Some(&prev) = pairs.last() {
            if prev == (i, j) {
                return Err(err(no, 1, format!("duplicate pair {i} {j}")));
            }
            if prev > (i, j) {
                return Err(err(no, 1, "pairs must be sorted lexicographically"));
            }
        }
        pairs.push((i, j));
    }
    let structure = IncidenceStructure::from_pairs(n, pairs).expect("ids validated");
    Ok(ModelFile {
        generator,
        structure,
    })
}

/// Canonical text for a structure.
pub fn serialize_model(
    m: &IncidenceStructure,
    generator: Option<Generator>,
) -> Result<String, SerializeError> {
    use std::fmt::Write;
    if m.is_empty() {
        return Err(SerializeError::Empty);
    }
    let mut out = format!("{HEADER}\nlines {}\n", m.len());
    if let Some(g) = generator {
        writeln!(out, "generator {g}").expect("writing to a String");
    }
    for (i, j) in m.pairs() {
        writeln!(out, "{i} {j}").expect("writing to a String");
    }
    Ok(out)
}

impl ModelFile {
    pub fn to_text(&self) -> Result<String, SerializeError> {
        serialize_model(&self.structure, self.generator)
    }
}

/// Hex SHA-256 of a text.
pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
