//! Text formats for tables, triple systems and loops.
//!
//! Every file starts with a header line naming the kind and order:
//!
//! ```text
//! QG n        n rows of n entries
//! MTS v       one cyclic triple per line
//! STS v       one triple per line
//! LOOP n e    n rows of n entries; e is the identity
//! ```
//!
//! Entries are separated by whitespace, `#` starts a comment and blank lines
//! are skipped. Writers emit the canonical form: no comments, blocks in their
//! stored rotation and sorted.

use std::fmt::Write as _;

use mendel_core::designs::{validate_mts, validate_sts, DesignError, OrderCheck};
use mendel_core::moufang::LoopError;
use mendel_core::quasigroup::QuasigroupError;
use mendel_core::{CayleyTable, LoopTable, OrientedTripleSystem, UnorderedTripleSystem};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input: expected a header line")]
    Empty,
    #[error("line {line}: unknown header {found:?}; expected QG, MTS, STS or LOOP")]
    UnknownHeader { line: usize, found: String },
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: {token:?} is not a non-negative integer")]
    NotANumber { line: usize, token: String },
    #[error("expected {expected} data lines, found {found}")]
    WrongLineCount { expected: usize, found: usize },
    #[error("invalid table: {0}")]
    Table(#[from] QuasigroupError),
    #[error("invalid triple system: {0}")]
    Design(#[from] DesignError),
    #[error("invalid loop: {0}")]
    Loop(#[from] LoopError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Table(CayleyTable),
    Mts(OrientedTripleSystem),
    Sts(UnorderedTripleSystem),
    Loop(LoopTable),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Table(_) => "QG",
            Document::Mts(_) => "MTS",
            Document::Sts(_) => "STS",
            Document::Loop(_) => "LOOP",
        }
    }

    /// The canonical text of this document.
    pub fn to_text(&self) -> String {
        match self {
            Document::Table(q) => write_table(q),
            Document::Mts(s) => write_mts(s),
            Document::Sts(s) => write_sts(s),
            Document::Loop(l) => write_loop(l),
        }
    }
}

/// Non-empty lines with comments removed, as `(line number, tokens)`.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token.parse().map_err(|_| FormatError::NotANumber {
        line,
        token: token.to_string(),
    })
}

fn header_args<const N: usize>(
    line: usize,
    args: &[&str],
    expected: &'static str,
) -> Result<[usize; N], FormatError> {
    if args.len() != N {
        return Err(FormatError::Malformed { line, expected });
    }
    let mut out = [0; N];
    for (o, a) in out.iter_mut().zip(args) {
        *o = number(line, a)?;
    }
    Ok(out)
}

/// Parses any of the four formats. `check` governs the order condition of
/// triple systems.
pub fn parse(text: &str, check: OrderCheck) -> Result<Document, FormatError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let body: Vec<(usize, Vec<&str>)> = lines.collect();
    match header[0] {
        "QG" => {
            let [n] = header_args(hline, &header[1..], "QG n")?;
            Ok(Document::Table(parse_rows(n, &body)?))
        }
        "LOOP" => {
            let [n, e] = header_args(hline, &header[1..], "LOOP n e")?;
            Ok(Document::Loop(LoopTable::new(parse_rows(n, &body)?, e)?))
        }
        "MTS" => {
            let [v] = header_args(hline, &header[1..], "MTS v")?;
            Ok(Document::Mts(validate_mts(
                v,
                &parse_blocks(&body)?,
                check,
            )?))
        }
        "STS" => {
            let [v] = header_args(hline, &header[1..], "STS v")?;
            Ok(Document::Sts(validate_sts(
                v,
                &parse_blocks(&body)?,
                check,
            )?))
        }
        other => Err(FormatError::UnknownHeader {
            line: hline,
            found: other.to_string(),
        }),
    }
}

/// An `STS v` file read without canonicalising: each block keeps the point
/// order it was written in, read as a cyclic orientation.
pub fn parse_oriented_sts(text: &str) -> Result<(usize, Vec<[usize; 3]>), FormatError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    if header[0] != "STS" {
        return Err(FormatError::UnknownHeader {
            line: hline,
            found: header[0].to_string(),
        });
    }
    let [v] = header_args(hline, &header[1..], "STS v")?;
    let body: Vec<(usize, Vec<&str>)> = lines.collect();
    Ok((v, parse_blocks(&body)?))
}

fn parse_rows(n: usize, body: &[(usize, Vec<&str>)]) -> Result<CayleyTable, FormatError> {
    if body.len() != n {
        return Err(FormatError::WrongLineCount {
            expected: n,
            found: body.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (line, tokens) in body {
        if tokens.len() != n {
            return Err(FormatError::Malformed {
                line: *line,
                expected: "one entry per column",
            });
        }
        rows.push(
            tokens
                .iter()
                .map(|t| number(*line, t))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(CayleyTable::from_rows(&rows)?)
}

fn parse_blocks(body: &[(usize, Vec<&str>)]) -> Result<Vec<[usize; 3]>, FormatError> {
    body.iter()
        .map(|(line, tokens)| match tokens[..] {
            [a, b, c] => Ok([number(*line, a)?, number(*line, b)?, number(*line, c)?]),
            _ => Err(FormatError::Malformed {
                line: *line,
                expected: "three points per block",
            }),
        })
        .collect()
}

fn push_rows(out: &mut String, q: &CayleyTable) {
    for x in 0..q.order() {
        let row: Vec<String> = q.row(x).iter().map(u16::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn push_blocks(out: &mut String, blocks: &[[usize; 3]]) {
    for [a, b, c] in blocks {
        let _ = writeln!(out, "{a} {b} {c}");
    }
}

pub fn write_table(q: &CayleyTable) -> String {
    let mut out = format!("QG {}\n", q.order());
    push_rows(&mut out, q);
    out
}

pub fn write_loop(l: &LoopTable) -> String {
    let mut out = format!("LOOP {} {}\n", l.order(), l.identity());
    push_rows(&mut out, l.table());
    out
}

pub fn write_mts(s: &OrientedTripleSystem) -> String {
    let mut out = format!("MTS {}\n", s.order());
    push_blocks(&mut out, s.blocks());
    out
}

pub fn write_sts(s: &UnorderedTripleSystem) -> String {
    let mut out = format!("STS {}\n", s.order());
    push_blocks(&mut out, s.blocks());
    out
}
