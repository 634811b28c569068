//! Plain-text records for matroids, seeds and count tables.
//!
//! ```text
//! matroid n=4 r=2          seed n=4 r=2
//! bases:                   H':
//! 1 4                      1 2 3
//! 2 4
//! 3 4
//! ```
//!
//! Set literals list 1-based labels in increasing order; `-` is the empty
//! set. Members are written in canonical order. A matroid record may carry
//! `hyperplanes:` and `circuits:` sections, which are derived data and are
//! ignored when reading. Corpus files separate records with a blank line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::builder::PavingSeed;
use crate::enumerate::CountRecord;
use crate::matroid::{Matroid, MatroidError};
use crate::setcore::{ElementSet, GroundSet, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_set(ground: GroundSet, literal: &str, line: usize) -> Result<ElementSet, ParseError> {
    let literal = literal.trim();
    if literal == "-" {
        return Ok(ground.empty_set());
    }
    let mut labels = Vec::new();
    for token in literal.split_whitespace() {
        let label: usize = token
            .parse()
            .map_err(|_| err(line, format!("`{token}` is not an element label")))?;
        if labels.last().is_some_and(|&prev| prev >= label) {
            return Err(err(line, format!("labels in `{literal}` must be strictly increasing")));
        }
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(err(line, "empty set literal (use `-` for the empty set)"));
    }
    ground.set_of(labels).map_err(|e| err(line, e.to_string()))
}

/// Reads `<kind> n=<n> r=<r>`.
fn parse_header(kind: &str, text: &str, line: usize) -> Result<(GroundSet, usize), ParseError> {
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some(kind) {
        return Err(err(line, format!("expected `{kind} n=<n> r=<r>`")));
    }
    let mut field = |name: &str| -> Result<usize, ParseError> {
        let token = tokens.next().ok_or_else(|| err(line, format!("missing `{name}=`")))?;
        token
            .strip_prefix(name)
            .and_then(|t| t.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(line, format!("expected `{name}=<integer>`, found `{token}`")))
    };
    let n = field("n")?;
    let r = field("r")?;
    if let Some(extra) = tokens.next() {
        return Err(err(line, format!("unexpected `{extra}` in header")));
    }
    let ground = GroundSet::new(n).map_err(|e| err(line, e.to_string()))?;
    if r > n {
        return Err(err(line, format!("rank r={r} exceeds n={n}")));
    }
    Ok((ground, r))
}

/// Non-blank lines with their 1-based numbers.
fn content_lines(text: &str, offset: usize) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1 + offset, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Line number of the section header, its name, its sets.
type Section<'a> = (usize, &'a str, Vec<ElementSet>);

/// Splits the body after the header into named sections.
fn sections<'a>(lines: &[(usize, &'a str)], ground: GroundSet) -> Result<Vec<Section<'a>>, ParseError> {
    let mut out: Vec<Section<'a>> = Vec::new();
    for &(no, line) in lines {
        if let Some(name) = line.strip_suffix(':') {
            out.push((no, name, Vec::new()));
        } else {
            let Some(current) = out.last_mut() else {
                return Err(err(no, "set literal outside of a section"));
            };
            current.2.push(parse_set(ground, line, no)?);
        }
    }
    Ok(out)
}

fn into_family(ground: GroundSet, sets: Vec<ElementSet>, line: usize) -> Result<SetFamily, ParseError> {
    SetFamily::new(ground, sets).map_err(|e| err(line, e.to_string()))
}

/// A matroid record as written, before the exchange oracle has run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidRecord {
    pub rank: usize,
    pub bases: SetFamily,
}

impl MatroidRecord {
    pub fn ground(&self) -> GroundSet {
        self.bases.ground()
    }

    /// Runs the exchange oracle; the declared rank must match the bases.
    pub fn into_matroid(self) -> Result<Matroid, MatroidError> {
        let m = Matroid::from_bases(self.bases)?;
        if m.rank() != self.rank {
            let found = m.bases().members()[0];
            return Err(MatroidError::RankMismatch {
                expected: self.rank,
                found,
            });
        }
        Ok(m)
    }
}

fn parse_matroid_lines(lines: &[(usize, &str)]) -> Result<MatroidRecord, ParseError> {
    let (&(head_no, head), body) = lines.split_first().ok_or_else(|| err(1, "empty input"))?;
    let (ground, rank) = parse_header("matroid", head, head_no)?;
    let mut bases = None;
    for (no, name, sets) in sections(body, ground)? {
        match name {
            "bases" if bases.is_none() => bases = Some(into_family(ground, sets, no)?),
            "bases" => return Err(err(no, "duplicate `bases:` section")),
            "hyperplanes" | "circuits" => {}
            other => return Err(err(no, format!("unknown section `{other}:`"))),
        }
    }
    let bases = bases.ok_or_else(|| err(head_no, "missing `bases:` section"))?;
    Ok(MatroidRecord { rank, bases })
}

pub fn parse_matroid(text: &str) -> Result<MatroidRecord, ParseError> {
    parse_matroid_lines(&content_lines(text, 0))
}

/// Records separated by blank lines.
pub fn parse_corpus(text: &str) -> Result<Vec<MatroidRecord>, ParseError> {
    let mut records = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            if !block.is_empty() {
                records.push(parse_matroid_lines(&block)?);
                block.clear();
            }
        } else {
            block.push((i + 1, line));
        }
    }
    if !block.is_empty() {
        records.push(parse_matroid_lines(&block)?);
    }
    Ok(records)
}

pub fn parse_seed(text: &str) -> Result<PavingSeed, ParseError> {
    let lines = content_lines(text, 0);
    let (&(head_no, head), body) = lines.split_first().ok_or_else(|| err(1, "empty input"))?;
    let (ground, rank) = parse_header("seed", head, head_no)?;
    let mut family = None;
    for (no, name, sets) in sections(body, ground)? {
        match name {
            "H'" if family.is_none() => family = Some(into_family(ground, sets, no)?),
            "H'" => return Err(err(no, "duplicate `H':` section")),
            other => return Err(err(no, format!("unknown section `{other}:`"))),
        }
    }
    let family = family.ok_or_else(|| err(head_no, "missing `H':` section"))?;
    Ok(PavingSeed::new(rank, family))
}

fn write_section(out: &mut String, name: &str, family: &SetFamily) {
    let _ = writeln!(out, "{name}:");
    for set in family {
        let _ = writeln!(out, "{set}");
    }
}

/// `matroid` header and `bases:` section.
pub fn write_matroid(m: &Matroid) -> String {
    let mut out = format!("matroid n={} r={}\n", m.ground().size(), m.rank());
    write_section(&mut out, "bases", m.bases());
    out
}

/// [`write_matroid`] followed by the derived `hyperplanes:` (when the rank is
/// positive) and `circuits:` sections.
pub fn write_matroid_with_derived(m: &Matroid) -> String {
    let mut out = write_matroid(m);
    if let Ok(h) = m.hyperplanes() {
        write_section(&mut out, "hyperplanes", &h);
    }
    write_section(&mut out, "circuits", &m.circuits());
    out
}

pub fn write_seed(seed: &PavingSeed) -> String {
    let mut out = format!("seed n={} r={}\n", seed.ground().size(), seed.rank);
    write_section(&mut out, "H'", &seed.large_hyperplanes);
    out
}

pub fn write_corpus(matroids: &[Matroid]) -> String {
    matroids.iter().map(write_matroid).collect::<Vec<_>>().join("\n")
}

/// Aligned `n r class mode count` table.
pub fn write_count_table(records: &[CountRecord]) -> String {
    let rows: Vec<[String; 5]> = std::iter::once(["n", "r", "class", "mode", "count"].map(String::from))
        .chain(records.iter().map(|rec| {
            [
                rec.query.n.to_string(),
                rec.query.r.to_string(),
                rec.query.class.to_string(),
                rec.query.mode.to_string(),
                rec.count.to_string(),
            ]
        }))
        .collect();
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}
