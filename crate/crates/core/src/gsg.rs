//! The `.gsg` text format for Γ-semigroup tables, and plain Cayley tables
//! used as sandwich seeds.
//!
//! ```text
//! # comment
//! S 2
//! GAMMA 1
//! GAMMA0 0
//! TABLE 0
//! 0 1
//! 1 0
//! ```
//!
//! Row `i`, column `k` of block `j` holds `i γ_j k`. `GAMMA0` is optional
//! and defaults to 0; serialization always writes it.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::finite::FiniteSemigroup;
use crate::gamma::GammaSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; one past the last line for errors at end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected(&'static str),
    BadNumber(String),
    Zero(&'static str),
    Gamma0Range { gamma0: usize, gamma_size: usize },
    TableIndex { expected: usize, found: usize },
    MissingBlocks { expected: usize, found: usize },
    MissingRows { expected: usize, found: usize },
    Columns { expected: usize, found: usize },
    EntryRange { value: usize, size: usize },
    Trailing,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::BadNumber(tok) => write!(f, "`{tok}` is not a nonnegative integer"),
            ParseErrorKind::Zero(what) => write!(f, "{what} must be at least 1"),
            ParseErrorKind::Gamma0Range { gamma0, gamma_size } => {
                write!(f, "GAMMA0 {gamma0} out of range for GAMMA {gamma_size}")
            }
            ParseErrorKind::TableIndex { expected, found } => {
                write!(f, "expected TABLE {expected}, found TABLE {found}")
            }
            ParseErrorKind::MissingBlocks { expected, found } => {
                write!(f, "expected {expected} blocks, found {found}")
            }
            ParseErrorKind::MissingRows { expected, found } => {
                write!(f, "expected {expected} rows, found {found}")
            }
            ParseErrorKind::Columns { expected, found } => {
                write!(f, "expected {expected} columns, found {found}")
            }
            ParseErrorKind::EntryRange { value, size } => {
                write!(f, "entry {value} out of range (S has {size} elements)")
            }
            ParseErrorKind::Trailing => f.write_str("unexpected content after the last table"),
        }
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> (Vec<(usize, &str)>, usize) {
    let mut total = 0;
    let lines = text
        .lines()
        .enumerate()
        .inspect(|(i, _)| total = i + 1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    (lines, total + 1)
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::BadNumber(tok.to_string()),
        });
    }
    tok.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadNumber(tok.to_string()),
    })
}

/// `KEYWORD <value>` on one line.
fn keyword_line(line: usize, text: &str, keyword: &'static str) -> Result<Option<usize>, ParseError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return Ok(None);
    }
    let value = toks.next().ok_or(ParseError {
        line,
        kind: ParseErrorKind::Expected(keyword),
    })?;
    if toks.next().is_some() {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Expected("a single value"),
        });
    }
    number(line, value).map(Some)
}

fn row(line: usize, text: &str, n: usize) -> Result<Vec<usize>, ParseError> {
    let values = text
        .split_whitespace()
        .map(|t| number(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Columns {
                expected: n,
                found: values.len(),
            },
        });
    }
    if let Some(&value) = values.iter().find(|&&v| v >= n) {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::EntryRange { value, size: n },
        });
    }
    Ok(values)
}

pub fn parse_gsg(text: &str) -> Result<GammaSemigroup, ParseError> {
    let (lines, end) = content_lines(text);
    let mut it = lines.into_iter().peekable();
    let err = |line, kind| ParseError { line, kind };

    let mut header = |keyword: &'static str, what: &'static str| -> Result<usize, ParseError> {
        let (line, text) = it.next().ok_or(err(end, ParseErrorKind::Expected(what)))?;
        let value = keyword_line(line, text, keyword)?.ok_or(err(line, ParseErrorKind::Expected(what)))?;
        if value == 0 {
            return Err(err(line, ParseErrorKind::Zero(keyword)));
        }
        Ok(value)
    };
    let n = header("S", "`S <n>`")?;
    let m = header("GAMMA", "`GAMMA <m>`")?;

    let mut gamma0 = 0;
    if let Some(&(line, text)) = it.peek() {
        if let Some(j) = keyword_line(line, text, "GAMMA0")? {
            if j >= m {
                return Err(err(
                    line,
                    ParseErrorKind::Gamma0Range {
                        gamma0: j,
                        gamma_size: m,
                    },
                ));
            }
            gamma0 = j;
            it.next();
        }
    }

    let mut table = Vec::with_capacity(n * n * m);
    for block in 0..m {
        let (line, text) = it.next().ok_or(err(
            end,
            ParseErrorKind::MissingBlocks {
                expected: m,
                found: block,
            },
        ))?;
        match keyword_line(line, text, "TABLE")? {
            Some(j) if j == block => {}
            Some(j) => {
                return Err(err(
                    line,
                    ParseErrorKind::TableIndex {
                        expected: block,
                        found: j,
                    },
                ))
            }
            None => return Err(err(line, ParseErrorKind::Expected("`TABLE <j>`"))),
        }
        for r in 0..n {
            let missing = |line| err(line, ParseErrorKind::MissingRows { expected: n, found: r });
            let (line, text) = it.next().ok_or(missing(end))?;
            if text.starts_with("TABLE") {
                return Err(missing(line));
            }
            table.extend(row(line, text, n)?);
        }
    }
    if let Some((line, _)) = it.next() {
        return Err(err(line, ParseErrorKind::Trailing));
    }
    Ok(GammaSemigroup::new(n, m, table, gamma0).expect("shape checked while parsing"))
}

/// Canonical `.gsg` text.
pub fn to_gsg(gs: &GammaSemigroup) -> String {
    let n = gs.s_size();
    let mut out = String::new();
    writeln!(out, "S {n}").unwrap();
    writeln!(out, "GAMMA {}", gs.gamma_size()).unwrap();
    writeln!(out, "GAMMA0 {}", gs.gamma0()).unwrap();
    for g in 0..gs.gamma_size() {
        writeln!(out, "TABLE {g}").unwrap();
        for a in 0..n {
            let cells: Vec<String> = (0..n).map(|b| gs.mul(a, g, b).to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    }
    out
}

/// A plain Cayley table: `n` lines of `n` entries, `#` comments allowed.
pub fn parse_cayley(text: &str) -> Result<FiniteSemigroup, ParseError> {
    let (lines, end) = content_lines(text);
    let Some(&(_, first)) = lines.first() else {
        return Err(ParseError {
            line: end,
            kind: ParseErrorKind::Expected("a table row"),
        });
    };
    let n = first.split_whitespace().count();
    if lines.len() != n {
        return Err(ParseError {
            line: lines.get(n).map_or(end, |l| l.0),
            kind: ParseErrorKind::MissingRows {
                expected: n,
                found: lines.len(),
            },
        });
    }
    let mut product = Vec::with_capacity(n * n);
    for (line, text) in lines {
        product.extend(row(line, text, n)?);
    }
    Ok(FiniteSemigroup::new(n, product).expect("shape checked while parsing"))
}

pub fn to_cayley(sg: &FiniteSemigroup) -> String {
    let mut out = String::new();
    for a in sg.elements() {
        let cells: Vec<String> = sg.elements().map(|b| sg.mul(a, b).to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    const E4: &str = "S 2\nGAMMA 1\nTABLE 0\n0 1\n1 0\n";

    #[test]
    fn parses_e4() {
        assert_eq!(parse_gsg(E4).unwrap(), instances::e4());
    }

    #[test]
    fn comments_and_gamma0() {
        let text = "# E1\n\nS 1\nGAMMA 2\nGAMMA0 1\n# first block\nTABLE 0\n0\nTABLE 1\n0\n";
        let gs = parse_gsg(text).unwrap();
        assert_eq!(gs.gamma0(), 1);
        assert_eq!(gs, instances::e1().with_gamma0(1).unwrap());
    }

    #[test]
    fn missing_block() {
        let text = "S 1\nGAMMA 2\nTABLE 0\n0\n";
        let e = parse_gsg(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingBlocks { expected: 2, found: 1 });
        assert_eq!(e.to_string(), "line 5: expected 2 blocks, found 1");
    }

    #[test]
    fn error_cases_carry_line_numbers() {
        let cases = [
            ("GAMMA 1\n", 1),
            ("S 2\nGAMMA 1\nTABLE 0\n0 1\n1\n", 5),
            ("S 2\nGAMMA 1\nTABLE 0\n0 1\n1 2\n", 5),
            ("S 2\nGAMMA 1\nTABLE 0\n0 -1\n1 0\n", 4),
            ("S 2\nGAMMA 1\nTABLE 1\n0 1\n1 0\n", 3),
            ("S 2\nGAMMA 1\nGAMMA0 1\nTABLE 0\n0 1\n1 0\n", 3),
            ("S 2\nGAMMA 1\nTABLE 0\n0 1\n1 0\n0 0\n", 6),
            ("S 0\nGAMMA 1\n", 1),
            ("S 2\nGAMMA 2\nTABLE 0\n0 1\nTABLE 1\n", 5),
        ];
        for (text, line) in cases {
            let e = parse_gsg(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
        assert!(matches!(
            parse_gsg("S 2\nGAMMA 1\nTABLE 0\n0 x\n1 0\n").unwrap_err().kind,
            ParseErrorKind::BadNumber(_)
        ));
    }

    #[test]
    fn canonical_round_trip() {
        for (_, gs) in instances::catalogue() {
            let text = to_gsg(&gs);
            assert_eq!(parse_gsg(&text).unwrap(), gs);
            assert_eq!(to_gsg(&parse_gsg(&text).unwrap()), text);
        }
    }

    #[test]
    fn cayley_tables() {
        let sg = parse_cayley("# Z2\n0 1\n1 0\n").unwrap();
        assert!(sg.is_group());
        assert_eq!(to_cayley(&sg), "0 1\n1 0\n");
        assert!(parse_cayley("0 1\n").is_err());
        assert!(parse_cayley("").is_err());
        assert!(parse_cayley("0 2\n1 0\n").is_err());
    }
}
