//! The one-set-per-line family format.
//!
//! ```text
//! # optional comments
//! n=7 r=3
//! 1 2 3
//! 1 4 5
//! ```
//!
//! The header is optional and must precede the first set. Without it the
//! ground size is the largest label used and no rank is recorded. Each set
//! is a strictly increasing list of 1-based labels. Written files are in
//! canonical (colex) member order, so writing a parsed canonical file
//! reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use intersectra_core::{SetFamily, VSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Family(#[from] intersectra_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(u32, Option<u32>), FormatError> {
    let mut n = None;
    let mut r = None;
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("malformed header field `{token}`")))?;
        let value: u32 = value.parse().map_err(|_| {
            syntax(
                line,
                format!("header value `{value}` is not a non-negative integer"),
            )
        })?;
        let slot = match key {
            "n" => &mut n,
            "r" => &mut r,
            _ => return Err(syntax(line, format!("unknown header field `{key}`"))),
        };
        if slot.replace(value).is_some() {
            return Err(syntax(line, format!("header field `{key}` repeated")));
        }
    }
    let n = n.ok_or_else(|| syntax(line, "header must give n"))?;
    if n == 0 {
        return Err(syntax(line, "n must be positive"));
    }
    Ok((n, r))
}

fn parse_set(line: usize, text: &str) -> Result<Vec<u32>, FormatError> {
    let mut out: Vec<u32> = Vec::new();
    for token in text.split_whitespace() {
        let e: u32 = token
            .parse()
            .map_err(|_| syntax(line, format!("`{token}` is not an element label")))?;
        if e == 0 {
            return Err(syntax(line, "element labels start at 1"));
        }
        if out.last().is_some_and(|&prev| prev >= e) {
            return Err(syntax(line, "elements must be strictly increasing"));
        }
        out.push(e);
    }
    Ok(out)
}

/// Parses a family from text.
pub fn parse_family(text: &str) -> Result<SetFamily, FormatError> {
    let mut header: Option<(u32, Option<u32>)> = None;
    let mut sets: Vec<(usize, Vec<u32>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t.starts_with("n=") || t.starts_with("r=") {
            if header.is_some() || !sets.is_empty() {
                return Err(syntax(line, "header must come before the first set"));
            }
            header = Some(parse_header(line, t)?);
            continue;
        }
        sets.push((line, parse_set(line, t)?));
    }
    let (n, rank) = match header {
        Some(h) => h,
        None => {
            let n = sets
                .iter()
                .filter_map(|(_, s)| s.last().copied())
                .max()
                .ok_or_else(|| syntax(1, "no header and no sets: ground size unknown"))?;
            (n, None)
        }
    };
    let mut members = Vec::with_capacity(sets.len());
    for (line, s) in sets {
        if let Some(&e) = s.iter().find(|&&e| e > n) {
            return Err(syntax(line, format!("element {e} exceeds n={n}")));
        }
        if let Some(r) = rank {
            if s.len() != r as usize {
                return Err(syntax(
                    line,
                    format!("set has {} elements, header says r={r}", s.len()),
                ));
            }
        }
        members.push(VSet::new(n, s)?);
    }
    let family = SetFamily::new(n, members)?;
    Ok(match rank {
        Some(r) => family.with_rank(r)?,
        None => family,
    })
}

/// Renders a family in canonical order with a header.
pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("n={}", family.ground_size());
    if let Some(r) = family.rank() {
        let _ = write!(out, " r={r}");
    }
    out.push('\n');
    for m in family {
        let mut first = true;
        for e in m.iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{e}");
        }
        out.push('\n');
    }
    out
}

pub fn read_family(path: &Path) -> Result<SetFamily, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_family(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_comments_and_blank_lines() {
        let f = parse_family("# triangle\n\nn=4 r=2\n1 2\n  1 3 \n# mid\n2 3\n").unwrap();
        assert_eq!(f.ground_size(), 4);
        assert_eq!(f.rank(), Some(2));
        assert_eq!(f.to_lists(), [[1, 2], [1, 3], [2, 3]]);
    }

    #[test]
    fn infers_ground_size_without_header() {
        let f = parse_family("1 2\n3 4\n").unwrap();
        assert_eq!(f.ground_size(), 4);
        assert_eq!(f.rank(), None);
    }

    #[test]
    fn canonical_text_round_trips_exactly() {
        let text = "n=7 r=3\n1 2 3\n1 4 5\n2 4 6\n3 5 6\n2 5 7\n1 6 7\n";
        let f = parse_family(text).unwrap();
        assert_eq!(write_family(&f), text);
        let unsorted = parse_family("n=4\n2 3\n1 2\n").unwrap();
        assert_eq!(write_family(&unsorted), "n=4\n1 2\n2 3\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = |t: &str| match parse_family(t) {
            Err(FormatError::Syntax { line, .. }) => line,
            other => panic!("expected syntax error, got {other:?}"),
        };
        assert_eq!(err("n=3\n1 2\n2 1\n"), 3);
        assert_eq!(err("n=3\n1 x\n"), 2);
        assert_eq!(err("1 2\nn=3\n"), 2);
        assert_eq!(err("n=3 r=2\n1 2 3\n"), 2);
        assert_eq!(err("n=3\n\n1 5\n"), 3);
        assert_eq!(err("n=3 q=1\n"), 1);
        assert_eq!(err("# nothing\n"), 1);
        assert_eq!(err("n=3\n0 1\n"), 2);
    }
}
