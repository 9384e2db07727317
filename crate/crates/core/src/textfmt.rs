//! Plain-text file formats.
//!
//! System files:
//!
//! ```text
//! # sts v1
//! n m
//! a b c        (m lines, 0-based, sorted ascending)
//! ```
//!
//! Coloring files: `colors r` followed by one color index per triple, in the
//! order of the companion system file. Lines starting with `#` are comments
//! in both formats.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::system::{SystemError, TripleSystem};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} entries, found {found}")]
    Count { expected: usize, found: usize },
    #[error(transparent)]
    Invalid(#[from] SystemError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: usize, s: &str) -> Result<[usize; N], FormatError> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    if fields.len() != N {
        return Err(FormatError::Syntax {
            line,
            msg: format!("expected {N} fields, found {}", fields.len()),
        });
    }
    let mut out = [0usize; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| FormatError::Syntax {
            line,
            msg: format!("not a non-negative integer: {f:?}"),
        })?;
    }
    Ok(out)
}

pub fn write_sts(system: &TripleSystem) -> String {
    let mut out = String::with_capacity(16 + 12 * system.len());
    out.push_str("# sts v1\n");
    let _ = writeln!(out, "{} {}", system.n(), system.len());
    for t in system.triples() {
        let _ = writeln!(out, "{} {} {}", t.a(), t.b(), t.c());
    }
    out
}

pub fn parse_sts(text: &str) -> Result<TripleSystem, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::Syntax {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_fields::<2>(line, header)?;
    let mut raw = Vec::with_capacity(m);
    for (line, l) in lines {
        let t = parse_fields::<3>(line, l)?;
        if !(t[0] < t[1] && t[1] < t[2]) {
            return Err(FormatError::Syntax {
                line,
                msg: "triple not sorted ascending".into(),
            });
        }
        raw.push(t);
    }
    if raw.len() != m {
        return Err(FormatError::Count {
            expected: m,
            found: raw.len(),
        });
    }
    Ok(TripleSystem::new(n, &raw)?)
}

pub fn write_coloring(coloring: &EdgeColoring) -> String {
    let mut out = String::with_capacity(12 + 3 * coloring.len());
    let _ = writeln!(out, "colors {}", coloring.r());
    for c in coloring.colors() {
        let _ = writeln!(out, "{c}");
    }
    out
}

pub fn parse_coloring(text: &str, system: &TripleSystem) -> Result<EdgeColoring, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::Syntax {
        line: 0,
        msg: "missing `colors r` header".into(),
    })?;
    let r = header
        .strip_prefix("colors")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .ok_or(FormatError::Syntax {
            line,
            msg: "expected `colors r`".into(),
        })?;
    let colors = lines
        .map(|(line, l)| parse_fields::<1>(line, l).map(|[c]| c))
        .collect::<Result<Vec<_>, _>>()?;
    if colors.len() != system.len() {
        return Err(FormatError::Count {
            expected: system.len(),
            found: colors.len(),
        });
    }
    Ok(EdgeColoring::new(system, r, colors)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sts_text_is_exact() {
        let s = TripleSystem::new(3, &[[2, 0, 1]]).unwrap();
        assert_eq!(write_sts(&s), "# sts v1\n3 1\n0 1 2\n");
        let back = parse_sts(&write_sts(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn header_is_optional_and_comments_skip() {
        let s = parse_sts("# a comment\n\n7 1\n# inline\n0 1 3\n").unwrap();
        assert_eq!((s.n(), s.len()), (7, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_sts(""), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_sts("3 2\n0 1 2\n"),
            Err(FormatError::Count { .. })
        ));
        assert!(matches!(
            parse_sts("3 1\n1 0 2\n"),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_sts("3 1\n0 1 x\n"),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_sts("3 1\n0 1 5\n"),
            Err(FormatError::Invalid(_))
        ));
    }

    #[test]
    fn coloring_text() {
        let s = TripleSystem::new(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let c = EdgeColoring::new(&s, 3, vec![2, 0]).unwrap();
        let text = write_coloring(&c);
        assert_eq!(text, "colors 3\n2\n0\n");
        assert_eq!(parse_coloring(&text, &s).unwrap(), c);
        assert!(parse_coloring("colors 2\n0\n", &s).is_err());
        assert!(parse_coloring("colors 2\n0\n2\n", &s).is_err());
    }
}
