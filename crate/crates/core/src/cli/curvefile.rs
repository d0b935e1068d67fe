//! Curve files: named curves, one component per line.
//!
//! ```text
//! # six lines and a conic
//! curve c1
//! x - z
//! x + z
//!
//! curve q2 assert-quasi-homogeneous e=1
//! x^2 + y^2 - 2*z^2
//! ```
//!
//! A header `curve NAME [FLAG ...]` starts a curve; every following
//! non-blank line up to the next header is one component in the polynomial
//! grammar. `#` starts a comment. Flags are `assert-quasi-homogeneous` and
//! `e=N` (number of irreducible components over ℂ when a component is
//! reducible).

use std::fmt::Write as _;

use thiserror::Error;

use crate::generate::Generated;
use crate::qpoly::{parse_poly, ParseError, TriPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEntry {
    pub name: String,
    pub components: Vec<TriPoly>,
    pub assert_quasi_homogeneous: bool,
    pub e_override: Option<u32>,
    /// True for raw polynomial input, where `e` is unknown unless given.
    pub raw: bool,
}

impl CurveEntry {
    pub fn raw(name: &str, f: TriPoly, e: Option<u32>, qh: bool) -> Self {
        CurveEntry {
            name: name.to_string(),
            components: vec![f],
            assert_quasi_homogeneous: qh,
            e_override: e,
            raw: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveFileError {
    #[error("line {line}: component before any `curve` header")]
    Orphan { line: usize },
    #[error("line {line}: `curve` header needs a name")]
    MissingName { line: usize },
    #[error("line {line}: unknown flag {flag:?}")]
    UnknownFlag { line: usize, flag: String },
    #[error("line {line}, column {}: {}", .source.position + 1, .source.kind)]
    Parse { line: usize, source: ParseError },
    #[error("curve {0:?} has no components")]
    EmptyCurve(String),
    #[error("curve name {0:?} appears twice")]
    Duplicate(String),
}

pub fn parse_curve_file(text: &str) -> Result<Vec<CurveEntry>, CurveFileError> {
    let mut out: Vec<CurveEntry> = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        if words.next() == Some("curve") && !content.starts_with("curve(") {
            let name = words.next().ok_or(CurveFileError::MissingName { line })?.to_string();
            if out.iter().any(|c| c.name == name) {
                return Err(CurveFileError::Duplicate(name));
            }
            let mut entry = CurveEntry {
                name,
                components: vec![],
                assert_quasi_homogeneous: false,
                e_override: None,
                raw: false,
            };
            for flag in words {
                match flag.strip_prefix("e=") {
                    Some(n) => {
                        entry.e_override = Some(n.parse().map_err(|_| CurveFileError::UnknownFlag {
                            line,
                            flag: flag.to_string(),
                        })?)
                    }
                    None if flag == "assert-quasi-homogeneous" => entry.assert_quasi_homogeneous = true,
                    None => {
                        return Err(CurveFileError::UnknownFlag {
                            line,
                            flag: flag.to_string(),
                        })
                    }
                }
            }
            out.push(entry);
            continue;
        }
        let entry = out.last_mut().ok_or(CurveFileError::Orphan { line })?;
        let poly = parse_poly(content).map_err(|source| CurveFileError::Parse { line, source })?;
        entry.components.push(poly);
    }
    if let Some(c) = out.iter().find(|c| c.components.is_empty()) {
        return Err(CurveFileError::EmptyCurve(c.name.clone()));
    }
    Ok(out)
}

/// Renders generated arrangements in the curve-file format.
pub fn write_curve_file(header: &str, curves: &[Generated]) -> String {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "# {line}");
    }
    for c in curves {
        let _ = writeln!(s, "\ncurve {}", c.name);
        for comp in &c.components {
            let _ = writeln!(s, "{comp}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# example\ncurve c1\nx - z   # first line\nx + z\n\ncurve q2 assert-quasi-homogeneous e=1\nx^2 + y^2 - 2*z^2\n";

    #[test]
    fn parses_sample() {
        let cs = parse_curve_file(SAMPLE).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].name, "c1");
        assert_eq!(cs[0].components.len(), 2);
        assert!(!cs[0].assert_quasi_homogeneous);
        assert!(cs[1].assert_quasi_homogeneous);
        assert_eq!(cs[1].e_override, Some(1));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(parse_curve_file("x - z\n"), Err(CurveFileError::Orphan { line: 1 }));
        assert_eq!(
            parse_curve_file("curve\n"),
            Err(CurveFileError::MissingName { line: 1 })
        );
        assert!(matches!(
            parse_curve_file("curve a\nx +\n"),
            Err(CurveFileError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_curve_file("curve a fancy\nx\n"),
            Err(CurveFileError::UnknownFlag { line: 1, .. })
        ));
        assert_eq!(
            parse_curve_file("curve a\n"),
            Err(CurveFileError::EmptyCurve("a".into()))
        );
        assert_eq!(
            parse_curve_file("curve a\nx\ncurve a\ny\n"),
            Err(CurveFileError::Duplicate("a".into()))
        );
    }

    #[test]
    fn written_files_parse_back() {
        let g = vec![Generated {
            name: "g".into(),
            components: vec![parse_poly("x-2*y").unwrap(), parse_poly("z").unwrap()],
        }];
        let text = write_curve_file("made by a test", &g);
        let back = parse_curve_file(&text).unwrap();
        assert_eq!(back[0].components, g[0].components);
        assert!(parse_curve_file("").unwrap().is_empty());
    }
}
