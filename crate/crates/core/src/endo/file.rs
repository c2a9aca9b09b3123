//! Endomorphism files:
//!
//! ```text
//! # optional comments
//! n = 2
//! x1 -> x1 + x2^2
//! x2 -> x2
//! ```
//!
//! A Poisson file starts with `poisson n = <n>` and lists `2n` images.

use std::fmt;

use super::PolyEndo;
use crate::error::{Error, Result};
use crate::parse::parse_poly_at;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Jacobian,
    Poisson,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub kind: MapKind,
    /// The declared `n`; a Poisson map acts on `2n` variables.
    pub n: usize,
    pub map: PolyEndo,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn parse_header(line: &str, lineno: usize) -> Result<(MapKind, usize)> {
    let col0 = leading_ws(line) + 1;
    let body = line.trim();
    let (kind, rest, rest_col) = match body.strip_prefix("poisson") {
        Some(r) if r.starts_with(char::is_whitespace) => (MapKind::Poisson, r, col0 + "poisson".len()),
        _ => (MapKind::Jacobian, body, col0),
    };
    let rest_col = rest_col + leading_ws(rest);
    let rest = rest.trim_start();
    let Some(after_n) = rest.strip_prefix('n') else {
        return Err(perr(lineno, rest_col, "expected header `n = <int>` or `poisson n = <int>`"));
    };
    let after_n_col = rest_col + 1 + leading_ws(after_n);
    let Some(value) = after_n.trim_start().strip_prefix('=') else {
        return Err(perr(lineno, after_n_col, "expected '=' in header"));
    };
    let value_col = after_n_col + 1 + leading_ws(value);
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| perr(lineno, value_col, format!("invalid variable count '{}'", value.trim())))?;
    if n == 0 {
        return Err(perr(lineno, value_col, "n must be positive"));
    }
    Ok((kind, n))
}

/// Parses an endomorphism file; errors carry one-based line and column.
pub fn parse_map_file(src: &str) -> Result<MapFile> {
    let mut header: Option<(MapKind, usize)> = None;
    let mut images = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((kind, n)) = header else {
            header = Some(parse_header(raw, lineno)?);
            continue;
        };
        let nvars = match kind {
            MapKind::Jacobian => n,
            MapKind::Poisson => 2 * n,
        };
        let col0 = leading_ws(raw) + 1;
        let expected = images.len() + 1;
        if expected > nvars {
            return Err(perr(lineno, col0, format!("unexpected extra line; {nvars} images already given")));
        }
        let Some(arrow) = trimmed.find("->") else {
            return Err(perr(lineno, col0, "expected `x<i> -> <polynomial>`"));
        };
        let lhs = trimmed[..arrow].trim_end();
        if lhs != format!("x{expected}") {
            return Err(perr(lineno, col0, format!("expected image of x{expected}, found '{lhs}'")));
        }
        let rhs = &trimmed[arrow + 2..];
        let rhs_col = col0 + trimmed[..arrow + 2].chars().count();
        images.push(parse_poly_at(rhs, nvars, lineno, rhs_col)?);
    }
    let Some((kind, n)) = header else {
        return Err(perr(last_line.max(1), 1, "missing header `n = <int>`"));
    };
    let nvars = match kind {
        MapKind::Jacobian => n,
        MapKind::Poisson => 2 * n,
    };
    if images.len() != nvars {
        return Err(perr(
            last_line + 1,
            1,
            format!("expected {nvars} image lines, found {}", images.len()),
        ));
    }
    Ok(MapFile {
        kind,
        n,
        map: PolyEndo::new(images)?,
    })
}

impl fmt::Display for MapFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MapKind::Jacobian => writeln!(f, "n = {}", self.n)?,
            MapKind::Poisson => writeln!(f, "poisson n = {}", self.n)?,
        }
        for (i, p) in self.map.images().iter().enumerate() {
            writeln!(f, "x{} -> {}", i + 1, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn parses_jacobian_file() {
        let src = "# shear\nn = 2\nx1 -> x1 + x2^2\n\nx2 -> x2\n";
        let f = parse_map_file(src).unwrap();
        assert_eq!(f.kind, MapKind::Jacobian);
        assert_eq!(f.n, 2);
        assert_eq!(f.map.image(0), &parse_poly("x1 + x2^2", 2).unwrap());
        assert_eq!(parse_map_file(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parses_poisson_file() {
        let f = parse_map_file("poisson n = 1\nx1 -> x1 + x2^2\nx2 -> x2\n").unwrap();
        assert_eq!(f.kind, MapKind::Poisson);
        assert_eq!(f.n, 1);
        assert_eq!(f.map.n(), 2);
    }

    fn err_pos(src: &str) -> (usize, usize) {
        match parse_map_file(src).unwrap_err() {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_positions() {
        assert_eq!(err_pos("n = 2\nx1 -> x1 + 2x2\nx2 -> x2\n"), (2, 13));
        assert_eq!(err_pos("n = 2\nx2 -> x2\n"), (2, 1));
        assert_eq!(err_pos("n = 2\nx1 -> x1\n"), (3, 1));
        assert_eq!(err_pos("n = x\n"), (1, 5));
        assert_eq!(err_pos("m = 2\n"), (1, 1));
        assert_eq!(err_pos("n = 1\nx1 -> x1\nx2 -> x1\n"), (3, 1));
        assert_eq!(err_pos("n = 1\n  x1 -> x3\n"), (2, 9));
        assert_eq!(err_pos("n = 1\nx1 = x1\n"), (2, 1));
        assert_eq!(err_pos(""), (1, 1));
    }
}
