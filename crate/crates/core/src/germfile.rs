//! Line-oriented germ files.
//!
//! ```text
//! # comment
//! label: C5
//! vars: x y
//! param: t
//! map: (x, y^2, x*y^3 - x^5*y + t*x^3*y^2)
//! ```

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::exactpoly::{parse_in, ParseError, PolyError, VarSet};
use crate::germ::{GermError, GermFamily, MapGerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}, f{coord} column {}: {}", error.position + 1, error.kind)]
    Expression { line: usize, coord: usize, error: ParseError },
    #[error("missing '{0}' line")]
    Missing(&'static str),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("file declares a parameter; use it as a family")]
    HasParameter,
    #[error("file declares no parameter")]
    NoParameter,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFile {
    pub label: Option<String>,
    pub vars: [String; 2],
    pub param: Option<String>,
    pub map: [String; 3],
    map_line: usize,
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl GermFile {
    pub fn parse(src: &str) -> Result<GermFile, GermFileError> {
        let mut label = None;
        let mut vars = None;
        let mut param = None;
        let mut map = None;
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let syntax = |m: &str| GermFileError::Syntax {
                line,
                message: m.to_string(),
            };
            let (key, value) = text.split_once(':').ok_or_else(|| syntax("expected 'key: value'"))?;
            let value = value.trim();
            match key.trim() {
                "label" => label = Some(value.to_string()),
                "vars" => {
                    let v: Vec<&str> = value.split_whitespace().collect();
                    match v.as_slice() {
                        [a, b] => vars = Some([a.to_string(), b.to_string()]),
                        _ => return Err(syntax("expected two source variables")),
                    }
                }
                "param" => {
                    if value.split_whitespace().count() != 1 {
                        return Err(syntax("expected one parameter name"));
                    }
                    param = Some(value.to_string());
                }
                "map" => {
                    let inner = value
                        .strip_prefix('(')
                        .and_then(|v| v.strip_suffix(')'))
                        .ok_or_else(|| syntax("map must be written as (f1, f2, f3)"))?;
                    let parts = split_top_level(inner);
                    if parts.len() != 3 {
                        return Err(syntax("map needs three coordinates"));
                    }
                    map = Some((
                        [
                            parts[0].trim().to_string(),
                            parts[1].trim().to_string(),
                            parts[2].trim().to_string(),
                        ],
                        line,
                    ));
                }
                other => return Err(syntax(&format!("unknown key '{other}'"))),
            }
        }
        let vars = vars.ok_or(GermFileError::Missing("vars"))?;
        let (map, map_line) = map.ok_or(GermFileError::Missing("map"))?;
        Ok(GermFile {
            label,
            vars,
            param,
            map,
            map_line,
        })
    }

    pub fn read(path: &Path) -> Result<GermFile, GermFileError> {
        let src = std::fs::read_to_string(path).map_err(|e| GermFileError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        GermFile::parse(&src)
    }

    fn coords(&self, vs: &VarSet) -> Result<[crate::exactpoly::MPoly; 3], GermFileError> {
        let p = |i: usize| {
            parse_in(&self.map[i], vs).map_err(|e| match e {
                PolyError::Parse(error) => GermFileError::Expression {
                    line: self.map_line,
                    coord: i + 1,
                    error,
                },
                other => GermError::from(other).into(),
            })
        };
        Ok([p(0)?, p(1)?, p(2)?])
    }

    pub fn germ(&self) -> Result<MapGerm, GermFileError> {
        if self.param.is_some() {
            return Err(GermFileError::HasParameter);
        }
        let vs = VarSet::new(&self.vars).map_err(GermError::from)?;
        Ok(MapGerm::new(self.coords(&vs)?)?)
    }

    pub fn family(&self) -> Result<GermFamily, GermFileError> {
        let t = self.param.as_deref().ok_or(GermFileError::NoParameter)?;
        let vs = VarSet::new([self.vars[0].as_str(), self.vars[1].as_str(), t]).map_err(GermError::from)?;
        Ok(GermFamily::new(self.coords(&vs)?)?)
    }
}

impl fmt::Display for GermFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            writeln!(f, "label: {l}")?;
        }
        writeln!(f, "vars: {} {}", self.vars[0], self.vars[1])?;
        if let Some(p) = &self.param {
            writeln!(f, "param: {p}")?;
        }
        writeln!(f, "map: ({}, {}, {})", self.map[0], self.map[1], self.map[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn parses_germs_and_families() {
        let gf = GermFile::parse("# C5\nlabel: C5\nvars: x y\nmap: (x, y^2, x*y^3 - x^5*y)\n").unwrap();
        assert_eq!(gf.label.as_deref(), Some("C5"));
        let f = gf.germ().unwrap();
        assert_eq!(f.to_string(), "(x, y^2, -x^5*y + x*y^3)");
        assert_eq!(GermFile::parse(&gf.to_string()).unwrap().germ().unwrap(), f);

        let fam = GermFile::parse("vars: x y\nparam: t\nmap: (x, y^2, y^3 - t*x^2*y)").unwrap();
        assert!(matches!(fam.germ(), Err(GermFileError::HasParameter)));
        let f1 = fam.family().unwrap().specialize(&rat(1)).unwrap();
        assert_eq!(f1, MapGerm::parse(["x", "y"], ["x", "y^2", "y^3 - x^2*y"]).unwrap());
    }

    #[test]
    fn nested_commas_and_errors() {
        assert_eq!(split_top_level("x, (x+y)^3, y").len(), 3);
        assert!(matches!(
            GermFile::parse("vars: x y\nmap: (x, y^2)"),
            Err(GermFileError::Syntax { line: 2, .. })
        ));
        assert_eq!(GermFile::parse("map: (x, y, x*y)"), Err(GermFileError::Missing("vars")));
        let e = GermFile::parse("vars: x y\n\nmap: (x, y^2, x*z)").unwrap().germ().unwrap_err();
        assert!(e.to_string().starts_with("line 3, f3 column 3: unknown variable"), "{e}");
        assert!(matches!(GermFile::parse("color: red"), Err(GermFileError::Syntax { line: 1, .. })));
    }
}
