//! Text serialization of [`LinearScorer`].
//!
//! ```text
//! discner-model v1
//! dim 262144
//! tags CB CI O DB-Bx DB-By DI-Bx DI-By DI-Ix DI-Iy DI-O
//! 17 0 0 0.25 -0.5 0 0 0 0 0 0
//! ```
//!
//! After the header, each line holds a feature index followed by its ten tag
//! parameters in the listed order. Rows that are entirely zero are omitted.
//! Values use the shortest representation that parses back exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::scorer::LinearScorer;
use crate::error::{Error, Result};
use crate::scheme::Tag;

const MAGIC: &str = "discner-model v1";

impl LinearScorer {
    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC}\ndim {}\ntags", self.dim());
        for t in Tag::ALL {
            write!(out, " {t}").expect("writing to a String");
        }
        out.push('\n');
        for (f, row) in self.params().iter().enumerate() {
            if row.iter().all(|&v| v == 0.0) {
                continue;
            }
            write!(out, "{f}").expect("writing to a String");
            for v in row {
                write!(out, " {v}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut header = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing {what} line")))
        };
        let (ln, magic) = header("version")?;
        if magic != MAGIC {
            return Err(Error::parse(
                ln,
                format!("expected {MAGIC:?}, got {magic:?}"),
            ));
        }
        let (ln, dim_line) = header("dim")?;
        let dim: usize = dim_line
            .strip_prefix("dim ")
            .and_then(|d| d.trim().parse().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| {
                Error::parse(
                    ln,
                    format!("expected \"dim N\" with N > 0, got {dim_line:?}"),
                )
            })?;
        let (ln, tags_line) = header("tags")?;
        let tags: Vec<&str> = tags_line.split_whitespace().collect();
        let expected: Vec<&str> = std::iter::once("tags")
            .chain(Tag::ALL.iter().map(|t| t.as_str()))
            .collect();
        if tags != expected {
            return Err(Error::parse(
                ln,
                format!("unsupported tag order {tags_line:?}"),
            ));
        }

        let mut params = vec![[0.0; Tag::COUNT]; dim];
        let mut seen = vec![false; dim];
        for (ln, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let f: usize = fields
                .next()
                .and_then(|f| f.parse().ok())
                .filter(|&f| f < dim)
                .ok_or_else(|| Error::parse(ln, format!("bad feature index in {line:?}")))?;
            if std::mem::replace(&mut seen[f], true) {
                return Err(Error::parse(ln, format!("feature {f} listed twice")));
            }
            let values: Vec<f64> = fields
                .map(|v| v.parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::parse(ln, "parameters must be finite numbers"))?;
            params[f] = values.try_into().map_err(|v: Vec<f64>| {
                Error::parse(
                    ln,
                    format!("expected {} parameters, got {}", Tag::COUNT, v.len()),
                )
            })?;
        }
        LinearScorer::from_params(params)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        LinearScorer::from_text(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut s = LinearScorer::zeros(50).unwrap();
        s.set_param(3, Tag::O, 0.1 + 0.2);
        s.set_param(3, Tag::DiO, -1e-300);
        s.set_param(49, Tag::Cb, 12345.678901234567);
        let text = s.to_text();
        assert_eq!(text.lines().count(), 5);
        let back = LinearScorer::from_text(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn golden_header() {
        assert_eq!(
            LinearScorer::zeros(4).unwrap().to_text(),
            "discner-model v1\ndim 4\ntags CB CI O DB-Bx DB-By DI-Bx DI-By DI-Ix DI-Iy DI-O\n"
        );
    }

    #[test]
    fn malformed_files_report_lines() {
        let ok = LinearScorer::zeros(4).unwrap().to_text();
        let cases = [
            ("discner-model v2\n", 1),
            ("discner-model v1\ndim 0\n", 2),
            ("discner-model v1\ndim 4\ntags CB\n", 3),
            (&*format!("{ok}7 0 0 0 0 0 0 0 0 0 0\n"), 4),
            (&*format!("{ok}1 0 0\n"), 4),
            (&*format!("{ok}1 0 0 0 0 0 0 0 0 0 NaN\n"), 4),
            (
                &*format!("{ok}1 0 0 0 0 0 0 0 0 0 1\n1 0 0 0 0 0 0 0 0 0 1\n"),
                5,
            ),
        ];
        for (text, line) in cases {
            match LinearScorer::from_text(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
