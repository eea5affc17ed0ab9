//! The `.rees` text format for Rees matrix data.
//!
//! ```text
//! group C2
//! dims 2 2
//! 1 1
//! 0 1
//! ```
//!
//! `group` names a built-in construction or a `.sgp` file (relative to the
//! `.rees` file); `dims` gives the number of rows `|Λ|` and columns `|I|`.
//! Each entry is a group element label, `#k` for the element with index
//! `k`, or `0` for the zero entry.

use std::path::Path;

use thiserror::Error;

use super::ReesSpec;
use crate::named::build_named;
use crate::semigroup::Semigroup;
use crate::sgp::parse_sgp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot load group `{reference}`: {message}")]
    Group { reference: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ReesFileError {
    ReesFileError::Syntax { line, message: message.into() }
}

/// Parses `.rees` text, loading the group through `resolve`.
pub fn parse_rees(text: &str, resolve: impl Fn(&str) -> Result<Semigroup, String>) -> Result<ReesSpec, ReesFileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    let (no, line) = lines.next().ok_or_else(|| syntax(1, "missing `group` line"))?;
    let reference = line
        .strip_prefix("group")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .map(str::trim)
        .ok_or_else(|| syntax(no, "expected `group <name-or-file>`"))?;
    let group =
        resolve(reference).map_err(|message| ReesFileError::Group { reference: reference.to_string(), message })?;
    let identity = group.identity().ok_or_else(|| ReesFileError::Group {
        reference: reference.to_string(),
        message: "not a group: no identity element".into(),
    })?;

    let (no, line) = lines.next().ok_or_else(|| syntax(no + 1, "missing `dims` line"))?;
    let dims: Vec<usize> = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["dims", a, b] => [a, b]
            .iter()
            .map(|t| t.parse().map_err(|_| syntax(no, format!("bad dimension `{t}`"))))
            .collect::<Result<_, _>>()?,
        _ => return Err(syntax(no, "expected `dims <rows> <cols>`")),
    };
    let (rows, cols) = (dims[0], dims[1]);

    let mut sandwich = Vec::with_capacity(rows);
    for r in 0..rows {
        let (no, line) = lines.next().ok_or_else(|| syntax(no + r + 1, format!("missing sandwich row {}", r + 1)))?;
        let row = line
            .split_whitespace()
            .map(|tok| entry(&group, tok).ok_or_else(|| syntax(no, format!("unknown group element `{tok}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != cols {
            return Err(syntax(no, format!("expected {cols} entries, found {}", row.len())));
        }
        sandwich.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "unexpected content after the sandwich matrix"));
    }
    Ok(ReesSpec { group, identity, sandwich })
}

fn entry(group: &Semigroup, tok: &str) -> Option<Option<usize>> {
    if tok == "0" {
        return Some(None);
    }
    if let Some(idx) = tok.strip_prefix('#') {
        return idx.parse().ok().filter(|&k| k < group.order()).map(Some);
    }
    group.elements().find(|&g| group.label(g) == tok).map(Some)
}

/// Reads a `.rees` file. Group references are tried as built-in names
/// first, then as `.sgp` paths relative to the file.
pub fn load_rees(path: &Path) -> Result<ReesSpec, ReesFileError> {
    let io = |e: std::io::Error| ReesFileError::Io { path: path.display().to_string(), message: e.to_string() };
    let text = std::fs::read_to_string(path).map_err(io)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_rees(&text, |reference| {
        if let Ok(s) = build_named(reference) {
            return Ok(s);
        }
        let file = base.join(reference);
        let text = std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
        parse_sgp(&text).map_err(|e| format!("{}: {e}", file.display()))
    })
}

pub fn to_rees_string(spec: &ReesSpec, group_reference: &str) -> String {
    let g = &spec.group;
    let token = |x: usize| {
        let label = g.label(x);
        if label == "0" || label.starts_with('#') || label.contains(char::is_whitespace) {
            format!("#{x}")
        } else {
            label
        }
    };
    let mut out = format!("group {group_reference}\ndims {} {}\n", spec.rows(), spec.cols());
    for row in &spec.sandwich {
        let line: Vec<String> = row.iter().map(|p| p.map_or("0".to_string(), token)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
