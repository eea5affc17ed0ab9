//! The `.sgp` Cayley-table text format.
//!
//! ```text
//! n
//! t00 t01 ... t0(n-1)
//! ...
//! t(n-1)0 ... t(n-1)(n-1)
//! labels: s0 s1 ... s(n-1)      (optional)
//! ```
//!
//! Row `i`, column `j` holds the index of `i*j`. Anything after the table
//! and the optional labels line is rejected.

use thiserror::Error;

use crate::semigroup::{Semigroup, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Table(#[from] TableError),
}

fn syntax(line: usize, message: impl Into<String>) -> SgpError {
    SgpError::Syntax { line, message: message.into() }
}

pub fn parse_sgp(text: &str) -> Result<Semigroup, SgpError> {
    let mut lines = text.trim_end().lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().ok_or_else(|| syntax(1, "missing order"))?;
    let n: usize =
        first.trim().parse().map_err(|_| syntax(1, format!("expected the order, found {:?}", first.trim())))?;
    if n == 0 {
        return Err(syntax(1, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (no, line) = lines.next().ok_or_else(|| syntax(r + 2, "missing table row"))?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| syntax(no, format!("expected an element index, found {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(syntax(no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    let labels = match lines.next() {
        None => None,
        Some((no, line)) => {
            let rest =
                line.trim().strip_prefix("labels:").ok_or_else(|| syntax(no, "trailing content after the table"))?;
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(syntax(no, format!("expected {n} labels, found {}", labels.len())));
            }
            Some(labels)
        }
    };
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content after the labels line"));
    }
    let s = Semigroup::from_table(rows)?;
    Ok(match labels {
        Some(l) => s.with_labels(l)?,
        None => s,
    })
}

pub fn to_sgp_string(s: &Semigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for x in s.elements() {
        let row: Vec<String> = s.row(x).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}
