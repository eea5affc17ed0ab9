//! Loading semigroups from files and builder expressions.

use std::path::Path;

use sgpvar_core::structure::{load_rees, rees_semigroup, ReesFileError};
use sgpvar_core::{build_named, parse_sgp, NamedError, Semigroup, SgpError, StructureError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Sgp { path: String, source: SgpError },
    #[error("{0}")]
    Rees(#[from] ReesFileError),
    #[error("{0}")]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Named(#[from] NamedError),
    #[error("bad expression `{expression}`: {message}")]
    Expression { expression: String, message: String },
}

/// An existing file is read as `.rees` (by extension) or `.sgp`; anything
/// else is a builder expression.
pub fn load_semigroup(input: &str) -> Result<Semigroup, InputError> {
    let path = Path::new(input);
    if path.is_file() {
        load_file(path)
    } else {
        build_expression(input)
    }
}

pub fn load_file(path: &Path) -> Result<Semigroup, InputError> {
    if path.extension().is_some_and(|e| e == "rees") {
        let spec = load_rees(path)?;
        return Ok(rees_semigroup(&spec)?);
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_sgp(&text).map_err(|source| InputError::Sgp { path: path.display().to_string(), source })
}

/// `NAME`, `product(EXPR, EXPR)` or `rees(FILE)`.
pub fn build_expression(expression: &str) -> Result<Semigroup, InputError> {
    let fail = |message: &str| InputError::Expression { expression: expression.to_string(), message: message.into() };
    let e = expression.trim();
    if let Some(args) = call_args(e, "product") {
        let parts = split_top_level(args).ok_or_else(|| fail("unbalanced parentheses"))?;
        let [a, b] = parts[..] else { return Err(fail("product takes two arguments")) };
        return Ok(build_expression(a)?.direct_product(&build_expression(b)?));
    }
    if let Some(file) = call_args(e, "rees") {
        let spec = load_rees(Path::new(file.trim()))?;
        return Ok(rees_semigroup(&spec)?);
    }
    if e.contains(['(', ')', ',']) {
        return Err(fail("expected NAME, product(a, b) or rees(file)"));
    }
    Ok(build_named(e)?)
}

fn call_args<'a>(e: &'a str, name: &str) -> Option<&'a str> {
    e.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn split_top_level(args: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(args[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    (depth == 0).then(|| {
        parts.push(args[start..].trim());
        parts
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(build_expression("AC2").unwrap().order(), 6);
        assert_eq!(build_expression("product(A2, C2)").unwrap().order(), 10);
        assert_eq!(build_expression("product(product(A2,C2), C2)").unwrap().order(), 20);
        for bad in ["product(A2)", "product(A2, C2", "nope", "A2)"] {
            assert!(build_expression(bad).is_err(), "{bad}");
        }
    }
}
