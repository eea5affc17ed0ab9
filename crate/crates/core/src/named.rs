//! Named constructions with a fixed canonical element order.
//!
//! | name          | order | elements (index order)                 |
//! |---------------|-------|----------------------------------------|
//! | `A2`          | 5     | a, b, ab, ba, 0                        |
//! | `AC2`         | 6     | a, b, ab, ba, 0, c                     |
//! | `A0`          | 4     | b, ab, ba, 0                           |
//! | `C2`          | 2     | 1, c                                   |
//! | `B21`         | 6     | 1, e12, e21, e11, e22, 0               |
//! | `E`           | 1     | 1                                      |
//! | `cyclic:k`    | k     | 1, g, g^2, ..., g^(k-1)                |
//! | `null:k`      | k     | 0, n1, ..., n(k-1)                     |
//! | `leftzero:k`  | k     | l1, ..., lk                            |
//!
//! `B21` is the Brandt monoid of 2x2 matrix units with zero and identity;
//! `eij` is the matrix with a single 1 in row i, column j.

use thiserror::Error;

use crate::semigroup::{ElementSet, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NamedError {
    #[error("unknown construction {0:?}")]
    UnknownName(String),
    #[error("invalid parameter in {0:?}: expected a positive integer")]
    InvalidParameter(String),
}

const A2_TABLE: [[usize; 5]; 5] = [
    // a   b  ab  ba  0
    [0, 2, 2, 0, 4], // a
    [3, 4, 1, 4, 4], // b
    [0, 4, 2, 4, 4], // ab
    [3, 1, 1, 3, 4], // ba
    [4, 4, 4, 4, 4], // 0
];

pub fn build_named(name: &str) -> Result<Semigroup, NamedError> {
    let name = name.trim();
    if let Some((kind, k)) = name.split_once(':') {
        let k: usize =
            k.trim().parse().ok().filter(|&k| k >= 1).ok_or_else(|| NamedError::InvalidParameter(name.to_string()))?;
        return match kind.trim() {
            "cyclic" => Ok(cyclic(k)),
            "null" => Ok(null(k)),
            "leftzero" => Ok(left_zero(k)),
            _ => Err(NamedError::UnknownName(name.to_string())),
        };
    }
    match name {
        "A2" => Ok(a2()),
        "AC2" => Ok(ac2()),
        "A0" => Ok(a0()),
        "C2" => Ok(labelled(cyclic(2), ["1", "c"])),
        "B21" => Ok(b21()),
        "E" => Ok(labelled(cyclic(1), ["1"])),
        _ => Err(NamedError::UnknownName(name.to_string())),
    }
}

fn labelled<const N: usize>(s: Semigroup, labels: [&str; N]) -> Semigroup {
    s.with_labels(labels).expect("builtin labels are distinct")
}

fn a2() -> Semigroup {
    let s = Semigroup::from_table(A2_TABLE.iter().map(|r| r.to_vec()).collect()).expect("A2 table is associative");
    labelled(s, ["a", "b", "ab", "ba", "0"])
}

/// A2 with an extra element c: c^2 = 0 and xc = cx = c for x in A2.
fn ac2() -> Semigroup {
    const C: usize = 5;
    const ZERO: usize = 4;
    let s = Semigroup::from_fn(6, |x, y| match (x, y) {
        (C, C) => ZERO,
        (C, _) | (_, C) => C,
        _ => A2_TABLE[x][y],
    })
    .expect("AC2 table is associative");
    labelled(s, ["a", "b", "ab", "ba", "0", "c"])
}

fn a0() -> Semigroup {
    let s = a2();
    let without_a = ElementSet::from_indices(5, 1..5);
    s.restrict(&without_a).expect("A2 minus a is a subsemigroup").0
}

fn b21() -> Semigroup {
    type M = [[u8; 2]; 2];
    let mats: [M; 6] =
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 0], [0, 0]]];
    let mul = |p: &M, q: &M| -> M {
        let mut r = [[0u8; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = p[i][0] * q[0][j] + p[i][1] * q[1][j];
            }
        }
        r
    };
    let s = Semigroup::from_fn(6, |x, y| {
        let m = mul(&mats[x], &mats[y]);
        mats.iter().position(|n| *n == m).expect("matrix units are closed")
    })
    .expect("matrix multiplication is associative");
    labelled(s, ["1", "e12", "e21", "e11", "e22", "0"])
}

fn cyclic(k: usize) -> Semigroup {
    let labels = (0..k).map(|i| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    });
    Semigroup::from_fn(k, |x, y| (x + y) % k).and_then(|s| s.with_labels(labels)).expect("cyclic group")
}

fn null(k: usize) -> Semigroup {
    let labels = (0..k).map(|i| if i == 0 { "0".to_string() } else { format!("n{i}") });
    Semigroup::from_fn(k, |_, _| 0).and_then(|s| s.with_labels(labels)).expect("null semigroup")
}

fn left_zero(k: usize) -> Semigroup {
    Semigroup::from_fn(k, |x, _| x)
        .and_then(|s| s.with_labels((1..=k).map(|i| format!("l{i}"))))
        .expect("left zero semigroup")
}
