//! Green's relations, aperiodicity, E-separability and completely 0-simple
//! semigroups.

mod rees;
mod rees_file;

pub use rees::{
    graham_houghton_normalize, rees_representation, rees_semigroup, CycleNode, Normalization, ReesRepresentation,
    ReesSpec,
};
pub use rees_file::{load_rees, parse_rees, to_rees_string, ReesFileError};

use thiserror::Error;

use crate::scc::strongly_connected_components;
use crate::semigroup::{Element, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("semigroup is not completely 0-simple")]
    NotCompletelyZeroSimple,
    #[error("invalid Rees matrix data: {0}")]
    InvalidSpec(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Class ids per element for each of Green's relations. Ids are numbered
/// in order of each class's smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreensData {
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub h: Vec<usize>,
    pub d: Vec<usize>,
}

impl GreensData {
    pub fn r_classes(&self) -> Vec<Vec<Element>> {
        classes(&self.r)
    }

    pub fn l_classes(&self) -> Vec<Vec<Element>> {
        classes(&self.l)
    }

    pub fn h_classes(&self) -> Vec<Vec<Element>> {
        classes(&self.h)
    }

    pub fn d_classes(&self) -> Vec<Vec<Element>> {
        classes(&self.d)
    }
}

fn classes(ids: &[usize]) -> Vec<Vec<Element>> {
    let count = ids.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (x, &c) in ids.iter().enumerate() {
        out[c].push(x);
    }
    out
}

/// Renumbers arbitrary keys so that ids follow smallest members.
fn renumber<K: Eq + std::hash::Hash + Copy>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    keys.map(|k| {
        let next = seen.len();
        *seen.entry(k).or_insert(next)
    })
    .collect()
}

/// `x R y` iff `xS^1 = yS^1`, found as mutual reachability under right
/// multiplication; dually for `L`. `H = R ∩ L`, `D` is the join of the two.
pub fn greens_relations(s: &Semigroup) -> GreensData {
    let n = s.order();
    let dedup = |mut v: Vec<Element>| {
        v.sort_unstable();
        v.dedup();
        v
    };
    let right: Vec<Vec<Element>> = (0..n).map(|x| dedup(s.row(x).to_vec())).collect();
    let left: Vec<Vec<Element>> = (0..n).map(|x| dedup((0..n).map(|t| s.mul(t, x)).collect())).collect();
    let r = strongly_connected_components(&right);
    let l = strongly_connected_components(&left);
    let h = renumber(r.iter().zip(&l).map(|(&a, &b)| (a, b)));

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let mut first_r = vec![usize::MAX; n];
    let mut first_l = vec![usize::MAX; n];
    for x in 0..n {
        for rep in [&mut first_r[r[x]], &mut first_l[l[x]]] {
            if *rep == usize::MAX {
                *rep = x;
            } else {
                let (a, b) = (find(&mut parent, *rep), find(&mut parent, x));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let d = renumber((0..n).map(|x| find(&mut parent, x)));
    GreensData { r, l, h, d }
}

/// All subgroups trivial. Checked both as "every H-class is a singleton"
/// and as `x^n = x^(n+1)` with `n = |S|`.
pub fn is_aperiodic(s: &Semigroup) -> Result<bool, StructureError> {
    let g = greens_relations(s);
    let by_h = g.h_classes().iter().all(|c| c.len() == 1);
    let n = s.order();
    let by_powers = s.elements().all(|x| {
        let p = s.pow(x, n);
        p == s.mul(p, x)
    });
    if by_h != by_powers {
        return Err(StructureError::InternalInvariantViolation(format!(
            "H-classes trivial: {by_h}, x^n = x^(n+1): {by_powers}"
        )));
    }
    Ok(by_h)
}

/// Idempotents separating `p != q` from the right (`pe != qe`) and from the
/// left (`fp != fq`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub p: Element,
    pub q: Element,
    pub e: Element,
    pub f: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub separable: bool,
    /// One entry per pair `p < q`, in scan order, up to the first failure.
    pub witnesses: Vec<Separation>,
    /// The first pair no idempotent separates, and on which side.
    pub failure: Option<(Element, Element, Side)>,
}

pub fn is_e_separable(s: &Semigroup) -> SeparabilityReport {
    let idempotents: Vec<Element> = s.idempotents().iter().collect();
    let mut witnesses = Vec::new();
    for p in s.elements() {
        for q in p + 1..s.order() {
            let e = idempotents.iter().copied().find(|&e| s.mul(p, e) != s.mul(q, e));
            let f = idempotents.iter().copied().find(|&f| s.mul(f, p) != s.mul(f, q));
            match (e, f) {
                (Some(e), Some(f)) => witnesses.push(Separation { p, q, e, f }),
                (None, _) => {
                    return SeparabilityReport { separable: false, witnesses, failure: Some((p, q, Side::Right)) }
                }
                (_, None) => {
                    return SeparabilityReport { separable: false, witnesses, failure: Some((p, q, Side::Left)) }
                }
            }
        }
    }
    SeparabilityReport { separable: true, witnesses, failure: None }
}

/// Has a zero, `S^2 != {0}`, and no ideals other than `{0}` and `S`.
pub fn is_completely_0_simple(s: &Semigroup) -> bool {
    let Some(zero) = s.zero() else { return false };
    if s.elements().all(|x| s.elements().all(|y| s.mul(x, y) == zero)) {
        return false;
    }
    // With J = D in a finite semigroup, the nonzero elements must form one
    // J-class; every ideal then either is {0} or contains all of them.
    let g = greens_relations(s);
    let mut nonzero = s.elements().filter(|&x| x != zero);
    let first = nonzero.next().expect("order at least 2");
    nonzero.all(|x| g.d[x] == g.d[first])
}
