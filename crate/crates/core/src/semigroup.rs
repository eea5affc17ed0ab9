//! Finite semigroups given by validated Cayley tables.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Elements are 0-based indices into the Cayley table.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry at row {row}, column {col} is out of range")]
    IndexOutOfRange { row: usize, col: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(Element, Element, Element),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

/// A finite semigroup of order `n` stored as a flat row-major table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    order: usize,
    table: Vec<Element>,
    labels: Option<Vec<String>>,
}

impl Semigroup {
    /// Validates a square grid: every entry in range, then associativity.
    ///
    /// The associativity scan runs over `(i, j, k)` in row-major order and
    /// reports the first failing triple.
    pub fn from_table(rows: Vec<Vec<Element>>) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(TableError::NotSquare { row, len: entries.len(), expected: n });
            }
            for (col, &v) in entries.iter().enumerate() {
                if v >= n {
                    return Err(TableError::IndexOutOfRange { row, col });
                }
                table.push(v);
            }
        }
        let s = Semigroup { order: n, table, labels: None };
        if let Some((i, j, k)) = s.first_nonassociative_triple() {
            return Err(TableError::NonAssociative(i, j, k));
        }
        Ok(s)
    }

    /// Builds the table from a multiplication function and validates it.
    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self, TableError> {
        let rows = (0..order).map(|i| (0..order).map(|j| f(i, j)).collect()).collect();
        Self::from_table(rows)
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self, TableError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.order {
            return Err(TableError::LabelCount { expected: self.order, got: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(TableError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    fn first_nonassociative_triple(&self) -> Option<(Element, Element, Element)> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.order + y]
    }

    /// Left-to-right product of a nonempty sequence.
    pub fn product(&self, xs: &[Element]) -> Option<Element> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &y| self.mul(acc, y)))
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: Element, k: usize) -> Element {
        assert!(k >= 1, "semigroup powers start at 1");
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    pub fn row(&self, x: Element) -> &[Element] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        (0..self.order).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label when present, the index otherwise.
    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<Element> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_indices(self.order, self.elements().filter(|&x| self.is_idempotent(x)))
    }

    /// The element `z` with `zx = xz = z` for all `x`, if any.
    pub fn zero(&self) -> Option<Element> {
        self.elements().find(|&z| self.elements().all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// Two-sided identity element, if any.
    pub fn identity(&self) -> Option<Element> {
        self.elements().find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Some `s'` with `s s' s = s`; the smallest such index.
    pub fn is_regular_element(&self, s: Element) -> Option<Element> {
        self.elements().find(|&t| self.mul(self.mul(s, t), s) == s)
    }

    /// Index and period of the monogenic subsemigroup generated by `x`:
    /// the smallest `m`, `r` with `x^(m + r) = x^m`.
    pub fn index_period(&self, x: Element) -> (usize, usize) {
        let mut seen = vec![0usize; self.order];
        let mut p = x;
        let mut k = 1;
        loop {
            if seen[p] != 0 {
                return (seen[p], k - seen[p]);
            }
            seen[p] = k;
            p = self.mul(p, x);
            k += 1;
        }
    }

    /// Componentwise product. Element `(s, t)` has index `s * |T| + t`.
    pub fn direct_product(&self, other: &Semigroup) -> Semigroup {
        let m = other.order;
        let n = self.order * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (xs, xt) = (x / m, x % m);
                let (ys, yt) = (y / m, y % m);
                table.push(self.mul(xs, ys) * m + other.mul(xt, yt));
            }
        }
        let labels = (0..n).map(|x| format!("({},{})", self.label(x / m), other.label(x % m))).collect();
        Semigroup { order: n, table, labels: Some(labels) }
    }

    /// Smallest product-closed superset of `seed`.
    pub fn subsemigroup_closure(&self, seed: &ElementSet) -> Result<ElementSet, ClosureError> {
        if seed.order() != self.order {
            return Err(ClosureError::OrderMismatch { expected: self.order, got: seed.order() });
        }
        if seed.is_empty() {
            return Err(ClosureError::EmptySeed);
        }
        let mut members = seed.clone();
        let mut list: Vec<Element> = seed.iter().collect();
        let mut next = 0;
        while next < list.len() {
            let x = list[next];
            next += 1;
            let mut i = 0;
            while i < list.len() {
                let y = list[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if members.insert(p) {
                        list.push(p);
                    }
                }
                i += 1;
            }
        }
        Ok(members)
    }

    /// Restricts the table to a product-closed subset. Returns the
    /// subsemigroup (re-indexed in increasing parent order, labels kept)
    /// and the embedding of its elements into `self`.
    pub fn restrict(&self, subset: &ElementSet) -> Result<(Semigroup, Vec<Element>), ClosureError> {
        if subset.is_empty() {
            return Err(ClosureError::EmptySeed);
        }
        let members: Vec<Element> = subset.iter().collect();
        let mut position = vec![usize::MAX; self.order];
        for (k, &x) in members.iter().enumerate() {
            position[x] = k;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &members {
            for &y in &members {
                let p = position[self.mul(x, y)];
                if p == usize::MAX {
                    return Err(ClosureError::NotClosed(x, y));
                }
                table.push(p);
            }
        }
        let labels = self.labels.as_ref().map(|l| members.iter().map(|&x| l[x].clone()).collect());
        Ok((Semigroup { order: m, table, labels }, members))
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup(order {}", self.order)?;
        if let Some(l) = &self.labels {
            write!(f, ", {:?}", l)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("empty seed set")]
    EmptySeed,
    #[error("set over {got} elements used with a semigroup of order {expected}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("subset is not closed: product of {0} and {1} escapes")]
    NotClosed(Element, Element),
}

/// A subset of the elements of a semigroup of a given order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet { mask: vec![false; order] }
    }

    pub fn full(order: usize) -> Self {
        ElementSet { mask: vec![true; order] }
    }

    /// Panics if an index is `>= order`.
    pub fn from_indices(order: usize, indices: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(order);
        for x in indices {
            assert!(x < order, "element {x} out of range for order {order}");
            s.mask[x] = true;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Returns `true` if `x` was not already present.
    pub fn insert(&mut self, x: Element) -> bool {
        !std::mem::replace(&mut self.mask[x], true)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.mask.len() == other.mask.len() && self.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet { mask: self.mask.iter().zip(&other.mask).map(|(a, b)| *a || *b).collect() }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A map between semigroups given by the image of each domain element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub domain_order: usize,
    pub codomain_order: usize,
    pub map: Vec<Element>,
}

impl Morphism {
    pub fn new(codomain_order: usize, map: Vec<Element>) -> Self {
        Morphism { domain_order: map.len(), codomain_order, map }
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain_order];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// Checks `map(xy) = map(x) map(y)` on all pairs.
    pub fn is_homomorphism(&self, domain: &Semigroup, codomain: &Semigroup) -> bool {
        if domain.order() != self.domain_order || codomain.order() != self.codomain_order {
            return false;
        }
        domain
            .elements()
            .all(|x| domain.elements().all(|y| self.map[domain.mul(x, y)] == codomain.mul(self.map[x], self.map[y])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ac2() -> Semigroup {
        crate::named::build_named("AC2").unwrap()
    }

    #[test]
    fn trivial_table() {
        let s = Semigroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(s.order(), 1);
        assert_eq!(s.mul(0, 0), 0);
    }

    #[test]
    fn rejects_out_of_range_and_ragged() {
        assert_eq!(
            Semigroup::from_table(vec![vec![0, 2], vec![0, 0]]),
            Err(TableError::IndexOutOfRange { row: 0, col: 1 })
        );
        assert!(matches!(Semigroup::from_table(vec![vec![0, 1], vec![0]]), Err(TableError::NotSquare { row: 1, .. })));
        assert_eq!(Semigroup::from_table(vec![]), Err(TableError::Empty));
    }

    #[test]
    fn cc_equal_c_is_still_associative() {
        // c becomes a zero element
        let mut rows = ac2().rows();
        rows[5][5] = 5;
        let s = Semigroup::from_table(rows).unwrap();
        assert_eq!(s.zero(), Some(5));
    }

    #[test]
    fn broken_ac2_reports_first_triple() {
        let mut rows = ac2().rows();
        // c*c = 0 becomes c*c = a
        rows[5][5] = 0;
        let err = Semigroup::from_table(rows.clone()).unwrap_err();
        // independent scan for the first failing triple
        let n = rows.len();
        let mut expected = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                        expected = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        let (i, j, k) = expected.expect("mutated table must be non-associative");
        assert_eq!(err, TableError::NonAssociative(i, j, k));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let s = Semigroup::from_table(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(s.with_labels(["a", "a"]), Err(TableError::DuplicateLabel("a".into())));
    }

    #[test]
    fn closure_in_ac2() {
        let s = ac2();
        let a = s.find_label("a").unwrap();
        let b = s.find_label("b").unwrap();
        let c = s.find_label("c").unwrap();
        let z = s.find_label("0").unwrap();
        let gen = s.subsemigroup_closure(&ElementSet::from_indices(6, [a, b])).unwrap();
        assert_eq!(gen.len(), 5);
        assert!(!gen.contains(c));
        let cz = s.subsemigroup_closure(&ElementSet::from_indices(6, [c])).unwrap();
        assert_eq!(cz, ElementSet::from_indices(6, [c, z]));
        assert_eq!(s.subsemigroup_closure(&ElementSet::full(6)).unwrap(), ElementSet::full(6));
        assert_eq!(s.subsemigroup_closure(&ElementSet::empty(6)), Err(ClosureError::EmptySeed));
    }

    #[test]
    fn idempotents_and_regularity() {
        let s = ac2();
        let names: Vec<String> = s.idempotents().iter().map(|x| s.label(x)).collect();
        assert_eq!(names, ["a", "ab", "ba", "0"]);
        let b = s.find_label("b").unwrap();
        assert_eq!(s.is_regular_element(b), s.find_label("a"));
        for e in s.idempotents().iter() {
            assert_eq!(s.mul(s.mul(e, e), e), e);
        }
        let null2 = crate::named::build_named("null:2").unwrap();
        assert_eq!(null2.is_regular_element(1), None);
    }

    #[test]
    fn restrict_keeps_labels() {
        let s = ac2();
        let set = s.idempotents();
        assert!(matches!(s.restrict(&set), Err(ClosureError::NotClosed(..))));
        let closed = s.subsemigroup_closure(&set).unwrap();
        let (t, emb) = s.restrict(&closed).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.labels().unwrap(), ["a", "b", "ab", "ba", "0"]);
        assert!(Morphism::new(6, emb).is_homomorphism(&t, &s));
    }
}
