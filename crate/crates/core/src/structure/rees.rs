use std::collections::VecDeque;

use super::{greens_relations, is_completely_0_simple, StructureError};
use crate::semigroup::{Element, ElementSet, Semigroup};

/// Data of a Rees matrix semigroup `M0(G; I, Λ; P)`: a group with its
/// identity and a `|Λ| × |I|` sandwich matrix whose entries are group
/// elements or `None` for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesSpec {
    pub group: Semigroup,
    pub identity: Element,
    pub sandwich: Vec<Vec<Option<Element>>>,
}

fn invalid(msg: impl Into<String>) -> StructureError {
    StructureError::InvalidSpec(msg.into())
}

impl ReesSpec {
    /// `|Λ|`
    pub fn rows(&self) -> usize {
        self.sandwich.len()
    }

    /// `|I|`
    pub fn cols(&self) -> usize {
        self.sandwich.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        let g = &self.group;
        let e = self.identity;
        if e >= g.order() || g.elements().any(|x| g.mul(e, x) != x || g.mul(x, e) != x) {
            return Err(invalid(format!("element {e} is not an identity of the group")));
        }
        if let Some(x) = g.elements().find(|&x| self.inverse_of(x).is_none()) {
            return Err(invalid(format!("group element {} has no inverse", g.label(x))));
        }
        if self.rows() == 0 || self.cols() == 0 {
            return Err(invalid("sandwich matrix is empty"));
        }
        for (lambda, row) in self.sandwich.iter().enumerate() {
            if row.len() != self.cols() {
                return Err(invalid(format!("row {} has {} entries, expected {}", lambda + 1, row.len(), self.cols())));
            }
            if let Some(&x) = row.iter().flatten().find(|&&x| x >= g.order()) {
                return Err(invalid(format!("entry {x} is not a group element")));
            }
            if row.iter().all(Option::is_none) {
                return Err(invalid(format!("row {} has no nonzero entry", lambda + 1)));
            }
        }
        if let Some(i) = (0..self.cols()).find(|&i| self.sandwich.iter().all(|row| row[i].is_none())) {
            return Err(invalid(format!("column {} has no nonzero entry", i + 1)));
        }
        Ok(())
    }

    fn inverse_of(&self, x: Element) -> Option<Element> {
        let g = &self.group;
        g.elements().find(|&y| g.mul(x, y) == self.identity && g.mul(y, x) == self.identity)
    }

    fn inverse(&self, x: Element) -> Element {
        self.inverse_of(x).expect("validated group")
    }

    /// Index of `(i, g, λ)` in [`rees_semigroup`]; the zero comes last.
    pub fn index(&self, i: usize, g: Element, lambda: usize) -> Element {
        (i * self.group.order() + g) * self.rows() + lambda
    }

    pub fn zero_index(&self) -> Element {
        self.cols() * self.group.order() * self.rows()
    }

    fn triple(&self, x: Element) -> Option<(usize, Element, usize)> {
        if x == self.zero_index() {
            return None;
        }
        let (rows, order) = (self.rows(), self.group.order());
        Some((x / rows / order, (x / rows) % order, x % rows))
    }
}

/// `(i,g,λ)(j,h,μ) = (i, g p(λ,j) h, μ)` when `p(λ,j)` is nonzero, else 0.
pub fn rees_semigroup(spec: &ReesSpec) -> Result<Semigroup, StructureError> {
    spec.validate()?;
    let n = spec.zero_index() + 1;
    let zero = spec.zero_index();
    let g = &spec.group;
    let s = Semigroup::from_fn(n, |x, y| match (spec.triple(x), spec.triple(y)) {
        (Some((i, a, lambda)), Some((j, b, mu))) => match spec.sandwich[lambda][j] {
            Some(p) => spec.index(i, g.mul(g.mul(a, p), b), mu),
            None => zero,
        },
        _ => zero,
    })
    .map_err(|e| StructureError::InternalInvariantViolation(e.to_string()))?;
    let labels = (0..n).map(|x| match spec.triple(x) {
        Some((i, a, lambda)) => format!("({},{},{})", i + 1, g.label(a), lambda + 1),
        None => "0".to_string(),
    });
    s.with_labels(labels).map_err(|e| StructureError::InternalInvariantViolation(e.to_string()))
}

/// A Rees matrix description of a completely 0-simple semigroup, with the
/// isomorphism from [`rees_semigroup`] of the spec onto the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesRepresentation {
    pub spec: ReesSpec,
    /// Elements of the original group H-class, indexed like the spec's group.
    pub group_elements: Vec<Element>,
    /// `to_original[k]` is the original element for Rees element `k`.
    pub to_original: Vec<Element>,
}

/// Rows and columns follow the L- and R-classes of the nonzero D-class in
/// order of smallest member; the group is the H-class of the smallest
/// idempotent `e`. With `r_i` the smallest element of `R_i ∩ L_e` and `q_λ`
/// the smallest of `L_λ ∩ R_e`, the sandwich entry is `q_λ r_i` and
/// `(i, g, λ)` corresponds to `r_i g q_λ`.
pub fn rees_representation(s: &Semigroup) -> Result<ReesRepresentation, StructureError> {
    if !is_completely_0_simple(s) {
        return Err(StructureError::NotCompletelyZeroSimple);
    }
    let zero = s.zero().expect("has a zero");
    let greens = greens_relations(s);
    let e = s
        .elements()
        .find(|&x| x != zero && s.is_idempotent(x))
        .ok_or_else(|| StructureError::InternalInvariantViolation("nonzero D-class without idempotent".into()))?;
    let mut r_classes: Vec<Vec<Element>> = greens.r_classes();
    let mut l_classes: Vec<Vec<Element>> = greens.l_classes();
    r_classes.retain(|c| !c.contains(&zero));
    l_classes.retain(|c| !c.contains(&zero));

    let h_e = ElementSet::from_indices(s.order(), s.elements().filter(|&x| greens.h[x] == greens.h[e]));
    let (group, group_elements) =
        s.restrict(&h_e).map_err(|err| StructureError::InternalInvariantViolation(err.to_string()))?;
    let local = |x: Element| group_elements.iter().position(|&y| y == x);
    let identity = local(e).expect("e in its H-class");

    let pick = |class: &[Element], other: &dyn Fn(Element) -> bool| -> Result<Element, StructureError> {
        class
            .iter()
            .copied()
            .find(|&x| other(x))
            .ok_or_else(|| StructureError::InternalInvariantViolation("empty intersection inside a D-class".into()))
    };
    let reps_r: Vec<Element> =
        r_classes.iter().map(|c| pick(c, &|x| greens.l[x] == greens.l[e])).collect::<Result<_, _>>()?;
    let reps_l: Vec<Element> =
        l_classes.iter().map(|c| pick(c, &|x| greens.r[x] == greens.r[e])).collect::<Result<_, _>>()?;

    let mut sandwich = Vec::with_capacity(reps_l.len());
    for &q in &reps_l {
        let mut row = Vec::with_capacity(reps_r.len());
        for &r in &reps_r {
            let p = s.mul(q, r);
            row.push(if p == zero {
                None
            } else {
                Some(local(p).ok_or_else(|| {
                    StructureError::InternalInvariantViolation("sandwich entry outside the group".into())
                })?)
            });
        }
        sandwich.push(row);
    }
    let spec = ReesSpec { group, identity, sandwich };
    let rees = rees_semigroup(&spec)?;

    let mut to_original = vec![zero; rees.order()];
    for (i, &r) in reps_r.iter().enumerate() {
        for (g, &h) in group_elements.iter().enumerate() {
            for (lambda, &q) in reps_l.iter().enumerate() {
                to_original[spec.index(i, g, lambda)] = s.mul(s.mul(r, h), q);
            }
        }
    }
    let iso = crate::semigroup::Morphism::new(s.order(), to_original.clone());
    if rees.order() != s.order() || !iso.is_injective() || !iso.is_homomorphism(&rees, s) {
        return Err(StructureError::InternalInvariantViolation("Rees coordinates are not an isomorphism".into()));
    }
    Ok(ReesRepresentation { spec, group_elements, to_original })
}

/// A vertex of the bipartite graph of nonzero sandwich entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleNode {
    /// A row index `λ`.
    Row(usize),
    /// A column index `i`.
    Col(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    /// `normalized.sandwich[λ][i] = row_scalers[λ] · p(λ,i) · col_scalers[i]`,
    /// every nonzero entry the identity.
    Normalized { spec: ReesSpec, row_scalers: Vec<Element>, col_scalers: Vec<Element> },
    /// A closed walk through nonzero entries whose alternating product is
    /// not the identity, so no rescaling works.
    Obstructed { cycle: Vec<CycleNode>, product: Element },
}

impl Normalization {
    pub fn is_normalized(&self) -> bool {
        matches!(self, Normalization::Normalized { .. })
    }
}

/// Rescales rows and columns so that every nonzero sandwich entry becomes
/// the identity, or reports a cycle proving this impossible.
///
/// Scalers are fixed along a breadth-first spanning forest of the graph on
/// rows and columns (each tree rooted at its smallest column, scaled by the
/// identity); every remaining edge must then already be consistent.
pub fn graham_houghton_normalize(spec: &ReesSpec) -> Result<Normalization, StructureError> {
    spec.validate()?;
    let g = &spec.group;
    let (rows, cols) = (spec.rows(), spec.cols());
    let mut u: Vec<Option<Element>> = vec![None; rows];
    let mut v: Vec<Option<Element>> = vec![None; cols];
    let mut parent_row: Vec<Option<usize>> = vec![None; rows];
    let mut parent_col: Vec<Option<usize>> = vec![None; cols];
    let entry = |lambda: usize, i: usize| spec.sandwich[lambda][i];

    for root in 0..cols {
        if v[root].is_some() {
            continue;
        }
        v[root] = Some(spec.identity);
        let mut queue = VecDeque::from([CycleNode::Col(root)]);
        while let Some(node) = queue.pop_front() {
            match node {
                CycleNode::Col(i) => {
                    let vi = v[i].expect("visited");
                    for lambda in 0..rows {
                        if let (Some(p), None) = (entry(lambda, i), u[lambda]) {
                            u[lambda] = Some(spec.inverse(g.mul(p, vi)));
                            parent_row[lambda] = Some(i);
                            queue.push_back(CycleNode::Row(lambda));
                        }
                    }
                }
                CycleNode::Row(lambda) => {
                    let ul = u[lambda].expect("visited");
                    for i in 0..cols {
                        if let (Some(p), None) = (entry(lambda, i), v[i]) {
                            v[i] = Some(spec.inverse(g.mul(ul, p)));
                            parent_col[i] = Some(lambda);
                            queue.push_back(CycleNode::Col(i));
                        }
                    }
                }
            }
        }
    }
    let u: Vec<Element> = u.into_iter().map(|x| x.expect("every row has a nonzero entry")).collect();
    let v: Vec<Element> = v.into_iter().map(|x| x.expect("all columns visited")).collect();

    for (lambda, &ul) in u.iter().enumerate() {
        for (i, &vi) in v.iter().enumerate() {
            let Some(p) = entry(lambda, i) else { continue };
            let product = g.mul(g.mul(ul, p), vi);
            if product != spec.identity {
                let cycle = tree_cycle(lambda, i, &parent_row, &parent_col);
                return Ok(Normalization::Obstructed { cycle, product });
            }
        }
    }
    let sandwich = spec.sandwich.iter().map(|row| row.iter().map(|p| p.map(|_| spec.identity)).collect()).collect();
    Ok(Normalization::Normalized {
        spec: ReesSpec { group: spec.group.clone(), identity: spec.identity, sandwich },
        row_scalers: u,
        col_scalers: v,
    })
}

/// The tree paths from `Row(lambda)` and `Col(i)` up to their meeting
/// point, closed by the edge between them.
fn tree_cycle(lambda: usize, i: usize, parent_row: &[Option<usize>], parent_col: &[Option<usize>]) -> Vec<CycleNode> {
    let path_to_root = |start: CycleNode| {
        let mut path = vec![start];
        let mut cur = start;
        loop {
            let next = match cur {
                CycleNode::Row(l) => parent_row[l].map(CycleNode::Col),
                CycleNode::Col(c) => parent_col[c].map(CycleNode::Row),
            };
            match next {
                Some(n) => {
                    path.push(n);
                    cur = n;
                }
                None => return path,
            }
        }
    };
    let from_row = path_to_root(CycleNode::Row(lambda));
    let from_col = path_to_root(CycleNode::Col(i));
    let meet = from_row.iter().position(|n| from_col.contains(n)).expect("same tree");
    let meet_node = from_row[meet];
    let col_part = from_col.iter().position(|&n| n == meet_node).expect("contains meet");
    let mut cycle: Vec<CycleNode> = from_row[..=meet].to_vec();
    cycle.extend(from_col[..col_part].iter().rev());
    cycle
}
