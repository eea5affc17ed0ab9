//! Exhaustive search for injective homomorphisms between small semigroups.

use thiserror::Error;

use crate::semigroup::{Element, Morphism, Semigroup};

pub const DEFAULT_EMBEDDING_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("domain of order {order} exceeds the search bound {bound}")]
    SizeBoundExceeded { order: usize, bound: usize },
}

/// Lexicographically smallest embedding of `s` into `t`, with the default
/// domain size bound.
pub fn find_embedding(s: &Semigroup, t: &Semigroup) -> Result<Option<Morphism>, EmbedError> {
    find_embedding_bounded(s, t, DEFAULT_EMBEDDING_BOUND)
}

/// Backtracking over domain elements in index order, codomain candidates in
/// increasing order. Every assignment is propagated through products with
/// already assigned elements, so values forced by earlier choices never
/// branch; the first complete map found is therefore the lexicographically
/// smallest one.
pub fn find_embedding_bounded(s: &Semigroup, t: &Semigroup, bound: usize) -> Result<Option<Morphism>, EmbedError> {
    if s.order() > bound {
        return Err(EmbedError::SizeBoundExceeded { order: s.order(), bound });
    }
    if s.order() > t.order() {
        return Ok(None);
    }
    let mut search = Search::new(s, t);
    Ok(search.run().then(|| {
        let map = search.map.iter().map(|m| m.expect("complete assignment")).collect();
        Morphism::new(t.order(), map)
    }))
}

/// True when each semigroup embeds into the other; at desk scale this is
/// an isomorphism test.
pub fn mutually_embeddable(s: &Semigroup, t: &Semigroup) -> Result<bool, EmbedError> {
    Ok(s.order() == t.order() && find_embedding(s, t)?.is_some() && find_embedding(t, s)?.is_some())
}

struct Search<'a> {
    s: &'a Semigroup,
    t: &'a Semigroup,
    // (index, period) is invariant under injective homomorphisms.
    sig_s: Vec<(usize, usize)>,
    sig_t: Vec<(usize, usize)>,
    map: Vec<Option<Element>>,
    preimage: Vec<Option<Element>>,
    trail: Vec<Element>,
}

impl<'a> Search<'a> {
    fn new(s: &'a Semigroup, t: &'a Semigroup) -> Self {
        Search {
            s,
            t,
            sig_s: s.elements().map(|x| s.index_period(x)).collect(),
            sig_t: t.elements().map(|y| t.index_period(y)).collect(),
            map: vec![None; s.order()],
            preimage: vec![None; t.order()],
            trail: Vec::new(),
        }
    }

    fn run(&mut self) -> bool {
        let Some(d) = self.map.iter().position(Option::is_none) else {
            return true;
        };
        for v in self.t.elements() {
            if self.preimage[v].is_some() || self.sig_s[d] != self.sig_t[v] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(d, v) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn set(&mut self, x: Element, y: Element) -> bool {
        if self.preimage[y].is_some() || self.sig_s[x] != self.sig_t[y] {
            return false;
        }
        self.map[x] = Some(y);
        self.preimage[y] = Some(x);
        self.trail.push(x);
        true
    }

    fn assign(&mut self, x: Element, y: Element) -> bool {
        if !self.set(x, y) {
            return false;
        }
        let mut queue = vec![x];
        while let Some(a) = queue.pop() {
            let fa = self.map[a].expect("queued elements are assigned");
            for b in self.s.elements() {
                let Some(fb) = self.map[b] else { continue };
                for (p, fp) in [(self.s.mul(a, b), self.t.mul(fa, fb)), (self.s.mul(b, a), self.t.mul(fb, fa))] {
                    match self.map[p] {
                        Some(q) if q == fp => {}
                        Some(_) => return false,
                        None => {
                            if !self.set(p, fp) {
                                return false;
                            }
                            queue.push(p);
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail above mark");
            if let Some(y) = self.map[x].take() {
                self.preimage[y] = None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::build_named;

    #[test]
    fn ac2_embeds_in_a2_times_c2() {
        let ac2 = build_named("AC2").unwrap();
        let prod = build_named("A2").unwrap().direct_product(&build_named("C2").unwrap());
        assert_eq!(prod.order(), 10);
        let m = find_embedding(&ac2, &prod).unwrap().expect("embedding exists");
        assert!(m.is_injective());
        assert!(m.is_homomorphism(&ac2, &prod));

        // the pair representation x -> (x,1), c -> (0,c) is itself a valid witness
        let pair = |x: usize| if x == 5 { 4 * 2 + 1 } else { x * 2 };
        let witness = Morphism::new(10, (0..6).map(pair).collect());
        assert!(witness.is_injective());
        assert!(witness.is_homomorphism(&ac2, &prod));
        assert!(m.map <= witness.map);
    }

    #[test]
    fn identity_map_on_self() {
        for name in ["AC2", "B21", "A2", "cyclic:5"] {
            let s = build_named(name).unwrap();
            let m = find_embedding(&s, &s).unwrap().unwrap();
            // lexicographically smallest need not be the identity when s has
            // automorphisms, but the identity is always a witness
            assert!(m.map <= s.elements().collect::<Vec<_>>());
            assert!(m.is_homomorphism(&s, &s));
        }
    }

    #[test]
    fn c2_does_not_embed_in_a2() {
        let c2 = build_named("C2").unwrap();
        let a2 = build_named("A2").unwrap();
        assert_eq!(find_embedding(&c2, &a2).unwrap(), None);
    }

    #[test]
    fn bound_is_enforced() {
        let big = build_named("cyclic:13").unwrap();
        assert_eq!(find_embedding(&big, &big), Err(EmbedError::SizeBoundExceeded { order: 13, bound: 12 }));
        assert!(find_embedding_bounded(&big, &big, 13).unwrap().is_some());
    }

    #[test]
    fn lexicographically_smallest_matches_brute_force() {
        // brute force over all maps for a small pair
        let s = build_named("leftzero:2").unwrap();
        let t = build_named("B21").unwrap();
        let mut best = None;
        for a in 0..6 {
            for b in 0..6 {
                let m = Morphism::new(6, vec![a, b]);
                if m.is_injective() && m.is_homomorphism(&s, &t) {
                    best = Some(m);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        assert_eq!(find_embedding(&s, &t).unwrap(), best);
    }
}
