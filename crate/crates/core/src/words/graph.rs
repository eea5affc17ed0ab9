use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Var, Word};
use crate::scc::strongly_connected_components;

/// The graph of a word: vertices are its variables, with an edge `x -> y`
/// whenever `xy` is a factor; the first and last letters are marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordGraph {
    pub vertices: BTreeSet<Var>,
    pub edges: BTreeSet<(Var, Var)>,
    pub initial: Var,
    pub final_vertex: Var,
}

pub fn word_graph(w: &Word) -> WordGraph {
    let letters = w.letters();
    WordGraph {
        vertices: w.alphabet(),
        edges: letters.windows(2).map(|p| (p[0], p[1])).collect(),
        initial: w.first(),
        final_vertex: w.last(),
    }
}

impl WordGraph {
    pub fn is_strongly_connected(&self) -> bool {
        let index: BTreeMap<Var, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in &self.edges {
            adj[index[a]].push(index[b]);
        }
        strongly_connected_components(&adj).iter().all(|&c| c == 0)
    }

    /// One `x -> y` line per edge in (source, target) order, then the
    /// `initial:` and `final:` lines.
    pub fn edge_list(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WordGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.edges {
            writeln!(f, "{a} -> {b}")?;
        }
        writeln!(f, "initial: {}", self.initial)?;
        writeln!(f, "final: {}", self.final_vertex)
    }
}

/// Whether `u = v` holds in AC2: equal graphs and, for every variable, the
/// same parity of occurrences.
pub fn holds_in_ac2(u: &Word, v: &Word) -> bool {
    if word_graph(u) != word_graph(v) {
        return false;
    }
    let (cu, cv) = (u.counts(), v.counts());
    cu.iter().all(|(x, n)| cv.get(x).is_some_and(|m| (n ^ m) & 1 == 0))
}

/// Length at least 2 and a strongly connected graph.
pub fn is_connected(w: &Word) -> bool {
    w.len() >= 2 && word_graph(w).is_strongly_connected()
}

/// The finest factorization `w = w1 w2 ... wk` in which every cut separates
/// alphabet-disjoint halves. A cut after position `i` is legal exactly when
/// no letter of `w[..=i]` occurs again later.
pub fn prime_decompose(w: &Word) -> Vec<Word> {
    let letters = w.letters();
    let mut last = BTreeMap::new();
    for (i, &x) in letters.iter().enumerate() {
        last.insert(x, i);
    }
    let mut factors = Vec::new();
    let mut start = 0;
    let mut reach = 0;
    for (i, x) in letters.iter().enumerate() {
        reach = reach.max(last[x]);
        if reach == i {
            factors.push(w.factor(start, i + 1).expect("nonempty factor"));
            start = i + 1;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_words, var, w};

    fn edges(spec: &[(char, char)]) -> BTreeSet<(Var, Var)> {
        spec.iter().map(|&(a, b)| (var(a), var(b))).collect()
    }

    #[test]
    fn figure_one_graph() {
        let g = word_graph(&w("x^2yzxzy^2zt^2"));
        let expected = edges(&[
            ('x', 'x'),
            ('x', 'y'),
            ('y', 'z'),
            ('z', 'x'),
            ('x', 'z'),
            ('z', 'y'),
            ('y', 'y'),
            ('z', 't'),
            ('t', 't'),
        ]);
        assert_eq!(g.edges, expected);
        assert_eq!(g.initial, var('x'));
        assert_eq!(g.final_vertex, var('t'));
        assert_eq!(word_graph(&w("xy^3zyzx^2zyzt^3")), g);
    }

    #[test]
    fn single_letter_graph() {
        let g = word_graph(&w("x"));
        assert!(g.edges.is_empty());
        assert_eq!(g.initial, g.final_vertex);
        assert_eq!(g.edge_list(), "initial: x\nfinal: x\n");
    }

    #[test]
    fn ac2_identities_by_graph() {
        assert!(holds_in_ac2(&w("xyxzx"), &w("xzxyx")));
        assert!(holds_in_ac2(&w("x^2"), &w("x^4")));
        assert!(!holds_in_ac2(&w("xy"), &w("yx")));
        // same graph, parity differs
        assert!(!holds_in_ac2(&w("x^2"), &w("x^3")));
    }

    #[test]
    fn connectedness() {
        assert!(is_connected(&w("x^2")));
        assert!(is_connected(&w("xyx")));
        assert!(!is_connected(&w("x^2yzxzy^2zt^2")));
        assert!(!is_connected(&w("x")));
        assert!(!is_connected(&w("xy")));
    }

    #[test]
    fn prime_factors() {
        let names =
            |word: &str| -> Vec<String> { prime_decompose(&w(word)).iter().map(|f| f.to_plain_string()).collect() };
        assert_eq!(names("xy"), ["x", "y"]);
        assert_eq!(names("xyx"), ["xyx"]);
        assert_eq!(names("xxyzz"), ["xx", "y", "zz"]);
        assert_eq!(names("x"), ["x"]);
    }

    fn split_points_brute(word: &Word) -> Vec<usize> {
        (1..word.len())
            .filter(|&k| {
                let left: BTreeSet<_> = word.letters()[..k].iter().collect();
                word.letters()[k..].iter().all(|x| !left.contains(x))
            })
            .collect()
    }

    #[test]
    fn decomposition_matches_exhaustive_splits() {
        for word in enumerate_words(4, 8) {
            let factors = prime_decompose(&word);
            let joined = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.concat(f));
            assert_eq!(joined, word);
            let mut cuts = Vec::new();
            let mut at = 0;
            for f in &factors[..factors.len() - 1] {
                at += f.len();
                cuts.push(at);
            }
            assert_eq!(cuts, split_points_brute(&word), "{word}");
            if word.len() >= 2 {
                assert_eq!(is_connected(&word), factors.len() == 1, "{word}");
            }
        }
    }
}
