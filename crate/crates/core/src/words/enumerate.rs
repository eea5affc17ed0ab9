use std::collections::HashMap;

use super::{Var, Word};

const CANONICAL_LETTERS: &[u8; 26] = b"xyztuvwsrqponmlkjihgfedcba";

/// The `i`-th canonical variable (0-based): x, y, z, t, u, v, w, s, ...
pub fn canonical_var(i: usize) -> Var {
    match CANONICAL_LETTERS.get(i) {
        Some(&b) => Var::letter(b as char).expect("ascii letter"),
        None => Var::indexed((i - CANONICAL_LETTERS.len() + 1) as u32),
    }
}

/// Renames variables by first occurrence to x, y, z, t, ...
pub fn canonicalize(w: &Word) -> Word {
    let mut names: HashMap<Var, Var> = HashMap::new();
    let letters = w
        .letters()
        .iter()
        .map(|&x| {
            let next = names.len();
            *names.entry(x).or_insert_with(|| canonical_var(next))
        })
        .collect();
    Word::new(letters).expect("nonempty")
}

/// First occurrences appear in canonical order.
pub fn is_canonical(letters: &[Var]) -> bool {
    let mut seen = 0;
    for &x in letters {
        let known = (0..seen).any(|i| canonical_var(i) == x);
        if !known {
            if x != canonical_var(seen) {
                return false;
            }
            seen += 1;
        }
    }
    true
}

/// All canonical words over at most `k_vars` variables with length
/// `1..=max_len`, shortest first, then lexicographic in canonical variable
/// order.
pub fn enumerate_words(k_vars: usize, max_len: usize) -> WordEnumerator {
    WordEnumerator { k_vars, max_len, current: (k_vars >= 1 && max_len >= 1).then(|| vec![0]) }
}

/// Iterates restricted growth strings and maps them to canonical words.
pub struct WordEnumerator {
    k_vars: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl WordEnumerator {
    fn advance(&self, rgs: &[usize]) -> Option<Vec<usize>> {
        let mut next = rgs.to_vec();
        let mut prefix_max = vec![0; rgs.len()];
        let mut m = 0;
        for (i, &v) in rgs.iter().enumerate() {
            prefix_max[i] = m;
            m = m.max(v);
        }
        for i in (1..rgs.len()).rev() {
            if rgs[i] <= prefix_max[i] && rgs[i] + 1 < self.k_vars {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|v| *v = 0);
                return Some(next);
            }
        }
        (rgs.len() < self.max_len).then(|| vec![0; rgs.len() + 1])
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let rgs = self.current.take()?;
        self.current = self.advance(&rgs);
        Some(Word::new(rgs.into_iter().map(canonical_var).collect()).expect("nonempty"))
    }
}
