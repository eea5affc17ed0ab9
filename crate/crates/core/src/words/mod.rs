//! Words over variables and everything computed from them.

mod enumerate;
mod graph;
mod identity;

pub use enumerate::{canonical_var, canonicalize, enumerate_words, is_canonical, WordEnumerator};
pub use graph::{holds_in_ac2, is_connected, prime_decompose, word_graph, WordGraph};
pub use identity::{
    basis_identities, check_identity, eval_word, parse_identity, rsn_identities, Assignment, CounterExample, EvalError,
    Family, Identity, IdentityError,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A variable. Ids `0..26` are the letters `a..z`; larger ids are the
/// indexed variables `x1, x2, ...` used by identity families whose arity
/// is unbounded.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn letter(c: char) -> Option<Var> {
        c.is_ascii_lowercase().then(|| Var(c as u32 - 'a' as u32))
    }

    /// The indexed variable `x{k}`, `k >= 1`.
    pub fn indexed(k: u32) -> Var {
        assert!(k >= 1, "indexed variables start at x1");
        Var(25 + k)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn as_letter(self) -> Option<char> {
        (self.0 < 26).then(|| (b'a' + self.0 as u8) as char)
    }

    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_letter() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "x{}", self.0 - 25),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for letter variables; panics on anything but `a..z`.
pub fn var(c: char) -> Var {
    Var::letter(c).unwrap_or_else(|| panic!("{c:?} is not a variable letter"))
}

/// A nonempty sequence of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Var>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("words are nonempty")]
pub struct EmptyWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl Word {
    pub fn new(letters: Vec<Var>) -> Result<Word, EmptyWord> {
        if letters.is_empty() {
            Err(EmptyWord)
        } else {
            Ok(Word { letters })
        }
    }

    pub fn single(x: Var) -> Word {
        Word { letters: vec![x] }
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Var> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Var {
        self.letters[0]
    }

    pub fn last(&self) -> Var {
        *self.letters.last().expect("nonempty")
    }

    pub fn alphabet(&self) -> BTreeSet<Var> {
        self.letters.iter().copied().collect()
    }

    /// `|w_x|`, the number of occurrences of `x`.
    pub fn count(&self, x: Var) -> usize {
        self.letters.iter().filter(|&&y| y == x).count()
    }

    pub fn counts(&self) -> BTreeMap<Var, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.letters {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self^k`, `k >= 1`.
    pub fn pow(&self, k: usize) -> Word {
        assert!(k >= 1, "word powers start at 1");
        Word { letters: self.letters.repeat(k) }
    }

    /// The factor `[start, end)`; `None` if empty or out of range.
    pub fn factor(&self, start: usize, end: usize) -> Option<Word> {
        if start < end && end <= self.len() {
            Some(Word { letters: self.letters[start..end].to_vec() })
        } else {
            None
        }
    }

    pub fn first_occurrence(&self, x: Var) -> Option<usize> {
        self.letters.iter().position(|&y| y == x)
    }

    pub fn last_occurrence(&self, x: Var) -> Option<usize> {
        self.letters.iter().rposition(|&y| y == x)
    }

    /// Some occurrence of `x` comes after some occurrence of `y`.
    pub fn has_after(&self, x: Var, y: Var) -> bool {
        match (self.last_occurrence(x), self.first_occurrence(y)) {
            (Some(px), Some(py)) => px > py,
            _ => false,
        }
    }

    /// Letters only, no exponents.
    pub fn to_plain_string(&self) -> String {
        self.letters.iter().map(|x| x.to_string()).collect()
    }
}

/// `word := factor+ ; factor := letter ('^' int)? ; letter := [a-z]`,
/// whitespace ignored, exponents at least 1.
pub fn parse_word(text: &str) -> Result<Word, SyntaxError> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |position: usize, message: &str| SyntaxError { position, message: message.to_string() };
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let x = Var::letter(c).ok_or_else(|| err(pos, "expected a letter a-z"))?;
        i += 1;
        let mut k = 1usize;
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                let at = chars.get(i).map_or(caret + 1, |&(p, _)| p);
                return Err(err(at, "expected an exponent after '^'"));
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            k = digits.parse().map_err(|_| err(chars[start].0, "exponent too large"))?;
            if k == 0 {
                return Err(err(chars[start].0, "exponent must be at least 1"));
            }
        }
        letters.extend(std::iter::repeat_n(x, k));
    }
    if letters.is_empty() {
        return Err(err(0, "empty word"));
    }
    Ok(Word { letters })
}

impl FromStr for Word {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Compact form with runs written as powers, e.g. `x^2yzxzy^2zt^2`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.letters.len() {
            let x = self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == x {
                j += 1;
            }
            write!(f, "{x}")?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parses a word literal, panicking on bad input. For tests and fixtures.
pub fn w(text: &str) -> Word {
    parse_word(text).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_figure_word() {
        // ten length-2 factors, one per labelled step of the walk
        let word = parse_word("x^2yzxzy^2zt^2").unwrap();
        assert_eq!(word.to_plain_string(), "xxyzxzyyztt");
        assert_eq!(word.len(), 11);
        assert_eq!(word.to_string(), "x^2yzxzy^2zt^2");
    }

    #[test]
    fn parse_edge_cases() {
        assert_eq!(parse_word("x").unwrap().len(), 1);
        assert_eq!(parse_word(" x ^ 3 y ").unwrap().to_plain_string(), "xxxy");
        assert_eq!(parse_word("x^0y").unwrap_err().position, 2);
        assert_eq!(parse_word("").unwrap_err().position, 0);
        assert_eq!(parse_word("xY").unwrap_err().position, 1);
        assert_eq!(parse_word("x^").unwrap_err().position, 2);
        assert_eq!(parse_word("x^y").unwrap_err().position, 2);
    }

    #[test]
    fn counts_and_alphabet() {
        let word = w("xyx^3z");
        assert_eq!(word.count(var('x')), 4);
        assert_eq!(word.alphabet().len(), 3);
        assert_eq!(word.counts().values().sum::<usize>(), word.len());
        assert!(word.has_after(var('x'), var('y')));
        assert!(!word.has_after(var('y'), var('z')));
    }

    #[test]
    fn indexed_variables_display() {
        let word = Word::new(vec![Var::indexed(1), Var::indexed(1), Var::indexed(2)]).unwrap();
        assert_eq!(word.to_string(), "x1^2x2");
        assert!(Var::indexed(1) > var('z'));
    }

    proptest! {
        #[test]
        fn display_parses_back(letters in prop::collection::vec(0u8..26, 1..20)) {
            let word = Word::new(letters.iter().map(|&b| var((b'a' + b) as char)).collect()).unwrap();
            prop_assert_eq!(parse_word(&word.to_string()).unwrap(), word.clone());
            prop_assert_eq!(parse_word(&word.to_plain_string()).unwrap(), word);
        }
    }
}
