//! Derivations modulo `x^2 = x^4`, `xyx = (xy)^3 x` and `xyxzx = xzxyx`.
//!
//! A [`DerivationTrace`] is a start word, a list of [`RewriteStep`]s and an
//! end word; [`DerivationTrace::validate`] replays it. Two constructions
//! produce traces: [`ensure_x_after_y`] moves an occurrence of one variable
//! behind an occurrence of another inside a connected word, and
//! [`regularity_certificate`] derives `w = w w' w` for a connected `w`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{is_connected, parse_word, var, Identity, Var, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Eq1,
    Eq2,
    Eq3,
}

impl Rule {
    pub fn identity(self) -> Identity {
        match self {
            Rule::Eq1 => Identity::eq1(),
            Rule::Eq2 => Identity::eq2(),
            Rule::Eq3 => Identity::eq3(),
        }
    }

    pub fn variables(self) -> &'static [char] {
        match self {
            Rule::Eq1 => &['x'],
            Rule::Eq2 => &['x', 'y'],
            Rule::Eq3 => &['x', 'y', 'z'],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Eq1 => "eq1",
            Rule::Eq2 => "eq2",
            Rule::Eq3 => "eq3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Rewrite an instance of the left side into the right side.
    Ltr,
    Rtl,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Ltr => Direction::Rtl,
            Direction::Rtl => Direction::Ltr,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Ltr => "ltr",
            Direction::Rtl => "rtl",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub rule: Rule,
    pub direction: Direction,
}

impl RewriteRule {
    pub fn new(rule: Rule, direction: Direction) -> Self {
        RewriteRule { rule, direction }
    }

    /// `(pattern, replacement)` sides of the identity.
    fn sides(self) -> (Word, Word) {
        let id = self.rule.identity();
        match self.direction {
            Direction::Ltr => (id.lhs, id.rhs),
            Direction::Rtl => (id.rhs, id.lhs),
        }
    }
}

pub type Substitution = BTreeMap<Var, Word>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub position: usize,
    pub substitution: Substitution,
}

impl RewriteStep {
    pub fn new(rule: Rule, direction: Direction, position: usize, images: &[Word]) -> Self {
        let substitution = rule.variables().iter().map(|&c| var(c)).zip(images.iter().cloned()).collect();
        RewriteStep { rule: RewriteRule::new(rule, direction), position, substitution }
    }

    /// The same step read backwards: applied to the result at the same
    /// position it restores the source word.
    pub fn inverse(&self) -> Self {
        RewriteStep {
            rule: RewriteRule::new(self.rule.rule, self.rule.direction.reversed()),
            position: self.position,
            substitution: self.substitution.clone(),
        }
    }

    fn shifted(&self, offset: usize) -> Self {
        RewriteStep { position: self.position + offset, ..self.clone() }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule={} dir={} pos={} sub", self.rule.rule, self.rule.direction, self.position)?;
        for (v, image) in &self.substitution {
            write!(f, " {v}={image}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("pattern does not match at position {position}")]
    PatternMismatch { position: usize },
    #[error("position {position} with pattern length {pattern_len} is outside a word of length {len}")]
    PositionOutOfRange { position: usize, pattern_len: usize, len: usize },
    #[error("no image given for rule variable {0}")]
    MissingSubstitution(Var),
}

fn instantiate(pattern: &Word, sub: &Substitution) -> Result<Vec<Var>, RewriteError> {
    let mut out = Vec::new();
    for x in pattern.letters() {
        let image = sub.get(x).ok_or(RewriteError::MissingSubstitution(*x))?;
        out.extend_from_slice(image.letters());
    }
    Ok(out)
}

/// Replaces the instance of the step's pattern side at `step.position` by
/// the matching instance of the other side.
pub fn apply_step(w: &Word, step: &RewriteStep) -> Result<Word, RewriteError> {
    let (pattern, replacement) = step.rule.sides();
    let pattern = instantiate(&pattern, &step.substitution)?;
    let replacement = instantiate(&replacement, &step.substitution)?;
    let letters = w.letters();
    let end = step.position + pattern.len();
    if end > letters.len() {
        return Err(RewriteError::PositionOutOfRange {
            position: step.position,
            pattern_len: pattern.len(),
            len: letters.len(),
        });
    }
    if letters[step.position..end] != pattern[..] {
        return Err(RewriteError::PatternMismatch { position: step.position });
    }
    let mut out = Vec::with_capacity(letters.len() - pattern.len() + replacement.len());
    out.extend_from_slice(&letters[..step.position]);
    out.extend_from_slice(&replacement);
    out.extend_from_slice(&letters[end..]);
    Ok(Word::new(out).expect("replacement is nonempty"))
}

/// The first application of `rule` in `w`: positions left to right, and at
/// each position images in order of increasing length (first variable
/// shortest first).
pub fn find_match(w: &Word, rule: RewriteRule) -> Option<RewriteStep> {
    let letters = w.letters();
    let n = letters.len();
    let (pattern, _) = rule.sides();
    let vars = rule.rule.variables();
    for position in 0..n {
        let mut lens = vec![1; vars.len()];
        loop {
            let sub = match_at(letters, position, &pattern, vars, &lens);
            if let Some(substitution) = sub {
                return Some(RewriteStep { rule, position, substitution });
            }
            if !next_lengths(&mut lens, n) {
                break;
            }
        }
    }
    None
}

fn next_lengths(lens: &mut [usize], n: usize) -> bool {
    for i in (0..lens.len()).rev() {
        if lens[i] < n {
            lens[i] += 1;
            return true;
        }
        lens[i] = 1;
    }
    false
}

fn match_at(letters: &[Var], start: usize, pattern: &Word, vars: &[char], lens: &[usize]) -> Option<Substitution> {
    let mut sub: Substitution = BTreeMap::new();
    let mut pos = start;
    for p in pattern.letters() {
        let k = vars.iter().position(|&c| var(c) == *p)?;
        let end = pos + lens[k];
        let slice = letters.get(pos..end)?;
        match sub.get(p) {
            Some(image) if image.letters() != slice => return None,
            Some(_) => {}
            None => {
                sub.insert(*p, Word::new(slice.to_vec()).ok()?);
            }
        }
        pos = end;
    }
    Some(sub)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
    pub end: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("step {index} is illegal: {source}")]
    IllegalStep { index: usize, source: RewriteError },
    #[error("replay ends at {reached}, trace claims {claimed}")]
    EndMismatch { reached: Word, claimed: Word },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TraceParseError {
    pub line: usize,
    pub message: String,
}

impl DerivationTrace {
    pub fn empty(w: Word) -> Self {
        DerivationTrace { start: w.clone(), steps: Vec::new(), end: w }
    }

    pub fn replay(&self) -> Result<Word, TraceError> {
        let mut cur = self.start.clone();
        for (index, step) in self.steps.iter().enumerate() {
            cur = apply_step(&cur, step).map_err(|source| TraceError::IllegalStep { index, source })?;
        }
        Ok(cur)
    }

    pub fn validate(&self) -> Result<(), TraceError> {
        let reached = self.replay()?;
        if reached != self.end {
            return Err(TraceError::EndMismatch { reached, claimed: self.end.clone() });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("start={}\n", self.start);
        for step in &self.steps {
            out.push_str(&format!("{step}\n"));
        }
        out.push_str(&format!("end={}\n", self.end));
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TraceParseError> {
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        let err = |line, message: String| TraceParseError { line, message };
        let word_after = |line: usize, text: &str, key: &str| -> Result<Word, TraceParseError> {
            let rest = text.strip_prefix(key).ok_or_else(|| err(line, format!("expected `{key}`")))?;
            parse_word(rest).map_err(|e| err(line, e.to_string()))
        };
        let (&(first_line, first), rest) = lines.split_first().ok_or_else(|| err(1, "empty trace".into()))?;
        let (&(last_line, last), middle) = rest.split_last().ok_or_else(|| err(first_line, "missing `end=`".into()))?;
        let start = word_after(first_line, first, "start=")?;
        let end = word_after(last_line, last, "end=")?;
        let steps =
            middle.iter().map(|&(line, text)| parse_step(text).map_err(|m| err(line, m))).collect::<Result<_, _>>()?;
        Ok(DerivationTrace { start, steps, end })
    }
}

impl FromStr for DerivationTrace {
    type Err = TraceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DerivationTrace::from_text(s)
    }
}

fn parse_step(text: &str) -> Result<RewriteStep, String> {
    let mut tokens = text.split_whitespace();
    let mut field = |key: &str| -> Result<String, String> {
        let tok = tokens.next().ok_or_else(|| format!("missing `{key}`"))?;
        tok.strip_prefix(key).map(str::to_string).ok_or_else(|| format!("expected `{key}`, found `{tok}`"))
    };
    let rule = match field("rule=")?.as_str() {
        "eq1" => Rule::Eq1,
        "eq2" => Rule::Eq2,
        "eq3" => Rule::Eq3,
        other => return Err(format!("unknown rule `{other}`")),
    };
    let direction = match field("dir=")?.as_str() {
        "ltr" => Direction::Ltr,
        "rtl" => Direction::Rtl,
        other => return Err(format!("unknown direction `{other}`")),
    };
    let position = field("pos=")?.parse::<usize>().map_err(|e| format!("bad position: {e}"))?;
    field("sub")?;
    let mut substitution = BTreeMap::new();
    for tok in tokens {
        let (name, image) = tok.split_once('=').ok_or_else(|| format!("expected `var=word`, found `{tok}`"))?;
        let v = match name.chars().collect::<Vec<_>>()[..] {
            [c] if rule.variables().contains(&c) => var(c),
            _ => return Err(format!("`{name}` is not a variable of {rule}")),
        };
        let image = parse_word(image).map_err(|e| e.to_string())?;
        if substitution.insert(v, image).is_some() {
            return Err(format!("`{name}` given twice"));
        }
    }
    Ok(RewriteStep { rule: RewriteRule::new(rule, direction), position, substitution })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("word {0} is not connected")]
    NotConnected(Word),
    #[error("the two variables must differ, both are {0}")]
    SameVariable(Var),
    #[error("variable {0} does not occur in the word")]
    VariableAbsent(Var),
    #[error("derivation exceeded the step budget of {0}")]
    StepBudgetExceeded(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub fn default_step_budget(w: &Word) -> usize {
    10 * w.len() * w.len()
}

struct Deriver {
    word: Word,
    steps: Vec<RewriteStep>,
    budget: usize,
}

impl Deriver {
    fn new(w: &Word, budget: usize) -> Self {
        Deriver { word: w.clone(), steps: Vec::new(), budget }
    }

    fn apply(&mut self, step: RewriteStep) -> Result<(), LemmaError> {
        if self.steps.len() >= self.budget {
            return Err(LemmaError::StepBudgetExceeded(self.budget));
        }
        self.word = apply_step(&self.word, &step).map_err(|e| internal(format!("{step}: {e}")))?;
        self.steps.push(step);
        Ok(())
    }

    fn letters(&self) -> Vec<Var> {
        self.word.letters().to_vec()
    }
}

fn internal(msg: impl Into<String>) -> LemmaError {
    LemmaError::InternalInvariantViolation(msg.into())
}

fn word(parts: &[&[Var]]) -> Word {
    Word::new(parts.concat()).expect("nonempty image")
}

/// Some occurrence of `x` comes after some occurrence of `y`.
pub fn has_x_after_y(w: &Word, x: Var, y: Var) -> bool {
    w.has_after(x, y)
}

/// Derives from `w` a word in which some occurrence of `x` follows some
/// occurrence of `y`, using only `xyx = (xy)^3 x` and `xyxzx = xzxyx`.
/// Returns the empty trace when `w` already has that property.
pub fn ensure_x_after_y(w: &Word, x: Var, y: Var) -> Result<DerivationTrace, LemmaError> {
    ensure_x_after_y_with_budget(w, x, y, default_step_budget(w))
}

pub fn ensure_x_after_y_with_budget(w: &Word, x: Var, y: Var, budget: usize) -> Result<DerivationTrace, LemmaError> {
    if x == y {
        return Err(LemmaError::SameVariable(x));
    }
    for v in [x, y] {
        if w.count(v) == 0 {
            return Err(LemmaError::VariableAbsent(v));
        }
    }
    if !is_connected(w) {
        return Err(LemmaError::NotConnected(w.clone()));
    }
    let mut d = Deriver::new(w, budget);
    interchange(&mut d, x, y)?;
    let trace = DerivationTrace { start: w.clone(), steps: d.steps, end: d.word };
    if !has_x_after_y(&trace.end, x, y) {
        return Err(internal("derived word does not have the required order"));
    }
    Ok(trace)
}

fn interchange(d: &mut Deriver, x: Var, y: Var) -> Result<(), LemmaError> {
    loop {
        let w = d.letters();
        let px = w.iter().rposition(|&v| v == x).ok_or_else(|| internal("x vanished"))?;
        let py = w.iter().position(|&v| v == y).ok_or_else(|| internal("y vanished"))?;
        if px > py {
            return Ok(());
        }

        // Some z on both sides of the x...y stretch: one tripling suffices.
        if let Some((i, j)) = closest_bracket(&w, px, py) {
            d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, i, &[word(&[&w[i..=i]]), word(&[&w[i + 1..j]])]))?;
            continue;
        }
        if py == px + 1 {
            return Err(internal(format!("factor {x}{y} is not enclosed by any variable")));
        }

        let left: BTreeSet<Var> = w[..px].iter().copied().collect();
        let right: BTreeSet<Var> = w[py + 1..].iter().copied().collect();
        let middle = px + 1..py;
        let from_left = |v: &Var| left.contains(v);
        let from_right = |v: &Var| right.contains(v);
        if !w[middle.clone()].iter().any(from_left) || !w[middle.clone()].iter().any(from_right) {
            return Err(internal("middle factor shares no variable with one side"));
        }

        // A right-side variable t followed, in the middle, by a left-side z.
        let mut best: Option<(usize, usize)> = None;
        for i in middle.clone().filter(|&i| from_right(&w[i])) {
            if let Some(j) = (i + 1..py).find(|&j| from_left(&w[j])) {
                if best.is_none_or(|(bi, bj)| j - i < bj - bi) {
                    best = Some((i, j));
                }
            }
        }
        if let Some((i, j)) = best {
            let (t, z) = (w[i], w[j]);
            let a = w[..px].iter().rposition(|&v| v == z).expect("z occurs on the left");
            let b = py + 1 + w[py + 1..].iter().position(|&v| v == t).expect("t occurs on the right");
            let t_word = word(&[&w[i..=i]]);
            let z_word = word(&[&w[j..=j]]);
            let tail = word(&[&w[i + 1..b]]);
            d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, a, &[z_word, word(&[&w[a + 1..j]])]))?;
            d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, i + 2 * (j - a), &[t_word.clone(), tail.clone()]))?;
            d.apply(RewriteStep::new(
                Rule::Eq3,
                Direction::Ltr,
                i + (j - a),
                &[t_word, word(&[&w[i + 1..=j], &w[a + 1..i]]), tail],
            ))?;
            continue;
        }

        // Every left-side variable in the middle lies after every right-side
        // one: interchange the closest such pair first.
        let z = w[middle.clone()].iter().copied().filter(from_left).max_by_key(|&v| last_in(&w, v)).expect("nonempty");
        let t =
            w[middle.clone()].iter().copied().filter(from_right).min_by_key(|&v| first_in(&w, v)).expect("nonempty");
        let (lz, ft) = (last_in(&w, z), first_in(&w, t));
        if !(lz < ft && ft - lz < py - px) {
            return Err(internal(format!("inner gap {lz}..{ft} does not shrink the outer gap {px}..{py}")));
        }
        interchange(d, z, t)?;
    }
}

fn last_in(w: &[Var], v: Var) -> usize {
    w.iter().rposition(|&u| u == v).expect("present")
}

fn first_in(w: &[Var], v: Var) -> usize {
    w.iter().position(|&u| u == v).expect("present")
}

/// Positions `i < px`, `j > py` with `w[i] = w[j]` and `j - i` minimal.
fn closest_bracket(w: &[Var], px: usize, py: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in (0..px).rev() {
        if let Some(j) = (py + 1..w.len()).find(|&j| w[j] == w[i]) {
            if best.is_none_or(|(bi, bj)| j - i < bj - bi) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// A word `w'` and a derivation of `w w' w` from `w`.
pub fn regularity_certificate(w: &Word) -> Result<(Word, DerivationTrace), LemmaError> {
    regularity_certificate_with_budget(w, default_step_budget(w))
}

pub fn regularity_certificate_with_budget(w: &Word, budget: usize) -> Result<(Word, DerivationTrace), LemmaError> {
    if !is_connected(w) {
        return Err(LemmaError::NotConnected(w.clone()));
    }
    let letters = w.letters();
    let n = letters.len();
    let mut d = Deriver::new(w, budget);

    let middle = if let Some(root) = square_root(letters) {
        let r = word(&[root]);
        d.apply(RewriteStep::new(Rule::Eq1, Direction::Ltr, 0, std::slice::from_ref(&r)))?;
        d.apply(RewriteStep::new(Rule::Eq1, Direction::Ltr, 0, &[r]))?;
        w.clone()
    } else if letters[0] == letters[n - 1] {
        let inner = word(&[&letters[1..n - 1]]);
        d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, 0, &[word(&[&letters[..1]]), inner.clone()]))?;
        inner
    } else {
        distinct_ends(&mut d, w)?
    };

    let expected = w.concat(&middle).concat(w);
    if d.word != expected {
        return Err(internal(format!("derivation ends at {}, expected {expected}", d.word)));
    }
    Ok((middle, DerivationTrace { start: w.clone(), steps: d.steps, end: d.word }))
}

fn square_root(letters: &[Var]) -> Option<&[Var]> {
    let half = letters.len() / 2;
    (letters.len().is_multiple_of(2) && letters[..half] == letters[half..]).then(|| &letters[..half])
}

/// `w` starts with `x` and ends with `y != x`. After moving some `x` behind
/// some `y`, the word reads `x w1 y w2 x w3 y` and five rule applications
/// give `v v' v`; undoing the interchange inside both outer copies turns
/// them back into `w`.
fn distinct_ends(d: &mut Deriver, w: &Word) -> Result<Word, LemmaError> {
    let (x, y) = (w.first(), w.last());
    let budget_left = d.budget.saturating_sub(d.steps.len());
    let pre = ensure_x_after_y_with_budget(w, x, y, budget_left)?;
    for step in &pre.steps {
        d.apply(step.clone())?;
    }

    let v = d.letters();
    let n = v.len();
    let (p, q) = (1..n)
        .filter(|&p| v[p] == y)
        .filter_map(|p| (p + 1..n).find(|&q| v[q] == x).map(|q| (p, q)))
        .min_by_key(|&(p, q)| (q - p, p))
        .ok_or_else(|| internal("no x after a y"))?;
    let (w1, w2, w3) = (&v[1..p], &v[p + 1..q], &v[q + 1..n - 1]);
    let (a, b, c) = (w1.len(), w2.len(), w3.len());
    let (xs, ys) = (&v[..1], &v[p..=p]);

    d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, 0, &[word(&[xs]), word(&[w1, ys, w2])]))?;
    d.apply(RewriteStep::new(Rule::Eq2, Direction::Ltr, 2 * (2 + a + b) + 1 + a, &[word(&[ys]), word(&[w2, xs, w3])]))?;
    let swap = [word(&[ys]), word(&[w2, xs, w1]), word(&[w2, xs, w3])];
    for position in [3 + 2 * a + b, 1 + a, 5 + 2 * a + 2 * b + c] {
        d.apply(RewriteStep::new(Rule::Eq3, Direction::Ltr, position, &swap))?;
    }

    let middle = word(&[w2, xs, w1, ys, w2, xs, w3, ys, w2]);
    let offset = n + middle.len();
    for step in pre.steps.iter().rev() {
        d.apply(step.inverse().shifted(offset))?;
    }
    for step in pre.steps.iter().rev() {
        d.apply(step.inverse())?;
    }
    Ok(middle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{holds_in_ac2, w};

    fn step(rule: Rule, position: usize, images: &[&str]) -> RewriteStep {
        let images: Vec<Word> = images.iter().map(|s| w(s)).collect();
        RewriteStep::new(rule, Direction::Ltr, position, &images)
    }

    #[test]
    fn single_steps() {
        assert_eq!(apply_step(&w("xx"), &step(Rule::Eq1, 0, &["x"])), Ok(w("xxxx")));
        assert_eq!(apply_step(&w("xyx"), &step(Rule::Eq2, 0, &["x", "y"])), Ok(w("xyxyxyx")));
        assert_eq!(
            apply_step(&w("xy"), &step(Rule::Eq1, 0, &["x"])),
            Err(RewriteError::PatternMismatch { position: 0 })
        );
        assert!(matches!(
            apply_step(&w("xx"), &step(Rule::Eq1, 1, &["x"])),
            Err(RewriteError::PositionOutOfRange { .. })
        ));
        assert_eq!(
            apply_step(&w("xyx"), &step(Rule::Eq2, 0, &["x"])),
            Err(RewriteError::MissingSubstitution(var('y')))
        );
        let back = step(Rule::Eq2, 0, &["x", "y"]).inverse();
        assert_eq!(apply_step(&w("xyxyxyx"), &back), Ok(w("xyx")));
    }

    #[test]
    fn traces_validate_and_round_trip() {
        let t = DerivationTrace { start: w("xyx"), steps: vec![step(Rule::Eq2, 0, &["x", "y"])], end: w("xyxyxyx") };
        assert!(t.is_valid());
        assert_eq!(DerivationTrace::from_text(&t.to_text()), Ok(t.clone()));
        assert_eq!(t.to_text(), "start=xyx\nrule=eq2 dir=ltr pos=0 sub x=x y=y\nend=xyxyxyx\n");

        let bad = DerivationTrace { end: w("xyxy"), ..t.clone() };
        assert!(matches!(bad.validate(), Err(TraceError::EndMismatch { .. })));
        assert!(DerivationTrace::empty(w("xy")).is_valid());
        let illegal = DerivationTrace { start: w("xy"), ..t };
        assert!(matches!(illegal.validate(), Err(TraceError::IllegalStep { index: 0, .. })));
    }

    #[test]
    fn malformed_trace_text() {
        for text in [
            "",
            "start=x",
            "start=x\nrule=eq9 dir=ltr pos=0 sub x=x\nend=x",
            "start=x\nrule=eq1 dir=ltr pos=0 sub q=x\nend=x",
        ] {
            assert!(DerivationTrace::from_text(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn find_match_prefers_leftmost_shortest() {
        let m = find_match(&w("zxyxy"), RewriteRule::new(Rule::Eq2, Direction::Ltr)).unwrap();
        assert_eq!(m.position, 1);
        assert_eq!(m.substitution[&var('x')], w("x"));
        assert_eq!(m.substitution[&var('y')], w("y"));
        assert!(find_match(&w("xyz"), RewriteRule::new(Rule::Eq1, Direction::Ltr)).is_none());
    }

    #[test]
    fn bracketed_interchange_is_one_step() {
        let t = ensure_x_after_y(&w("zxyz"), var('x'), var('y')).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.end, w("zxyzxyzxyz"));
        assert!(t.is_valid());
    }

    #[test]
    fn interchange_through_the_middle() {
        let t = ensure_x_after_y(&w("zxtzyt"), var('x'), var('y')).unwrap();
        assert_eq!(t.steps.len(), 3);
        assert!(t.is_valid());
        assert!(has_x_after_y(&t.end, var('x'), var('y')));
        assert_eq!(t.end, w("zxtzxtzytzxtzytzyt"));
    }

    #[test]
    fn interchange_preconditions() {
        assert!(matches!(ensure_x_after_y(&w("xy"), var('x'), var('y')), Err(LemmaError::NotConnected(_))));
        assert_eq!(ensure_x_after_y(&w("xyx"), var('x'), var('x')), Err(LemmaError::SameVariable(var('x'))));
        assert_eq!(ensure_x_after_y(&w("xyx"), var('x'), var('z')), Err(LemmaError::VariableAbsent(var('z'))));
        assert_eq!(ensure_x_after_y(&w("yxy"), var('x'), var('y')).unwrap().steps.len(), 0);
    }

    #[test]
    fn tiny_budget_is_reported() {
        assert_eq!(
            ensure_x_after_y_with_budget(&w("zxtzyt"), var('x'), var('y'), 2),
            Err(LemmaError::StepBudgetExceeded(2))
        );
    }

    #[test]
    fn regularity_examples() {
        let (m, t) = regularity_certificate(&w("xyx")).unwrap();
        assert_eq!(m, w("y"));
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.end, w("xyxyxyx"));

        let (m, t) = regularity_certificate(&w("xx")).unwrap();
        assert_eq!(m, w("xx"));
        assert_eq!(t.end, w("x^6"));
        assert!(t.is_valid());

        let (m, t) = regularity_certificate(&w("xyxy")).unwrap();
        assert_eq!(m, w("xyxy"));
        assert_eq!(t.end, w("xy").pow(6));
        assert!(t.steps.iter().all(|s| s.rule.rule == Rule::Eq1));

        let (m, t) = regularity_certificate(&w("xyxzy")).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.end, w("xyxzy").concat(&m).concat(&w("xyxzy")));
        assert!(holds_in_ac2(&t.start, &t.end));

        assert!(matches!(regularity_certificate(&w("xy")), Err(LemmaError::NotConnected(_))));
        assert!(matches!(regularity_certificate(&w("x")), Err(LemmaError::NotConnected(_))));
    }

    #[test]
    fn regularity_after_interchange() {
        // Needs the interchange first: every x precedes every y.
        let word = w("xzxtzyty");
        let (m, t) = regularity_certificate(&word).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.end, word.concat(&m).concat(&word));
    }
}
