use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{parse_word, var, SyntaxError, Var, Word};
use crate::semigroup::{Element, Semigroup};

pub type Assignment = BTreeMap<Var, Element>;

/// Which identity family an identity was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `x^2 = x^4`
    Eq1,
    /// `xyx = (xy)^3 x`
    Eq2,
    /// `xyxzx = xzxyx`
    Eq3,
    /// `(x1^2 ... xn^2)^2 = (x1^2 ... xn^2)^3`
    Eq4(usize),
    /// `x^2 = x^3`
    Eq5,
    Rsn(usize),
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Eq1 => write!(f, "eq1"),
            Family::Eq2 => write!(f, "eq2"),
            Family::Eq3 => write!(f, "eq3"),
            Family::Eq4(n) => write!(f, "eq4({n})"),
            Family::Eq5 => write!(f, "eq5"),
            Family::Rsn(n) => write!(f, "rsn({n})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
    pub family: Family,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs, family: Family::Custom }
    }

    pub fn tagged(lhs: Word, rhs: Word, family: Family) -> Self {
        Identity { lhs, rhs, family }
    }

    /// Variables of both sides in increasing order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: BTreeSet<Var> = self.lhs.alphabet();
        vars.extend(self.rhs.alphabet());
        vars.into_iter().collect()
    }

    pub fn eq1() -> Self {
        Self::tagged(word_of("xx"), word_of("xxxx"), Family::Eq1)
    }

    pub fn eq2() -> Self {
        Self::tagged(word_of("xyx"), word_of("xyxyxyx"), Family::Eq2)
    }

    pub fn eq3() -> Self {
        Self::tagged(word_of("xyxzx"), word_of("xzxyx"), Family::Eq3)
    }

    /// `n >= 1`; `n = 1` gives `x1^4 = x1^6`, which the basis never uses.
    pub fn eq4(n: usize) -> Self {
        let base: Vec<Var> = (1..=n as u32).flat_map(|k| [Var::indexed(k), Var::indexed(k)]).collect();
        let base = Word::new(base).expect("n >= 1");
        Self::tagged(base.pow(2), base.pow(3), Family::Eq4(n))
    }

    pub fn eq5() -> Self {
        Self::tagged(word_of("xx"), word_of("xxx"), Family::Eq5)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn word_of(plain: &str) -> Word {
    Word::new(plain.chars().map(var).collect()).expect("nonempty literal")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("expected `u = v`")]
    MissingEquals,
    #[error("in {side}: {source}")]
    Syntax {
        side: &'static str,
        #[source]
        source: SyntaxError,
    },
    #[error("parameter must be at least {min}, got {got}")]
    InvalidParameter { min: usize, got: usize },
}

/// `u = v` with optional surrounding whitespace.
pub fn parse_identity(text: &str) -> Result<Identity, IdentityError> {
    let (l, r) = text.split_once('=').ok_or(IdentityError::MissingEquals)?;
    let lhs = parse_word(l).map_err(|source| IdentityError::Syntax { side: "lhs", source })?;
    let rhs = parse_word(r).map_err(|source| IdentityError::Syntax { side: "rhs", source })?;
    Ok(Identity::new(lhs, rhs))
}

/// Identities (1), (2), (3), then (4) for `n = 2..=n_max`.
pub fn basis_identities(n_max: usize) -> Result<Vec<Identity>, IdentityError> {
    if n_max < 2 {
        return Err(IdentityError::InvalidParameter { min: 2, got: n_max });
    }
    let mut ids = vec![Identity::eq1(), Identity::eq2(), Identity::eq3()];
    ids.extend((2..=n_max).map(Identity::eq4));
    Ok(ids)
}

/// `x^2 = x^(n+2)`, `xyx = (xy)^(n+1) x`, `xyx(zx)^n = x(zx)^n yx`.
pub fn rsn_identities(n: usize) -> Result<[Identity; 3], IdentityError> {
    if n < 1 {
        return Err(IdentityError::InvalidParameter { min: 1, got: n });
    }
    let (x, y, z) = (Word::single(var('x')), Word::single(var('y')), Word::single(var('z')));
    let xy = x.concat(&y);
    let xyx = xy.concat(&x);
    let zxn = z.concat(&x).pow(n);
    let tag = Family::Rsn(n);
    Ok([
        Identity::tagged(x.pow(2), x.pow(n + 2), tag),
        Identity::tagged(xyx.clone(), xy.pow(n + 1).concat(&x), tag),
        Identity::tagged(xyx.concat(&zxn), x.concat(&zxn).concat(&y).concat(&x), tag),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not assigned")]
    UnboundVariable(Var),
    #[error("variable {var} is assigned {value}, outside a semigroup of order {order}")]
    ElementOutOfRange { var: Var, value: Element, order: usize },
}

/// Value of `w` under `assignment`, folding the table left to right.
pub fn eval_word(s: &Semigroup, w: &Word, assignment: &Assignment) -> Result<Element, EvalError> {
    let lookup = |x: Var| -> Result<Element, EvalError> {
        let v = *assignment.get(&x).ok_or(EvalError::UnboundVariable(x))?;
        if v >= s.order() {
            return Err(EvalError::ElementOutOfRange { var: x, value: v, order: s.order() });
        }
        Ok(v)
    };
    let mut letters = w.letters().iter();
    let mut acc = lookup(*letters.next().expect("nonempty"))?;
    for &x in letters {
        acc = s.mul(acc, lookup(x)?);
    }
    Ok(acc)
}

/// An assignment under which the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterExample {
    pub assignment: Assignment,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

impl CounterExample {
    /// Re-evaluates both sides and confirms they are distinct.
    pub fn verify(&self, s: &Semigroup, id: &Identity) -> bool {
        match (eval_word(s, &id.lhs, &self.assignment), eval_word(s, &id.rhs, &self.assignment)) {
            (Ok(l), Ok(r)) => l == self.lhs_value && r == self.rhs_value && l != r,
            _ => false,
        }
    }
}

// Above this many assignments the search is split over the first variable.
const PARALLEL_THRESHOLD: usize = 1 << 16;

/// Brute-force substitution of every assignment of the identity's
/// variables. Returns the lexicographically first failing assignment
/// (variables in increasing order, first variable most significant).
pub fn check_identity(s: &Semigroup, id: &Identity) -> Option<CounterExample> {
    let vars = id.variables();
    let slot = |w: &Word| -> Vec<usize> {
        w.letters().iter().map(|x| vars.binary_search(x).expect("variable of the identity")).collect()
    };
    let (lhs, rhs) = (slot(&id.lhs), slot(&id.rhs));
    let n = s.order();
    let k = vars.len();
    let eval = |side: &[usize], values: &[Element]| -> Element {
        side[1..].iter().fold(values[side[0]], |acc, &i| s.mul(acc, values[i]))
    };

    // Scans all assignments whose first variable is `head`, in order.
    let scan = |head: Element| -> Option<(Vec<Element>, Element, Element)> {
        let mut values = vec![0; k];
        values[0] = head;
        loop {
            let (l, r) = (eval(&lhs, &values), eval(&rhs, &values));
            if l != r {
                return Some((values, l, r));
            }
            let mut i = k;
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                values[i] += 1;
                if values[i] < n {
                    break;
                }
                values[i] = 0;
            }
        }
    };

    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    let found =
        if total > PARALLEL_THRESHOLD { (0..n).into_par_iter().find_map_first(scan) } else { (0..n).find_map(scan) };
    found.map(|(values, lhs_value, rhs_value)| CounterExample {
        assignment: vars.iter().copied().zip(values).collect(),
        lhs_value,
        rhs_value,
    })
}
