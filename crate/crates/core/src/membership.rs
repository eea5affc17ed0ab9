//! Membership in the variety generated by AC2.
//!
//! A finite semigroup `S` belongs to the variety exactly when it satisfies
//! `x^2 = x^4`, `xyx = (xy)^3 x`, `xyxzx = xzxyx`, and the subsemigroup
//! generated by its idempotents satisfies `x^2 = x^3`. The first three are
//! checked by substitution in `O(n^3)`. The idempotent-generated
//! subsemigroup is grown in stages `T1 = E(S)`, `T(i+1) = Ti T1` until it
//! stops changing, which also takes `O(n^3)`.
//!
//! Every negative answer carries a certificate that re-evaluates to two
//! distinct elements of the input table.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::semigroup::{Element, ElementSet, Semigroup};
use crate::words::{eval_word, Assignment, CounterExample, Identity, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MembershipError {
    #[error("element {0} satisfies t^2 = t^3 and is not a witness")]
    NotAWitness(Element),
    #[error("element {0} is not in the idempotent-generated subsemigroup")]
    NotInClosure(Element),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// A failed identity from the substitution stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: Identity,
    pub counterexample: CounterExample,
}

/// First failure among (1), (2), (3) in that order, with the
/// lexicographically first assignment `(x, y, z)`.
pub fn check_basis_123(s: &Semigroup) -> Option<IdentityFailure> {
    let n = s.order();
    let m = |a, b| s.mul(a, b);
    let (x, y, z) = (var('x'), var('y'), var('z'));

    for e in 0..n {
        let sq = m(e, e);
        let fourth = m(sq, sq);
        if sq != fourth {
            return Some(failure(Identity::eq1(), [(x, e)], sq, fourth));
        }
    }

    for a in 0..n {
        for b in 0..n {
            let ab = m(a, b);
            let lhs = m(ab, a);
            let rhs = m(m(m(ab, ab), ab), a);
            if lhs != rhs {
                return Some(failure(Identity::eq2(), [(x, a), (y, b)], lhs, rhs));
            }
        }
    }

    // xyxzx = (xyx)(zx) and xzxyx = (xzx)(yx); with per-x tables of v -> xvx
    // and v -> vx each assignment costs two lookups.
    let eq3 = (0..n).into_par_iter().find_map_first(|a| {
        let sandwich: Vec<Element> = (0..n).map(|v| m(m(a, v), a)).collect();
        let right: Vec<Element> = (0..n).map(|v| m(v, a)).collect();
        for b in 0..n {
            for c in 0..n {
                let lhs = m(sandwich[b], right[c]);
                let rhs = m(sandwich[c], right[b]);
                if lhs != rhs {
                    return Some((a, b, c, lhs, rhs));
                }
            }
        }
        None
    });
    eq3.map(|(a, b, c, lhs, rhs)| failure(Identity::eq3(), [(x, a), (y, b), (z, c)], lhs, rhs))
}

fn var(c: char) -> Var {
    crate::words::var(c)
}

fn failure<const K: usize>(
    identity: Identity,
    pairs: [(Var, Element); K],
    lhs_value: Element,
    rhs_value: Element,
) -> IdentityFailure {
    IdentityFailure {
        identity,
        counterexample: CounterExample { assignment: pairs.into_iter().collect(), lhs_value, rhs_value },
    }
}

/// The subsemigroup generated by all idempotents, grown in stages.
///
/// Each member `t` records the stage at which it first appears and, for
/// stages above 1, a predecessor `(s, e)` with `t = s e`, `s` one stage
/// earlier and `e` idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentClosure {
    members: ElementSet,
    stage_of: Vec<Option<usize>>,
    pred: Vec<Option<(Element, Element)>>,
    stages: usize,
}

impl IdempotentClosure {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, t: Element) -> bool {
        self.members.contains(t)
    }

    /// `k`, the first stage with `Tk = Tk T1`.
    pub fn stage_count(&self) -> usize {
        self.stages
    }

    pub fn stage_of(&self, t: Element) -> Option<usize> {
        self.stage_of.get(t).copied().flatten()
    }

    /// `Ti`, the members first reached at stage `<= i`.
    pub fn stage_set(&self, i: usize) -> ElementSet {
        let n = self.members.order();
        ElementSet::from_indices(n, (0..n).filter(|&t| self.stage_of(t).is_some_and(|k| k <= i)))
    }

    /// Idempotents `e1, ..., em` with `t = e1 ... em`, `m` the stage of `t`.
    pub fn factorization(&self, t: Element) -> Option<Vec<Element>> {
        self.stage_of(t)?;
        let mut factors = Vec::new();
        let mut cur = t;
        while let Some((prev, e)) = self.pred[cur] {
            factors.push(e);
            cur = prev;
        }
        factors.push(cur);
        factors.reverse();
        Some(factors)
    }
}

/// Worklist construction of `T1 ⊆ T2 ⊆ ... ⊆ Tk`: each round multiplies
/// only the elements new in the previous round by `T1`, so every member is
/// multiplied by every idempotent exactly once.
pub fn idempotent_closure(s: &Semigroup) -> Result<IdempotentClosure, MembershipError> {
    let n = s.order();
    let idempotents: Vec<Element> = s.idempotents().iter().collect();
    if idempotents.is_empty() {
        return Err(MembershipError::InternalInvariantViolation("a finite semigroup has an idempotent".into()));
    }
    let mut members = ElementSet::empty(n);
    let mut stage_of = vec![None; n];
    let mut pred = vec![None; n];
    for &e in &idempotents {
        members.insert(e);
        stage_of[e] = Some(1);
    }
    let mut frontier = idempotents.clone();
    let mut stage = 1;
    loop {
        let mut fresh = Vec::new();
        for &t in &frontier {
            for &e in &idempotents {
                let p = s.mul(t, e);
                if members.insert(p) {
                    stage_of[p] = Some(stage + 1);
                    pred[p] = Some((t, e));
                    fresh.push(p);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        stage += 1;
        frontier = fresh;
    }
    if stage > n {
        return Err(MembershipError::InternalInvariantViolation(format!("stage count {stage} exceeds order {n}")));
    }
    Ok(IdempotentClosure { members, stage_of, pred, stages: stage })
}

/// Smallest-index member `t` with `t^2 != t^3`, if any.
pub fn combinatorial_via_eq5(s: &Semigroup, closure: &IdempotentClosure) -> Option<Element> {
    closure.members().iter().find(|&t| {
        let sq = s.mul(t, t);
        sq != s.mul(sq, t)
    })
}

/// Turns a member `t` with `t^2 != t^3` into a failing instance of (4):
/// with `t = e1 ... em` and `xi -> ei`, each `xi^2` evaluates to `ei`, so the
/// two sides evaluate to `t^2` and `t^3`.
pub fn derive_eq4_witness(
    s: &Semigroup,
    closure: &IdempotentClosure,
    t: Element,
) -> Result<(Identity, CounterExample), MembershipError> {
    let factors = closure.factorization(t).ok_or(MembershipError::NotInClosure(t))?;
    let sq = s.mul(t, t);
    if sq == s.mul(sq, t) {
        return Err(MembershipError::NotAWitness(t));
    }
    if factors.len() < 2 {
        return Err(MembershipError::InternalInvariantViolation(format!(
            "element {t} with t^2 != t^3 has a single idempotent factor"
        )));
    }
    let identity = Identity::eq4(factors.len());
    let assignment: Assignment = factors.iter().enumerate().map(|(i, &e)| (Var::indexed(i as u32 + 1), e)).collect();
    let eval = |w| eval_word(s, w, &assignment).map_err(|e| MembershipError::InternalInvariantViolation(e.to_string()));
    let lhs_value = eval(&identity.lhs)?;
    let rhs_value = eval(&identity.rhs)?;
    if lhs_value != sq || rhs_value != s.mul(sq, t) {
        return Err(MembershipError::InternalInvariantViolation(format!(
            "factorization of {t} does not evaluate to t^2, t^3"
        )));
    }
    Ok((identity, CounterExample { assignment, lhs_value, rhs_value }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NonMember,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    PassedAllChecks,
    FailedIdentity(IdentityFailure),
    NonCombinatorialClosure {
        element: Element,
        factorization: Vec<Element>,
        identity: Identity,
        counterexample: CounterExample,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::PassedAllChecks => "passed_all_checks",
            Certificate::FailedIdentity(_) => "failed_identity",
            Certificate::NonCombinatorialClosure { .. } => "non_combinatorial_closure",
        }
    }

    pub fn identity(&self) -> Option<(&Identity, &CounterExample)> {
        match self {
            Certificate::PassedAllChecks => None,
            Certificate::FailedIdentity(f) => Some((&f.identity, &f.counterexample)),
            Certificate::NonCombinatorialClosure { identity, counterexample, .. } => Some((identity, counterexample)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageTiming {
    pub name: &'static str,
    pub micros: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub stages: Vec<StageTiming>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Re-checks a negative certificate against `s`: the identity must
    /// evaluate to two distinct elements, and for a closure certificate the
    /// element must satisfy `t^2 != t^3` and be the product of its
    /// factorization into idempotents.
    pub fn verify(&self, s: &Semigroup) -> bool {
        match &self.certificate {
            Certificate::PassedAllChecks => self.verdict == Verdict::Member,
            Certificate::FailedIdentity(f) => {
                self.verdict == Verdict::NonMember && f.counterexample.verify(s, &f.identity)
            }
            Certificate::NonCombinatorialClosure { element, factorization, identity, counterexample } => {
                let t = *element;
                let sq = s.mul(t, t);
                self.verdict == Verdict::NonMember
                    && sq != s.mul(sq, t)
                    && factorization.iter().all(|&e| s.is_idempotent(e))
                    && s.product(factorization) == Some(t)
                    && counterexample.verify(s, identity)
            }
        }
    }

    /// The JSON form: `verdict`, `certificate.{kind, identity, family,
    /// assignment, lhs_value, rhs_value, element, factorization}`, `stages`.
    pub fn to_json(&self, s: &Semigroup) -> Value {
        let mut cert = json!({
            "kind": self.certificate.kind(),
            "identity": Value::Null,
            "family": Value::Null,
            "assignment": Value::Null,
            "lhs_value": Value::Null,
            "rhs_value": Value::Null,
            "element": Value::Null,
            "factorization": Value::Null,
        });
        if let Some((id, ce)) = self.certificate.identity() {
            let assignment: serde_json::Map<String, Value> =
                ce.assignment.iter().map(|(v, &e)| (v.name(), json!(e))).collect();
            cert["identity"] = json!(id.to_string());
            cert["family"] = json!(id.family.to_string());
            cert["assignment"] = Value::Object(assignment);
            cert["lhs_value"] = json!(ce.lhs_value);
            cert["rhs_value"] = json!(ce.rhs_value);
        }
        if let Certificate::NonCombinatorialClosure { element, factorization, .. } = &self.certificate {
            cert["element"] = json!(element);
            cert["factorization"] = json!(factorization);
        }
        let labels: Option<Vec<String>> = s.labels().map(|l| l.to_vec());
        json!({
            "verdict": self.verdict.as_str(),
            "certificate": cert,
            "labels": labels,
            "stages": self.stages.iter().map(|t| json!({"name": t.name, "micros": t.micros})).collect::<Vec<_>>(),
        })
    }
}

/// The full procedure: identities (1)-(3) by substitution, then the
/// idempotent closure and `x^2 = x^3` on it.
pub fn membership_ac2(s: &Semigroup) -> Result<MembershipReport, MembershipError> {
    let mut stages = Vec::new();
    let mut timed = |name: &'static str, start: Instant| {
        stages.push(StageTiming { name, micros: start.elapsed().as_micros() });
    };

    let start = Instant::now();
    let basis = check_basis_123(s);
    timed("basis_123", start);
    if let Some(f) = basis {
        return Ok(MembershipReport {
            verdict: Verdict::NonMember,
            certificate: Certificate::FailedIdentity(f),
            stages,
        });
    }

    let start = Instant::now();
    let closure = idempotent_closure(s)?;
    timed("idempotent_closure", start);

    let start = Instant::now();
    let violator = combinatorial_via_eq5(s, &closure);
    timed("eq5_on_closure", start);

    let certificate = match violator {
        None => Certificate::PassedAllChecks,
        Some(t) => {
            let start = Instant::now();
            let (identity, counterexample) = derive_eq4_witness(s, &closure, t)?;
            timed("eq4_witness", start);
            Certificate::NonCombinatorialClosure {
                element: t,
                factorization: closure.factorization(t).expect("member of the closure"),
                identity,
                counterexample,
            }
        }
    };
    let verdict = match certificate {
        Certificate::PassedAllChecks => Verdict::Member,
        _ => Verdict::NonMember,
    };
    Ok(MembershipReport { verdict, certificate, stages })
}
