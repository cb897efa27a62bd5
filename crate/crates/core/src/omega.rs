//! A symbolic class of infinitely generated ℤ-modules
//! `⊕_i d_i ℤ ⊕ ⊕_{p ∈ S} ℤ/p` inside `ℤ^a ⊕ ⊕_{all p} ℤ/p`, where `S` is
//! cofinite in a tail of the primes. It carries ω-indexed filtrations that
//! the finitely generated backends cannot.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::{InvariantRecord, ModuleBackend, PidModule};
use crate::filtration::{build_coprimary_filtration, Check, OrderChoice, VerificationReport};
use crate::filtration::{CHECK_DESCENT, CHECK_LIMITS, CHECK_QUOTIENTS, CHECK_START, CHECK_TAIL};
use crate::numeric::{factor_integer_grouped, is_prime_u64, IntegerRing};
use crate::ring::PidElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error("the module is zero")]
    ZeroModule,
    #[error("invalid module: {0}")]
    Invalid(String),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    /// every prime `≥ from` ...
    pub from: u64,
    /// ... except these
    pub excluded: BTreeSet<u64>,
}

/// A set of primes: finitely many listed ones plus an optional cofinite tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PrimeSupport {
    pub listed: BTreeSet<u64>,
    pub tail: Option<Tail>,
}

fn next_prime(mut n: u64) -> u64 {
    while !is_prime_u64(n) {
        n += 1;
    }
    n
}

/// The `k`-th prime, `nth_prime(1) = 2`.
pub fn nth_prime(k: usize) -> u64 {
    let mut p = 2;
    for _ in 1..k {
        p = next_prime(p + 1);
    }
    p
}

/// Product of the first `k` primes.
pub fn primorial(k: usize) -> BigInt {
    (1..=k).map(|i| BigInt::from(nth_prime(i))).product()
}

impl PrimeSupport {
    pub fn empty() -> Self {
        PrimeSupport::default()
    }

    pub fn all() -> Self {
        PrimeSupport::from_bound(2, BTreeSet::new())
    }

    pub fn from_bound(from: u64, excluded: BTreeSet<u64>) -> Self {
        PrimeSupport {
            listed: BTreeSet::new(),
            tail: Some(Tail { from, excluded }),
        }
    }

    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Self {
        PrimeSupport {
            listed: primes.into_iter().collect(),
            tail: None,
        }
    }

    pub fn validate(&self) -> Result<(), OmegaError> {
        if let Some(p) = self.listed.iter().find(|p| !is_prime_u64(**p)) {
            return Err(OmegaError::Invalid(format!("{p} is not prime")));
        }
        if let Some(t) = &self.tail {
            if t.from < 2 {
                return Err(OmegaError::Invalid("tail bound must be at least 2".into()));
            }
            if let Some(p) = self.listed.iter().find(|p| **p >= t.from) {
                return Err(OmegaError::Invalid(format!("listed prime {p} is not below the tail bound {}", t.from)));
            }
            if let Some(p) = t.excluded.iter().find(|p| **p < t.from || !is_prime_u64(**p)) {
                return Err(OmegaError::Invalid(format!("exclusion {p} is not a prime ≥ {}", t.from)));
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: u64) -> bool {
        if !is_prime_u64(p) {
            return false;
        }
        self.listed.contains(&p) || self.tail.as_ref().is_some_and(|t| p >= t.from && !t.excluded.contains(&p))
    }

    /// Above this bound membership is constant: all primes or none.
    fn threshold(&self) -> u64 {
        let mut t = self.listed.iter().max().map_or(2, |p| p + 1);
        if let Some(tail) = &self.tail {
            t = t.max(tail.from).max(tail.excluded.iter().max().map_or(0, |p| p + 1));
        }
        t
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_none() && self.listed.is_empty()
    }

    fn combine(&self, other: &PrimeSupport, op: impl Fn(bool, bool) -> bool) -> PrimeSupport {
        let t = self.threshold().max(other.threshold());
        let mut listed: BTreeSet<u64> = (2..t)
            .filter(|&p| is_prime_u64(p) && op(self.contains(p), other.contains(p)))
            .collect();
        let tail = op(self.is_infinite(), other.is_infinite()).then(|| {
            // lowest prime bound, absorbing a listed run just below it
            let mut from = next_prime(t);
            while let Some(&q) = listed.last() {
                if next_prime(q + 1) != from {
                    break;
                }
                listed.remove(&q);
                from = q;
            }
            Tail {
                from,
                excluded: BTreeSet::new(),
            }
        });
        PrimeSupport { listed, tail }
    }

    pub fn union(&self, other: &PrimeSupport) -> PrimeSupport {
        self.combine(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &PrimeSupport) -> PrimeSupport {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &PrimeSupport) -> bool {
        self.difference(other).is_empty()
    }

    pub fn same_set(&self, other: &PrimeSupport) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    /// The `k`-th smallest member, from zero.
    pub fn nth(&self, k: usize) -> Option<u64> {
        let mut seen = 0;
        let mut p = 2;
        let t = self.threshold();
        loop {
            if p >= t && !self.is_infinite() {
                return None;
            }
            if self.contains(p) {
                if seen == k {
                    return Some(p);
                }
                seen += 1;
            }
            p = next_prime(p + 1);
        }
    }

    pub fn min(&self) -> Option<u64> {
        self.nth(0)
    }

    pub fn without(&self, p: u64) -> PrimeSupport {
        self.difference(&PrimeSupport::finite([p]))
    }

    /// Members below `bound`.
    pub fn truncate(&self, bound: u64) -> BTreeSet<u64> {
        (2..bound).filter(|&p| self.contains(p)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "listed": self.listed.iter().collect::<Vec<_>>(),
            "from": self.tail.as_ref().map(|t| t.from),
            "excluded": self.tail.as_ref().map(|t| t.excluded.iter().collect::<Vec<_>>()),
        })
    }
}

fn join_u64(s: &BTreeSet<u64>) -> String {
    s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.listed.is_empty() {
            parts.push(format!("{{{}}}", join_u64(&self.listed)));
        }
        if let Some(t) = &self.tail {
            if t.excluded.is_empty() {
                parts.push(format!("{{p ≥ {}}}", t.from));
            } else {
                parts.push(format!("{{p ≥ {}, p ∉ {{{}}}}}", t.from, join_u64(&t.excluded)));
            }
        }
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{}", parts.join(" ∪ "))
        }
    }
}

/// `⊕_i d_i ℤ ⊕ ⊕_{p ∈ support} ℤ/p`; a scale of 0 is the zero submodule
/// of that coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CofiniteZModule {
    pub free_scales: Vec<BigInt>,
    pub support: PrimeSupport,
}

/// `{(0)}` when `zero`, plus `{(p) : p ∈ primes}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicAss {
    pub zero: bool,
    pub primes: PrimeSupport,
}

impl SymbolicAss {
    pub fn is_empty(&self) -> bool {
        !self.zero && self.primes.is_empty()
    }

    pub fn same_set(&self, other: &SymbolicAss) -> bool {
        self.zero == other.zero && self.primes.same_set(&other.primes)
    }

    /// The `k`-th element of the well-order `(0) < (2) < (3) < (5) < ...`;
    /// `Some(None)` is `(0)`.
    pub fn nth(&self, k: usize) -> Option<Option<u64>> {
        match (self.zero, k) {
            (true, 0) => Some(None),
            (true, k) => self.primes.nth(k - 1).map(Some),
            (false, k) => self.primes.nth(k).map(Some),
        }
    }

    /// Drops the first `k` elements of the well-order.
    pub fn skip(&self, k: usize) -> SymbolicAss {
        let mut out = self.clone();
        for _ in 0..k {
            if out.zero {
                out.zero = false;
            } else if let Some(p) = out.primes.min() {
                out.primes = out.primes.without(p);
            }
        }
        out
    }

    pub fn singleton(t: Option<u64>) -> SymbolicAss {
        match t {
            None => SymbolicAss {
                zero: true,
                primes: PrimeSupport::empty(),
            },
            Some(p) => SymbolicAss {
                zero: false,
                primes: PrimeSupport::finite([p]),
            },
        }
    }
}

impl fmt::Display for SymbolicAss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.zero, self.primes.is_empty()) {
            (false, true) => write!(f, "{{}}"),
            (true, true) => write!(f, "{{(0)}}"),
            (false, false) => write!(f, "{{(p) : p ∈ {}}}", self.primes),
            (true, false) => write!(f, "{{(0)}} ∪ {{(p) : p ∈ {}}}", self.primes),
        }
    }
}

fn format_prime_label(t: Option<u64>) -> String {
    match t {
        None => "(0)".to_string(),
        Some(p) => format!("({p})"),
    }
}

/// `N/N'` for `N' ⊆ N`: free rank, cyclic parts `ℤ/(d'/d)`, and the
/// torsion primes of `N` missing from `N'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicQuotient {
    pub free_rank: usize,
    pub cyclic: Vec<BigInt>,
    pub torsion: PrimeSupport,
}

impl SymbolicQuotient {
    pub fn ass(&self) -> SymbolicAss {
        let mut primes = self.torsion.clone();
        for c in &self.cyclic {
            let divisors = factor_integer_grouped(c).expect("positive order");
            let ps = divisors.iter().map(|(p, _)| p.to_u64().expect("small prime"));
            primes = primes.union(&PrimeSupport::finite(ps));
        }
        SymbolicAss {
            zero: self.free_rank > 0,
            primes,
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.cyclic.iter().map(|c| format!("Z/{c}")));
        if !self.torsion.is_empty() {
            parts.push(format!("⊕_{{p ∈ {}}} Z/p", self.torsion));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl CofiniteZModule {
    pub fn new(free_scales: Vec<BigInt>, support: PrimeSupport) -> Result<Self, OmegaError> {
        if free_scales.iter().any(|d| d < &BigInt::zero()) {
            return Err(OmegaError::Invalid("free scales must be nonnegative".into()));
        }
        support.validate()?;
        Ok(CofiniteZModule { free_scales, support })
    }

    /// `ℤ ⊕ ℤ ⊕ ⊕_p ℤ/p` over all primes.
    pub fn omega_example() -> Self {
        CofiniteZModule {
            free_scales: vec![BigInt::one(), BigInt::one()],
            support: PrimeSupport::all(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_scales.iter().all(Zero::is_zero) && self.support.is_empty()
    }

    /// `other ⊆ self` inside the common ambient module.
    pub fn contains(&self, other: &CofiniteZModule) -> bool {
        self.free_scales.len() == other.free_scales.len()
            && self.free_scales.iter().zip(&other.free_scales).all(|(d, e)| {
                if d.is_zero() {
                    e.is_zero()
                } else {
                    (e % d).is_zero()
                }
            })
            && other.support.is_subset(&self.support)
    }

    pub fn same_submodule(&self, other: &CofiniteZModule) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn quotient(&self, sub: &CofiniteZModule) -> SymbolicQuotient {
        let mut free_rank = 0;
        let mut cyclic = Vec::new();
        for (d, e) in self.free_scales.iter().zip(&sub.free_scales) {
            if d.is_zero() {
                continue;
            }
            if e.is_zero() {
                free_rank += 1;
            } else {
                let r = (e / d).abs();
                if !r.is_one() {
                    cyclic.push(r);
                }
            }
        }
        SymbolicQuotient {
            free_rank,
            cyclic,
            torsion: self.support.difference(&sub.support),
        }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .free_scales
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "0".to_string()
                } else if d.is_one() {
                    "Z".to_string()
                } else {
                    format!("{d}Z")
                }
            })
            .collect();
        if !self.support.is_empty() {
            parts.push(format!("⊕_{{p ∈ {}}} Z/p", self.support));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_scales": self.free_scales.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "support": self.support.to_json(),
            "describe": self.describe(),
        })
    }
}

/// Ass computed summand by summand: `(0)` from a free summand, `(p)` from `ℤ/p`.
pub fn symbolic_ass(m: &CofiniteZModule) -> Result<SymbolicAss, OmegaError> {
    if m.is_zero() {
        return Err(OmegaError::ZeroModule);
    }
    Ok(ass_of(m))
}

fn ass_of(m: &CofiniteZModule) -> SymbolicAss {
    SymbolicAss {
        zero: m.free_scales.iter().any(|d| !d.is_zero()),
        primes: m.support.clone(),
    }
}

/// `ker(N → N_t)` for the least `t` of Ass(N) in `(0) < (2) < (3) < ...`.
fn strip_least(n: &CofiniteZModule) -> CofiniteZModule {
    let ass = ass_of(n);
    if ass.zero {
        CofiniteZModule {
            free_scales: vec![BigInt::zero(); n.free_scales.len()],
            support: n.support.clone(),
        }
    } else {
        let p = n.support.min().expect("nonzero module");
        CofiniteZModule {
            free_scales: n.free_scales.clone(),
            support: n.support.without(p),
        }
    }
}

/// The first `k` terms `M = M^0 ⊃ M^1 ⊃ ...` of the canonical filtration,
/// ending early at zero.
pub fn canonical_omega_prefix(m: &CofiniteZModule, k: usize) -> Vec<CofiniteZModule> {
    let mut out = vec![m.clone()];
    while out.len() < k && !out.last().unwrap().is_zero() {
        out.push(strip_least(out.last().unwrap()));
    }
    out
}

/// `M^j = (p_1 ⋯ p_{j-1})ℤ ⊕ 0 ⊕ ⊕_{p ≥ p_j} ℤ/p` for `j = 1..=k`, a
/// descending chain inside [`CofiniteZModule::omega_example`].
pub fn alternative_chain_prefix(k: usize) -> Vec<CofiniteZModule> {
    (1..=k)
        .map(|j| CofiniteZModule {
            free_scales: vec![primorial(j - 1), BigInt::zero()],
            support: PrimeSupport::from_bound(nth_prime(j), BTreeSet::new()),
        })
        .collect()
}

/// Symbolic witness that `⋂ M^r = 0`: every free coordinate either reaches
/// zero or has scales strictly increasing under divisibility, and the
/// torsion support either empties or has a strictly increasing minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCertificate {
    pub issued: bool,
    pub free: Vec<String>,
    pub torsion: String,
}

impl IntersectionCertificate {
    pub fn to_json(&self) -> Value {
        json!({ "issued": self.issued, "free": self.free, "torsion": self.torsion })
    }
}

fn intersection_certificate(chain: &[CofiniteZModule]) -> IntersectionCertificate {
    let last = chain.last().unwrap();
    let tail = &chain[1.min(chain.len() - 1)..];
    let mut issued = true;
    let mut free = Vec::new();
    for c in 0..last.free_scales.len() {
        let scales: Vec<&BigInt> = tail.iter().map(|t| &t.free_scales[c]).collect();
        if last.free_scales[c].is_zero() {
            free.push(format!("coordinate {}: zero from some term on", c + 1));
        } else if scales.len() >= 3 && scales.windows(2).all(|w| !w[0].is_zero() && (w[1] % w[0]).is_zero() && w[0] != w[1]) {
            let list: Vec<String> = scales.iter().map(|s| s.to_string()).collect();
            free.push(format!(
                "coordinate {}: scales {} strictly increase under divisibility",
                c + 1,
                list.join(" | ")
            ));
        } else {
            issued = false;
            free.push(format!("coordinate {}: scales do not escape", c + 1));
        }
    }
    let mins: Vec<Option<u64>> = tail.iter().map(|t| t.support.min()).collect();
    let torsion = if last.support.is_empty() {
        "torsion support empties".to_string()
    } else if mins.len() >= 3 && mins.windows(2).all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if a < b)) {
        let list: Vec<String> = mins.iter().map(|m| m.unwrap().to_string()).collect();
        format!("least torsion prime {} escapes to infinity", list.join(" < "))
    } else {
        issued = false;
        "torsion support does not escape".to_string()
    };
    IntersectionCertificate { issued, free, torsion }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub report: VerificationReport,
    /// first `t` at which `Ass(M^t) = {r ≥ t}` fails
    pub tail_failure: Option<usize>,
    pub certificate: IntersectionCertificate,
}

impl OmegaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verification": self.report.to_json(),
            "e_first_failure": self.tail_failure,
            "intersection_certificate": self.certificate.to_json(),
        })
    }
}

/// Checks a chain prefix `chain[0] = M ⊃ chain[1] ⊃ ...` against the well-order
/// `(0) < (2) < (3) < ...` on Ass(M).
pub fn omega_verify(module: &CofiniteZModule, chain: &[CofiniteZModule]) -> Result<OmegaReport, OmegaError> {
    if chain.is_empty() {
        return Err(OmegaError::MalformedChain("empty chain".into()));
    }
    if let Some(i) = chain.iter().position(|c| c.free_scales.len() != module.free_scales.len()) {
        return Err(OmegaError::MalformedChain(format!("term {i} has the wrong number of free coordinates")));
    }
    let ass = ass_of(module);
    let mut checks = Vec::new();

    let descent: Vec<String> = chain
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            if !w[0].contains(&w[1]) {
                Some(format!("M^{} is not contained in M^{i}", i + 1))
            } else if w[0].same_submodule(&w[1]) {
                Some(format!("M^{} equals M^{i}", i + 1))
            } else {
                None
            }
        })
        .collect();
    checks.push(verdict(CHECK_DESCENT, descent, None));

    checks.push(if chain[0].same_submodule(module) {
        Check::pass(CHECK_START, None)
    } else {
        Check::fail(CHECK_START, format!("M^0 = {}", chain[0].describe()))
    });

    let quotients: Vec<String> = chain
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            if !w[0].contains(&w[1]) {
                return Some(format!("step {i} is not a quotient"));
            }
            let q = w[0].quotient(&w[1]);
            let got = q.ass();
            match ass.nth(i) {
                Some(t) if got.same_set(&SymbolicAss::singleton(t)) => None,
                Some(t) => Some(format!(
                    "Ass(M^{i}/M^{}) = {got} but expected {{{}}}",
                    i + 1,
                    format_prime_label(t)
                )),
                None => Some(format!("step {i} has no prime in the order")),
            }
        })
        .collect();
    checks.push(verdict(CHECK_QUOTIENTS, quotients, None));

    checks.push(Check::pass(
        CHECK_LIMITS,
        Some("vacuous at ω prefixes: no internal limit points".into()),
    ));

    let mut tail_failure = None;
    let mut tail = Vec::new();
    for (t, term) in chain.iter().enumerate() {
        let got = ass_of(term);
        let expected = ass.skip(t);
        if !got.same_set(&expected) {
            tail_failure.get_or_insert(t);
            tail.push(format!("t={t}: Ass(M^{t}) = {got} but expected {expected}"));
        }
    }
    checks.push(verdict(CHECK_TAIL, tail, None));

    Ok(OmegaReport {
        report: VerificationReport { checks },
        tail_failure,
        certificate: intersection_certificate(chain),
    })
}

fn verdict(name: &str, failures: Vec<String>, note: Option<String>) -> Check {
    if failures.is_empty() {
        Check::pass(name, note)
    } else {
        Check::fail(name, failures.join("; "))
    }
}

fn pid_invariants(m: &CofiniteZModule, bound: u64) -> InvariantRecord {
    let primes = m.support.truncate(bound);
    let free_rank = m.free_scales.iter().filter(|d| !d.is_zero()).count();
    let torsion = if primes.is_empty() {
        Vec::new()
    } else {
        vec![PidElem::Int(primes.iter().map(|&p| BigInt::from(p)).product())]
    };
    InvariantRecord::Pid { free_rank, torsion }
}

/// Restricts the torsion to primes below `bound`, runs the finite engine on
/// the resulting ℤ-module and compares every term of the canonical
/// filtration up to isomorphism.
pub fn cross_check_with_engine(m: &CofiniteZModule, bound: u64) -> Result<usize, OmegaError> {
    let primes = m.support.truncate(bound);
    let truncated = CofiniteZModule {
        free_scales: m.free_scales.clone(),
        support: PrimeSupport::finite(primes.iter().copied()),
    };
    let mut factors: Vec<BigInt> = m.free_scales.iter().filter(|d| !d.is_zero()).map(|_| BigInt::zero()).collect();
    factors.extend(primes.iter().map(|&p| BigInt::from(p)));
    if factors.is_empty() {
        return Err(OmegaError::ZeroModule);
    }
    let pid = PidModule::cyclic_sum(IntegerRing, &factors);
    let engine = build_coprimary_filtration(&pid, &OrderChoice::Canonical)
        .map_err(|e| OmegaError::CrossCheck(e.to_string()))?;
    let symbolic = canonical_omega_prefix(&truncated, usize::MAX);
    if symbolic.len() != engine.terms().len() {
        return Err(OmegaError::CrossCheck(format!(
            "{} symbolic terms against {} engine terms",
            symbolic.len(),
            engine.terms().len()
        )));
    }
    for (i, (s, t)) in symbolic.iter().zip(engine.terms()).enumerate() {
        let a = pid_invariants(s, bound);
        let b = pid.invariants(t, &pid.zero());
        if a != b {
            return Err(OmegaError::CrossCheck(format!("term {i}: {a:?} against {b:?}")));
        }
    }
    Ok(symbolic.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ass_examples() {
        let a = symbolic_ass(&CofiniteZModule::omega_example()).unwrap();
        assert!(a.zero && a.primes.same_set(&PrimeSupport::all()));
        assert_eq!(a.to_string(), "{(0)} ∪ {(p) : p ∈ {p ≥ 2}}");
        let free = CofiniteZModule::new(vec![BigInt::one()], PrimeSupport::empty()).unwrap();
        assert_eq!(symbolic_ass(&free).unwrap().to_string(), "{(0)}");
        let t5 = CofiniteZModule::new(vec![], PrimeSupport::from_bound(5, BTreeSet::new())).unwrap();
        assert_eq!(symbolic_ass(&t5).unwrap().primes.min(), Some(5));
        assert!(symbolic_ass(&CofiniteZModule::new(vec![], PrimeSupport::empty()).unwrap()).is_err());
    }

    #[test]
    fn canonical_prefix_of_the_example() {
        let m = CofiniteZModule::omega_example();
        let c = canonical_omega_prefix(&m, 4);
        let mins: Vec<Option<u64>> = c.iter().map(|t| t.support.min()).collect();
        assert_eq!(mins, vec![Some(2), Some(2), Some(3), Some(5)]);
        assert!(c[1..].iter().all(|t| t.free_scales.iter().all(Zero::is_zero)));
        let r = omega_verify(&m, &c).unwrap();
        assert!(r.report.all_passed(), "{r:?}");
        assert!(r.certificate.issued);
        let z = CofiniteZModule::new(vec![BigInt::one()], PrimeSupport::empty()).unwrap();
        assert_eq!(canonical_omega_prefix(&z, 5).len(), 2);
    }

    #[test]
    fn alternative_chain_fails_e_at_one() {
        let alt = alternative_chain_prefix(4);
        let scales: Vec<String> = alt.iter().map(|t| t.free_scales[0].to_string()).collect();
        assert_eq!(scales, vec!["1", "2", "6", "30"]);
        let m = CofiniteZModule::omega_example();
        let mut chain = vec![m.clone()];
        chain.extend(alt);
        let r = omega_verify(&m, &chain).unwrap();
        assert!(r.report.passed(CHECK_DESCENT) && r.report.passed(CHECK_QUOTIENTS));
        assert_eq!(r.tail_failure, Some(1));
        assert!(r.certificate.issued);
        assert_eq!(chain[1].quotient(&chain[2]).describe(), "Z/2 ⊕ ⊕_{p ∈ {2}} Z/p");
    }

    #[test]
    fn constant_chain_fails_descent() {
        let m = CofiniteZModule::omega_example();
        let r = omega_verify(&m, &[m.clone(), m.clone()]).unwrap();
        assert!(!r.report.passed(CHECK_DESCENT));
    }

    #[test]
    fn support_algebra() {
        let s = PrimeSupport::from_bound(3, BTreeSet::from([7]));
        assert!(s.contains(5) && !s.contains(7) && !s.contains(2));
        assert_eq!(s.nth(2), Some(11));
        assert!(PrimeSupport::finite([3, 5]).is_subset(&s));
        assert!(s.without(3).same_set(&PrimeSupport::from_bound(5, BTreeSet::from([7]))));
        assert!(PrimeSupport::finite([4]).validate().is_err());
    }

    #[test]
    fn engine_agrees_on_truncations() {
        assert_eq!(cross_check_with_engine(&CofiniteZModule::omega_example(), 12), Ok(7));
    }
}
