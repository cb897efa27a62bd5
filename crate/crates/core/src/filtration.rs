//! Coprimary filtrations `M = M^{t_1} ⊃ M^{t_2} ⊃ ... ⊃ M^{t_n} ⊃ 0` with
//! `Ass(M^{t_i}/M^{t_{i+1}}) = {t_i}` along a linear extension of Ass(M).
//!
//! Orders are stored ascending (minimal prime first, the first prime
//! stripped). The ascending chain `0 = F_0 ⊂ ... ⊂ F_n = M` is the view
//! `F_i = terms[n - i]`.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::{localization_kernel, BackendError, InvariantRecord, ModuleBackend};
use crate::poset::{build_specialization_poset, canonical_well_order, rank_function, PosetError};
use crate::ring::{PrimeIdealRef, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("the module is zero")]
    ZeroModule,
    #[error("order is not a linear extension of Ass: {0}")]
    NotExtension(String),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderChoice {
    Canonical,
    Explicit(Vec<PrimeIdealRef>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCertificate {
    pub prime: PrimeIdealRef,
    pub quotient_ass: BTreeSet<PrimeIdealRef>,
    pub invariants: InvariantRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration<B: ModuleBackend> {
    order: Vec<PrimeIdealRef>,
    /// `terms[0] = M`, `terms[n] = 0`
    terms: Vec<B::Sub>,
    steps: Vec<StepCertificate>,
}

impl<B: ModuleBackend> Filtration<B> {
    /// Attach step certificates to a chain without checking it.
    pub fn from_parts(m: &B, order: Vec<PrimeIdealRef>, terms: Vec<B::Sub>) -> Self {
        let steps = order
            .iter()
            .zip(terms.windows(2))
            .map(|(p, w)| StepCertificate {
                prime: p.clone(),
                quotient_ass: m.ass(&w[0], &w[1]),
                invariants: m.invariants(&w[0], &w[1]),
            })
            .collect();
        Filtration { order, terms, steps }
    }

    pub fn order(&self) -> &[PrimeIdealRef] {
        &self.order
    }

    pub fn terms(&self) -> &[B::Sub] {
        &self.terms
    }

    pub fn steps(&self) -> &[StepCertificate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `F_0 ⊂ F_1 ⊂ ... ⊂ F_n`.
    pub fn chain(&self) -> Vec<B::Sub> {
        self.terms.iter().rev().cloned().collect()
    }

    /// Prime of `F_i/F_{i-1}` for `1 ≤ i ≤ n`; these descend along the chain.
    pub fn chain_prime(&self, i: usize) -> &PrimeIdealRef {
        &self.order[self.len() - i]
    }

    pub fn step_for(&self, p: &PrimeIdealRef) -> Option<&StepCertificate> {
        self.steps.iter().find(|s| &s.prime == p)
    }

    pub fn to_json(&self, m: &B) -> Value {
        let ring = m.ring();
        json!({
            "order": self.order.iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|t| m.render_sub(t)).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| step_json(s, &ring)).collect::<Vec<_>>(),
        })
    }
}

fn step_json(s: &StepCertificate, ring: &RingSpec) -> Value {
    json!({
        "prime": ring.prime_generators(&s.prime),
        "quotient_ass": s.quotient_ass.iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>(),
        "invariants": s.invariants.to_json(ring),
        "quotient": s.invariants.describe(ring),
    })
}

fn format_primes(ring: &RingSpec, ps: &BTreeSet<PrimeIdealRef>) -> String {
    let parts: Vec<String> = ps.iter().map(|p| ring.format_prime(p)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Resolves an order choice against Ass(M) and checks it is an extension.
pub fn resolve_order<B: ModuleBackend>(m: &B, order: &OrderChoice) -> Result<Vec<PrimeIdealRef>, FiltrationError> {
    let ass: Vec<PrimeIdealRef> = m.ass(&m.whole(), &m.zero()).into_iter().collect();
    let poset = build_specialization_poset(&m.ring(), &ass)?;
    match order {
        OrderChoice::Canonical => Ok(canonical_well_order(&poset)),
        OrderChoice::Explicit(o) => {
            if poset.is_linear_extension(o) {
                Ok(o.clone())
            } else {
                let ring = m.ring();
                let given: Vec<String> = o.iter().map(|p| ring.format_prime(p)).collect();
                Err(FiltrationError::NotExtension(format!(
                    "[{}] against Ass = {}",
                    given.join(","),
                    format_primes(&ring, &ass.into_iter().collect())
                )))
            }
        }
    }
}

/// `M^{t_{i+1}} = ker(M^{t_i} → (M^{t_i})_{t_i})` along the order.
pub fn build_coprimary_filtration<B: ModuleBackend>(m: &B, order: &OrderChoice) -> Result<Filtration<B>, FiltrationError> {
    if m.is_zero_module() {
        return Err(FiltrationError::ZeroModule);
    }
    let order = resolve_order(m, order)?;
    let zero = m.zero();
    let mut terms = vec![m.whole()];
    for p in &order {
        let current = terms.last().unwrap();
        let ass: Vec<PrimeIdealRef> = m.ass(current, &zero).into_iter().collect();
        let poset = build_specialization_poset(&m.ring(), &ass)?;
        if rank_function(&poset).get(p) != Some(&0) {
            return Err(FiltrationError::NotExtension(format!(
                "{} is not minimal in the remaining Ass",
                m.ring().format_prime(p)
            )));
        }
        let next = localization_kernel(m, current, p)?;
        terms.push(next);
    }
    if terms.last() != Some(&zero) {
        return Err(BackendError::Postcondition("last kernel is not zero".into()).into());
    }
    Ok(Filtration::from_parts(m, order, terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: &str, note: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            witness: note,
        }
    }

    pub fn fail(name: &str, witness: String) -> Self {
        Check {
            name: name.to_string(),
            passed: false,
            witness: Some(witness),
        }
    }

    fn from_failures(name: &str, failures: Vec<String>, note: Option<String>) -> Self {
        if failures.is_empty() {
            Check::pass(name, note)
        } else {
            Check::fail(name, failures.join("; "))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_passed": self.all_passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
        })
    }
}

pub const CHECK_DESCENT: &str = "a_strict_descent";
pub const CHECK_START: &str = "b_starts_at_module";
pub const CHECK_QUOTIENTS: &str = "c_singleton_quotients";
pub const CHECK_LIMITS: &str = "d_limit_points";
pub const CHECK_TAIL: &str = "e_tail_ass";
pub const CHECK_ZERO: &str = "terminates_at_zero";

/// Checks a descending chain `terms[0] ⊇ terms[1] ⊇ ...` against the
/// properties of a coprimary filtration for `order`. Every check runs,
/// whatever the others report.
pub fn verify_filtration<B: ModuleBackend>(
    m: &B,
    terms: &[B::Sub],
    order: &[PrimeIdealRef],
) -> Result<VerificationReport, FiltrationError> {
    if terms.is_empty() {
        return Err(FiltrationError::MalformedChain("empty chain".into()));
    }
    for (i, t) in terms.iter().enumerate() {
        if !m.is_valid(t) {
            return Err(FiltrationError::MalformedChain(format!("term {i} is not a submodule of M")));
        }
    }
    let ring = m.ring();
    for p in order {
        if !ring.owns(p) {
            return Err(FiltrationError::MalformedChain(format!("{p:?} is not a prime of {ring}")));
        }
    }
    let zero = m.zero();
    let mut checks = Vec::new();

    let mut descent = Vec::new();
    for (i, w) in terms.windows(2).enumerate() {
        if !m.contains(&w[0], &w[1]) {
            descent.push(format!("term {} is not contained in term {}", i + 1, i));
        } else if w[0] == w[1] {
            descent.push(format!("term {} equals term {}", i + 1, i));
        }
    }
    checks.push(Check::from_failures(CHECK_DESCENT, descent, None));

    checks.push(if terms[0] == m.whole() {
        Check::pass(CHECK_START, None)
    } else {
        Check::fail(CHECK_START, format!("term 0 is {}", m.describe_sub(&terms[0])))
    });

    let mut quotients = Vec::new();
    if terms.len() != order.len() + 1 {
        quotients.push(format!("{} steps for {} primes", terms.len() - 1, order.len()));
    }
    for (i, w) in terms.windows(2).enumerate() {
        if !m.contains(&w[0], &w[1]) {
            quotients.push(format!("step {i} is not a quotient"));
            continue;
        }
        let ass = m.ass(&w[0], &w[1]);
        match order.get(i) {
            Some(p) if ass == BTreeSet::from([p.clone()]) => {}
            Some(p) => quotients.push(format!(
                "Ass(M{i}/M{}) = {} but expected {{{}}}",
                i + 1,
                format_primes(&ring, &ass),
                ring.format_prime(p)
            )),
            None => quotients.push(format!("step {i} has no prime in the order")),
        }
    }
    checks.push(Check::from_failures(CHECK_QUOTIENTS, quotients, None));

    checks.push(Check::pass(
        CHECK_LIMITS,
        Some("vacuous: a finite chain has no limit points".into()),
    ));

    let mut tail = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let expected: BTreeSet<PrimeIdealRef> = order.iter().skip(i).cloned().collect();
        let got = m.ass(t, &zero);
        if got != expected {
            tail.push(format!(
                "Ass(M{i}) = {} but expected {}",
                format_primes(&ring, &got),
                format_primes(&ring, &expected)
            ));
        }
    }
    checks.push(Check::from_failures(CHECK_TAIL, tail, None));

    let last = terms.last().unwrap();
    checks.push(if *last == zero {
        Check::pass(CHECK_ZERO, None)
    } else {
        Check::fail(CHECK_ZERO, format!("last term is {}", m.describe_sub(last)))
    });

    Ok(VerificationReport { checks })
}

/// Rebuilds the filtration of a scrambled presentation and compares the
/// terms, carried back to `m`, with those of `m` itself.
pub fn permutation_stability<B: ModuleBackend>(m: &B, order: &OrderChoice, seed: u64) -> Result<bool, FiltrationError> {
    let base = build_coprimary_filtration(m, order)?;
    let (scrambled, relabel) = m.scramble(seed);
    let moved: Vec<PrimeIdealRef> = base.order().iter().map(|p| m.scramble_prime(&relabel, p)).collect();
    let other = build_coprimary_filtration(&scrambled, &OrderChoice::Explicit(moved))?;
    let back: Vec<B::Sub> = other.terms().iter().map(|t| m.unscramble_sub(&relabel, t)).collect();
    Ok(back == base.terms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{MonomialModule, PidModule};
    use crate::monomial::{Monomial, MonomialIdeal};
    use crate::numeric::IntegerRing;
    use crate::numeric::Matrix;
    use crate::ring::CoefficientField;
    use num_bigint::BigInt;

    fn zmod(ns: &[i64]) -> PidModule<IntegerRing> {
        let f: Vec<BigInt> = ns.iter().map(|&n| BigInt::from(n)).collect();
        PidModule::cyclic_sum(IntegerRing, &f)
    }

    fn z(n: i64) -> PrimeIdealRef {
        PrimeIdealRef::Integer(BigInt::from(n))
    }

    fn v(s: &[usize]) -> PrimeIdealRef {
        PrimeIdealRef::Variables(s.to_vec())
    }

    fn mono(gens: &[&[u32]]) -> MonomialModule {
        let i = MonomialIdeal::new(2, gens.iter().map(|g| Monomial::new(g.to_vec())).collect());
        MonomialModule::cyclic(CoefficientField::Rationals, vec!["x".into(), "y".into()], i)
    }

    #[test]
    fn z12_filtration() {
        let m = zmod(&[12]);
        let f = build_coprimary_filtration(&m, &OrderChoice::Explicit(vec![z(2), z(3)])).unwrap();
        assert_eq!(m.describe_sub(&f.terms()[1]), "span[[4]]");
        assert_eq!(f.steps()[0].invariants.describe(&m.ring()), "Z/(4)");
        assert_eq!(f.steps()[1].invariants.describe(&m.ring()), "Z/(3)");
        let r = verify_filtration(&m, f.terms(), f.order()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(f.chain_prime(1), &z(3));
    }

    #[test]
    fn z4_is_one_step() {
        let m = zmod(&[4]);
        let f = build_coprimary_filtration(&m, &OrderChoice::Canonical).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.terms(), &[m.whole(), m.zero()]);
    }

    #[test]
    fn monomial_filtration() {
        let m = mono(&[&[2, 0], &[1, 1]]);
        let f = build_coprimary_filtration(&m, &OrderChoice::Explicit(vec![v(&[0]), v(&[0, 1])])).unwrap();
        assert_eq!(m.describe_sub(&f.terms()[1]), "(x)/(x^2,x*y)");
        assert_eq!(f.steps()[0].invariants.describe(&m.ring()), "A/(x)");
        assert_eq!(f.steps()[1].invariants.describe(&m.ring()), "A/(x,y)");
    }

    #[test]
    fn bad_orders_are_rejected() {
        let m = zmod(&[12]);
        for o in [vec![z(2)], vec![z(2), z(3), z(5)], vec![z(2), z(2)]] {
            assert!(matches!(
                build_coprimary_filtration(&m, &OrderChoice::Explicit(o)),
                Err(FiltrationError::NotExtension(_))
            ));
        }
        let mixed = PidModule::new(IntegerRing, 2, Matrix::from_rows(1, vec![vec![BigInt::from(0)], vec![BigInt::from(2)]]));
        assert!(build_coprimary_filtration(&mixed, &OrderChoice::Explicit(vec![z(2), PrimeIdealRef::Zero])).is_err());
        assert!(matches!(
            build_coprimary_filtration(&zmod(&[1]), &OrderChoice::Canonical),
            Err(FiltrationError::ZeroModule)
        ));
    }

    #[test]
    fn wrong_chains_fail_verification() {
        let m = zmod(&[12]);
        let six = m.submodule(vec![vec![BigInt::from(6)]]);
        let r = verify_filtration(&m, &[m.whole(), six, m.zero()], &[z(2), z(3)]).unwrap();
        assert!(!r.passed(CHECK_QUOTIENTS));
        assert!(r.get(CHECK_QUOTIENTS).unwrap().witness.as_ref().unwrap().contains("{(2),(3)}"));
        let m = zmod(&[4]);
        let r = verify_filtration(&m, &[m.whole(), m.zero(), m.zero()], &[z(2)]).unwrap();
        assert!(!r.passed(CHECK_DESCENT));
    }

    #[test]
    fn stability() {
        for seed in 0..5 {
            assert!(permutation_stability(&zmod(&[12]), &OrderChoice::Canonical, seed).unwrap());
            assert!(permutation_stability(&mono(&[&[1, 1]]), &OrderChoice::Canonical, seed).unwrap());
        }
    }
}
