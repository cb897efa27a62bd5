//! Intersection identity, adjacent swaps and equivalence of coprimary
//! filtrations.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::{localization_kernel, BackendError, InvariantMatch, InvariantRecord, ModuleBackend};
use crate::filtration::{build_coprimary_filtration, Check, Filtration, FiltrationError, OrderChoice, VerificationReport};
use crate::poset::{build_specialization_poset, linear_extensions, rank_function, LinearExtension, PosetError};
use crate::ring::{PrimeIdealRef, RingSpec};

/// Largest Ass for which every linear extension is built.
pub const MAX_EXTENSION_ASS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("swap not applicable: {0}")]
    ClosureCondition(String),
    #[error("filtrations are of different modules")]
    DifferentModules,
    #[error("Ass has {0} primes; at most {MAX_EXTENSION_ASS} are supported")]
    TooManyPrimes(usize),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The three submodules of the intersection identity for rank-0 primes `P ≠ Q`.
#[derive(Clone, Debug)]
pub struct IntersectionIdentity<S> {
    /// `ker(M → M_P)`
    pub g: S,
    /// `ker(M → M_Q)`
    pub h: S,
    pub meet: S,
    /// `ker(G → G_Q)`
    pub g_at_q: S,
    /// `ker(H → H_P)`
    pub h_at_p: S,
    pub report: VerificationReport,
}

pub fn intersection_identity<B: ModuleBackend>(
    m: &B,
    p: &PrimeIdealRef,
    q: &PrimeIdealRef,
) -> Result<IntersectionIdentity<B::Sub>, EquivalenceError> {
    let ring = m.ring();
    if p == q {
        return Err(EquivalenceError::Precondition(format!("{} given twice", ring.format_prime(p))));
    }
    let ass: Vec<PrimeIdealRef> = m.ass(&m.whole(), &m.zero()).into_iter().collect();
    let ranks = rank_function(&build_specialization_poset(&ring, &ass)?);
    for r in [p, q] {
        if ranks.get(r) != Some(&0) {
            return Err(EquivalenceError::Precondition(format!(
                "{} is not a rank-0 associated prime",
                ring.format_prime(r)
            )));
        }
    }
    let whole = m.whole();
    let g = localization_kernel(m, &whole, p)?;
    let h = localization_kernel(m, &whole, q)?;
    let meet = m.intersection(&g, &h);
    let g_at_q = localization_kernel(m, &g, q)?;
    let h_at_p = localization_kernel(m, &h, p)?;
    let check = |name: &str, other: &B::Sub, label: &str| {
        if *other == meet {
            Check::pass(name, None)
        } else {
            Check::fail(
                name,
                format!("G∩H = {} but {label} = {}", m.describe_sub(&meet), m.describe_sub(other)),
            )
        }
    };
    let report = VerificationReport {
        checks: vec![
            check("meet_equals_kernel_of_g_at_q", &g_at_q, "ker(G → G_Q)"),
            check("meet_equals_kernel_of_h_at_p", &h_at_p, "ker(H → H_P)"),
        ],
    };
    Ok(IntersectionIdentity {
        g,
        h,
        meet,
        g_at_q,
        h_at_p,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct SwapMove<B: ModuleBackend> {
    pub filtration: Filtration<B>,
    /// chain index `i` with `2 ≤ i ≤ n`
    pub index: usize,
    pub order: Vec<PrimeIdealRef>,
    /// the new `F_{i-1}`
    pub replacement: B::Sub,
}

/// Exchanges the primes of `F_i/F_{i-1}` and `F_{i-1}/F_{i-2}` by replacing
/// `F_{i-1}` with `ker(F_i → (F_i)_q)`.
///
/// With `p` the prime of `F_i/F_{i-1}` and `q` that of `F_{i-1}/F_{i-2}`, the
/// move needs the closure of `q` not inside the closure of `p`, which as
/// ideals reads `p ⊄ q`.
pub fn swap_adjacent<B: ModuleBackend>(m: &B, f: &Filtration<B>, i: usize) -> Result<SwapMove<B>, EquivalenceError> {
    let n = f.len();
    if i < 2 || i > n {
        return Err(EquivalenceError::Precondition(format!("swap index {i} outside 2..={n}")));
    }
    let ring = m.ring();
    let k = n - i;
    let (p, q) = (&f.order()[k], &f.order()[k + 1]);
    if p.contained_in(q) {
        return Err(EquivalenceError::ClosureCondition(format!(
            "{} ⊆ {}, so the closure of {} lies in the closure of {}",
            ring.format_prime(p),
            ring.format_prime(q),
            ring.format_prime(q),
            ring.format_prime(p)
        )));
    }
    let replacement = localization_kernel(m, &f.terms()[k], q)?;
    let mut order = f.order().to_vec();
    order.swap(k, k + 1);
    let mut terms = f.terms().to_vec();
    terms[k + 1] = replacement.clone();
    Ok(SwapMove {
        filtration: Filtration::from_parts(m, order.clone(), terms),
        index: i,
        order,
        replacement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    EquivalentAssumed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not-equivalent",
            Verdict::EquivalentAssumed => "equivalent-assumed",
        }
    }

    pub fn holds(self) -> bool {
        self != Verdict::NotEquivalent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassComparison {
    pub prime: PrimeIdealRef,
    pub left: InvariantRecord,
    pub right: InvariantRecord,
    pub result: InvariantMatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub verdict: Verdict,
    pub comparisons: Vec<ClassComparison>,
    pub reason: Option<String>,
}

impl EquivalenceVerdict {
    pub fn to_json(&self, ring: &RingSpec) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "reason": self.reason,
            "classes": self.comparisons.iter().map(|c| json!({
                "prime": ring.prime_generators(&c.prime),
                "left": c.left.describe(ring),
                "right": c.right.describe(ring),
                "match": match c.result {
                    InvariantMatch::Equal => "equal",
                    InvariantMatch::Different => "different",
                    InvariantMatch::AssumedEqual => "assumed-equal",
                },
            })).collect::<Vec<_>>(),
        })
    }
}

/// Steps are matched through their primes and the quotients compared by
/// invariant records.
pub fn filtrations_equivalent<B: ModuleBackend>(
    f: &Filtration<B>,
    g: &Filtration<B>,
) -> Result<EquivalenceVerdict, EquivalenceError> {
    if f.terms().first() != g.terms().first() || f.terms().last() != g.terms().last() {
        return Err(EquivalenceError::DifferentModules);
    }
    let fp: BTreeSet<&PrimeIdealRef> = f.order().iter().collect();
    let gp: BTreeSet<&PrimeIdealRef> = g.order().iter().collect();
    if fp != gp || f.len() != g.len() {
        return Ok(EquivalenceVerdict {
            verdict: Verdict::NotEquivalent,
            comparisons: Vec::new(),
            reason: Some("the filtrations have different sets of associated primes".into()),
        });
    }
    let comparisons: Vec<ClassComparison> = f
        .steps()
        .iter()
        .map(|s| {
            let other = g.step_for(&s.prime).expect("same primes");
            ClassComparison {
                prime: s.prime.clone(),
                left: s.invariants.clone(),
                right: other.invariants.clone(),
                result: s.invariants.compare(&other.invariants),
            }
        })
        .collect();
    let verdict = if comparisons.iter().any(|c| c.result == InvariantMatch::Different) {
        Verdict::NotEquivalent
    } else if comparisons.iter().any(|c| c.result == InvariantMatch::AssumedEqual) {
        Verdict::EquivalentAssumed
    } else {
        Verdict::Equivalent
    };
    Ok(EquivalenceVerdict {
        verdict,
        comparisons,
        reason: None,
    })
}

#[derive(Clone, Debug)]
pub struct ExtensionsReport<B: ModuleBackend> {
    pub extensions: Vec<LinearExtension>,
    pub filtrations: Vec<Filtration<B>>,
    /// `(a, b, verdict)` for every pair of extension indices `a < b`
    pub pairs: Vec<(usize, usize, Verdict)>,
    /// pairwise comaximality of the distinct associated primes
    pub hypothesis: bool,
    pub all_equivalent: bool,
    /// false exactly when the hypothesis holds but some pair is inequivalent
    pub consistent: bool,
}

impl<B: ModuleBackend> ExtensionsReport<B> {
    pub fn to_json(&self, m: &B) -> Value {
        let ring = m.ring();
        json!({
            "extensions": self.extensions.iter().map(|e| e.iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|(a, b, v)| json!({"left": a, "right": b, "verdict": v.as_str()})).collect::<Vec<_>>(),
            "hypothesis": if self.hypothesis { "satisfied" } else { "not satisfied" },
            "observed": if self.all_equivalent { "equivalent" } else { "not equivalent" },
            "consistent": self.consistent,
        })
    }
}

pub fn all_extensions_equivalent<B: ModuleBackend>(
    m: &B,
    cap: Option<usize>,
) -> Result<ExtensionsReport<B>, EquivalenceError> {
    let ring = m.ring();
    let ass: Vec<PrimeIdealRef> = m.ass(&m.whole(), &m.zero()).into_iter().collect();
    if ass.len() > MAX_EXTENSION_ASS {
        return Err(EquivalenceError::TooManyPrimes(ass.len()));
    }
    let poset = build_specialization_poset(&ring, &ass)?;
    let extensions = linear_extensions(&poset, cap)?;
    let filtrations = extensions
        .iter()
        .map(|e| build_coprimary_filtration(m, &OrderChoice::Explicit(e.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairs = Vec::new();
    for a in 0..filtrations.len() {
        for b in a + 1..filtrations.len() {
            let v = filtrations_equivalent(&filtrations[a], &filtrations[b])?;
            pairs.push((a, b, v.verdict));
        }
    }
    let hypothesis = ass
        .iter()
        .enumerate()
        .all(|(i, p)| ass[i + 1..].iter().all(|q| p.comaximal(q)));
    let all_equivalent = pairs.iter().all(|(_, _, v)| v.holds());
    Ok(ExtensionsReport {
        extensions,
        filtrations,
        pairs,
        hypothesis,
        all_equivalent,
        consistent: !hypothesis || all_equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{MonomialModule, PidModule};
    use crate::filtration::verify_filtration;
    use crate::monomial::{Monomial, MonomialIdeal};
    use crate::numeric::{IntegerRing, Matrix};
    use crate::ring::CoefficientField;
    use num_bigint::BigInt;

    fn zmod(n: i64) -> PidModule<IntegerRing> {
        PidModule::cyclic_sum(IntegerRing, &[BigInt::from(n)])
    }

    fn z(n: i64) -> PrimeIdealRef {
        PrimeIdealRef::Integer(BigInt::from(n))
    }

    fn v(s: &[usize]) -> PrimeIdealRef {
        PrimeIdealRef::Variables(s.to_vec())
    }

    fn xy_module() -> MonomialModule {
        let i = MonomialIdeal::new(2, vec![Monomial::new(vec![1, 1])]);
        MonomialModule::cyclic(CoefficientField::Rationals, vec!["x".into(), "y".into()], i)
    }

    #[test]
    fn intersection_identity_on_z6() {
        let m = zmod(6);
        let r = intersection_identity(&m, &z(2), &z(3)).unwrap();
        assert_eq!(m.describe_sub(&r.g), "span[[2]]");
        assert_eq!(m.describe_sub(&r.h), "span[[3]]");
        assert_eq!(r.meet, m.zero());
        assert!(r.report.all_passed());
        assert!(intersection_identity(&m, &z(2), &z(2)).is_err());
    }

    #[test]
    fn intersection_identity_on_xy() {
        let m = xy_module();
        let r = intersection_identity(&m, &v(&[0]), &v(&[1])).unwrap();
        assert_eq!(m.describe_sub(&r.g), "(x)/(x*y)");
        assert_eq!(m.describe_sub(&r.h), "(y)/(x*y)");
        assert_eq!(r.meet, m.zero());
        assert!(r.report.all_passed());
    }

    #[test]
    fn swaps() {
        let m = zmod(6);
        let f = build_coprimary_filtration(&m, &OrderChoice::Explicit(vec![z(2), z(3)])).unwrap();
        let s = swap_adjacent(&m, &f, 2).unwrap();
        assert_eq!(s.order, vec![z(3), z(2)]);
        assert_eq!(m.describe_sub(&s.replacement), "span[[3]]");
        assert!(verify_filtration(&m, s.filtration.terms(), &s.order).unwrap().all_passed());

        let m = xy_module();
        let f = build_coprimary_filtration(&m, &OrderChoice::Canonical).unwrap();
        let there = swap_adjacent(&m, &f, 2).unwrap();
        let back = swap_adjacent(&m, &there.filtration, 2).unwrap();
        assert_eq!(back.filtration.terms(), f.terms());

        let mixed = PidModule::new(IntegerRing, 2, Matrix::from_rows(1, vec![vec![BigInt::from(0)], vec![BigInt::from(2)]]));
        let f = build_coprimary_filtration(&mixed, &OrderChoice::Canonical).unwrap();
        assert!(matches!(swap_adjacent(&mixed, &f, 2), Err(EquivalenceError::ClosureCondition(_))));
    }

    #[test]
    fn verdicts() {
        let m = zmod(12);
        let r = all_extensions_equivalent(&m, None).unwrap();
        assert_eq!(r.pairs, vec![(0, 1, Verdict::Equivalent)]);
        assert!(r.hypothesis);

        let m = xy_module();
        let r = all_extensions_equivalent(&m, None).unwrap();
        assert!(!r.hypothesis);
        assert!(r.all_equivalent);
        assert_eq!(r.pairs[0].2, Verdict::Equivalent);

        let a = build_coprimary_filtration(&zmod(4), &OrderChoice::Canonical).unwrap();
        let b = build_coprimary_filtration(&zmod(4), &OrderChoice::Canonical).unwrap();
        assert_eq!(filtrations_equivalent(&a, &b).unwrap().verdict, Verdict::Equivalent);
        let c = build_coprimary_filtration(&zmod(3), &OrderChoice::Canonical).unwrap();
        assert!(filtrations_equivalent(&a, &c).is_err());
    }

    #[test]
    fn z30_has_six_equivalent_extensions() {
        let r = all_extensions_equivalent(&zmod(30), None).unwrap();
        assert_eq!(r.extensions.len(), 6);
        assert!(r.all_equivalent && r.consistent);
    }
}
