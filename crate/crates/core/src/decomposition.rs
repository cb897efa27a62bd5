//! `M = ⊕_i M_i` with `M_i = ⋂_{j≠i} ker(M → M_{p_j})`, available when the
//! associated primes are pairwise comaximal.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::{localization_kernel, BackendError, ModuleBackend};
use crate::filtration::{Check, VerificationReport};
use crate::ring::{PrimeIdealRef, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("the module is zero")]
    ZeroModule,
    #[error("{0} is not an associated prime")]
    NotAssociated(String),
    #[error(
        "closures of {p} and {q} meet: {p} + {q} = {sum} is proper (1 ∉ {sum}), so no coprimary direct sum decomposition is guaranteed"
    )]
    NotComaximal {
        p: String,
        q: String,
        /// generators of `p + q`
        sum: String,
        witness: Box<ComaximalityWitness>,
    },
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Backend(#[from] BackendError),
}

/// Submodule-level evidence for two non-comaximal primes: the localization
/// kernels at each and whether their sum is a proper submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComaximalityWitness {
    pub ideal_sum: Vec<String>,
    pub kernel_at_q: Option<String>,
    pub kernel_at_p: Option<String>,
    pub kernel_sum: Option<String>,
    pub kernel_sum_proper: Option<bool>,
}

impl ComaximalityWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "ideal_sum": self.ideal_sum,
            "kernel_at_p": self.kernel_at_p,
            "kernel_at_q": self.kernel_at_q,
            "kernel_sum": self.kernel_sum,
            "kernel_sum_proper": self.kernel_sum_proper,
        })
    }
}

/// `p + q` for primes of one ring, `None` for the unit ideal.
pub fn prime_sum(p: &PrimeIdealRef, q: &PrimeIdealRef) -> Option<PrimeIdealRef> {
    match (p, q) {
        (PrimeIdealRef::Zero, r) | (r, PrimeIdealRef::Zero) => Some(r.clone()),
        (PrimeIdealRef::Variables(a), PrimeIdealRef::Variables(b)) => {
            let u: BTreeSet<usize> = a.iter().chain(b).copied().collect();
            Some(PrimeIdealRef::Variables(u.into_iter().collect()))
        }
        (a, b) if a == b => Some(a.clone()),
        _ => None,
    }
}

fn ass_list<B: ModuleBackend>(m: &B) -> Vec<PrimeIdealRef> {
    m.ass(&m.whole(), &m.zero()).into_iter().collect()
}

/// Fails on the first non-comaximal pair in the sorted order of Ass.
pub fn check_comaximal<B: ModuleBackend>(m: &B) -> Result<(), DecompositionError> {
    let ring = m.ring();
    let ass = ass_list(m);
    for (i, p) in ass.iter().enumerate() {
        for q in &ass[i + 1..] {
            if p.comaximal(q) {
                continue;
            }
            let sum = prime_sum(p, q).expect("not comaximal");
            let whole = m.whole();
            let kp = localization_kernel(m, &whole, p).ok();
            let kq = localization_kernel(m, &whole, q).ok();
            let ks = match (&kp, &kq) {
                (Some(a), Some(b)) => Some(m.sum(a, b)),
                _ => None,
            };
            let witness = ComaximalityWitness {
                ideal_sum: ring.prime_generators(&sum),
                kernel_at_p: kp.as_ref().map(|s| m.describe_sub(s)),
                kernel_at_q: kq.as_ref().map(|s| m.describe_sub(s)),
                kernel_sum: ks.as_ref().map(|s| m.describe_sub(s)),
                kernel_sum_proper: ks.map(|s| s != whole),
            };
            return Err(DecompositionError::NotComaximal {
                p: ring.format_prime(p),
                q: ring.format_prime(q),
                sum: ring.format_prime(&sum),
                witness: Box::new(witness),
            });
        }
    }
    Ok(())
}

/// `⋂_{q ≠ p} ker(M → M_q)` over the other associated primes.
pub fn coprimary_component<B: ModuleBackend>(m: &B, p: &PrimeIdealRef) -> Result<B::Sub, DecompositionError> {
    if m.is_zero_module() {
        return Err(DecompositionError::ZeroModule);
    }
    let ring = m.ring();
    let ass = ass_list(m);
    if !ass.contains(p) {
        return Err(DecompositionError::NotAssociated(ring.format_prime(p)));
    }
    check_comaximal(m)?;
    let whole = m.whole();
    let mut component = whole.clone();
    for q in ass.iter().filter(|q| *q != p) {
        let k = localization_kernel(m, &whole, q)?;
        component = m.intersection(&component, &k);
    }
    if m.ass(&component, &m.zero()) != BTreeSet::from([p.clone()]) {
        return Err(DecompositionError::Certificate(format!(
            "component at {} is not coprimary",
            ring.format_prime(p)
        )));
    }
    Ok(component)
}

#[derive(Clone, Debug)]
pub struct DecompositionResult<S> {
    pub components: Vec<(PrimeIdealRef, S)>,
    pub certificates: VerificationReport,
}

impl<S> DecompositionResult<S> {
    pub fn to_json<B: ModuleBackend<Sub = S>>(&self, m: &B) -> Value {
        let ring: RingSpec = m.ring();
        json!({
            "components": self.components.iter().map(|(p, s)| json!({
                "prime": ring.prime_generators(p),
                "submodule": m.render_sub(s),
                "invariants": m.invariants(s, &m.zero()).describe(&ring),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn direct_sum_decompose<B: ModuleBackend>(m: &B) -> Result<DecompositionResult<B::Sub>, DecompositionError> {
    if m.is_zero_module() {
        return Err(DecompositionError::ZeroModule);
    }
    check_comaximal(m)?;
    let ring = m.ring();
    let zero = m.zero();
    let components = ass_list(m)
        .into_iter()
        .map(|p| coprimary_component(m, &p).map(|c| (p, c)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut meets = Vec::new();
    for (i, (p, a)) in components.iter().enumerate() {
        for (q, b) in &components[i + 1..] {
            if m.intersection(a, b) != zero {
                meets.push(format!("M{} ∩ M{} ≠ 0", ring.format_prime(p), ring.format_prime(q)));
            }
        }
    }
    let total = components.iter().fold(zero.clone(), |acc, (_, c)| m.sum(&acc, c));
    let singles: Vec<String> = components
        .iter()
        .filter(|(p, c)| m.ass(c, &zero) != BTreeSet::from([p.clone()]))
        .map(|(p, _)| format!("Ass of the {} component is not {{{}}}", ring.format_prime(p), ring.format_prime(p)))
        .collect();
    let checks = vec![
        if meets.is_empty() {
            Check::pass("pairwise_intersections_zero", None)
        } else {
            Check::fail("pairwise_intersections_zero", meets.join("; "))
        },
        if total == m.whole() {
            Check::pass("sum_is_module", None)
        } else {
            Check::fail("sum_is_module", format!("sum is {}", m.describe_sub(&total)))
        },
        if singles.is_empty() {
            Check::pass("singleton_ass", None)
        } else {
            Check::fail("singleton_ass", singles.join("; "))
        },
    ];
    let certificates = VerificationReport { checks };
    if !certificates.all_passed() {
        let failed: Vec<String> = certificates
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
            .collect();
        return Err(DecompositionError::Certificate(failed.join("; ")));
    }
    Ok(DecompositionResult {
        components,
        certificates,
    })
}
