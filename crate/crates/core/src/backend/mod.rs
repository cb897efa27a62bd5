//! Finitely generated modules over the supported rings.
//!
//! A backend fixes an ambient module `M` and represents submodules by
//! canonical data, so two handles are equal exactly when the submodules are.
//! Most operations act on a subquotient `top/bottom` of `M` given by two
//! handles with `bottom ⊆ top`.

pub mod monomial;
pub mod pid;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::monomial::MonomialIdeal;
use crate::numeric::{GfPolyRing, IntegerRing};
use crate::poset::{build_specialization_poset, rank_function, PosetError};
use crate::ring::{PidElem, PrimeIdealRef, RingSpec};

pub use monomial::MonomialModule;
pub use pid::PidModule;

/// Upper bound on the number of elements the brute-force oracle enumerates.
pub const ORACLE_LIMIT: usize = 5000;

/// Number of 𝔪-adic layers recorded in monomial invariant records.
pub const LENGTH_DEPTH: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the module is zero")]
    ZeroModule,
    #[error("invalid submodule handle: {0}")]
    InvalidHandle(String),
    #[error("bottom submodule is not contained in top submodule")]
    NotContained,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("module has {size} elements, more than the limit {limit}")]
    TooLarge { size: String, limit: usize },
    #[error("module is infinite")]
    NotFinite,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The annihilator ideal of a module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Annihilator {
    /// normalized generator; zero when there is a free part, one for the zero module
    Pid(PidElem),
    Monomial(MonomialIdeal),
}

impl Annihilator {
    pub fn render(&self, ring: &RingSpec) -> Vec<String> {
        match self {
            Annihilator::Pid(e) => vec![ring.format_elem(e)],
            Annihilator::Monomial(i) if i.is_zero() => vec!["0".to_string()],
            Annihilator::Monomial(i) => i.generator_strings(ring.var_names()),
        }
    }

    /// Whether the ideal is contained in the prime `p`.
    pub fn contained_in(&self, p: &PrimeIdealRef) -> bool {
        match (self, p) {
            (Annihilator::Pid(e), _) if is_zero_elem(e) => true,
            (Annihilator::Pid(_), PrimeIdealRef::Zero) => false,
            (Annihilator::Pid(PidElem::Int(n)), PrimeIdealRef::Integer(q)) => (n % q) == BigInt::from(0),
            (Annihilator::Pid(PidElem::Poly(f)), PrimeIdealRef::Irreducible(g)) => f.rem(g).unwrap().is_zero(),
            (Annihilator::Monomial(i), p) => {
                let vars = match p {
                    PrimeIdealRef::Zero => Vec::new(),
                    PrimeIdealRef::Variables(v) => v.clone(),
                    _ => return false,
                };
                i.gens().iter().all(|g| vars.iter().any(|&v| g.exps()[v] > 0))
            }
            _ => false,
        }
    }
}

fn is_zero_elem(e: &PidElem) -> bool {
    match e {
        PidElem::Int(n) => n == &BigInt::from(0),
        PidElem::Poly(f) => f.is_zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyWitness {
    pub generator: String,
    /// least `n` with `a^n` killing every module generator, if any
    pub exponent: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityWitness {
    pub element: String,
    pub injective: bool,
    /// on failure, a nonzero element killed by `element`
    pub witness: Option<String>,
}

/// Both conditions of the coprimary criterion for a prime `P`: elements of
/// `P` act nilpotently, elements outside `P` act injectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimaryCertificate {
    pub prime: PrimeIdealRef,
    pub nilpotency: Vec<NilpotencyWitness>,
    pub injectivity: Vec<InjectivityWitness>,
    pub verdict: bool,
}

impl CoprimaryCertificate {
    pub fn nilpotent(&self) -> bool {
        self.nilpotency.iter().all(|w| w.exponent.is_some())
    }

    pub fn injective(&self) -> bool {
        self.injectivity.iter().all(|w| w.injective)
    }

    pub fn to_json(&self, ring: &RingSpec) -> Value {
        json!({
            "prime": ring.prime_generators(&self.prime),
            "nilpotency": self.nilpotency.iter().map(|w| json!({
                "generator": w.generator,
                "exponent": w.exponent,
            })).collect::<Vec<_>>(),
            "injectivity": self.injectivity.iter().map(|w| json!({
                "element": w.element,
                "injective": w.injective,
                "witness": w.witness,
            })).collect::<Vec<_>>(),
            "verdict": self.verdict,
        })
    }
}

/// Isomorphism invariants of a subquotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InvariantRecord {
    /// Complete: free rank and the non-unit invariant factors.
    Pid { free_rank: usize, torsion: Vec<PidElem> },
    /// Annihilator plus `dim N/𝔪^d N` for `d = 1..=LENGTH_DEPTH`. When every
    /// summand is cyclic, `cyclic_parts` lists the annihilators `(K : g)` of
    /// the summands, which determines the module up to isomorphism.
    Monomial {
        annihilator: MonomialIdeal,
        lengths: Vec<u64>,
        cyclic_parts: Option<Vec<MonomialIdeal>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantMatch {
    Equal,
    Different,
    /// the discriminating invariants agree but are not known to be complete
    AssumedEqual,
}

impl InvariantRecord {
    pub fn compare(&self, other: &InvariantRecord) -> InvariantMatch {
        match (self, other) {
            (InvariantRecord::Pid { .. }, InvariantRecord::Pid { .. }) => {
                if self == other {
                    InvariantMatch::Equal
                } else {
                    InvariantMatch::Different
                }
            }
            (
                InvariantRecord::Monomial {
                    annihilator: a1,
                    lengths: l1,
                    cyclic_parts: c1,
                },
                InvariantRecord::Monomial {
                    annihilator: a2,
                    lengths: l2,
                    cyclic_parts: c2,
                },
            ) => {
                if a1 != a2 || l1 != l2 {
                    InvariantMatch::Different
                } else if c1.is_some() && c1 == c2 {
                    InvariantMatch::Equal
                } else {
                    InvariantMatch::AssumedEqual
                }
            }
            _ => InvariantMatch::Different,
        }
    }

    pub fn to_json(&self, ring: &RingSpec) -> Value {
        match self {
            InvariantRecord::Pid { free_rank, torsion } => json!({
                "free_rank": free_rank,
                "torsion": torsion.iter().map(|e| ring.format_elem(e)).collect::<Vec<_>>(),
            }),
            InvariantRecord::Monomial {
                annihilator,
                lengths,
                cyclic_parts,
            } => json!({
                "annihilator": render_ideal(annihilator, ring),
                "lengths": lengths,
                "cyclic_parts": cyclic_parts.as_ref().map(|c| c.iter().map(|i| render_ideal(i, ring)).collect::<Vec<_>>()),
            }),
        }
    }

    /// Short human form such as `Z^1 + Z/6` or `A/(x)`.
    pub fn describe(&self, ring: &RingSpec) -> String {
        match self {
            InvariantRecord::Pid { free_rank, torsion } => {
                let base = match ring {
                    RingSpec::Integers => "Z".to_string(),
                    _ => "A".to_string(),
                };
                let mut parts = Vec::new();
                if *free_rank > 0 {
                    parts.push(if *free_rank == 1 {
                        base.clone()
                    } else {
                        format!("{base}^{free_rank}")
                    });
                }
                for t in torsion {
                    parts.push(format!("{base}/({})", ring.format_elem(t)));
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            }
            InvariantRecord::Monomial {
                annihilator,
                lengths,
                cyclic_parts,
            } => match cyclic_parts {
                Some(parts) if parts.is_empty() => "0".to_string(),
                Some(parts) => parts
                    .iter()
                    .map(|i| format!("A/{}", i.format_with(ring.var_names())))
                    .collect::<Vec<_>>()
                    .join(" + "),
                None => format!(
                    "ann {} lengths {:?}",
                    annihilator.format_with(ring.var_names()),
                    lengths
                ),
            },
        }
    }
}

pub(crate) fn render_ideal(i: &MonomialIdeal, ring: &RingSpec) -> Vec<String> {
    if i.is_zero() {
        vec!["0".to_string()]
    } else {
        i.generator_strings(ring.var_names())
    }
}

/// A backend module together with canonical submodule handles.
pub trait ModuleBackend: Clone + fmt::Debug {
    type Sub: Clone + Eq + Ord + Hash + fmt::Debug;
    /// Data needed to carry handles of a scrambled copy back to this module.
    type Relabel: Clone + fmt::Debug;

    fn ring(&self) -> RingSpec;
    fn whole(&self) -> Self::Sub;
    fn zero(&self) -> Self::Sub;
    /// Shape check plus `zero ⊆ s ⊆ whole`.
    fn is_valid(&self, s: &Self::Sub) -> bool;
    /// `small ⊆ big`.
    fn contains(&self, big: &Self::Sub, small: &Self::Sub) -> bool;
    fn intersection(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;
    fn sum(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;

    fn ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> BTreeSet<PrimeIdealRef>;
    /// Preimage in `top` of `ker(top/bottom → (top/bottom)_P)`, without any
    /// precondition checks.
    fn kernel_at(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> Self::Sub;
    fn annihilator(&self, top: &Self::Sub, bottom: &Self::Sub) -> Annihilator;
    fn coprimary_certificate(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> CoprimaryCertificate;
    fn invariants(&self, top: &Self::Sub, bottom: &Self::Sub) -> InvariantRecord;

    /// Ass by enumerating elements and their annihilators.
    fn oracle_ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> Result<BTreeSet<PrimeIdealRef>, BackendError>;
    /// Every submodule between `bottom` and `top` that this backend can
    /// represent, when there are finitely many and at most `limit`.
    fn enumerate_submodules(
        &self,
        top: &Self::Sub,
        bottom: &Self::Sub,
        limit: usize,
    ) -> Result<Vec<Self::Sub>, BackendError>;

    /// An isomorphic presentation with shuffled generators and relations.
    fn scramble(&self, seed: u64) -> (Self, Self::Relabel);
    /// Carry a handle of the scrambled module back to this one.
    fn unscramble_sub(&self, relabel: &Self::Relabel, s: &Self::Sub) -> Self::Sub;
    /// Carry a prime of this module's ring to the scrambled one.
    fn scramble_prime(&self, relabel: &Self::Relabel, p: &PrimeIdealRef) -> PrimeIdealRef;

    fn render_sub(&self, s: &Self::Sub) -> Value;
    fn describe_sub(&self, s: &Self::Sub) -> String;

    fn is_zero_module(&self) -> bool {
        self.whole() == self.zero()
    }
}

fn check_pair<B: ModuleBackend>(m: &B, top: &B::Sub, bottom: &B::Sub) -> Result<(), BackendError> {
    for s in [top, bottom] {
        if !m.is_valid(s) {
            return Err(BackendError::InvalidHandle(m.describe_sub(s)));
        }
    }
    if !m.contains(top, bottom) {
        return Err(BackendError::NotContained);
    }
    Ok(())
}

fn check_prime<B: ModuleBackend>(m: &B, p: &PrimeIdealRef) -> Result<(), BackendError> {
    if m.ring().owns(p) {
        Ok(())
    } else {
        Err(BackendError::Precondition(format!("{p:?} is not a prime of {}", m.ring())))
    }
}

pub fn associated_primes<B: ModuleBackend>(
    m: &B,
    top: &B::Sub,
    bottom: &B::Sub,
) -> Result<BTreeSet<PrimeIdealRef>, BackendError> {
    check_pair(m, top, bottom)?;
    Ok(m.ass(top, bottom))
}

/// `ker(S → S_P)` for a submodule `S`, with `P` required to be a minimal
/// element of `Ass(S)`. The result `G` is checked against
/// `Ass(G) = Ass(S) ∖ {P}` and `Ass(S/G) = {P}` before it is returned.
pub fn localization_kernel<B: ModuleBackend>(m: &B, s: &B::Sub, p: &PrimeIdealRef) -> Result<B::Sub, BackendError> {
    let zero = m.zero();
    check_pair(m, s, &zero)?;
    check_prime(m, p)?;
    let ass = m.ass(s, &zero);
    if !ass.contains(p) {
        return Err(BackendError::Precondition(format!(
            "{} is not an associated prime",
            m.ring().format_prime(p)
        )));
    }
    let primes: Vec<PrimeIdealRef> = ass.iter().cloned().collect();
    let poset = build_specialization_poset(&m.ring(), &primes)?;
    if rank_function(&poset)[p] != 0 {
        return Err(BackendError::Precondition(format!(
            "{} does not have rank 0 in Ass",
            m.ring().format_prime(p)
        )));
    }
    let g = m.kernel_at(s, &zero, p);
    let mut rest = ass.clone();
    rest.remove(p);
    if m.ass(&g, &zero) != rest || m.ass(s, &g) != BTreeSet::from([p.clone()]) {
        return Err(BackendError::Postcondition(format!(
            "kernel at {} does not split off the prime",
            m.ring().format_prime(p)
        )));
    }
    Ok(g)
}

pub fn annihilator<B: ModuleBackend>(m: &B, top: &B::Sub, bottom: &B::Sub) -> Result<Annihilator, BackendError> {
    check_pair(m, top, bottom)?;
    Ok(m.annihilator(top, bottom))
}

pub fn is_coprimary<B: ModuleBackend>(
    m: &B,
    top: &B::Sub,
    bottom: &B::Sub,
    p: &PrimeIdealRef,
) -> Result<CoprimaryCertificate, BackendError> {
    check_pair(m, top, bottom)?;
    check_prime(m, p)?;
    if top == bottom {
        return Err(BackendError::ZeroModule);
    }
    Ok(m.coprimary_certificate(top, bottom, p))
}

pub fn oracle_ass<B: ModuleBackend>(
    m: &B,
    top: &B::Sub,
    bottom: &B::Sub,
) -> Result<BTreeSet<PrimeIdealRef>, BackendError> {
    check_pair(m, top, bottom)?;
    m.oracle_ass(top, bottom)
}

pub fn submodule_intersection<B: ModuleBackend>(m: &B, a: &B::Sub, b: &B::Sub) -> Result<B::Sub, BackendError> {
    for s in [a, b] {
        if !m.is_valid(s) {
            return Err(BackendError::InvalidHandle(m.describe_sub(s)));
        }
    }
    Ok(m.intersection(a, b))
}

pub fn submodule_sum<B: ModuleBackend>(m: &B, a: &B::Sub, b: &B::Sub) -> Result<B::Sub, BackendError> {
    for s in [a, b] {
        if !m.is_valid(s) {
            return Err(BackendError::InvalidHandle(m.describe_sub(s)));
        }
    }
    Ok(m.sum(a, b))
}

pub fn canonical_invariants<B: ModuleBackend>(
    m: &B,
    top: &B::Sub,
    bottom: &B::Sub,
) -> Result<InvariantRecord, BackendError> {
    check_pair(m, top, bottom)?;
    Ok(m.invariants(top, bottom))
}

/// A module over one of the supported rings, chosen at run time.
#[derive(Clone, Debug)]
pub enum ModulePresentation {
    Integer(PidModule<IntegerRing>),
    Polynomial(PidModule<GfPolyRing>),
    Monomial(MonomialModule),
}

impl ModulePresentation {
    pub fn ring(&self) -> RingSpec {
        match self {
            ModulePresentation::Integer(m) => m.ring(),
            ModulePresentation::Polynomial(m) => m.ring(),
            ModulePresentation::Monomial(m) => m.ring(),
        }
    }

    /// Ass of the whole module.
    pub fn associated_primes(&self) -> BTreeSet<PrimeIdealRef> {
        match self {
            ModulePresentation::Integer(m) => m.ass(&m.whole(), &m.zero()),
            ModulePresentation::Polynomial(m) => m.ass(&m.whole(), &m.zero()),
            ModulePresentation::Monomial(m) => m.ass(&m.whole(), &m.zero()),
        }
    }
}

/// Runs `$body` with `$m` bound to the concrete backend of a presentation.
#[macro_export]
macro_rules! with_backend {
    ($pres:expr, $m:ident => $body:expr) => {
        match $pres {
            $crate::backend::ModulePresentation::Integer($m) => $body,
            $crate::backend::ModulePresentation::Polynomial($m) => $body,
            $crate::backend::ModulePresentation::Monomial($m) => $body,
        }
    };
}
