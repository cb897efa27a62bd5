//! Direct sums `⊕_j A/I_j` of cyclic monomial modules over `A = k[x_1..x_n]`.
//!
//! Only split submodules `⊕_j J_j/I_j` are represented. Localization
//! commutes with finite direct sums, so localization kernels, sums and
//! intersections of split submodules are split again and the filtration
//! machinery never leaves this class.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{
    render_ideal, Annihilator, BackendError, CoprimaryCertificate, InjectivityWitness, InvariantRecord,
    ModuleBackend, NilpotencyWitness, LENGTH_DEPTH,
};
use crate::monomial::{
    colon_ideal, count_between, exponent_grid, ideal_intersection, ideal_product, ideal_quotient, ideal_sum,
    saturate_ideal, standard_monomials, subquotient_associated_primes, Monomial, MonomialIdeal,
};
use crate::ring::{CoefficientField, PrimeIdealRef, RingSpec};

/// Most standard monomials the oracle accepts: `2^12` elements over GF(2).
pub const ORACLE_MONOMIALS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    field: CoefficientField,
    vars: Vec<String>,
    summands: Vec<MonomialIdeal>,
}

/// `(summand permutation, variable permutation)`: scrambled summand
/// `perm[j]` is original summand `j`, and likewise for variables.
pub type MonomialRelabel = (Vec<usize>, Vec<usize>);

impl MonomialModule {
    pub fn new(field: CoefficientField, vars: Vec<String>, summands: Vec<MonomialIdeal>) -> Self {
        for s in &summands {
            assert_eq!(s.nvars(), vars.len(), "summand over the wrong number of variables");
        }
        MonomialModule { field, vars, summands }
    }

    /// `A/I`.
    pub fn cyclic(field: CoefficientField, vars: Vec<String>, ideal: MonomialIdeal) -> Self {
        MonomialModule::new(field, vars, vec![ideal])
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn summands(&self) -> &[MonomialIdeal] {
        &self.summands
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    fn prime_vars(&self, p: &PrimeIdealRef) -> Vec<usize> {
        match p {
            PrimeIdealRef::Zero => Vec::new(),
            PrimeIdealRef::Variables(v) => v.clone(),
            _ => panic!("not a monomial prime"),
        }
    }

    fn outside_product(&self, p: &PrimeIdealRef) -> Monomial {
        let inside = self.prime_vars(p);
        let exps = (0..self.nvars()).map(|i| u32::from(!inside.contains(&i))).collect();
        Monomial::new(exps)
    }

    fn cap(&self, top: &[MonomialIdeal], bottom: &[MonomialIdeal]) -> u32 {
        top.iter().chain(bottom).map(MonomialIdeal::max_exponent).max().unwrap_or(0)
    }

    /// An element `m` of `top/bottom` with `x_i m = 0` and `m ≠ 0`, if any.
    fn zero_divisor_witness(&self, top: &[MonomialIdeal], bottom: &[MonomialIdeal], i: usize) -> Option<(usize, Monomial)> {
        let x = Monomial::var(self.nvars(), i);
        for (j, (s, t)) in top.iter().zip(bottom).enumerate() {
            let killed = ideal_intersection(&colon_ideal(t, &x), s);
            if let Some(m) = killed.gens().iter().find(|m| !t.contains_monomial(m)) {
                return Some((j, m.clone()));
            }
        }
        None
    }

    fn format_element(&self, j: usize, m: &Monomial) -> String {
        if self.summands.len() == 1 {
            m.format_with(&self.vars)
        } else {
            format!("{}e{}", monomial_prefix(m, &self.vars), j + 1)
        }
    }
}

fn monomial_prefix(m: &Monomial, vars: &[String]) -> String {
    if m.is_one() {
        String::new()
    } else {
        format!("{}*", m.format_with(vars))
    }
}

impl ModuleBackend for MonomialModule {
    type Sub = Vec<MonomialIdeal>;
    type Relabel = MonomialRelabel;

    fn ring(&self) -> RingSpec {
        RingSpec::Monomial {
            field: self.field.clone(),
            vars: self.vars.clone(),
        }
    }

    fn whole(&self) -> Self::Sub {
        vec![MonomialIdeal::unit(self.nvars()); self.summands.len()]
    }

    fn zero(&self) -> Self::Sub {
        self.summands.clone()
    }

    fn is_valid(&self, s: &Self::Sub) -> bool {
        s.len() == self.summands.len()
            && s.iter().zip(&self.summands).all(|(j, i)| j.nvars() == self.nvars() && j.contains(i))
    }

    fn contains(&self, big: &Self::Sub, small: &Self::Sub) -> bool {
        big.iter().zip(small).all(|(b, s)| b.contains(s))
    }

    fn intersection(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub {
        a.iter().zip(b).map(|(x, y)| ideal_intersection(x, y)).collect()
    }

    fn sum(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub {
        a.iter().zip(b).map(|(x, y)| ideal_sum(x, y)).collect()
    }

    fn ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> BTreeSet<PrimeIdealRef> {
        top.iter()
            .zip(bottom)
            .flat_map(|(s, t)| subquotient_associated_primes(s, t).expect("bottom inside top"))
            .map(PrimeIdealRef::from)
            .collect()
    }

    /// Componentwise `J_j ∩ (K_j : u^∞)` with `u` the product of the
    /// variables outside `P`; for monomial `K`, `(K : u^∞) = K A_P ∩ A`.
    fn kernel_at(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> Self::Sub {
        let u = self.outside_product(p);
        top.iter()
            .zip(bottom)
            .map(|(s, t)| ideal_intersection(s, &saturate_ideal(t, &u)))
            .collect()
    }

    fn annihilator(&self, top: &Self::Sub, bottom: &Self::Sub) -> Annihilator {
        let ann = top
            .iter()
            .zip(bottom)
            .map(|(s, t)| ideal_quotient(t, s))
            .fold(MonomialIdeal::unit(self.nvars()), |acc, c| ideal_intersection(&acc, &c));
        Annihilator::Monomial(ann)
    }

    fn coprimary_certificate(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> CoprimaryCertificate {
        let n = self.nvars();
        let inside = self.prime_vars(p);
        let cap = self.cap(top, bottom);
        let nilpotency = inside
            .iter()
            .map(|&i| {
                let exponent = (0..=cap).find(|&e| {
                    let xe = Monomial::var_pow(n, i, e);
                    top.iter()
                        .zip(bottom)
                        .all(|(s, t)| s.gens().iter().all(|g| t.contains_monomial(&g.mul(&xe))))
                });
                NilpotencyWitness {
                    generator: self.vars[i].clone(),
                    exponent,
                }
            })
            .collect();
        let injectivity = (0..n)
            .filter(|i| !inside.contains(i))
            .map(|i| match self.zero_divisor_witness(top, bottom, i) {
                None => InjectivityWitness {
                    element: self.vars[i].clone(),
                    injective: true,
                    witness: None,
                },
                Some((j, m)) => {
                    let e = self.format_element(j, &m);
                    InjectivityWitness {
                        element: self.vars[i].clone(),
                        injective: false,
                        witness: Some(format!("{}*{} = 0 with {} nonzero", self.vars[i], e, e)),
                    }
                }
            })
            .collect();
        let cert = CoprimaryCertificate {
            prime: p.clone(),
            nilpotency,
            injectivity,
            verdict: false,
        };
        let verdict = cert.nilpotent() && cert.injective();
        debug_assert_eq!(verdict, self.ass(top, bottom) == BTreeSet::from([p.clone()]));
        CoprimaryCertificate { verdict, ..cert }
    }

    fn invariants(&self, top: &Self::Sub, bottom: &Self::Sub) -> InvariantRecord {
        let n = self.nvars();
        let Annihilator::Monomial(annihilator) = self.annihilator(top, bottom) else {
            unreachable!()
        };
        let lengths = (1..=LENGTH_DEPTH)
            .map(|d| {
                top.iter()
                    .zip(bottom)
                    .map(|(s, t)| {
                        let deep = ideal_sum(t, &ideal_product(&MonomialIdeal::maximal_power(n, d), s));
                        count_between(s, &deep, s.max_degree() + d)
                    })
                    .sum()
            })
            .collect();
        let mut cyclic: Option<Vec<MonomialIdeal>> = Some(Vec::new());
        for (s, t) in top.iter().zip(bottom) {
            if s == t {
                continue;
            }
            let fresh: Vec<&Monomial> = s.gens().iter().filter(|g| !t.contains_monomial(g)).collect();
            match (fresh.as_slice(), cyclic.as_mut()) {
                ([g], Some(parts)) => parts.push(colon_ideal(t, g)),
                _ => cyclic = None,
            }
        }
        if let Some(parts) = cyclic.as_mut() {
            parts.sort();
        }
        InvariantRecord::Monomial {
            annihilator,
            lengths,
            cyclic_parts: cyclic,
        }
    }

    /// For finite-length subquotients, enumerate every GF(2)-combination of
    /// standard monomials. Such a module is supported at the homogeneous
    /// maximal ideal only, so an annihilator is prime exactly when it is
    /// that ideal, i.e. when the element is killed by every variable.
    fn oracle_ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> Result<BTreeSet<PrimeIdealRef>, BackendError> {
        let n = self.nvars();
        let mut basis: Vec<(usize, Monomial)> = Vec::new();
        for (j, (s, t)) in top.iter().zip(bottom).enumerate() {
            let std = standard_monomials(s, t).ok_or(BackendError::NotFinite)?;
            basis.extend(std.into_iter().map(|m| (j, m)));
        }
        if basis.len() > ORACLE_MONOMIALS {
            return Err(BackendError::TooLarge {
                size: format!("2^{}", basis.len()),
                limit: super::ORACLE_LIMIT,
            });
        }
        // x_i acts on the basis as a partial map (None = lands in the bottom)
        let action: Vec<Vec<Option<usize>>> = (0..n)
            .map(|i| {
                let x = Monomial::var(n, i);
                basis
                    .iter()
                    .map(|(j, m)| {
                        let xm = m.mul(&x);
                        basis.iter().position(|(k, b)| k == j && *b == xm)
                    })
                    .collect()
            })
            .collect();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1u32 << basis.len()) {
            let killed = action.iter().all(|act| {
                let mut image = 0u32;
                for (b, target) in act.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        if let Some(t) = target {
                            image ^= 1 << t;
                        }
                    }
                }
                image == 0
            });
            if killed {
                out.insert(PrimeIdealRef::Variables((0..n).collect()));
                break;
            }
        }
        Ok(out)
    }

    /// Split submodules generated in the exponent box `[0, E]^n`, where `E`
    /// is the largest exponent of `top` and `bottom`. Every submodule built
    /// from `top` and `bottom` by colons, saturations, sums and intersections
    /// lives in this family.
    fn enumerate_submodules(
        &self,
        top: &Self::Sub,
        bottom: &Self::Sub,
        limit: usize,
    ) -> Result<Vec<Self::Sub>, BackendError> {
        let cap = self.cap(top, bottom);
        let mut per_summand: Vec<Vec<MonomialIdeal>> = Vec::new();
        for (s, t) in top.iter().zip(bottom) {
            let fresh: Vec<Monomial> = exponent_grid(self.nvars(), cap)
                .into_iter()
                .filter(|m| s.contains_monomial(m) && !t.contains_monomial(m))
                .collect();
            if fresh.len() > 20 {
                return Err(BackendError::TooLarge {
                    size: format!("2^{}", fresh.len()),
                    limit,
                });
            }
            let mut ideals: HashSet<MonomialIdeal> = HashSet::new();
            for mask in 0u32..(1u32 << fresh.len()) {
                let mut gens = t.gens().to_vec();
                gens.extend((0..fresh.len()).filter(|b| mask & (1 << b) != 0).map(|b| fresh[b].clone()));
                ideals.insert(MonomialIdeal::new(self.nvars(), gens));
            }
            let mut ideals: Vec<MonomialIdeal> = ideals.into_iter().collect();
            ideals.sort();
            per_summand.push(ideals);
        }
        let total: usize = per_summand.iter().map(Vec::len).product();
        if total > limit {
            return Err(BackendError::TooLarge {
                size: total.to_string(),
                limit,
            });
        }
        let mut out: Vec<Self::Sub> = vec![Vec::new()];
        for choices in per_summand {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }

    fn scramble(&self, seed: u64) -> (Self, Self::Relabel) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sperm: Vec<usize> = (0..self.summands.len()).collect();
        sperm.shuffle(&mut rng);
        let mut vperm: Vec<usize> = (0..self.nvars()).collect();
        vperm.shuffle(&mut rng);
        let mut summands = vec![MonomialIdeal::zero(self.nvars()); self.summands.len()];
        for (j, s) in self.summands.iter().enumerate() {
            summands[sperm[j]] = permute_ideal(s, &vperm);
        }
        let mut vars = vec![String::new(); self.nvars()];
        for (i, v) in self.vars.iter().enumerate() {
            vars[vperm[i]] = v.clone();
        }
        (MonomialModule::new(self.field.clone(), vars, summands), (sperm, vperm))
    }

    fn unscramble_sub(&self, relabel: &Self::Relabel, s: &Self::Sub) -> Self::Sub {
        let (sperm, vperm) = relabel;
        let mut inv = vec![0; vperm.len()];
        for (i, &j) in vperm.iter().enumerate() {
            inv[j] = i;
        }
        (0..self.summands.len()).map(|j| permute_ideal(&s[sperm[j]], &inv)).collect()
    }

    fn scramble_prime(&self, relabel: &Self::Relabel, p: &PrimeIdealRef) -> PrimeIdealRef {
        match p {
            PrimeIdealRef::Variables(v) => {
                let mut w: Vec<usize> = v.iter().map(|&i| relabel.1[i]).collect();
                w.sort_unstable();
                PrimeIdealRef::Variables(w)
            }
            other => other.clone(),
        }
    }

    fn render_sub(&self, s: &Self::Sub) -> Value {
        let ring = self.ring();
        json!({
            "ideals": s.iter().map(|i| render_ideal(i, &ring)).collect::<Vec<_>>(),
        })
    }

    fn describe_sub(&self, s: &Self::Sub) -> String {
        let parts: Vec<String> = s
            .iter()
            .zip(&self.summands)
            .map(|(j, i)| format!("{}/{}", j.format_with(&self.vars), i.format_with(&self.vars)))
            .collect();
        parts.join(" + ")
    }
}

/// Variable `i` becomes variable `perm[i]`.
fn permute_ideal(ideal: &MonomialIdeal, perm: &[usize]) -> MonomialIdeal {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut exps = vec![0; perm.len()];
            for (i, &e) in g.exps().iter().enumerate() {
                exps[perm[i]] = e;
            }
            Monomial::new(exps)
        })
        .collect();
    MonomialIdeal::new(ideal.nvars(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::localization_kernel;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(2, gens.iter().map(|g| Monomial::new(g.to_vec())).collect())
    }

    fn cyclic(gens: &[&[u32]]) -> MonomialModule {
        MonomialModule::cyclic(CoefficientField::Rationals, xy(), ideal(gens))
    }

    fn v(s: &[usize]) -> PrimeIdealRef {
        PrimeIdealRef::Variables(s.to_vec())
    }

    #[test]
    fn ass_of_the_xy_module() {
        let m = cyclic(&[&[1, 1]]);
        assert_eq!(m.ass(&m.whole(), &m.zero()), BTreeSet::from([v(&[0]), v(&[1])]));
    }

    #[test]
    fn kernel_at_y_is_y_times_m() {
        let m = cyclic(&[&[1, 1]]);
        let g = localization_kernel(&m, &m.whole(), &v(&[1])).unwrap();
        assert_eq!(g, vec![ideal(&[&[0, 1]])]);
    }

    #[test]
    fn intersection_and_sum_in_xy_module() {
        let m = cyclic(&[&[1, 1]]);
        let xm = vec![ideal(&[&[1, 0]])];
        let ym = vec![ideal(&[&[0, 1]])];
        assert_eq!(m.intersection(&xm, &ym), m.zero());
        let s = m.sum(&xm, &ym);
        assert_eq!(s, vec![ideal(&[&[1, 0], &[0, 1]])]);
        assert_ne!(s, m.whole());
    }

    #[test]
    fn annihilator_and_invariants() {
        let m = cyclic(&[&[2, 0], &[1, 1]]);
        assert_eq!(m.annihilator(&m.whole(), &m.zero()), Annihilator::Monomial(ideal(&[&[2, 0], &[1, 1]])));
        let top = vec![ideal(&[&[1, 0]])];
        let rec = m.invariants(&top, &m.zero());
        let InvariantRecord::Monomial {
            annihilator,
            lengths,
            cyclic_parts,
        } = rec
        else {
            panic!()
        };
        assert_eq!(annihilator, ideal(&[&[1, 0], &[0, 1]]));
        assert_eq!(lengths, vec![1; LENGTH_DEPTH as usize]);
        assert_eq!(cyclic_parts, Some(vec![ideal(&[&[1, 0], &[0, 1]])]));
    }

    #[test]
    fn shifted_cyclic_modules_compare_equal() {
        // xM ≅ A/(y) inside A/(xy)
        let m = cyclic(&[&[1, 1]]);
        let a = m.invariants(&vec![ideal(&[&[1, 0]])], &m.zero());
        let b = cyclic(&[&[0, 1]]);
        let bb = b.invariants(&b.whole(), &b.zero());
        assert_eq!(a.compare(&bb), super::super::InvariantMatch::Equal);
    }

    #[test]
    fn coprimary_certificates() {
        let m = cyclic(&[&[1, 0]]);
        let c = m.coprimary_certificate(&m.whole(), &m.zero(), &v(&[0]));
        assert!(c.verdict);
        let m = cyclic(&[&[1, 1]]);
        let c = m.coprimary_certificate(&m.whole(), &m.zero(), &v(&[0]));
        assert!(!c.verdict);
        assert_eq!(c.injectivity[0].witness.as_deref(), Some("y*x = 0 with x nonzero"));
    }

    #[test]
    fn oracle_on_artinian_module() {
        let m = cyclic(&[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(m.oracle_ass(&m.whole(), &m.zero()).unwrap(), BTreeSet::from([v(&[0, 1])]));
        assert_eq!(m.ass(&m.whole(), &m.zero()), BTreeSet::from([v(&[0, 1])]));
        assert!(cyclic(&[&[1, 1]]).oracle_ass(&cyclic(&[&[1, 1]]).whole(), &cyclic(&[&[1, 1]]).zero()).is_err());
    }

    #[test]
    fn scrambling_round_trip() {
        let m = MonomialModule::new(
            CoefficientField::Rationals,
            xy(),
            vec![ideal(&[&[1, 1]]), ideal(&[&[2, 0], &[0, 1]])],
        );
        for seed in 0..8 {
            let (s, r) = m.scramble(seed);
            assert_eq!(m.unscramble_sub(&r, &s.zero()), m.zero());
            let p = m.scramble_prime(&r, &v(&[0]));
            let k = s.kernel_at(&s.whole(), &s.zero(), &p);
            assert_eq!(m.unscramble_sub(&r, &k), m.kernel_at(&m.whole(), &m.zero(), &v(&[0])));
        }
    }
}
