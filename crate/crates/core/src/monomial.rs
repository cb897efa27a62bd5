//! Monomial ideals of k[x_1..x_n] and associated primes of monomial
//! subquotients. Coefficients never enter: every ideal here is spanned by
//! monomials, so the field only matters for display.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ring::PrimeIdealRef;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("bottom ideal {bottom} is not contained in top ideal {top}")]
    NotContained { top: String, bottom: String },
    #[error("exponent vector has length {found}, expected {expected}")]
    Arity { found: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / other`, saturating at zero exponents.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Exponents capped at `cap`.
    pub fn truncate(&self, cap: u32) -> Monomial {
        Monomial::new(self.exps.iter().map(|&e| e.min(cap)).collect())
    }

    /// Single variable index if this is `x_i` to the first power.
    pub fn as_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = vars.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Graded order, then larger leading exponents first, so `x^2 < x*y < y^2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial ideal stored by its sorted minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        minimal_generators(nvars, gens)
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// The ideal generated by a set of variables; the empty set gives zero.
    pub fn from_variables(nvars: usize, vars: &[usize]) -> Self {
        MonomialIdeal::new(nvars, vars.iter().map(|&i| Monomial::var(nvars, i)).collect())
    }

    /// The `d`-th power of the homogeneous maximal ideal.
    pub fn maximal_power(nvars: usize, d: u32) -> Self {
        let mut gens = Vec::new();
        let mut exps = vec![0u32; nvars];
        compositions(nvars, d, 0, &mut exps, &mut gens);
        MonomialIdeal::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    pub fn max_exponent(&self) -> u32 {
        self.gens.iter().flat_map(|g| g.exps.iter().copied()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variable indices if the ideal is generated by variables.
    pub fn as_prime(&self) -> Option<MonomialPrime> {
        if self.is_zero() {
            return Some(MonomialPrime::Zero);
        }
        let vars: Option<Vec<usize>> = self.gens.iter().map(Monomial::as_variable).collect();
        vars.map(|mut v| {
            v.sort_unstable();
            MonomialPrime::Vars(v)
        })
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.format_with(vars)).collect();
        format!("({})", parts.join(","))
    }

    pub fn generator_strings(&self, vars: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.format_with(vars)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}

fn compositions(n: usize, d: u32, i: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        exps[i] = d;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in 0..=d {
        exps[i] = e;
        compositions(n, d - e, i + 1, exps, out);
    }
    exps[i] = 0;
}

/// A monomial prime: the zero ideal or the ideal of a nonempty variable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialPrime {
    Zero,
    Vars(Vec<usize>),
}

impl MonomialPrime {
    pub fn to_ideal(&self, nvars: usize) -> MonomialIdeal {
        match self {
            MonomialPrime::Zero => MonomialIdeal::zero(nvars),
            MonomialPrime::Vars(v) => MonomialIdeal::from_variables(nvars, v),
        }
    }

    pub fn variables(&self) -> &[usize] {
        match self {
            MonomialPrime::Zero => &[],
            MonomialPrime::Vars(v) => v,
        }
    }
}

impl From<MonomialPrime> for PrimeIdealRef {
    fn from(p: MonomialPrime) -> Self {
        match p {
            MonomialPrime::Zero => PrimeIdealRef::Zero,
            MonomialPrime::Vars(v) => PrimeIdealRef::Variables(v),
        }
    }
}

impl TryFrom<&PrimeIdealRef> for MonomialPrime {
    type Error = ();

    fn try_from(p: &PrimeIdealRef) -> Result<Self, ()> {
        match p {
            PrimeIdealRef::Zero => Ok(MonomialPrime::Zero),
            PrimeIdealRef::Variables(v) => Ok(MonomialPrime::Vars(v.clone())),
            _ => Err(()),
        }
    }
}

/// Divisibility-minimal generators, sorted.
pub fn minimal_generators(nvars: usize, gens: Vec<Monomial>) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = gens.into_iter().inspect(|g| assert_eq!(g.nvars(), nvars)).collect();
    gens.sort();
    gens.dedup();
    let mut keep: Vec<Monomial> = Vec::with_capacity(gens.len());
    // sorted by degree, so a divisor always precedes its multiples
    for g in gens {
        if !keep.iter().any(|k| k.divides(&g)) {
            keep.push(g);
        }
    }
    keep.sort();
    MonomialIdeal { nvars, gens: keep }
}

/// `(I : m)`, generated by `g / gcd(g, m)`.
pub fn colon_ideal(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    MonomialIdeal::new(ideal.nvars, ideal.gens.iter().map(|g| g.quotient(m)).collect())
}

/// `(I : m^∞)`. For monomial data the chain stabilizes once every exponent
/// of `m^k` reaches the largest exponent in `I`, so a single colon by that
/// power equals the limit; the loop below is the literal iteration.
pub fn saturate_ideal(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    let mut cur = ideal.clone();
    loop {
        let next = colon_ideal(&cur, m);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn ideal_intersection(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
    for g in &a.gens {
        for h in &b.gens {
            gens.push(g.lcm(h));
        }
    }
    MonomialIdeal::new(a.nvars, gens)
}

pub fn ideal_sum(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::new(a.nvars, a.gens.iter().chain(&b.gens).cloned().collect())
}

pub fn ideal_product(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let mut gens = Vec::new();
    for g in &a.gens {
        for h in &b.gens {
            gens.push(g.mul(h));
        }
    }
    MonomialIdeal::new(a.nvars, gens)
}

/// `(I : J) = ⋂_{g ∈ J} (I : g)`; the unit ideal when `J = 0`.
pub fn ideal_quotient(i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
    j.gens
        .iter()
        .map(|g| colon_ideal(i, g))
        .fold(MonomialIdeal::unit(i.nvars), |acc, c| ideal_intersection(&acc, &c))
}

/// Every monomial with all exponents at most `cap`, in a fixed order.
pub fn exponent_grid(nvars: usize, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        out.push(Monomial::new(exps.clone()));
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            exps[i] += 1;
            if exps[i] <= cap {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Associated primes of `J/K`.
///
/// `(K : m)` only depends on the exponents of `m` truncated at the largest
/// exponent `E` occurring in `J` or `K`, and so does membership of `m` in
/// either ideal. Searching the box `[0, E]^n` therefore finds every
/// annihilator of a monomial of `J ∖ K`; the associated primes of a monomial
/// subquotient are exactly the prime ones among them.
pub fn subquotient_associated_primes(
    top: &MonomialIdeal,
    bottom: &MonomialIdeal,
) -> Result<BTreeSet<MonomialPrime>, MonomialError> {
    if !top.contains(bottom) {
        return Err(MonomialError::NotContained {
            top: top.to_string(),
            bottom: bottom.to_string(),
        });
    }
    let mut out = BTreeSet::new();
    if top == bottom {
        return Ok(out);
    }
    if bottom.is_zero() {
        out.insert(MonomialPrime::Zero);
        return Ok(out);
    }
    let cap = top.max_exponent().max(bottom.max_exponent());
    for m in exponent_grid(top.nvars, cap) {
        if !top.contains_monomial(&m) || bottom.contains_monomial(&m) {
            continue;
        }
        if let Some(p) = colon_ideal(bottom, &m).as_prime() {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Monomials of `J ∖ K` when `J/K` has finite length, i.e. when `(K : J)`
/// contains a power of every variable.
pub fn standard_monomials(top: &MonomialIdeal, bottom: &MonomialIdeal) -> Option<Vec<Monomial>> {
    let n = top.nvars;
    let ann = ideal_quotient(bottom, top);
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let a = ann
            .gens
            .iter()
            .filter(|g| (0..n).all(|j| j == i || g.exps[j] == 0))
            .map(|g| g.exps[i])
            .min()?;
        bounds.push(a + top.max_exponent());
    }
    let cap = bounds.iter().copied().max().unwrap_or(0);
    Some(
        exponent_grid(n, cap)
            .into_iter()
            .filter(|m| m.exps.iter().zip(&bounds).all(|(e, b)| e < b))
            .filter(|m| top.contains_monomial(m) && !bottom.contains_monomial(m))
            .collect(),
    )
}

/// Number of monomials of `J ∖ K` of total degree at most `max_degree`.
pub(crate) fn count_between(top: &MonomialIdeal, bottom: &MonomialIdeal, max_degree: u32) -> u64 {
    exponent_grid(top.nvars, max_degree)
        .into_iter()
        .filter(|m| m.degree() <= max_degree)
        .filter(|m| top.contains_monomial(m) && !bottom.contains_monomial(m))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        let n = gens.first().map_or(2, |g| g.len());
        MonomialIdeal::new(n, gens.iter().map(|g| mono(g)).collect())
    }

    fn xy_names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn minimal_generator_examples() {
        let i = ideal(&[&[1, 0], &[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(i, ideal(&[&[1, 0], &[0, 2]]));
        assert_eq!(i.format_with(&xy_names()), "(x,y^2)");
        assert!(MonomialIdeal::new(2, vec![]).is_zero());
        assert_eq!(ideal(&[&[1, 1], &[2, 1], &[1, 2]]), ideal(&[&[1, 1]]));
    }

    #[test]
    fn colon_examples() {
        let x = mono(&[1, 0]);
        let y = mono(&[0, 1]);
        assert_eq!(colon_ideal(&ideal(&[&[2, 0], &[1, 1]]), &x), ideal(&[&[1, 0], &[0, 1]]));
        let i = ideal(&[&[2, 0], &[1, 1]]);
        assert_eq!(colon_ideal(&i, &Monomial::one(2)), i);
        assert_eq!(colon_ideal(&ideal(&[&[1, 1]]), &y), ideal(&[&[1, 0]]));
    }

    #[test]
    fn saturation_examples() {
        let x = mono(&[1, 0]);
        let y = mono(&[0, 1]);
        assert_eq!(saturate_ideal(&ideal(&[&[1, 1]]), &x), ideal(&[&[0, 1]]));
        assert_eq!(saturate_ideal(&ideal(&[&[1, 0]]), &y), ideal(&[&[1, 0]]));
        assert_eq!(saturate_ideal(&ideal(&[&[2, 0], &[1, 1]]), &y), ideal(&[&[1, 0]]));
    }

    #[test]
    fn intersection_examples() {
        let x = ideal(&[&[1, 0]]);
        let y = ideal(&[&[0, 1]]);
        assert_eq!(ideal_intersection(&x, &y), ideal(&[&[1, 1]]));
        let i = ideal(&[&[2, 0], &[0, 3]]);
        assert_eq!(ideal_intersection(&i, &MonomialIdeal::unit(2)), i);
        assert_eq!(ideal_intersection(&ideal(&[&[2, 0]]), &x), ideal(&[&[2, 0]]));
        assert_eq!(ideal_sum(&x, &y), ideal(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn associated_prime_examples() {
        let unit = MonomialIdeal::unit(2);
        let x = MonomialPrime::Vars(vec![0]);
        let y = MonomialPrime::Vars(vec![1]);
        let xy = MonomialPrime::Vars(vec![0, 1]);
        let got = subquotient_associated_primes(&unit, &ideal(&[&[1, 1]])).unwrap();
        assert_eq!(got, [x.clone(), y].into_iter().collect());
        let k = ideal(&[&[2, 0], &[1, 1]]);
        let got = subquotient_associated_primes(&ideal(&[&[1, 0]]), &k).unwrap();
        assert_eq!(got, [xy.clone()].into_iter().collect());
        let got = subquotient_associated_primes(&unit, &k).unwrap();
        assert_eq!(got, [x, xy].into_iter().collect());
    }

    #[test]
    fn associated_primes_edge_cases() {
        let unit = MonomialIdeal::unit(2);
        assert!(subquotient_associated_primes(&unit, &unit).unwrap().is_empty());
        let zero = MonomialIdeal::zero(2);
        assert_eq!(
            subquotient_associated_primes(&unit, &zero).unwrap(),
            [MonomialPrime::Zero].into_iter().collect()
        );
        assert!(subquotient_associated_primes(&ideal(&[&[1, 0]]), &unit).is_err());
    }

    #[test]
    fn standard_monomials_of_artinian_quotients() {
        let k = ideal(&[&[2, 0], &[1, 1], &[0, 2]]);
        let std = standard_monomials(&MonomialIdeal::unit(2), &k).unwrap();
        assert_eq!(std.len(), 3);
        assert!(standard_monomials(&MonomialIdeal::unit(2), &ideal(&[&[1, 1]])).is_none());
        // (x)/(x^2,xy) is one-dimensional although y has no pure power in K
        let std = standard_monomials(&ideal(&[&[1, 0]]), &ideal(&[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(std, vec![mono(&[1, 0])]);
    }

    #[test]
    fn maximal_powers() {
        assert_eq!(MonomialIdeal::maximal_power(2, 2), ideal(&[&[2, 0], &[1, 1], &[0, 2]]));
        assert!(MonomialIdeal::maximal_power(3, 0).is_unit());
    }
}
