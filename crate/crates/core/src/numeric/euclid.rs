//! Euclidean domains used by the PID backends: the integers and GF(p)[x].
//!
//! Rings are passed as context values (`IntegerRing`, `GfPolyRing`) so that
//! elements stay plain data with structural equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::factor::{factor_univariate_gf_grouped, is_irreducible_brute};
use super::integer::{factor_integer_grouped, is_prime};
use super::unipoly::UniPoly;
use crate::ring::{PidElem, PrimeIdealRef, RingSpec};

pub trait EuclideanRing: Clone + fmt::Debug {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Division with the canonical remainder (`0 <= r < |b|` over Z,
    /// `deg r < deg b` over GF(p)[x]). `b` must be nonzero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Compare Euclidean sizes of two nonzero elements.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// `(n, u)` with `a = u * n`, `u` a unit and `n` the canonical associate
    /// (nonnegative over Z, monic over GF(p)[x]). Zero maps to `(0, 1)`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;

    /// Normalized prime factors with multiplicity of a nonzero element.
    fn factor(&self, a: &Self::Elem) -> Vec<(Self::Elem, u32)>;

    /// Primality by exhaustive trial division (oracle use only).
    fn is_prime_brute(&self, a: &Self::Elem) -> bool;

    /// Every normalized divisor of nonzero `a`, by exhaustive search over
    /// elements no larger than `a` (oracle use only).
    fn divisors_brute(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    fn prime_ref(&self, prime: &Self::Elem) -> PrimeIdealRef;

    /// Generator of a prime of this ring (`0` for the zero ideal).
    fn prime_generator(&self, p: &PrimeIdealRef) -> Option<Self::Elem>;

    fn to_pid_elem(&self, a: &Self::Elem) -> PidElem;
    fn from_pid_elem(&self, e: &PidElem) -> Option<Self::Elem>;

    /// Canonical residues of `R/(m)` when `m` is nonzero and the quotient has
    /// at most `limit` elements.
    fn residues(&self, m: &Self::Elem, limit: usize) -> Option<Vec<Self::Elem>>;

    /// A small random element, used to scramble presentations.
    fn random_small<G: Rng>(&self, rng: &mut G) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String {
        self.spec().format_elem(&self.to_pid_elem(a))
    }

    fn rem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div_rem(a, b).1
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.rem(b, a))
    }

    /// `a / b`, assuming `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (q, r) = self.div_rem(a, b);
        debug_assert!(self.is_zero(&r), "inexact division");
        q
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` normalized.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let (g, u) = self.normalize(&r0);
        let ui = self.unit_inverse(&u);
        (g, self.mul(&s0, &ui), self.mul(&t0, &ui))
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.xgcd(a, b).0
    }

    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.normalize(&self.mul(&self.exact_div(a, &g), b)).0
    }

    /// Multiplicity of `prime` in nonzero `a`.
    fn valuation(&self, a: &Self::Elem, prime: &Self::Elem) -> u32 {
        let mut k = 0;
        let mut rest = a.clone();
        while !self.is_zero(&rest) && self.divides(prime, &rest) {
            rest = self.exact_div(&rest, prime);
            k += 1;
        }
        k
    }

    fn pow(&self, a: &Self::Elem, exp: u32) -> Self::Elem {
        (0..exp).fold(self.one(), |acc, _| self.mul(&acc, a))
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl EuclideanRing for IntegerRing {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        (q, r)
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        u.clone()
    }
    fn factor(&self, a: &BigInt) -> Vec<(BigInt, u32)> {
        factor_integer_grouped(&a.abs()).expect("nonzero input")
    }
    fn is_prime_brute(&self, a: &BigInt) -> bool {
        let Some(n) = a.to_u64() else {
            return is_prime(a);
        };
        n >= 2 && (2u64..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }
    fn divisors_brute(&self, a: &BigInt) -> Vec<BigInt> {
        let n = a.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
            }
            d += 1;
        }
        out
    }
    fn prime_ref(&self, prime: &BigInt) -> PrimeIdealRef {
        if prime.is_zero() {
            PrimeIdealRef::Zero
        } else {
            PrimeIdealRef::Integer(prime.abs())
        }
    }
    fn prime_generator(&self, p: &PrimeIdealRef) -> Option<BigInt> {
        match p {
            PrimeIdealRef::Zero => Some(BigInt::zero()),
            PrimeIdealRef::Integer(n) => Some(n.clone()),
            _ => None,
        }
    }
    fn to_pid_elem(&self, a: &BigInt) -> PidElem {
        PidElem::Int(a.clone())
    }
    fn from_pid_elem(&self, e: &PidElem) -> Option<BigInt> {
        match e {
            PidElem::Int(n) => Some(n.clone()),
            PidElem::Poly(_) => None,
        }
    }
    fn residues(&self, m: &BigInt, limit: usize) -> Option<Vec<BigInt>> {
        let n = m.abs().to_usize()?;
        (n > 0 && n <= limit).then(|| (0..n).map(BigInt::from).collect())
    }
    fn random_small<G: Rng>(&self, rng: &mut G) -> BigInt {
        BigInt::from(rng.gen_range(-3i64..=3))
    }
}

/// GF(p)[x] for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfPolyRing {
    pub modulus: u64,
    pub var: String,
}

impl GfPolyRing {
    pub fn new(modulus: u64, var: impl Into<String>) -> Self {
        GfPolyRing {
            modulus,
            var: var.into(),
        }
    }

    pub fn poly(&self, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(self.modulus, coeffs)
    }
}

impl EuclideanRing for GfPolyRing {
    type Elem = UniPoly;

    fn spec(&self) -> RingSpec {
        RingSpec::UnivariateGf {
            modulus: self.modulus,
            var: self.var.clone(),
        }
    }
    fn zero(&self) -> UniPoly {
        UniPoly::zero(self.modulus)
    }
    fn one(&self) -> UniPoly {
        UniPoly::one(self.modulus)
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &UniPoly) -> bool {
        a.degree() == Some(0)
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.add(b)
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.sub(b)
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mul(b)
    }
    fn neg(&self, a: &UniPoly) -> UniPoly {
        a.neg()
    }
    fn div_rem(&self, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
        a.div_rem(b).expect("division by zero polynomial")
    }
    fn size_cmp(&self, a: &UniPoly, b: &UniPoly) -> Ordering {
        a.degree().cmp(&b.degree())
    }
    fn normalize(&self, a: &UniPoly) -> (UniPoly, UniPoly) {
        if a.is_zero() {
            return (a.clone(), self.one());
        }
        let (m, lead) = a.monic();
        (m, UniPoly::constant(self.modulus, lead))
    }
    fn unit_inverse(&self, u: &UniPoly) -> UniPoly {
        let inv = super::gf::inv_mod(u.coeff(0), self.modulus).expect("unit");
        UniPoly::constant(self.modulus, inv)
    }
    fn factor(&self, a: &UniPoly) -> Vec<(UniPoly, u32)> {
        factor_univariate_gf_grouped(a).expect("nonzero input")
    }
    fn is_prime_brute(&self, a: &UniPoly) -> bool {
        is_irreducible_brute(a)
    }
    fn divisors_brute(&self, a: &UniPoly) -> Vec<UniPoly> {
        let deg = a.degree().expect("nonzero");
        let mut out = Vec::new();
        for j in 0..=deg {
            let lead = UniPoly::monomial(self.modulus, 1, j);
            let tails = self.residues(&lead, usize::MAX).expect("monic modulus");
            for t in tails {
                let d = lead.add(&t);
                if a.rem(&d).unwrap().is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }
    fn prime_ref(&self, prime: &UniPoly) -> PrimeIdealRef {
        if prime.is_zero() {
            PrimeIdealRef::Zero
        } else {
            PrimeIdealRef::Irreducible(prime.monic().0)
        }
    }
    fn prime_generator(&self, p: &PrimeIdealRef) -> Option<UniPoly> {
        match p {
            PrimeIdealRef::Zero => Some(self.zero()),
            PrimeIdealRef::Irreducible(f) if f.modulus() == self.modulus => Some(f.clone()),
            _ => None,
        }
    }
    fn to_pid_elem(&self, a: &UniPoly) -> PidElem {
        PidElem::Poly(a.clone())
    }
    fn from_pid_elem(&self, e: &PidElem) -> Option<UniPoly> {
        match e {
            PidElem::Poly(f) if f.modulus() == self.modulus => Some(f.clone()),
            _ => None,
        }
    }
    fn residues(&self, m: &UniPoly, limit: usize) -> Option<Vec<UniPoly>> {
        let d = m.degree()?;
        let count = (self.modulus as u128).checked_pow(d as u32)?;
        if count > limit as u128 {
            return None;
        }
        let p = self.modulus;
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut rest = idx;
            let coeffs = (0..d)
                .map(|_| {
                    let c = (rest % p as u128) as u64;
                    rest /= p as u128;
                    c
                })
                .collect();
            out.push(UniPoly::new(p, coeffs));
        }
        Some(out)
    }
    fn random_small<G: Rng>(&self, rng: &mut G) -> UniPoly {
        let deg = rng.gen_range(0..2usize);
        let coeffs = (0..=deg).map(|_| rng.gen_range(0..self.modulus)).collect();
        UniPoly::new(self.modulus, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_remainders_are_canonical() {
        let z = IntegerRing;
        for (a, b) in [(7, 3), (-7, 3), (7, -3), (-7, -3), (0, 5)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (q, r) = z.div_rem(&a, &b);
            assert_eq!(&q * &b + &r, a);
            assert!(!r.is_negative() && r < b.abs());
        }
    }

    #[test]
    fn xgcd_is_normalized() {
        let z = IntegerRing;
        let (g, s, t) = z.xgcd(&BigInt::from(-12), &BigInt::from(18));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(s * BigInt::from(-12) + t * BigInt::from(18), g);
        let r = GfPolyRing::new(5, "x");
        let (g, s, t) = r.xgcd(&r.poly(&[2, 2]), &r.poly(&[3, 0, 3]));
        assert!(g.is_monic());
        assert_eq!(s.mul(&r.poly(&[2, 2])).add(&t.mul(&r.poly(&[3, 0, 3]))), g);
    }

    #[test]
    fn residue_enumeration() {
        let r = GfPolyRing::new(3, "x");
        let reps = r.residues(&r.poly(&[1, 0, 1]), 100).unwrap();
        assert_eq!(reps.len(), 9);
        assert!(r.residues(&r.poly(&[1, 0, 0, 0, 0, 1]), 100).is_none());
        assert_eq!(IntegerRing.residues(&BigInt::from(-4), 10).unwrap().len(), 4);
        assert!(IntegerRing.residues(&BigInt::zero(), 10).is_none());
    }
}
