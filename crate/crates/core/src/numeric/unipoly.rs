//! Dense univariate polynomials over GF(p), coefficients low-to-high.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::gf::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl UniPoly {
    /// Coefficients are reduced modulo `modulus`; trailing zeros are dropped.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = UniPoly {
            modulus,
            coeffs: coeffs.into_iter().map(|c| c % modulus).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64(modulus: u64, coeffs: &[i64]) -> Self {
        UniPoly::new(
            modulus,
            coeffs
                .iter()
                .map(|&c| super::gf::reduce_i128(c as i128, modulus))
                .collect(),
        )
    }

    pub fn zero(modulus: u64) -> Self {
        UniPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: u64) -> Self {
        UniPoly::constant(modulus, 1)
    }

    pub fn constant(modulus: u64, c: u64) -> Self {
        UniPoly::new(modulus, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(modulus: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        UniPoly::new(modulus, coeffs)
    }

    pub fn x(modulus: u64) -> Self {
        UniPoly::monomial(modulus, 1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn same_field(&self, other: &UniPoly) {
        assert_eq!(self.modulus, other.modulus, "polynomials over different fields");
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.same_field(other);
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        UniPoly::new(p, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.same_field(other);
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        UniPoly::new(p, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let p = self.modulus;
        UniPoly::new(p, self.coeffs.iter().map(|&c| neg_mod(c, p)).collect())
    }

    pub fn scale(&self, c: u64) -> UniPoly {
        let p = self.modulus;
        UniPoly::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.same_field(other);
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        UniPoly::new(p, out)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        self.same_field(divisor);
        let p = self.modulus;
        let dd = divisor.degree()?;
        let lead_inv = inv_mod(divisor.leading(), p)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, d, p), p);
            }
        }
        Some((UniPoly::new(p, quot), UniPoly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Option<UniPoly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic associate and the leading coefficient; zero maps to `(0, 0)`.
    pub fn monic(&self) -> (UniPoly, u64) {
        let lead = self.leading();
        match inv_mod(lead, self.modulus) {
            Some(inv) => (self.scale(inv), lead),
            None => (self.clone(), 0),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let p = self.modulus;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(p), UniPoly::zero(p));
        let (mut t0, mut t1) = (UniPoly::zero(p), UniPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p).expect("nonzero leading coefficient");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> UniPoly {
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        UniPoly::new(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn pow(&self, mut exp: u64) -> UniPoly {
        let mut acc = UniPoly::one(self.modulus);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// `self^exp mod modulus_poly`.
    pub fn pow_mod(&self, exp: &BigUint, modulus_poly: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(self.modulus).rem(modulus_poly).expect("nonzero modulus");
        let base = self.rem(modulus_poly).expect("nonzero modulus");
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus_poly).unwrap();
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus_poly).unwrap();
            }
        }
        acc
    }

    /// `f(x) = g(x^p)` for some `g`; returns `g`. Only valid when the
    /// derivative vanishes (every exponent is divisible by `p`).
    pub fn pth_root(&self) -> UniPoly {
        let p = self.modulus as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        UniPoly::new(self.modulus, coeffs)
    }

    /// `f(x + c)`, used to relabel roots in tests and in the CLI echo.
    pub fn shift(&self, c: u64) -> UniPoly {
        let p = self.modulus;
        let lin = UniPoly::new(p, vec![c, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(p), |acc, &a| acc.mul(&lin).add(&UniPoly::constant(p, a)))
    }

    /// Render with the given variable name, highest degree first: `x^2+3*x+1`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (i, c) {
                (0, c) => out.push_str(&c.to_string()),
                (1, 1) => out.push_str(var),
                (1, c) => out.push_str(&format!("{c}*{var}")),
                (i, 1) => out.push_str(&format!("{var}^{i}")),
                (i, c) => out.push_str(&format!("{c}*{var}^{i}")),
            }
        }
        out
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> UniPoly {
        UniPoly::from_i64(p, c)
    }

    #[test]
    fn division_identity() {
        let a = poly(7, &[3, 0, 5, 1, 2]);
        let b = poly(7, &[1, 4, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn xgcd_bezout() {
        let a = poly(5, &[1, 0, 1]).mul(&poly(5, &[2, 1]));
        let b = poly(5, &[1, 0, 1]).mul(&poly(5, &[3, 1]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, poly(5, &[1, 0, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn formatting_and_order() {
        assert_eq!(poly(5, &[1, 3, 1]).format_with("x"), "x^2+3*x+1");
        assert_eq!(poly(5, &[0]).format_with("t"), "0");
        assert!(poly(5, &[4, 1]) < poly(5, &[0, 0, 1]));
        assert!(poly(5, &[1, 1]) < poly(5, &[2, 1]));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let g = poly(3, &[1, 2, 1]);
        let f = g.pow(3);
        assert!(f.derivative().is_zero());
        assert_eq!(f.pth_root(), g);
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = poly(11, &[4, 0, 7, 1]);
        let g = f.shift(3);
        for x in 0..11 {
            assert_eq!(g.eval(x), f.eval((x + 3) % 11));
        }
    }
}
