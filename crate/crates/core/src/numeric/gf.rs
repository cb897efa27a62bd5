//! Prime-field scalars. Residues are plain `u64` values reduced modulo `p`;
//! products go through `u128` so any 64-bit prime is safe.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::integer::is_prime_u64;
use super::NumericError;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + p as u128 - b as u128) % p as u128) as u64
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_i128(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

/// An element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElement {
    residue: u64,
    modulus: u64,
}

impl GfElement {
    pub fn new(value: i128, modulus: u64) -> Result<Self, NumericError> {
        if !is_prime_u64(modulus) {
            return Err(NumericError::NotPrime(modulus.to_string()));
        }
        Ok(GfElement {
            residue: reduce_i128(value, modulus),
            modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn inverse(&self) -> Option<Self> {
        inv_mod(self.residue, self.modulus).map(|r| GfElement {
            residue: r,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, exp: u64) -> Self {
        GfElement {
            residue: pow_mod(self.residue, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "GF(p) operands from different fields");
    }
}

impl Add for GfElement {
    type Output = GfElement;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        GfElement {
            residue: add_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for GfElement {
    type Output = GfElement;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        GfElement {
            residue: sub_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for GfElement {
    type Output = GfElement;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        GfElement {
            residue: mul_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for GfElement {
    type Output = GfElement;
    fn neg(self) -> Self {
        GfElement {
            residue: neg_mod(self.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = GfElement::new(3, 7).unwrap();
        let b = GfElement::new(-2, 7).unwrap();
        assert_eq!(b.residue(), 5);
        assert_eq!((a + b).residue(), 1);
        assert_eq!((a - b).residue(), 5);
        assert_eq!((a * b).residue(), 1);
        assert_eq!(a.inverse().unwrap(), b);
        assert_eq!(a.pow(6).residue(), 1);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(GfElement::new(1, 4).is_err());
    }

    #[test]
    fn inverses_large_prime() {
        let p = 18446744073709551557u64;
        for a in [1u64, 2, 12345, p - 1] {
            let inv = inv_mod(a, p).unwrap();
            assert_eq!(mul_mod(a, inv, p), 1);
        }
        assert_eq!(inv_mod(0, p), None);
    }
}
