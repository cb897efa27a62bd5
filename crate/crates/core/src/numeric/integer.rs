//! Integer primality and factorization: trial division, Miller-Rabin, then
//! Brent's variant of Pollard rho for whatever survives.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;

pub type Integer = BigInt;

const TRIAL_BOUND: u64 = 1000;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (d, s) = split_odd(n - 1);
    'base: for &a in &MR_BASES[..12] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = super::gf::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = super::gf::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn split_odd(mut d: u64) -> (u64, u32) {
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    (d, s)
}

/// Miller-Rabin on arbitrary-precision input. The fixed base set is
/// deterministic below 3.3e24; larger inputs are probable primes.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for p in 2..TRIAL_BOUND {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'base: for &a in MR_BASES.iter() {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n` with multiplicity, ascending. `factor_integer(1)` is empty.
pub fn factor_integer(n: &BigInt) -> Result<Vec<BigInt>, NumericError> {
    Ok(factor_integer_grouped(n)?
        .into_iter()
        .flat_map(|(p, k)| std::iter::repeat_n(p, k as usize))
        .collect())
}

/// Prime factors of `n` as `(prime, multiplicity)` pairs, ascending.
pub fn factor_integer_grouped(n: &BigInt) -> Result<Vec<(BigInt, u32)>, NumericError> {
    if !n.is_positive() {
        return Err(NumericError::NonPositive(n.to_string()));
    }
    let mut rest = n.magnitude().clone();
    let mut found: Vec<BigUint> = Vec::new();
    for p in 2..TRIAL_BOUND {
        if rest.is_one() {
            break;
        }
        while (&rest % p).is_zero() {
            found.push(BigUint::from(p));
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&BigInt::from(m.clone())) {
            found.push(m);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    found.sort();
    let mut grouped: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        let p = BigInt::from(p);
        match grouped.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => grouped.push((p, 1)),
        }
    }
    Ok(grouped)
}

/// A nontrivial divisor of a composite `n` with no factor below the trial bound.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_examples() {
        assert!(factor_integer(&big(1)).unwrap().is_empty());
        assert_eq!(factor_integer(&big(12)).unwrap(), vec![big(2), big(2), big(3)]);
        // trial-division oracle: 9991 = 97 * 103
        assert_eq!(factor_integer(&big(9991)).unwrap(), vec![big(97), big(103)]);
    }

    #[test]
    fn factor_rejects_nonpositive() {
        assert!(factor_integer(&big(0)).is_err());
        assert!(factor_integer(&big(-6)).is_err());
    }

    #[test]
    fn rho_splits_semiprimes() {
        let p = big(1_000_003);
        let q = big(998_244_353);
        let n = &p * &q;
        assert_eq!(factor_integer(&n).unwrap(), vec![p.clone(), q.clone()]);
        let r = BigInt::from(4_294_967_311u64);
        let n = &n * &r * &r;
        assert_eq!(factor_integer(&n).unwrap(), vec![p, q, r.clone(), r]);
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "n = {n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }
}
