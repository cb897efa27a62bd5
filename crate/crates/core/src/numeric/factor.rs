//! Factorization over GF(p): square-free decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::unipoly::UniPoly;
use super::NumericError;

/// Monic irreducible factors of `f` with multiplicity, sorted. The product of
/// the factors times the leading coefficient of `f` is `f`.
pub fn factor_univariate_gf(f: &UniPoly) -> Result<Vec<UniPoly>, NumericError> {
    Ok(factor_univariate_gf_grouped(f)?
        .into_iter()
        .flat_map(|(g, k)| std::iter::repeat_n(g, k as usize))
        .collect())
}

/// `(monic irreducible, multiplicity)` pairs, sorted by the polynomial order.
pub fn factor_univariate_gf_grouped(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, NumericError> {
    if f.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let (monic, _) = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.modulus());
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    for (part, mult) in square_free(&monic) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    let mut grouped: Vec<(UniPoly, u32)> = Vec::new();
    for (g, k) in out {
        match grouped.last_mut() {
            Some((h, m)) if *h == g => *m += k,
            _ => grouped.push((g, k)),
        }
    }
    Ok(grouped)
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i` and each `g_i` square-free.
fn square_free(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root();
        for (g, m) in square_free(&root) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).unwrap().0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).unwrap().0;
        if !z.is_one() {
            out.push((z.monic().0, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).unwrap().0;
    }
    if !c.is_one() {
        let root = c.pth_root();
        for (g, m) in square_free(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a monic square-free polynomial into blocks whose irreducible
/// factors all share the same degree `d`.
fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = UniPoly::x(p);
    let mut h = x.rem(&rest).unwrap();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&BigUint::from(p), &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).unwrap().0;
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = UniPoly::new(p, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(f).unwrap();
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f).unwrap();
                acc = acc.add(&term);
            }
            acc
        } else {
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&exp, f).sub(&UniPoly::one(p))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).unwrap().0.monic().0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Rabin-style distinct-degree irreducibility test.
pub fn is_irreducible_gf(f: &UniPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let (m, _) = f.monic();
            let sf = square_free(&m);
            if sf.len() != 1 || sf[0].1 != 1 {
                return false;
            }
            let blocks = distinct_degree(&m);
            blocks.len() == 1 && blocks[0].1 == m.degree().unwrap()
        }
    }
}

/// Exhaustive trial division by every monic polynomial of degree at most
/// `deg f / 2`. Exponential in the degree; only for desk-scale verification.
pub fn is_irreducible_brute(f: &UniPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let p = f.modulus();
    for d in 1..=n / 2 {
        let mut tail = vec![0u64; d];
        loop {
            let mut coeffs = tail.clone();
            coeffs.push(1);
            let g = UniPoly::new(p, coeffs);
            if f.rem(&g).unwrap().is_zero() {
                return false;
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                tail[i] += 1;
                if tail[i] < p {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> UniPoly {
        UniPoly::from_i64(p, c)
    }

    #[test]
    fn linear_is_its_own_factor() {
        assert_eq!(factor_univariate_gf(&poly(5, &[0, 1])).unwrap(), vec![poly(5, &[0, 1])]);
    }

    #[test]
    fn x2_plus_1_mod_2_is_a_square() {
        // (x+1)^2 = x^2 + 2x + 1 = x^2 + 1 mod 2
        assert_eq!(
            factor_univariate_gf(&poly(2, &[1, 0, 1])).unwrap(),
            vec![poly(2, &[1, 1]), poly(2, &[1, 1])]
        );
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        // roots 2 and 3 = -2 mod 5
        assert_eq!(
            factor_univariate_gf(&poly(5, &[1, 0, 1])).unwrap(),
            vec![poly(5, &[2, 1]), poly(5, &[3, 1])]
        );
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor_univariate_gf(&UniPoly::zero(3)).is_err());
    }

    #[test]
    fn constant_has_no_factors() {
        assert!(factor_univariate_gf(&poly(7, &[4])).unwrap().is_empty());
    }

    #[test]
    fn pth_power_inputs() {
        // (x^2+x+1)^3 (x+2)^2 over GF(3); x^2+x+1 = (x-1)^2 there
        let f = poly(3, &[1, 1, 1]).pow(3).mul(&poly(3, &[2, 1]).pow(2));
        let factors = factor_univariate_gf(&f).unwrap();
        let product = factors.iter().fold(UniPoly::one(3), |acc, g| acc.mul(g));
        assert_eq!(product, f);
        assert!(factors.iter().all(is_irreducible_brute));
    }

    #[test]
    fn irreducibility_tests_agree() {
        for c0 in 0..3 {
            for c1 in 0..3 {
                for c2 in 0..3 {
                    for c3 in 0..3 {
                        let f = poly(3, &[c0, c1, c2, c3, 1]);
                        assert_eq!(is_irreducible_gf(&f), is_irreducible_brute(&f), "{f}");
                    }
                }
            }
        }
    }
}
