//! Row lattices in `R^n` kept in Hermite normal form.
//!
//! A lattice is the row span of its basis. The basis is in row echelon form
//! with normalized pivots and every entry above a pivot reduced to the
//! canonical remainder modulo that pivot, which makes it unique: two
//! lattices are equal exactly when their bases are.

use super::euclid::EuclideanRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice<E> {
    dim: usize,
    basis: Vec<Vec<E>>,
}

impl<E: Clone + Eq> Lattice<E> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn standard<R: EuclideanRing<Elem = E>>(ring: &R, dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Lattice { dim, basis }
    }

    /// Hermite normal form of the row span of `gens`.
    pub fn from_generators<R: EuclideanRing<Elem = E>>(ring: &R, dim: usize, gens: Vec<Vec<E>>) -> Self {
        let mut rows: Vec<Vec<E>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator of wrong length"))
            .filter(|g| g.iter().any(|e| !ring.is_zero(e)))
            .collect();
        let mut r = 0;
        for c in 0..dim {
            let Some(first) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, first);
            for i in r + 1..rows.len() {
                if ring.is_zero(&rows[i][c]) {
                    continue;
                }
                let a = rows[r][c].clone();
                let b = rows[i][c].clone();
                let (g, s, t) = ring.xgcd(&a, &b);
                let a1 = ring.exact_div(&a, &g);
                let b1 = ring.exact_div(&b, &g);
                let top: Vec<E> = rows[r]
                    .iter()
                    .zip(&rows[i])
                    .map(|(x, y)| ring.add(&ring.mul(&s, x), &ring.mul(&t, y)))
                    .collect();
                let bottom: Vec<E> = rows[r]
                    .iter()
                    .zip(&rows[i])
                    .map(|(x, y)| ring.sub(&ring.mul(&a1, y), &ring.mul(&b1, x)))
                    .collect();
                rows[r] = top;
                rows[i] = bottom;
            }
            let (_, u) = ring.normalize(&rows[r][c]);
            let ui = ring.unit_inverse(&u);
            for x in rows[r].iter_mut() {
                *x = ring.mul(x, &ui);
            }
            let pivot = rows[r][c].clone();
            for k in 0..r {
                let (q, _) = ring.div_rem(&rows[k][c], &pivot);
                if ring.is_zero(&q) {
                    continue;
                }
                let pr = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(&pr) {
                    *x = ring.sub(x, &ring.mul(&q, y));
                }
            }
            r += 1;
        }
        rows.truncate(r);
        Lattice { dim, basis: rows }
    }

    fn pivots<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|e| !ring.is_zero(e)).expect("nonzero basis row"))
            .collect()
    }

    /// Coefficients `c` with `c * basis = v`, if `v` lies in the lattice.
    pub fn coordinates<R: EuclideanRing<Elem = E>>(&self, ring: &R, v: &[E]) -> Option<Vec<E>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let pivots = self.pivots(ring);
        let mut next = 0;
        for c in 0..self.dim {
            if next < pivots.len() && pivots[next] == c {
                let row = &self.basis[next];
                let (q, r) = ring.div_rem(&rest[c], &row[c]);
                if !ring.is_zero(&r) {
                    return None;
                }
                for (x, y) in rest.iter_mut().zip(row) {
                    *x = ring.sub(x, &ring.mul(&q, y));
                }
                coords.push(q);
                next += 1;
            } else if !ring.is_zero(&rest[c]) {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains_vector<R: EuclideanRing<Elem = E>>(&self, ring: &R, v: &[E]) -> bool {
        self.coordinates(ring, v).is_some()
    }

    pub fn contains<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Lattice<E>) -> bool {
        other.basis.iter().all(|v| self.contains_vector(ring, v))
    }

    pub fn sum<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Lattice<E>) -> Self {
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::from_generators(ring, self.dim, gens)
    }

    /// Intersection via the Zassenhaus trick: the span of `(b, b)` for
    /// `b` in `self` and `(c, 0)` for `c` in `other`, restricted to vectors
    /// whose first half vanishes, is `0 ⊕ (self ∩ other)`.
    pub fn intersection<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Lattice<E>) -> Self {
        let n = self.dim;
        let mut gens = Vec::new();
        for b in &self.basis {
            gens.push(b.iter().chain(b).cloned().collect());
        }
        for c in &other.basis {
            gens.push(c.iter().cloned().chain(std::iter::repeat_n(ring.zero(), n)).collect());
        }
        let stacked = Lattice::from_generators(ring, 2 * n, gens);
        let tail = stacked
            .basis
            .into_iter()
            .filter(|row| row[..n].iter().all(|e| ring.is_zero(e)))
            .map(|row| row[n..].to_vec())
            .collect();
        Lattice::from_generators(ring, n, tail)
    }

    /// Reorder coordinates: output coordinate `perm[i]` is input coordinate `i`.
    pub fn permute_coordinates<R: EuclideanRing<Elem = E>>(&self, ring: &R, perm: &[usize]) -> Self {
        let gens = self
            .basis
            .iter()
            .map(|row| {
                let mut out = vec![ring.zero(); self.dim];
                for (i, e) in row.iter().enumerate() {
                    out[perm[i]] = e.clone();
                }
                out
            })
            .collect();
        Lattice::from_generators(ring, self.dim, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::euclid::IntegerRing;
    use num_bigint::BigInt;

    fn lat(dim: usize, rows: &[&[i64]]) -> Lattice<BigInt> {
        Lattice::from_generators(
            &IntegerRing,
            dim,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = lat(2, &[&[2, 3], &[0, 5]]);
        let b = lat(2, &[&[2, 8], &[4, 1], &[0, 10]]);
        assert_eq!(a, b);
        assert_eq!(a.basis()[0][1], BigInt::from(3));
    }

    #[test]
    fn membership_and_coordinates() {
        let a = lat(2, &[&[2, 3], &[0, 5]]);
        let v = vec![BigInt::from(4), BigInt::from(11)];
        let c = a.coordinates(&IntegerRing, &v).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(1)]);
        assert!(!a.contains_vector(&IntegerRing, &[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn intersection_in_z() {
        // 2Z ∩ 3Z = 6Z
        assert_eq!(lat(1, &[&[2]]).intersection(&IntegerRing, &lat(1, &[&[3]])), lat(1, &[&[6]]));
        let a = lat(2, &[&[1, 1]]);
        let b = lat(2, &[&[1, 0]]);
        assert_eq!(a.intersection(&IntegerRing, &b), Lattice::zero(2));
        let c = lat(2, &[&[2, 0], &[0, 4]]);
        let d = lat(2, &[&[4, 0], &[0, 2]]);
        assert_eq!(c.intersection(&IntegerRing, &d), lat(2, &[&[4, 0], &[0, 4]]));
        assert_eq!(c.sum(&IntegerRing, &d), lat(2, &[&[2, 0], &[0, 2]]));
    }
}
