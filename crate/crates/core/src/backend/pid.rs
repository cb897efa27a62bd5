//! Modules over Z and GF(p)[x]: `R^k / (column span of a relation matrix)`.
//!
//! A submodule is stored as its full preimage lattice in `R^k`, in Hermite
//! normal form. A subquotient `L/N` is decomposed by writing `N` in the
//! coordinates of the basis of `L` and taking the Smith form `U C V = D`:
//! in the coordinates `y = x V` the quotient is `⊕ R/(d_i)`, and the `i`-th
//! new generator is row `i` of `V^{-1}` applied to the basis of `L`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{
    Annihilator, BackendError, CoprimaryCertificate, InjectivityWitness, InvariantRecord, ModuleBackend,
    NilpotencyWitness, ORACLE_LIMIT,
};
use crate::numeric::{smith_normal_form, EuclideanRing, Lattice, Matrix};
use crate::ring::{PrimeIdealRef, RingSpec};

#[derive(Clone, Debug)]
pub struct PidModule<R: EuclideanRing> {
    ring: R,
    rank: usize,
    relations: Matrix<R::Elem>,
    relation_lattice: Lattice<R::Elem>,
}

/// `top/bottom ≅ ⊕ R/(factors[i])`, with `gens[i]` an ambient vector
/// mapping to the `i`-th cyclic generator.
#[derive(Clone, Debug)]
pub(crate) struct Decomposition<E> {
    pub factors: Vec<E>,
    pub gens: Vec<Vec<E>>,
}

impl<R: EuclideanRing> PidModule<R> {
    /// `R^rank` modulo the span of the columns of `relations`
    /// (a `rank x r` matrix).
    pub fn new(ring: R, rank: usize, relations: Matrix<R::Elem>) -> Self {
        assert_eq!(relations.nrows(), rank, "relation matrix must have one row per generator");
        let cols: Vec<Vec<R::Elem>> = (0..relations.ncols()).map(|j| relations.column(j)).collect();
        let relation_lattice = Lattice::from_generators(&ring, rank, cols);
        PidModule {
            ring,
            rank,
            relations,
            relation_lattice,
        }
    }

    /// `⊕ R/(d_i)`; a zero entry gives a free summand.
    pub fn cyclic_sum(ring: R, factors: &[R::Elem]) -> Self {
        let k = factors.len();
        let mut m = Matrix::filled(k, k, ring.zero());
        for (i, d) in factors.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        PidModule::new(ring, k, m)
    }

    pub fn euclidean_ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Matrix<R::Elem> {
        &self.relations
    }

    /// The preimage lattice of the submodule generated by the images of
    /// the given ambient vectors.
    pub fn submodule(&self, gens: Vec<Vec<R::Elem>>) -> Lattice<R::Elem> {
        let l = Lattice::from_generators(&self.ring, self.rank, gens);
        l.sum(&self.ring, &self.relation_lattice)
    }

    pub(crate) fn decompose(&self, top: &Lattice<R::Elem>, bottom: &Lattice<R::Elem>) -> Decomposition<R::Elem> {
        let ring = &self.ring;
        let l = top.rank();
        let coords: Vec<Vec<R::Elem>> = bottom
            .basis()
            .iter()
            .map(|v| top.coordinates(ring, v).expect("bottom inside top"))
            .collect();
        let c = Matrix::from_rows(l, coords);
        let snf = smith_normal_form(ring, &c);
        let factors = (0..l)
            .map(|i| snf.diagonal.get(i).cloned().unwrap_or_else(|| ring.zero()))
            .collect();
        let gens = (0..l)
            .map(|i| {
                let row = snf.right_inverse.row(i);
                (0..self.rank)
                    .map(|col| {
                        row.iter()
                            .zip(top.basis())
                            .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, &b[col])))
                    })
                    .collect()
            })
            .collect();
        Decomposition { factors, gens }
    }

    fn scale(&self, c: &R::Elem, v: &[R::Elem]) -> Vec<R::Elem> {
        v.iter().map(|x| self.ring.mul(c, x)).collect()
    }

    fn format_vector(&self, v: &[R::Elem]) -> String {
        let parts: Vec<String> = v.iter().map(|e| self.ring.format(e)).collect();
        format!("[{}]", parts.join(","))
    }

    /// Distinct normalized primes dividing some non-unit torsion factor.
    fn torsion_primes(&self, factors: &[R::Elem]) -> Vec<R::Elem> {
        let mut out: Vec<R::Elem> = factors
            .iter()
            .filter(|d| !self.ring.is_zero(d) && !self.ring.is_unit(d))
            .flat_map(|d| self.ring.factor(d).into_iter().map(|(q, _)| q))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `bottom` written in the HNF coordinates of `top`, when `top/bottom`
    /// is finite: an upper triangular full-rank square matrix.
    fn finite_relations(&self, top: &Lattice<R::Elem>, bottom: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>, BackendError> {
        if bottom.rank() != top.rank() {
            return Err(BackendError::NotFinite);
        }
        let coords = bottom
            .basis()
            .iter()
            .map(|v| top.coordinates(&self.ring, v).expect("bottom inside top"))
            .collect();
        Ok(Lattice::from_generators(&self.ring, top.rank(), coords))
    }

    /// Canonical representatives of `top/bottom` in `top`-coordinates.
    fn finite_elements(
        &self,
        rel: &Lattice<R::Elem>,
        limit: usize,
    ) -> Result<Vec<Vec<R::Elem>>, BackendError> {
        let mut elems: Vec<Vec<R::Elem>> = vec![Vec::new()];
        for (i, row) in rel.basis().iter().enumerate() {
            let too_large = || BackendError::TooLarge {
                size: "more".to_string(),
                limit,
            };
            let res = self.ring.residues(&row[i], limit).ok_or_else(too_large)?;
            if elems.len() * res.len() > limit {
                return Err(too_large());
            }
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    res.iter().map(move |r| {
                        let mut e2 = e.clone();
                        e2.push(r.clone());
                        e2
                    })
                })
                .collect();
        }
        Ok(elems)
    }

    fn to_ambient(&self, top: &Lattice<R::Elem>, x: &[R::Elem]) -> Vec<R::Elem> {
        (0..self.rank)
            .map(|col| {
                x.iter()
                    .zip(top.basis())
                    .fold(self.ring.zero(), |acc, (a, b)| self.ring.add(&acc, &self.ring.mul(a, &b[col])))
            })
            .collect()
    }
}

impl<R: EuclideanRing> ModuleBackend for PidModule<R> {
    type Sub = Lattice<R::Elem>;
    /// `(W, W^{-1})`: scrambled coordinates are `x W`.
    type Relabel = (Vec<Vec<R::Elem>>, Vec<Vec<R::Elem>>);

    fn ring(&self) -> RingSpec {
        self.ring.spec()
    }

    fn whole(&self) -> Self::Sub {
        Lattice::standard(&self.ring, self.rank)
    }

    fn zero(&self) -> Self::Sub {
        self.relation_lattice.clone()
    }

    fn is_valid(&self, s: &Self::Sub) -> bool {
        s.dim() == self.rank && s.contains(&self.ring, &self.relation_lattice)
    }

    fn contains(&self, big: &Self::Sub, small: &Self::Sub) -> bool {
        big.contains(&self.ring, small)
    }

    fn intersection(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub {
        a.intersection(&self.ring, b)
    }

    fn sum(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub {
        a.sum(&self.ring, b)
    }

    fn ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> BTreeSet<PrimeIdealRef> {
        let dec = self.decompose(top, bottom);
        let mut out = BTreeSet::new();
        if dec.factors.iter().any(|d| self.ring.is_zero(d)) {
            out.insert(PrimeIdealRef::Zero);
        }
        for q in self.torsion_primes(&dec.factors) {
            out.insert(self.ring.prime_ref(&q));
        }
        out
    }

    fn kernel_at(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> Self::Sub {
        let dec = self.decompose(top, bottom);
        let pi = self.ring.prime_generator(p).expect("prime of this ring");
        let mut gens: Vec<Vec<R::Elem>> = bottom.basis().to_vec();
        for (d, g) in dec.factors.iter().zip(&dec.gens) {
            if self.ring.is_zero(d) {
                continue;
            }
            if self.ring.is_zero(&pi) {
                gens.push(g.clone());
            } else {
                let v = self.ring.valuation(d, &pi);
                gens.push(self.scale(&self.ring.pow(&pi, v), g));
            }
        }
        Lattice::from_generators(&self.ring, self.rank, gens)
    }

    fn annihilator(&self, top: &Self::Sub, bottom: &Self::Sub) -> Annihilator {
        let dec = self.decompose(top, bottom);
        let ring = &self.ring;
        let ann = dec.factors.iter().fold(ring.one(), |acc, d| ring.lcm(&acc, d));
        Annihilator::Pid(ring.to_pid_elem(&ann))
    }

    fn coprimary_certificate(&self, top: &Self::Sub, bottom: &Self::Sub, p: &PrimeIdealRef) -> CoprimaryCertificate {
        let ring = &self.ring;
        let dec = self.decompose(top, bottom);
        let pi = ring.prime_generator(p).expect("prime of this ring");
        let live: Vec<usize> = (0..dec.factors.len()).filter(|&i| !ring.is_unit(&dec.factors[i])).collect();

        let mut nilpotency = Vec::new();
        if !ring.is_zero(&pi) {
            // any exponent that works is at most the total valuation
            let bound: u32 = live
                .iter()
                .filter(|&&i| !ring.is_zero(&dec.factors[i]))
                .map(|&i| ring.valuation(&dec.factors[i], &pi))
                .sum();
            let exponent = (0..=bound).find(|&n| {
                let pn = ring.pow(&pi, n);
                live.iter().all(|&i| bottom.contains_vector(ring, &self.scale(&pn, &dec.gens[i])))
            });
            nilpotency.push(NilpotencyWitness {
                generator: ring.format(&pi),
                exponent,
            });
        }

        let mut injectivity = Vec::new();
        for q in self.torsion_primes(&dec.factors) {
            if ring.prime_ref(&q) == *p {
                continue;
            }
            let i = *live
                .iter()
                .find(|&&i| !ring.is_zero(&dec.factors[i]) && ring.divides(&q, &dec.factors[i]))
                .expect("q divides a factor");
            let m = self.scale(&ring.exact_div(&dec.factors[i], &q), &dec.gens[i]);
            injectivity.push(InjectivityWitness {
                element: ring.format(&q),
                injective: false,
                witness: Some(format!(
                    "{}*{} = 0 with {} nonzero",
                    ring.format(&q),
                    self.format_vector(&m),
                    self.format_vector(&m)
                )),
            });
        }
        if injectivity.is_empty() {
            injectivity.push(InjectivityWitness {
                element: "every s outside P".to_string(),
                injective: true,
                witness: None,
            });
        }
        let cert = CoprimaryCertificate {
            prime: p.clone(),
            verdict: false,
            nilpotency,
            injectivity,
        };
        let verdict = cert.nilpotent() && cert.injective();
        debug_assert_eq!(verdict, self.ass(top, bottom) == BTreeSet::from([p.clone()]) && top != bottom);
        CoprimaryCertificate { verdict, ..cert }
    }

    fn invariants(&self, top: &Self::Sub, bottom: &Self::Sub) -> InvariantRecord {
        let dec = self.decompose(top, bottom);
        let ring = &self.ring;
        InvariantRecord::Pid {
            free_rank: dec.factors.iter().filter(|d| ring.is_zero(d)).count(),
            torsion: dec
                .factors
                .iter()
                .filter(|d| !ring.is_zero(d) && !ring.is_unit(d))
                .map(|d| ring.to_pid_elem(d))
                .collect(),
        }
    }

    /// Enumerates the canonical residues of `top/bottom` and computes each
    /// annihilator as the smallest divisor of the exponent that kills the
    /// element. Uses only Hermite forms and trial division.
    fn oracle_ass(&self, top: &Self::Sub, bottom: &Self::Sub) -> Result<BTreeSet<PrimeIdealRef>, BackendError> {
        let ring = &self.ring;
        let rel = self.finite_relations(top, bottom)?;
        let elems = self.finite_elements(&rel, ORACLE_LIMIT)?;
        let det = (0..rel.rank()).fold(ring.one(), |acc, i| ring.mul(&acc, &rel.basis()[i][i]));
        let mut divisors = ring.divisors_brute(&det);
        divisors.sort_by(|a, b| ring.size_cmp(a, b).then_with(|| a.cmp(b)));
        let mut out = BTreeSet::new();
        for x in elems.iter().filter(|x| x.iter().any(|e| !ring.is_zero(e))) {
            let g = divisors
                .iter()
                .find(|d| rel.contains_vector(ring, &self.scale(d, x)))
                .expect("the exponent kills everything");
            if ring.is_prime_brute(g) {
                out.insert(ring.prime_ref(g));
            }
        }
        Ok(out)
    }

    fn enumerate_submodules(
        &self,
        top: &Self::Sub,
        bottom: &Self::Sub,
        limit: usize,
    ) -> Result<Vec<Self::Sub>, BackendError> {
        let rel = self.finite_relations(top, bottom)?;
        let elems: Vec<Vec<R::Elem>> = self
            .finite_elements(&rel, limit)?
            .iter()
            .map(|x| self.to_ambient(top, x))
            .collect();
        let mut seen: HashSet<Self::Sub> = HashSet::from([bottom.clone()]);
        let mut queue = VecDeque::from([bottom.clone()]);
        while let Some(s) = queue.pop_front() {
            for v in &elems {
                if s.contains_vector(&self.ring, v) {
                    continue;
                }
                let mut gens = s.basis().to_vec();
                gens.push(v.clone());
                let t = Lattice::from_generators(&self.ring, self.rank, gens);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Self::Sub> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    fn scramble(&self, seed: u64) -> (Self, Self::Relabel) {
        let ring = &self.ring;
        let k = self.rank;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id = Matrix::identity(ring, k).into_rows();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng);
        let mut w: Vec<Vec<R::Elem>> = perm.iter().map(|&i| id[i].clone()).collect();
        let mut winv: Vec<Vec<R::Elem>> = vec![vec![ring.zero(); k]; k];
        for (r, &i) in perm.iter().enumerate() {
            winv[i][r] = ring.one();
        }
        if k >= 2 {
            for _ in 0..2 * k {
                let i = rng.gen_range(0..k);
                let j = (i + rng.gen_range(1..k)) % k;
                let c = ring.random_small(&mut rng);
                // W <- E W with E = I + c e_ij; W^-1 <- W^-1 E^-1
                let src = w[j].clone();
                for (x, y) in w[i].iter_mut().zip(&src) {
                    *x = ring.add(x, &ring.mul(&c, y));
                }
                for row in winv.iter_mut() {
                    let t = ring.mul(&c, &row[i]);
                    row[j] = ring.sub(&row[j], &t);
                }
            }
        }
        // relation columns a become W^T a; then shuffle and mix the columns
        let mut cols: Vec<Vec<R::Elem>> = (0..self.relations.ncols())
            .map(|j| {
                let a = self.relations.column(j);
                (0..k)
                    .map(|c| (0..k).fold(ring.zero(), |acc, r| ring.add(&acc, &ring.mul(&a[r], &w[r][c]))))
                    .collect()
            })
            .collect();
        cols.shuffle(&mut rng);
        if cols.len() >= 2 {
            for _ in 0..cols.len() {
                let i = rng.gen_range(0..cols.len());
                let j = (i + rng.gen_range(1..cols.len())) % cols.len();
                let c = ring.random_small(&mut rng);
                let src = cols[j].clone();
                for (x, y) in cols[i].iter_mut().zip(&src) {
                    *x = ring.add(x, &ring.mul(&c, y));
                }
            }
        }
        let n = cols.len();
        let mut rel = Matrix::filled(k, n, ring.zero());
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                rel.set(i, j, e.clone());
            }
        }
        (PidModule::new(ring.clone(), k, rel), (w, winv))
    }

    fn unscramble_sub(&self, relabel: &Self::Relabel, s: &Self::Sub) -> Self::Sub {
        let ring = &self.ring;
        let winv = &relabel.1;
        let k = self.rank;
        let gens = s
            .basis()
            .iter()
            .map(|v| {
                (0..k)
                    .map(|c| (0..k).fold(ring.zero(), |acc, r| ring.add(&acc, &ring.mul(&v[r], &winv[r][c]))))
                    .collect()
            })
            .collect();
        Lattice::from_generators(ring, k, gens)
    }

    fn scramble_prime(&self, _relabel: &Self::Relabel, p: &PrimeIdealRef) -> PrimeIdealRef {
        p.clone()
    }

    fn render_sub(&self, s: &Self::Sub) -> Value {
        json!({
            "basis": s.basis().iter().map(|row| row.iter().map(|e| self.ring.format(e)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    fn describe_sub(&self, s: &Self::Sub) -> String {
        let rows: Vec<String> = s.basis().iter().map(|r| self.format_vector(r)).collect();
        format!("span[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{associated_primes, is_coprimary, localization_kernel};
    use crate::numeric::{GfPolyRing, IntegerRing};
    use num_bigint::BigInt;

    fn zmod(factors: &[i64]) -> PidModule<IntegerRing> {
        PidModule::cyclic_sum(IntegerRing, &factors.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>())
    }

    fn z(n: i64) -> PrimeIdealRef {
        PrimeIdealRef::Integer(BigInt::from(n))
    }

    fn sub(m: &PidModule<IntegerRing>, gens: &[&[i64]]) -> Lattice<BigInt> {
        m.submodule(gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn ass_of_cyclic_groups() {
        let m = zmod(&[12]);
        assert_eq!(m.ass(&m.whole(), &m.zero()), BTreeSet::from([z(2), z(3)]));
        let free = PidModule::new(IntegerRing, 1, Matrix::from_rows(0, vec![vec![]]));
        assert_eq!(free.ass(&free.whole(), &free.zero()), BTreeSet::from([PrimeIdealRef::Zero]));
        for n in [4, 6, 12, 30, 1, 7] {
            let m = zmod(&[n]);
            assert_eq!(m.oracle_ass(&m.whole(), &m.zero()).unwrap(), m.ass(&m.whole(), &m.zero()), "Z/{n}");
        }
    }

    #[test]
    fn localization_kernel_examples() {
        let m = zmod(&[12]);
        let g = localization_kernel(&m, &m.whole(), &z(3)).unwrap();
        assert_eq!(g, sub(&m, &[&[3]]));
        let m4 = zmod(&[4]);
        assert_eq!(localization_kernel(&m4, &m4.whole(), &z(2)).unwrap(), m4.zero());
        assert!(localization_kernel(&m, &m.whole(), &z(5)).is_err());
        // (2) is not minimal in Ass(Z + Z/2)
        let mixed = zmod(&[0, 2]);
        assert!(localization_kernel(&mixed, &mixed.whole(), &z(2)).is_err());
    }

    #[test]
    fn annihilators() {
        let m = zmod(&[12]);
        assert_eq!(m.annihilator(&m.whole(), &m.zero()), Annihilator::Pid(crate::ring::PidElem::Int(BigInt::from(12))));
        let m = zmod(&[2, 3]);
        assert_eq!(m.annihilator(&m.whole(), &m.zero()), Annihilator::Pid(crate::ring::PidElem::Int(BigInt::from(6))));
    }

    #[test]
    fn coprimary_certificates() {
        let m4 = zmod(&[4]);
        let c = is_coprimary(&m4, &m4.whole(), &m4.zero(), &z(2)).unwrap();
        assert!(c.verdict);
        assert_eq!(c.nilpotency[0].exponent, Some(2));
        let m12 = zmod(&[12]);
        let c = is_coprimary(&m12, &m12.whole(), &m12.zero(), &z(2)).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.injectivity[0].element, "3");
        assert!(c.injectivity[0].witness.as_ref().unwrap().starts_with("3*[4]"));
        assert!(is_coprimary(&m12, &m12.zero(), &m12.zero(), &z(2)).is_err());
    }

    #[test]
    fn invariants_of_mixed_group() {
        let m = zmod(&[6, 0]);
        assert_eq!(
            m.invariants(&m.whole(), &m.zero()),
            InvariantRecord::Pid {
                free_rank: 1,
                torsion: vec![crate::ring::PidElem::Int(BigInt::from(6))]
            }
        );
    }

    #[test]
    fn intersections_and_sums_in_z6() {
        let m = zmod(&[6]);
        let a = sub(&m, &[&[2]]);
        let b = sub(&m, &[&[3]]);
        assert_eq!(m.intersection(&a, &b), m.zero());
        assert_eq!(m.sum(&a, &b), m.whole());
        assert_eq!(m.intersection(&a, &m.whole()), a);
    }

    #[test]
    fn polynomial_backend() {
        let ring = GfPolyRing::new(5, "x");
        let f = ring.poly(&[0, 4, 1]); // x(x+4)
        let m = PidModule::cyclic_sum(ring.clone(), &[f]);
        let ass = associated_primes(&m, &m.whole(), &m.zero()).unwrap();
        let expected = BTreeSet::from([
            PrimeIdealRef::Irreducible(ring.poly(&[0, 1])),
            PrimeIdealRef::Irreducible(ring.poly(&[4, 1])),
        ]);
        assert_eq!(ass, expected);
        assert_eq!(m.oracle_ass(&m.whole(), &m.zero()).unwrap(), expected);
    }

    #[test]
    fn submodule_enumeration_of_z12() {
        let m = zmod(&[12]);
        // one subgroup per divisor of 12
        assert_eq!(m.enumerate_submodules(&m.whole(), &m.zero(), 200).unwrap().len(), 6);
        let v = zmod(&[2, 2]);
        assert_eq!(v.enumerate_submodules(&v.whole(), &v.zero(), 200).unwrap().len(), 5);
    }

    #[test]
    fn scrambling_preserves_the_module() {
        let m = PidModule::new(
            IntegerRing,
            2,
            Matrix::from_rows(2, vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]]),
        );
        for seed in 0..10 {
            let (s, relabel) = m.scramble(seed);
            assert_eq!(s.invariants(&s.whole(), &s.zero()), m.invariants(&m.whole(), &m.zero()));
            assert_eq!(m.unscramble_sub(&relabel, &s.zero()), m.zero());
            assert_eq!(m.unscramble_sub(&relabel, &s.whole()), m.whole());
        }
    }
}
