#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rand::Rng;

use coprime::backend::{ModuleBackend, ModulePresentation, MonomialModule, PidModule};
use coprime::cli::parse_problem;
use coprime::cli::problem::Target;
use coprime::monomial::{Monomial, MonomialIdeal};
use coprime::numeric::{EuclideanRing, GfPolyRing, IntegerRing, Matrix, UniPoly};
use coprime::ring::{CoefficientField, PrimeIdealRef};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every shipped fixture, sorted by file name.
pub fn fixture_files() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cpf"))
        .collect();
    out.sort();
    out
}

pub fn is_bad_fixture(p: &Path) -> bool {
    p.file_name().unwrap().to_string_lossy().starts_with("bad_")
}

pub fn z(n: i64) -> PrimeIdealRef {
    PrimeIdealRef::Integer(BigInt::from(n))
}

pub fn v(s: &[usize]) -> PrimeIdealRef {
    PrimeIdealRef::Variables(s.to_vec())
}

pub fn zmod(ns: &[i64]) -> PidModule<IntegerRing> {
    let f: Vec<BigInt> = ns.iter().map(|&n| BigInt::from(n)).collect();
    PidModule::cyclic_sum(IntegerRing, &f)
}

/// Coefficients listed from the constant term up.
pub fn poly(p: u64, coeffs: &[u64]) -> UniPoly {
    UniPoly::new(p, coeffs.to_vec())
}

pub fn gfmod(p: u64, fs: &[&[u64]]) -> PidModule<GfPolyRing> {
    let f: Vec<UniPoly> = fs.iter().map(|c| poly(p, c)).collect();
    PidModule::cyclic_sum(GfPolyRing::new(p, "x".to_string()), &f)
}

pub fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

pub fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec())).collect())
}

pub fn mono(n: usize, summands: &[&[&[u32]]]) -> MonomialModule {
    MonomialModule::new(
        CoefficientField::Rationals,
        var_names(n),
        summands.iter().map(|g| ideal(n, g)).collect(),
    )
}

pub struct CorpusEntry {
    pub name: String,
    pub module: ModulePresentation,
}

fn entry(name: &str, module: ModulePresentation) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        module,
    }
}

/// Finitely generated fixture modules plus a hand-picked list covering
/// torsion, mixed, polynomial and monomial cases.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for path in fixture_files().iter().filter(|p| !is_bad_fixture(p)) {
        let text = fs::read_to_string(path).unwrap();
        let problem = parse_problem(&text).unwrap();
        for (name, _) in &problem.modules {
            if let Some((_, Target::Finite(m))) = problem.resolve(Some(name)) {
                let stem = path.file_stem().unwrap().to_string_lossy();
                out.push(entry(&format!("{stem}:{name}"), m));
            }
        }
    }
    use ModulePresentation::{Integer, Monomial as Mono, Polynomial};
    out.push(entry("Z/4", Integer(zmod(&[4]))));
    out.push(entry("Z/8+Z/2", Integer(zmod(&[8, 2]))));
    out.push(entry("Z/2+Z/2+Z/3", Integer(zmod(&[2, 2, 3]))));
    out.push(entry("Z/60", Integer(zmod(&[60]))));
    out.push(entry("Z/9+Z/27+Z/5", Integer(zmod(&[9, 27, 5]))));
    out.push(entry("Z/2310", Integer(zmod(&[2310]))));
    out.push(entry("Z", Integer(zmod(&[0]))));
    out.push(entry("Z+Z/6", Integer(zmod(&[0, 6]))));
    out.push(entry("Z+Z+Z/4", Integer(zmod(&[0, 0, 4]))));
    out.push(entry(
        "Z coker [[6,4],[2,8]]",
        Integer(PidModule::new(
            IntegerRing,
            2,
            Matrix::from_rows(2, vec![vec![BigInt::from(6), BigInt::from(4)], vec![BigInt::from(2), BigInt::from(8)]]),
        )),
    ));
    out.push(entry("GF(2)[x]/(x^2(x+1))", Polynomial(gfmod(2, &[&[0, 0, 1, 1]]))));
    out.push(entry(
        "GF(3)[x]/(x) + GF(3)[x]/((x+1)^2)",
        Polynomial(gfmod(3, &[&[0, 1], &[1, 2, 1]])),
    ));
    out.push(entry("GF(5)[x]/(x^2+2) + GF(5)[x]/(x)", Polynomial(gfmod(5, &[&[2, 0, 1], &[0, 1]]))));
    out.push(entry("GF(2)[x] + GF(2)[x]/(x)", Polynomial(gfmod(2, &[&[0], &[0, 1]]))));
    out.push(entry("A/(x^2,y^2)", Mono(mono(2, &[&[&[2, 0], &[0, 2]]]))));
    out.push(entry("A/(xy,xz,yz)", Mono(mono(3, &[&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]]))));
    out.push(entry("A/(x^2y,xy^2)", Mono(mono(2, &[&[&[2, 1], &[1, 2]]]))));
    out.push(entry("A/(x) + A/(y)", Mono(mono(2, &[&[&[1, 0]], &[&[0, 1]]]))));
    out.push(entry("A/(x^2,xy) + A/(x,y^2)", Mono(mono(2, &[&[&[2, 0], &[1, 1]], &[&[1, 0], &[0, 2]]]))));
    out.push(entry("A/(xyz)", Mono(mono(3, &[&[&[1, 1, 1]]]))));
    out
}

pub fn ass_of<B: ModuleBackend>(m: &B) -> BTreeSet<PrimeIdealRef> {
    m.ass(&m.whole(), &m.zero())
}

/// Determinant by cofactor expansion; used only for small test matrices.
pub fn determinant<R: EuclideanRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut total = ring.zero();
    for j in 0..n {
        let minor: Vec<Vec<R::Elem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = ring.mul(&m[0][j], &determinant(ring, &minor));
        total = if j % 2 == 0 { ring.add(&total, &term) } else { ring.sub(&total, &term) };
    }
    total
}

/// Random square integer presentation with `1 ≤ |M| ≤ bound`.
pub fn random_finite_zmodule<G: Rng>(rng: &mut G, bound: u64) -> PidModule<IntegerRing> {
    loop {
        let n = rng.gen_range(1..=3);
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-12i64..=12))).collect())
            .collect();
        let det = determinant(&IntegerRing, &rows);
        let size = det.magnitude().clone();
        if size != 0u32.into() && size <= bound.into() {
            return PidModule::new(IntegerRing, n, Matrix::from_rows(n, rows));
        }
    }
}

/// Standard monomials of `A/I` inside the box `[0, cap]^n`.
pub fn standard_monomial_count(i: &MonomialIdeal, cap: u32) -> usize {
    let n = i.nvars();
    let mut count = 0;
    let mut e = vec![0u32; n];
    loop {
        if !i.contains_monomial(&Monomial::new(e.clone())) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            e[k] += 1;
            if e[k] <= cap {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Artinian monomial module over at most three variables with generator
/// exponents at most 3 and at most `max_basis` standard monomials.
pub fn random_artinian_monomial<G: Rng>(rng: &mut G, max_basis: usize) -> MonomialModule {
    loop {
        let n = rng.gen_range(1..=3);
        let summands = rng.gen_range(1..=2);
        let ideals: Vec<MonomialIdeal> = (0..summands)
            .map(|_| {
                let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::var_pow(n, i, rng.gen_range(1..=3))).collect();
                for _ in 0..rng.gen_range(0..=3) {
                    gens.push(Monomial::new((0..n).map(|_| rng.gen_range(0..=3)).collect()));
                }
                MonomialIdeal::new(n, gens)
            })
            .collect();
        let basis: usize = ideals.iter().map(|i| standard_monomial_count(i, 3)).sum();
        if basis >= 1 && basis <= max_basis {
            return MonomialModule::new(CoefficientField::Rationals, var_names(n), ideals);
        }
    }
}
