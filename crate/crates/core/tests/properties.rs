mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use coprime::backend::{localization_kernel, oracle_ass, ModuleBackend, MonomialModule, PidModule};
use coprime::cli::parse_problem;
use coprime::equivalence::{filtrations_equivalent, swap_adjacent, Verdict};
use coprime::filtration::{build_coprimary_filtration, verify_filtration, Filtration, OrderChoice};
use coprime::monomial::{Monomial, MonomialIdeal};
use coprime::numeric::{GfPolyRing, IntegerRing, Matrix, UniPoly};
use coprime::omega::PrimeSupport;
use coprime::poset::{build_specialization_poset, linear_extensions, rank_function};
use coprime::ring::{CoefficientField, PrimeIdealRef};

use common::{ass_of, determinant, var_names};

fn finite_zmodule() -> impl Strategy<Value = PidModule<IntegerRing>> {
    (1usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), n))
        .prop_filter_map("order in 1..=2000", |rows| {
            let n = rows.len();
            let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            let det = determinant(&IntegerRing, &rows);
            let size = det.magnitude().clone();
            (size != 0u32.into() && size <= 2000u32.into())
                .then(|| PidModule::new(IntegerRing, n, Matrix::from_rows(n, rows)))
        })
}

/// Any finitely generated ℤ-module on at most three generators, free part allowed.
fn any_zmodule() -> impl Strategy<Value = PidModule<IntegerRing>> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(n, r)| {
        proptest::collection::vec(proptest::collection::vec(-12i64..=12, r), n).prop_map(move |rows| {
            let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            PidModule::new(IntegerRing, n, Matrix::from_rows(r, rows))
        })
    })
}

fn gf_module() -> impl Strategy<Value = PidModule<GfPolyRing>> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=2).prop_flat_map(|(p, k)| {
        proptest::collection::vec(proptest::collection::vec(0..p, 2..=4), k).prop_map(move |cs| {
            let f: Vec<UniPoly> = cs
                .into_iter()
                .map(|mut c| {
                    *c.last_mut().unwrap() = 1;
                    UniPoly::new(p, c)
                })
                .collect();
            PidModule::cyclic_sum(GfPolyRing::new(p, "x".to_string()), &f)
        })
    })
}

fn monomial_module() -> impl Strategy<Value = MonomialModule> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0u32..=3, n), 1..=3), 1..=2)
            .prop_map(move |summands| {
                let ideals = summands
                    .into_iter()
                    .map(|gens| MonomialIdeal::new(n, gens.into_iter().map(Monomial::new).collect()))
                    .collect();
                MonomialModule::new(CoefficientField::Rationals, var_names(n), ideals)
            })
    })
}

fn all_filtrations<B: ModuleBackend>(m: &B) -> Vec<Filtration<B>> {
    if m.is_zero_module() {
        return Vec::new();
    }
    let ass: Vec<PrimeIdealRef> = ass_of(m).into_iter().collect();
    let poset = build_specialization_poset(&m.ring(), &ass).unwrap();
    linear_extensions(&poset, None)
        .unwrap()
        .into_iter()
        .take(24)
        .map(|o| build_coprimary_filtration(m, &OrderChoice::Explicit(o)).unwrap())
        .collect()
}

fn filtrations_verify<B: ModuleBackend>(m: &B) -> Result<(), TestCaseError> {
    for f in all_filtrations(m) {
        let r = verify_filtration(m, f.terms(), f.order()).unwrap();
        prop_assert!(r.all_passed(), "{:?}", r.checks);
    }
    Ok(())
}

fn swap_is_involution<B: ModuleBackend>(m: &B) -> Result<(), TestCaseError> {
    for f in all_filtrations(m) {
        for i in 2..=f.len() {
            if let Ok(s) = swap_adjacent(m, &f, i) {
                let back = swap_adjacent(m, &s.filtration, i).unwrap();
                prop_assert_eq!(back.filtration.terms(), f.terms());
                prop_assert_eq!(back.filtration.order(), f.order());
            }
        }
    }
    Ok(())
}

fn equivalence_is_an_equivalence<B: ModuleBackend>(m: &B) -> Result<(), TestCaseError> {
    let fs = all_filtrations(m);
    let rel = |a: &Filtration<B>, b: &Filtration<B>| filtrations_equivalent(a, b).unwrap().verdict;
    for a in &fs {
        prop_assert_ne!(rel(a, a), Verdict::NotEquivalent);
        for b in &fs {
            prop_assert_eq!(rel(a, b), rel(b, a));
            for c in &fs {
                if rel(a, b).holds() && rel(b, c).holds() {
                    prop_assert!(rel(a, c).holds());
                }
            }
        }
    }
    Ok(())
}

fn kernel_postcondition<B: ModuleBackend>(m: &B) -> Result<(), TestCaseError> {
    if m.is_zero_module() {
        return Ok(());
    }
    let ass = ass_of(m);
    let primes: Vec<PrimeIdealRef> = ass.iter().cloned().collect();
    let ranks = rank_function(&build_specialization_poset(&m.ring(), &primes).unwrap());
    for (p, r) in ranks {
        if r != 0 {
            continue;
        }
        let g = localization_kernel(m, &m.whole(), &p).unwrap();
        let mut rest = ass.clone();
        rest.remove(&p);
        prop_assert_eq!(m.ass(&g, &m.zero()), rest);
        prop_assert_eq!(m.ass(&m.whole(), &g), BTreeSet::from([p.clone()]));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zmodule_ass_matches_oracle(m in finite_zmodule()) {
        let oracle = oracle_ass(&m, &m.whole(), &m.zero()).unwrap();
        prop_assert_eq!(ass_of(&m), oracle);
    }

    #[test]
    fn gf_ass_matches_oracle(m in gf_module()) {
        if let Ok(oracle) = oracle_ass(&m, &m.whole(), &m.zero()) {
            prop_assert_eq!(ass_of(&m), oracle);
        }
    }

    #[test]
    fn ass_empty_iff_zero(m in any_zmodule()) {
        prop_assert_eq!(ass_of(&m).is_empty(), m.is_zero_module());
    }

    #[test]
    fn zmodule_filtrations_verify(m in any_zmodule()) {
        filtrations_verify(&m)?;
    }

    #[test]
    fn gf_filtrations_verify(m in gf_module()) {
        filtrations_verify(&m)?;
    }

    #[test]
    fn monomial_filtrations_verify(m in monomial_module()) {
        filtrations_verify(&m)?;
    }

    #[test]
    fn kernel_splits_off_the_prime(m in any_zmodule(), n in monomial_module()) {
        kernel_postcondition(&m)?;
        kernel_postcondition(&n)?;
    }

    #[test]
    fn swaps_are_involutions(m in any_zmodule(), n in monomial_module()) {
        swap_is_involution(&m)?;
        swap_is_involution(&n)?;
    }

    #[test]
    fn equivalence_relation(m in any_zmodule(), g in gf_module(), n in monomial_module()) {
        equivalence_is_an_equivalence(&m)?;
        equivalence_is_an_equivalence(&g)?;
        equivalence_is_an_equivalence(&n)?;
    }

    #[test]
    fn parser_round_trip(
        entries in proptest::collection::vec(proptest::collection::vec(-30i64..=30, 2), 2),
        cyclic in 1i64..=500,
        seed in 0u64..100,
    ) {
        let rows: Vec<String> = entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let text = format!(
            "ring Z\nmodule A = coker [{}]\nmodule B = cyclic ({cyclic})\nmodule M = dsum (A;B;(7))\nparam seed = {seed}\n",
            rows.join(",")
        );
        let p = parse_problem(&text).unwrap();
        let again = parse_problem(&p.to_text()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(again.to_text(), p.to_text());
    }

    #[test]
    fn monomial_parser_round_trip(n in monomial_module()) {
        let vars = n.vars().join(",");
        let parts: Vec<String> = n
            .summands()
            .iter()
            .map(|i| {
                let gens: Vec<String> = i.gens().iter().map(|g| g.format_with(n.vars())).collect();
                format!("({})", if gens.is_empty() { "0".to_string() } else { gens.join(",") })
            })
            .collect();
        let text = format!("ring GF(3)[{vars}] monomial\nmodule M = dsum ({})\n", parts.join(";"));
        let p = parse_problem(&text).unwrap();
        let again = parse_problem(&p.to_text()).unwrap();
        prop_assert_eq!(&again, &p);
    }

    #[test]
    fn prime_support_algebra(
        a in proptest::collection::btree_set(2u64..60, 0..6),
        b in proptest::collection::btree_set(2u64..60, 0..6),
        from in 2u64..40,
    ) {
        let primes = |s: &BTreeSet<u64>| s.iter().copied().filter(|&p| coprime::numeric::is_prime_u64(p)).collect::<BTreeSet<u64>>();
        let x = PrimeSupport::finite(primes(&a));
        let y = PrimeSupport::from_bound(from, BTreeSet::new()).difference(&PrimeSupport::finite(primes(&b)));
        let u = x.union(&y);
        let d = y.difference(&x);
        for p in 2..200 {
            prop_assert_eq!(u.contains(p), x.contains(p) || y.contains(p));
            prop_assert_eq!(d.contains(p), y.contains(p) && !x.contains(p));
        }
        prop_assert!(x.is_subset(&u) && y.is_subset(&u));
        prop_assert!(u.difference(&x).same_set(&d));
    }
}
