//! Property tests against brute-force oracles and exact re-verification.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use posmon::classify::{Property, Tri, Witness};
use posmon::cyclic::{self, OneIsAtom, SigmaResult};
use posmon::exact::{AlgebraicReal, IntPolynomial, MinimalPair, Rational};
use posmon::factorization::{knapsack, Factorization};
use posmon::families::interval::IntervalMonoid;
use posmon::families::unit_fraction::{self, UnitFractionScheme};
use posmon::fg::{BasisContext, FgMonoid, HfmCertificate, UfmCertificate};
use posmon::{Budget, Exec};
use proptest::prelude::*;

use common::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::from_big(q(n, d)).unwrap()
}

/// Every algebraic number greater than zero with the given minimal
/// polynomial, one per isolated positive root; empty if reducible.
fn positive_roots(coeffs: &[i64]) -> Vec<AlgebraicReal> {
    let m = IntPolynomial::from_i64(coeffs);
    if m.degree().unwrap_or(0) < 2 || m.leading().is_some_and(|c| c.is_negative()) {
        return Vec::new();
    }
    let Ok(intervals) = m.isolate_positive_roots() else { return Vec::new() };
    intervals
        .into_iter()
        .filter_map(|(lo, hi)| {
            let (lo, hi) = (Rational::from_big(lo).ok()?, Rational::from_big(hi).ok()?);
            AlgebraicReal::from_minpoly(m.clone(), lo, hi).ok()
        })
        .collect()
}

fn rational_fg(gens: &[BigRational]) -> FgMonoid {
    FgMonoid::new(BasisContext::rational(), gens.iter().map(|g| vec![g.clone()]).collect()).unwrap()
}

fn pi_basis() -> BasisContext {
    BasisContext::new(vec![AlgebraicReal::rational(Rational::one()).unwrap(), AlgebraicReal::pi()]).unwrap()
}

fn values(report: &posmon::ClassificationReport) -> Vec<Tri> {
    Property::ALL.iter().map(|&p| report.get(p)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fg_factorizations_match_enumeration(gens in prop::collection::vec(1u64..=15, 1..=4)) {
        prop_assert_eq!(suites::fg_instance(&gens), Ok(()));
    }

    #[test]
    fn fg_scaling_preserves_structure(gens in prop::collection::vec(1u64..=12, 1..=4), num in 1i64..=7, den in 1i64..=7) {
        let scale = q(num, den);
        let plain = rational_fg(&gens.iter().map(|&g| int(g)).collect::<Vec<_>>());
        let scaled = rational_fg(&gens.iter().map(|&g| int(g) * &scale).collect::<Vec<_>>());
        prop_assert_eq!(plain.atom_indices(), scaled.atom_indices());
        for b in 0..=24u64 {
            let z = plain.factorizations(&[int(b)], Exec::Sequential).unwrap();
            let zs = scaled.factorizations(&[int(b) * &scale], Exec::Sequential).unwrap();
            prop_assert_eq!(z.factorizations, zs.factorizations);
        }
        prop_assert_eq!(values(&plain.classify().unwrap()), values(&scaled.classify().unwrap()));
    }

    #[test]
    fn fg_atoms_are_minimal(gens in prop::collection::vec((0i64..=6, 0i64..=6, 1i64..=3), 1..=5)) {
        prop_assume!(gens.iter().any(|&(a, b, _)| a + b > 0));
        let gens: Vec<Vec<BigRational>> =
            gens.into_iter().filter(|&(a, b, _)| a + b > 0).map(|(a, b, d)| vec![q(a, d), q(b, d)]).collect();
        let m = FgMonoid::new(pi_basis(), gens).unwrap();
        let atoms = m.atoms();
        for (i, atom) in atoms.iter().enumerate() {
            let rest: Vec<Vec<BigRational>> = atoms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a.clone()).collect();
            if rest.is_empty() {
                continue;
            }
            let without = FgMonoid::new(pi_basis(), rest).unwrap();
            prop_assert!(without.member(atom, Exec::Sequential).unwrap().is_none());
        }
        // every generator is generated by the atoms
        for g in m.generators() {
            let f = m.member(g, Exec::Sequential).unwrap();
            prop_assert!(f.is_some_and(|f| &m.evaluate(&f) == g));
        }
    }

    #[test]
    fn fg_certificates_verify(gens in prop::collection::vec((0i64..=5, 0i64..=5, 1i64..=4), 1..=5)) {
        prop_assume!(gens.iter().any(|&(a, b, _)| a + b > 0));
        let gens: Vec<Vec<BigRational>> =
            gens.into_iter().filter(|&(a, b, _)| a + b > 0).map(|(a, b, d)| vec![q(a, d), q(b, d)]).collect();
        let m = FgMonoid::new(pi_basis(), gens).unwrap();
        let atoms = m.atoms();
        let check_kernel = |z: &[BigInt]| -> Result<(), TestCaseError> {
            prop_assert_eq!(z.len(), atoms.len());
            for coord in 0..2 {
                let s: BigRational = atoms.iter().zip(z).map(|(a, k)| &a[coord] * BigRational::from_integer(k.clone())).sum();
                prop_assert!(s.is_zero());
            }
            Ok(())
        };
        let ufm = m.is_ufm();
        prop_assert!(m.verify_ufm(&ufm));
        match &ufm {
            UfmCertificate::Yes { rank, atoms: n } => prop_assert_eq!(rank, n),
            UfmCertificate::No { kernel } => check_kernel(kernel)?,
        }
        let hfm = m.is_hfm();
        prop_assert!(m.verify_hfm(&hfm));
        match &hfm {
            HfmCertificate::Yes { functional } => {
                for a in &atoms {
                    let w: BigRational = a.iter().zip(functional).map(|(x, y)| x * y).sum();
                    prop_assert!(w.is_one());
                }
            }
            HfmCertificate::No { kernel } => {
                check_kernel(kernel)?;
                let sum: BigInt = kernel.iter().sum();
                prop_assert!(!sum.is_zero());
                let (left, right) = posmon::fg::split_relation(kernel);
                prop_assert_eq!(m.evaluate(&left), m.evaluate(&right));
                prop_assert_ne!(left.length, right.length);
            }
        }
        // UFM implies HFM, and unique factorization on sampled elements
        if matches!(ufm, UfmCertificate::Yes { .. }) {
            let hfm_yes = matches!(hfm, HfmCertificate::Yes { .. });
            prop_assert!(hfm_yes);
            for c in 0..(3u64.pow(atoms.len() as u32)).min(60) {
                let mult: Vec<u64> = (0..atoms.len()).map(|i| c / 3u64.pow(i as u32) % 3).collect();
                let x = m.evaluate(&Factorization::new(mult.clone()));
                let z = m.factorizations(&x, Exec::Sequential).unwrap();
                prop_assert_eq!(z.len(), 1);
                prop_assert_eq!(&z.factorizations[0].multiplicities, &mult);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree(weights in prop::collection::vec(1u64..=9, 1..=4), target in 0u64..=40) {
        let w: Vec<BigInt> = weights.iter().map(|&x| BigInt::from(x)).collect();
        let t = BigInt::from(target);
        prop_assert_eq!(knapsack(&w, &t, Exec::Sequential), knapsack(&w, &t, Exec::Parallel));
        let gens: Vec<BigRational> = weights.iter().map(|&x| int(x)).collect();
        let m = rational_fg(&gens);
        let x = [int(target)];
        prop_assert_eq!(m.factorizations(&x, Exec::Sequential).unwrap(), m.factorizations(&x, Exec::Parallel).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rationals_are_scale_invariant(a in -500i64..=500, b in 1i64..=500, k in 1i64..=50) {
        prop_assert_eq!(q(a * k, b * k), q(a, b));
        if a >= 0 {
            prop_assert_eq!(Rational::new(a * k, b * k).unwrap(), Rational::new(a, b).unwrap());
        }
    }

    #[test]
    fn descartes_bound_and_parity(coeffs in prop::collection::vec(-9i64..=9, 2..=8)) {
        let p = IntPolynomial::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let roots = p.positive_root_count_with_multiplicity().unwrap();
        let v = p.sign_variations();
        prop_assert!(roots <= v);
        prop_assert_eq!((v - roots) % 2, 0);
        prop_assert!(p.positive_root_count().unwrap() <= roots);
    }

    #[test]
    fn sturm_counts_distinct_positive_roots(roots in prop::collection::vec((-6i64..=6, 1i64..=4), 1..=5)) {
        let mut p = IntPolynomial::from_i64(&[1]);
        for &(n, d) in &roots {
            p = p.mul(&IntPolynomial::from_i64(&[-n, d]));
        }
        let distinct: BTreeSet<BigRational> = roots.iter().map(|&(n, d)| q(n, d)).filter(|r| r.is_positive()).collect();
        prop_assert_eq!(p.positive_root_count().unwrap(), distinct.len());
        let with_mult = roots.iter().filter(|&&(n, _)| n > 0).count();
        prop_assert_eq!(p.positive_root_count_with_multiplicity().unwrap(), with_mult);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimal_pair_and_enclosures(coeffs in prop::collection::vec(-9i64..=9, 3..=5), lead in 1i64..=3) {
        let mut c = coeffs.clone();
        c.push(lead);
        for a in positive_roots(&c) {
            let m = a.minimal_polynomial().unwrap();
            let pair = MinimalPair::of(&a).unwrap();
            prop_assert!(pair.verify(&m));
            prop_assert_eq!(pair.plus_part.sub(&pair.minus_part), m.clone());
            for level in [0u32, 3, 10, 30] {
                let (lo, hi) = a.enclosure(level);
                prop_assert!(lo < hi);
                prop_assert_eq!(a.compare(&lo).unwrap(), std::cmp::Ordering::Greater);
                prop_assert_eq!(a.compare(&hi).unwrap(), std::cmp::Ordering::Less);
                prop_assert_eq!(m.roots_in_open_interval(&lo, &hi).unwrap(), 1);
            }
        }
    }

    #[test]
    fn cyclic_witnesses_verify(coeffs in prop::collection::vec(-6i64..=6, 2..=4), lead in 1i64..=2) {
        let mut c = coeffs.clone();
        c.push(lead);
        let budget = Budget { witness_degree: 3, witness_height: 8, sigma_max: 4, node_limit: 2_000, exec: Exec::Sequential };
        for a in positive_roots(&c) {
            let atom = cyclic::one_is_atom(&a, &budget);
            let atomic = cyclic::is_atomic(&a, &budget);
            match &atom {
                OneIsAtom::Atom { .. } => prop_assert_eq!(atomic.value, Tri::Yes),
                OneIsAtom::NotAtom(w) => {
                    prop_assert!(w.verify(&a));
                    prop_assert_eq!(atomic.value, Tri::No);
                }
                OneIsAtom::Unknown { .. } => prop_assert_eq!(atomic.value, Tri::Unknown),
            }
            let s = cyclic::sigma(&a, 4, &budget).unwrap();
            prop_assert!(s.verify(&a));
            let report = cyclic::classify(&a, &budget).unwrap();
            for p in Property::ALL {
                let v = report.verdict(p);
                prop_assert!(!v.provenance.detail.is_empty());
            }
            if let Some(posmon::classify::Witness::AntimatterIdentity { coefficients }) =
                &report.verdict(Property::Antimatter).provenance.witness
            {
                let w = cyclic::AntimatterWitness { coefficients: coefficients.clone() };
                prop_assert!(w.verify(&a));
            }
        }
    }

    #[test]
    fn sigma_is_at_least_the_degree(coeffs in prop::collection::vec(-7i64..=7, 3..=4)) {
        let mut c = coeffs.clone();
        c.push(1);
        let budget = Budget { exec: Exec::Sequential, ..Budget::default() };
        for a in positive_roots(&c) {
            if a.compare(&BigRational::one()).unwrap() != std::cmp::Ordering::Greater {
                continue;
            }
            let d = a.degree().unwrap();
            prop_assert!(d == 3 || d == 4);
            prop_assert_eq!(a.irreducibility(), posmon::exact::Irreducibility::Verified);
            let s = cyclic::sigma(&a, d - 1, &budget).unwrap();
            prop_assert_eq!(s, SigmaResult::AtLeast { checked: d - 1 });
        }
    }

    #[test]
    fn unit_fraction_chains_descend(b in prop::sample::select(vec![1i64, 2, 3, 5, 6, 7, 10, 14, 15, 21, 30, 35, 42, 70, 105, 210]),
                                    a in 0i64..=840, steps in prop::collection::vec((0usize..4, 1u64..=3), 1..=12)) {
        let scheme = UnitFractionScheme::Primes;
        let mut x = rat(a, b);
        prop_assume!(unit_fraction::canonical(&scheme, &x).is_ok());
        let mut measure = unit_fraction::monotones(&scheme, &x).unwrap();
        for (i, k) in steps {
            // subtract k copies of the atom 1/p when the difference stays in the monoid
            let p = [2i64, 3, 5, 7][i];
            let e = rat(k as i64, p);
            if !unit_fraction::divides(&scheme, &e, &x).unwrap() {
                continue;
            }
            x = Rational::from_big(x.as_big() - e.as_big()).unwrap();
            let next = unit_fraction::monotones(&scheme, &x).unwrap();
            prop_assert!(next < measure, "{:?} does not drop below {:?}", next, measure);
            measure = next;
        }
    }

    #[test]
    fn interval_length_sets_are_sound(sn in 1i64..=6, sd in 1i64..=4, bn in 0i64..=120, bd in 1i64..=6) {
        let s = rat(sn, sd);
        let m = IntervalMonoid::ms(s.clone()).unwrap();
        let b = rat(bn, bd);
        prop_assume!(m.contains(&b));
        let l = m.length_set(&b).unwrap();
        prop_assert!(l.complete);
        let top = (b.as_big() / s.as_big()).floor().to_integer();
        let mut n = 0u64;
        while BigInt::from(n) <= top {
            let ns = s.as_big() * int(n);
            let feasible = &ns <= b.as_big() && b.as_big() < &(&ns + &ns);
            let listed = l.lengths.contains(&n);
            prop_assert_eq!(listed, feasible || (n == 0 && b.is_zero()));
            if listed && n > 0 {
                let w = m.length_witness(&b, n).unwrap();
                prop_assert_eq!(w.len() as u64, n);
                prop_assert!(w.iter().all(|x| m.is_atom(x)));
                let sum: BigRational = w.iter().map(|x| x.as_big().clone()).sum();
                prop_assert_eq!(&sum, b.as_big());
            }
            n += 1;
        }
        let infinite = m.has_infinite_factorizations(&b).unwrap();
        prop_assert_eq!(infinite, b.as_big() > &(s.as_big() * int(2)));
    }

    #[test]
    fn interval_witnesses_verify(n in 1i64..=40, d in 1i64..=8, sr in any::<bool>()) {
        let p = rat(n, d);
        prop_assume!(!sr || p.as_big() > &BigRational::one());
        let m = if sr { IntervalMonoid::sr(p).unwrap() } else { IntervalMonoid::ms(p).unwrap() };
        let report = m.classify().unwrap();
        for prop in [Property::Ffm, Property::Hfm] {
            let v = &report.verdicts[&prop];
            prop_assert_eq!(v.value, Tri::No);
            let w = v.provenance.witness.clone();
            let Some(Witness::RealFactorizations { element, factorizations }) = w else {
                return Err(TestCaseError::fail(format!("{prop:?} lacks a factorization witness")));
            };
            prop_assert!(factorizations.len() >= 2);
            let mut seen = BTreeSet::new();
            for f in &factorizations {
                prop_assert!(f.iter().all(|x| m.is_atom(x)));
                let sum: BigRational = f.iter().map(|x| x.as_big().clone()).sum();
                prop_assert_eq!(&sum, element.as_big());
                let mut key: Vec<BigRational> = f.iter().map(|x| x.as_big().clone()).collect();
                key.sort();
                prop_assert!(seen.insert(key));
            }
            if prop == Property::Hfm {
                let lengths: BTreeSet<usize> = factorizations.iter().map(Vec::len).collect();
                prop_assert!(lengths.len() >= 2);
            }
        }
    }
}

#[test]
fn sigma_agrees_with_knapsack() {
    assert_eq!(suites::sigma_knapsack(), Ok(()));
}

#[test]
fn closure_is_idempotent_monotone_and_sound() {
    assert_eq!(suites::closure(7, 1000), Ok(()));
}

#[test]
fn descartes_on_seeded_polynomials() {
    assert_eq!(suites::descartes(11, 1000), Ok(()));
}
