//! Brute-force oracles shared by the integration tests. None of these use
//! the library's search code.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use posmon::classify::{Property, Tri};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `x` is a nonnegative combination of `gens` (dynamic programming).
pub fn representable(gens: &[u64], x: u64) -> bool {
    let mut reach = vec![false; x as usize + 1];
    reach[0] = true;
    for v in 1..=x as usize {
        reach[v] = gens.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
    }
    reach[x as usize]
}

/// Indices of the atoms of `<gens>`: distinct generators not representable
/// by the other distinct generators.
pub fn brute_atoms(gens: &[u64]) -> Vec<usize> {
    let mut distinct: Vec<usize> = Vec::new();
    for i in 0..gens.len() {
        if !distinct.iter().any(|&j| gens[j] == gens[i]) {
            distinct.push(i);
        }
    }
    distinct
        .iter()
        .copied()
        .filter(|&i| {
            let others: Vec<u64> = distinct.iter().filter(|&&j| j != i).map(|&j| gens[j]).collect();
            !representable(&others, gens[i])
        })
        .collect()
}

/// Every multiplicity vector over `atoms` summing to `target`, by full box
/// enumeration.
pub fn brute_factorizations(atoms: &[u64], target: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let mut c = vec![0u64; atoms.len()];
    loop {
        let s: u64 = c.iter().zip(atoms).map(|(a, b)| a * b).sum();
        if s == target {
            out.insert(c.clone());
        }
        // odometer over c_i in 0..=target/atom_i
        let mut i = 0;
        loop {
            if i == c.len() {
                return out;
            }
            if c[i] < target / atoms[i] {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Least `n <= n_max` such that `(a/b)^n` is a nonnegative integer
/// combination of lower powers, via `a^n = sum c_j a^j b^(n-j)`.
pub fn brute_sigma(a: u64, b: u64, n_max: u32) -> Option<u32> {
    (1..=n_max).find(|&n| {
        let target = (a as u128).pow(n);
        let weights: Vec<u128> = (0..n).map(|j| (a as u128).pow(j) * (b as u128).pow(n - j)).collect();
        combination_exists(&weights, target)
    })
}

fn combination_exists(weights: &[u128], target: u128) -> bool {
    match weights {
        [] => target == 0,
        [w, rest @ ..] => (0..=target / w).any(|c| combination_exists(rest, target - c * w)),
    }
}

/// Every canonical decomposition `q = N + sum c_i/d_i` with `c_i` in the box
/// `[0, d_i)`, `N` any integer, over the moduli `2, 3, 5, 7`.
pub fn brute_decompositions(num: i64, den: i64) -> Vec<(i64, [u64; 4])> {
    let d = [2i64, 3, 5, 7];
    let mut out = Vec::new();
    for c0 in 0..2 {
        for c1 in 0..3 {
            for c2 in 0..5 {
                for c3 in 0..7 {
                    // q - sum c_i/d_i = N, all over 210
                    let frac = c0 * 105 + c1 * 70 + c2 * 42 + c3 * 30;
                    let q210 = num * (210 / den);
                    let rest = q210 - frac;
                    if rest % 210 == 0 {
                        out.push((rest / 210, [c0 as u64, c1 as u64, c2 as u64, c3 as u64]));
                    }
                }
            }
        }
    }
    let _ = d;
    out
}

pub fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

/// Full assignments of the seven properties that satisfy every implication.
pub fn consistent_assignments() -> Vec<Vec<(Property, Tri)>> {
    let props = Property::ALL;
    let mut out = Vec::new();
    for mask in 0u32..128 {
        let v = |p: Property| {
            let i = props.iter().position(|&q| q == p).unwrap();
            mask >> i & 1 == 1
        };
        use Property::*;
        let ok = (!v(Ufm) || v(Hfm))
            && (!v(Ufm) || v(Ffm))
            && (!v(Hfm) || v(Bfm))
            && (!v(Ffm) || v(Bfm))
            && (!v(Bfm) || v(Accp))
            && (!v(Accp) || v(Atomic))
            && (!v(Antimatter) || !v(Atomic));
        if ok {
            out.push(props.iter().map(|&p| (p, Tri::from_bool(v(p)))).collect());
        }
    }
    out
}

pub mod suites {
    //! Deterministic oracle comparisons, each returning the first mismatch.

    use std::collections::BTreeSet;

    use num_bigint::BigInt;
    use num_rational::BigRational;
    use posmon::classify::{propagate, ClassificationReport, Property, Provenance, Rule, Tri};
    use posmon::cyclic::{self, SigmaResult};
    use posmon::exact::{AlgebraicReal, IntPolynomial, Rational};
    use posmon::fg::{BasisContext, FgMonoid};
    use posmon::{Budget, Exec};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn int(n: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Factorization sets of random integer-generated monoids against box
    /// enumeration, for every target up to 30.
    pub fn fg_factorizations(seed: u64, instances: usize) -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..instances {
            let k = rng.gen_range(1..=4);
            let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=15)).collect();
            fg_instance(&gens)?;
        }
        Ok(())
    }

    pub fn fg_instance(gens: &[u64]) -> Result<(), String> {
        let m = FgMonoid::new(BasisContext::rational(), gens.iter().map(|&g| vec![int(g)]).collect())
            .map_err(|e| e.to_string())?;
        let atoms = brute_atoms(gens);
        if m.atom_indices() != atoms.as_slice() {
            return Err(format!("{gens:?}: atoms {:?}, oracle {atoms:?}", m.atom_indices()));
        }
        let values: Vec<u64> = atoms.iter().map(|&i| gens[i]).collect();
        for target in 0..=30u64 {
            let got = m.factorizations(&[int(target)], Exec::Sequential).map_err(|e| e.to_string())?;
            let got: BTreeSet<Vec<u64>> = got.factorizations.iter().map(|f| f.multiplicities.clone()).collect();
            let want = brute_factorizations(&values, target);
            if got != want {
                return Err(format!("{gens:?} at {target}: {got:?} vs oracle {want:?}"));
            }
        }
        Ok(())
    }

    /// The least exponent found by the sigma search against the
    /// cleared-denominator knapsack, for n up to 5.
    pub fn sigma_knapsack() -> Result<(), String> {
        let budget = Budget::default();
        for (a, b) in [(5u64, 2u64), (3, 1), (7, 2), (4, 1)] {
            let alpha = AlgebraicReal::rational(Rational::new(a, b).unwrap()).unwrap();
            let got = cyclic::sigma(&alpha, 5, &budget).map_err(|e| e.to_string())?;
            if !got.verify(&alpha) {
                return Err(format!("{a}/{b}: witness fails to verify"));
            }
            let got_n = match got {
                SigmaResult::Finite { sigma, .. } => Some(sigma as u32),
                SigmaResult::AtLeast { .. } | SigmaResult::Infinite { .. } => None,
            };
            let want = brute_sigma(a, b, 5);
            if got_n != want {
                return Err(format!("{a}/{b}: sigma {got_n:?}, oracle {want:?}"));
            }
        }
        Ok(())
    }

    /// Positive roots with multiplicity never exceed the sign variations and
    /// share their parity; on polynomials built from known roots the count
    /// is exact.
    pub fn descartes(seed: u64, cases: usize) -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..cases {
            let p = if i % 2 == 0 {
                let deg = rng.gen_range(1..=7);
                let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6..=6)).collect();
                if c[deg] == 0 {
                    c[deg] = 1;
                }
                IntPolynomial::from_i64(&c)
            } else {
                let (p, positive) = from_roots(&mut rng);
                let got = p.positive_root_count_with_multiplicity().map_err(|e| e.to_string())?;
                if got != positive {
                    return Err(format!("{p}: {got} positive roots, built with {positive}"));
                }
                p
            };
            let roots = p.positive_root_count_with_multiplicity().map_err(|e| e.to_string())?;
            let v = p.sign_variations();
            if roots > v || (v - roots) % 2 != 0 {
                return Err(format!("{p}: {roots} positive roots, {v} sign variations"));
            }
        }
        Ok(())
    }

    /// Product of linear factors with small integer roots and a factor
    /// `x^2 + c` with no real roots; returns the positive root count.
    fn from_roots(rng: &mut ChaCha8Rng) -> (IntPolynomial, usize) {
        let mut p = IntPolynomial::from_i64(&[rng.gen_range(1..=5), 0, 1]);
        let mut positive = 0;
        for _ in 0..rng.gen_range(1..=4) {
            let r: i64 = rng.gen_range(-4..=4);
            if r > 0 {
                positive += 1;
            }
            p = p.mul(&IntPolynomial::from_i64(&[-r, 1]));
        }
        (p, positive)
    }

    fn seed_rule() -> Provenance {
        Provenance::new(Rule::FinitelyGenerated, "test seed")
    }

    fn seeded(values: &[(Property, Tri)]) -> Result<ClassificationReport, String> {
        let mut r = ClassificationReport::new();
        for &(p, v) in values {
            r.set(p, v, seed_rule()).map_err(|e| e.to_string())?;
        }
        Ok(r)
    }

    fn decided(r: &ClassificationReport) -> Vec<(Property, Tri)> {
        Property::ALL.iter().map(|&p| (p, r.get(p))).filter(|(_, v)| v.is_decided()).collect()
    }

    /// Closure is idempotent, monotone in its seeds, sound against random
    /// consistent assignments and rejects crafted contradictions.
    pub fn closure(seed: u64, cases: usize) -> Result<(), String> {
        use Property::*;
        let crafted: [&[(Property, Tri)]; 5] = [
            &[(Ufm, Tri::Yes), (Bfm, Tri::No)],
            &[(Antimatter, Tri::Yes), (Accp, Tri::Yes)],
            &[(Atomic, Tri::No), (Ffm, Tri::Yes)],
            &[(Hfm, Tri::Yes), (Atomic, Tri::No)],
            &[(Antimatter, Tri::Yes), (Atomic, Tri::Yes)],
        ];
        for seeds in crafted {
            // the contradiction may surface when seeding or when closing
            let outcome = seeded(seeds).and_then(|r| propagate(r).map_err(|e| e.to_string()));
            if outcome.is_ok() {
                return Err(format!("no contradiction detected for {seeds:?}"));
            }
        }
        let models = consistent_assignments();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..cases {
            let model = models.choose(&mut rng).unwrap();
            let big: Vec<(Property, Tri)> = model.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let small: Vec<(Property, Tri)> = big.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let closed_big = propagate(seeded(&big)?).map_err(|e| format!("{big:?}: {e}"))?;
            let closed_small = propagate(seeded(&small)?).map_err(|e| format!("{small:?}: {e}"))?;
            let again = propagate(closed_big.clone()).map_err(|e| e.to_string())?;
            if again != closed_big {
                return Err(format!("closure of {big:?} is not idempotent"));
            }
            for (p, v) in decided(&closed_big) {
                if !model.contains(&(p, v)) {
                    return Err(format!("{big:?} closed to {p:?} = {v:?}, outside the model {model:?}"));
                }
            }
            for (p, v) in decided(&closed_small) {
                if closed_big.get(p) != v {
                    return Err(format!("{small:?} ⊆ {big:?} but {p:?} changed from {v:?}"));
                }
            }
        }
        Ok(())
    }
}
