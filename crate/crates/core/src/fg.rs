//! Finitely generated positive monoids.
//!
//! Elements are coordinate vectors over a basis of positive reals that is
//! taken to be Q-linearly independent, so two elements are equal exactly
//! when their coordinates agree. Real values only enter through enclosures,
//! which bound multiplicities during enumeration.

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{propagate, ClassificationReport, ClassifyError, Property, Provenance, Rank, Rule, Tri, Witness};
use crate::exact::linalg;
use crate::exact::rational::format_big;
use crate::exact::AlgebraicReal;
use crate::factorization::{Factorization, FactorizationSet, LengthSet};
use crate::par::Exec;
use crate::serde_util::{int_vec, rat_vec};

/// Enclosure refinement stops here; past it a value is not certified positive.
const MAX_LEVEL: u32 = 96;

#[derive(Debug, thiserror::Error)]
pub enum FgError {
    #[error("at least one generator is required")]
    EmptyGeneratorList,
    #[error("the basis has no constants")]
    EmptyBasis,
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator {index} is not certified positive: {detail}")]
    NonPositiveGenerator { index: usize, detail: String },
    #[error("basis is Q-linearly dependent: {0}")]
    DependentBasis(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
}

/// Positive real constants spanning the coordinates of a monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisContext {
    constants: Vec<AlgebraicReal>,
    verified: bool,
}

impl BasisContext {
    /// Accepts the constants as Q-independent.
    ///
    /// Independence is checked where that is mechanical: a singleton, or one
    /// rational next to one irrational algebraic number. Two rationals are
    /// rejected. Anything else is recorded as declared.
    pub fn new(constants: Vec<AlgebraicReal>) -> Result<Self, FgError> {
        if constants.is_empty() {
            return Err(FgError::EmptyBasis);
        }
        let rationals = constants.iter().filter(|c| c.as_rational().is_some()).count();
        if rationals > 1 {
            return Err(FgError::DependentBasis("more than one rational constant".into()));
        }
        let verified = match constants.as_slice() {
            [_] => true,
            [a, b] => {
                let irrational_algebraic = |x: &AlgebraicReal| matches!(x, AlgebraicReal::Algebraic(_));
                (a.as_rational().is_some() && irrational_algebraic(b))
                    || (b.as_rational().is_some() && irrational_algebraic(a))
            }
            _ => false,
        };
        Ok(BasisContext { constants, verified })
    }

    /// The basis `(1)` of rational monoids.
    pub fn rational() -> Self {
        BasisContext {
            constants: vec![AlgebraicReal::rational(crate::exact::Rational::one()).unwrap()],
            verified: true,
        }
    }

    pub fn constants(&self) -> &[AlgebraicReal] {
        &self.constants
    }

    pub fn dim(&self) -> usize {
        self.constants.len()
    }

    pub fn independence_verified(&self) -> bool {
        self.verified
    }

    /// Bounds on the real value of `x`.
    pub fn value_bounds(&self, x: &[BigRational], level: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (c, b) in x.iter().zip(&self.constants) {
            if c.is_zero() {
                continue;
            }
            let (bl, bh) = b.enclosure(level);
            if c.is_positive() {
                lo += c * &bl;
                hi += c * &bh;
            } else {
                lo += c * &bh;
                hi += c * &bl;
            }
        }
        (lo, hi)
    }

    /// Smallest level at which the value is certified positive.
    fn positivity_level(&self, x: &[BigRational]) -> Option<u32> {
        let mut level = 0;
        loop {
            let (lo, hi) = self.value_bounds(x, level);
            if lo.is_positive() {
                return Some(level);
            }
            if !hi.is_positive() || level >= MAX_LEVEL {
                return None;
            }
            level = if level == 0 { 4 } else { level * 2 };
        }
    }
}

/// A monoid generated by finitely many positive coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgMonoid {
    basis: BasisContext,
    generators: Vec<Vec<BigRational>>,
    atom_indices: Vec<usize>,
    /// Positive lower bounds on atom values.
    atom_lower: Vec<BigRational>,
    level: u32,
    solver: Solver,
}

/// Row operations putting the atom matrix in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Solver {
    /// `transform * atom_matrix = reduced`.
    transform: Vec<Vec<BigRational>>,
    reduced: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Solver {
    fn new(columns: &[Vec<BigRational>], dim: usize) -> Self {
        let k = columns.len();
        let mut aug: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
                row.extend((0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let pivots: Vec<usize> = linalg::rref(&mut aug).into_iter().filter(|&p| p < k).collect();
        let transform = aug.iter().map(|r| r[k..].to_vec()).collect();
        let reduced = aug.iter().map(|r| r[..k].to_vec()).collect();
        let free = (0..k).filter(|c| !pivots.contains(c)).collect();
        Solver { transform, reduced, pivots, free }
    }

    fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.transform.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FgMonoid {
    pub fn new(basis: BasisContext, generators: Vec<Vec<BigRational>>) -> Result<Self, FgError> {
        if generators.is_empty() {
            return Err(FgError::EmptyGeneratorList);
        }
        let dim = basis.dim();
        let mut level = 0;
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(FgError::DimensionMismatch { expected: dim, found: g.len() });
            }
            match basis.positivity_level(g) {
                Some(l) => level = level.max(l),
                None => {
                    let (lo, hi) = basis.value_bounds(g, MAX_LEVEL);
                    return Err(FgError::NonPositiveGenerator {
                        index,
                        detail: format!("value lies in [{}, {}]", format_big(&lo), format_big(&hi)),
                    });
                }
            }
        }
        // distinct generators, first occurrence wins
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..generators.len() {
            if !keep.iter().any(|&j| generators[j] == generators[i]) {
                keep.push(i);
            }
        }
        let mut m = FgMonoid::with_atoms(basis, generators, keep.clone(), level);
        for &i in &keep {
            let rest: Vec<usize> = m.atom_indices.iter().copied().filter(|&j| j != i).collect();
            if rest.is_empty() {
                continue;
            }
            let trial = FgMonoid::with_atoms(m.basis.clone(), m.generators.clone(), rest.clone(), level);
            if trial.member(&m.generators[i], Exec::Sequential)?.is_some() {
                m = trial;
            }
        }
        Ok(m)
    }

    fn with_atoms(
        basis: BasisContext,
        generators: Vec<Vec<BigRational>>,
        atom_indices: Vec<usize>,
        level: u32,
    ) -> Self {
        let atom_lower = atom_indices.iter().map(|&i| basis.value_bounds(&generators[i], level).0).collect();
        let columns: Vec<Vec<BigRational>> = atom_indices.iter().map(|&i| generators[i].clone()).collect();
        let solver = Solver::new(&columns, basis.dim());
        FgMonoid { basis, generators, atom_indices, atom_lower, level, solver }
    }

    pub fn basis(&self) -> &BasisContext {
        &self.basis
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Positions of the atoms in the generator list.
    pub fn atom_indices(&self) -> &[usize] {
        &self.atom_indices
    }

    pub fn atoms(&self) -> Vec<Vec<BigRational>> {
        self.atom_indices.iter().map(|&i| self.generators[i].clone()).collect()
    }

    fn atom(&self, k: usize) -> &[BigRational] {
        &self.generators[self.atom_indices[k]]
    }

    fn check_dim(&self, x: &[BigRational]) -> Result<(), FgError> {
        if x.len() != self.basis.dim() {
            return Err(FgError::DimensionMismatch { expected: self.basis.dim(), found: x.len() });
        }
        Ok(())
    }

    /// Sum of multiplicities times atoms.
    pub fn evaluate(&self, f: &Factorization) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.basis.dim()];
        for (k, &c) in f.multiplicities.iter().enumerate() {
            let c = BigRational::from_integer(BigInt::from(c));
            for (xi, ai) in x.iter_mut().zip(self.atom(k)) {
                *xi += &c * ai;
            }
        }
        x
    }

    /// One factorization of `x` if `x` lies in the monoid.
    pub fn member(&self, x: &[BigRational], exec: Exec) -> Result<Option<Factorization>, FgError> {
        self.check_dim(x)?;
        Ok(self.search(x, true, exec)?.into_iter().next().map(Factorization::new))
    }

    /// Every factorization of `x`; empty when `x` is not a member.
    pub fn factorizations(&self, x: &[BigRational], exec: Exec) -> Result<FactorizationSet, FgError> {
        self.check_dim(x)?;
        Ok(FactorizationSet::from_vectors(self.search(x, false, exec)?, true))
    }

    pub fn length_set(&self, x: &[BigRational], exec: Exec) -> Result<LengthSet, FgError> {
        Ok(self.factorizations(x, exec)?.lengths())
    }

    /// Free multiplicities are enumerated under value bounds; pivot
    /// multiplicities are then forced by the linear system.
    fn search(&self, x: &[BigRational], first_only: bool, exec: Exec) -> Result<Vec<Vec<u64>>, FgError> {
        let k = self.atom_indices.len();
        if x.iter().all(Zero::is_zero) {
            return Ok(vec![vec![0; k]]);
        }
        let y = self.solver.apply(x);
        let r = self.solver.pivots.len();
        if y[r..].iter().any(|v| !v.is_zero()) {
            return Ok(Vec::new());
        }
        let hi = self.basis.value_bounds(x, self.level).1;
        if !hi.is_positive() {
            return Ok(Vec::new());
        }
        let free = &self.solver.free;
        let Some(&first) = free.first() else {
            return Ok(self.solve_pivots(&y, &vec![0; k]).into_iter().collect());
        };
        let top = self.bound(first, &hi)?;
        let branches = usize::try_from(top)
            .ok()
            .and_then(|t| t.checked_add(1))
            .ok_or_else(|| FgError::TooLarge(top.to_string()))?;
        let stop = AtomicBool::new(false);
        let parts = exec.map(branches, |c0| {
            let mut out = Vec::new();
            if first_only && stop.load(AtomicOrdering::Relaxed) {
                return out;
            }
            let mut c = vec![0u64; k];
            c[first] = c0 as u64;
            let rem = &hi - BigRational::from_integer(BigInt::from(c0)) * &self.atom_lower[first];
            self.descend(1, &y, rem, &mut c, first_only, &mut out);
            if first_only && !out.is_empty() {
                stop.store(true, AtomicOrdering::Relaxed);
            }
            out
        });
        let mut all: Vec<Vec<u64>> = parts.into_iter().flatten().collect();
        if first_only {
            all.sort();
            all.truncate(1);
        }
        Ok(all)
    }

    fn bound(&self, j: usize, hi: &BigRational) -> Result<u64, FgError> {
        if hi.is_negative() {
            return Ok(0);
        }
        let b = (hi / &self.atom_lower[j]).floor().to_integer();
        b.to_u64().ok_or_else(|| FgError::TooLarge(format!("multiplicity bound {b}")))
    }

    fn descend(
        &self,
        pos: usize,
        y: &[BigRational],
        hi: BigRational,
        c: &mut [u64],
        first_only: bool,
        out: &mut Vec<Vec<u64>>,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        let free = &self.solver.free;
        if pos == free.len() {
            if let Some(v) = self.solve_pivots(y, c) {
                out.push(v);
            }
            return;
        }
        if hi.is_negative() {
            return;
        }
        let j = free[pos];
        let top = (&hi / &self.atom_lower[j]).floor().to_integer().to_u64().unwrap_or(u64::MAX);
        let mut rem = hi;
        for v in 0..=top {
            c[j] = v;
            self.descend(pos + 1, y, rem.clone(), c, first_only, out);
            if first_only && !out.is_empty() {
                break;
            }
            rem -= &self.atom_lower[j];
        }
        c[j] = 0;
    }

    fn solve_pivots(&self, y: &[BigRational], c: &[u64]) -> Option<Vec<u64>> {
        let mut out = c.to_vec();
        for (row, &p) in self.solver.pivots.iter().enumerate() {
            let mut v = y[row].clone();
            for &f in &self.solver.free {
                if c[f] != 0 {
                    v -= &self.solver.reduced[row][f] * BigRational::from_integer(BigInt::from(c[f]));
                }
            }
            if v.is_negative() || !v.is_integer() {
                return None;
            }
            out[p] = v.to_integer().to_u64()?;
        }
        Some(out)
    }

    fn atom_matrix(&self) -> Vec<Vec<BigRational>> {
        (0..self.basis.dim()).map(|i| (0..self.atom_indices.len()).map(|k| self.atom(k)[i].clone()).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        self.solver.pivots.len()
    }

    pub fn is_ufm(&self) -> UfmCertificate {
        let atoms = self.atom_indices.len();
        let rank = self.rank();
        if rank == atoms {
            UfmCertificate::Yes { rank, atoms }
        } else {
            let kernel = linalg::kernel_basis(&self.atom_matrix(), atoms).remove(0);
            UfmCertificate::No { kernel }
        }
    }

    pub fn is_hfm(&self) -> HfmCertificate {
        let rows: Vec<Vec<BigRational>> = self.atoms();
        let ones = vec![BigRational::one(); rows.len()];
        if let Some(functional) = linalg::solve(&rows, &ones) {
            return HfmCertificate::Yes { functional };
        }
        let kernel = linalg::kernel_basis(&self.atom_matrix(), rows.len())
            .into_iter()
            .find(|z| !z.iter().sum::<BigInt>().is_zero())
            .expect("a relation with nonzero length change exists when no length functional does");
        HfmCertificate::No { kernel }
    }

    /// Checks a UFM certificate against this monoid.
    pub fn verify_ufm(&self, cert: &UfmCertificate) -> bool {
        match cert {
            UfmCertificate::Yes { rank, atoms } => {
                *rank == self.rank() && *atoms == self.atom_indices.len() && rank == atoms
            }
            UfmCertificate::No { kernel } => self.is_relation(kernel),
        }
    }

    pub fn verify_hfm(&self, cert: &HfmCertificate) -> bool {
        match cert {
            HfmCertificate::Yes { functional } => {
                functional.len() == self.basis.dim() && self.atoms().iter().all(|a| dot(a, functional).is_one())
            }
            HfmCertificate::No { kernel } => self.is_relation(kernel) && !kernel.iter().sum::<BigInt>().is_zero(),
        }
    }

    /// `z` is a nonzero integer vector with `sum z_k atom_k = 0`.
    fn is_relation(&self, z: &[BigInt]) -> bool {
        if z.len() != self.atom_indices.len() || z.iter().all(Zero::is_zero) {
            return false;
        }
        (0..self.basis.dim()).all(|i| {
            z.iter()
                .enumerate()
                .map(|(k, zk)| BigRational::from_integer(zk.clone()) * &self.atom(k)[i])
                .sum::<BigRational>()
                .is_zero()
        })
    }

    pub fn classify(&self) -> Result<ClassificationReport, ClassifyError> {
        let mut r = ClassificationReport::new();
        r.rank = Rank::Finite(self.rank() as u64);
        r.trust.independence_declared = !self.basis.verified;
        r.set(
            Property::Ffm,
            Tri::Yes,
            Provenance::new(Rule::FinitelyGenerated, format!("generated by {} atoms", self.atom_indices.len())),
        )?;
        let min_atom = self.atom_lower.iter().min().cloned().unwrap_or_else(BigRational::zero);
        r.set(
            Property::Bfm,
            Tri::Yes,
            Provenance::new(Rule::PositiveInfimum, format!("every atom is at least {}", format_big(&min_atom))),
        )?;
        match self.is_ufm() {
            UfmCertificate::Yes { rank, atoms } => r.set(
                Property::Ufm,
                Tri::Yes,
                Provenance::new(Rule::TrivialKernel, format!("rank {rank} equals the number of atoms"))
                    .with_witness(Witness::RankEquality { rank, atoms }),
            )?,
            UfmCertificate::No { kernel } => r.set(
                Property::Ufm,
                Tri::No,
                Provenance::new(Rule::KernelVector, format!("relation {} among the atoms", show_ints(&kernel)))
                    .with_witness(Witness::KernelVector { vector: kernel }),
            )?,
        };
        match self.is_hfm() {
            HfmCertificate::Yes { functional } => r.set(
                Property::Hfm,
                Tri::Yes,
                Provenance::new(
                    Rule::LengthFunctional,
                    format!(
                        "w = ({}) on the basis takes the value 1 on every atom",
                        functional.iter().map(format_big).collect::<Vec<_>>().join(", ")
                    ),
                )
                .with_witness(Witness::LengthFunctional { weights: functional }),
            )?,
            HfmCertificate::No { kernel } => r.set(
                Property::Hfm,
                Tri::No,
                Provenance::new(
                    Rule::KernelVector,
                    format!("relation {} changes length by {}", show_ints(&kernel), kernel.iter().sum::<BigInt>()),
                )
                .with_witness(Witness::KernelVector { vector: kernel }),
            )?,
        };
        propagate(r)
    }
}

fn show_ints(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum UfmCertificate {
    Yes {
        rank: usize,
        atoms: usize,
    },
    /// `sum kernel_k atom_k = 0`, so the positive and negative parts are two
    /// factorizations of one element.
    No {
        #[serde(with = "int_vec")]
        kernel: Vec<BigInt>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum HfmCertificate {
    /// Coordinates of a functional on the basis that is 1 on every atom.
    Yes {
        #[serde(with = "rat_vec")]
        functional: Vec<BigRational>,
    },
    /// A relation whose two sides have different lengths.
    No {
        #[serde(with = "int_vec")]
        kernel: Vec<BigInt>,
    },
}

/// Splits a relation into the two factorizations it equates.
pub fn split_relation(z: &[BigInt]) -> (Factorization, Factorization) {
    let part = |pos: bool| {
        z.iter()
            .map(|c| if c.is_positive() == pos && !c.is_zero() { c.abs().to_u64().unwrap_or(u64::MAX) } else { 0 })
            .collect()
    };
    (Factorization::new(part(true)), Factorization::new(part(false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rational_monoid(gens: &[i64]) -> FgMonoid {
        FgMonoid::new(BasisContext::rational(), gens.iter().map(|&g| vec![q(g, 1)]).collect()).unwrap()
    }

    fn example_66(n: i64) -> FgMonoid {
        let basis =
            BasisContext::new(vec![AlgebraicReal::rational(Rational::one()).unwrap(), AlgebraicReal::pi()]).unwrap();
        FgMonoid::new(basis, vec![vec![q(0, 1), q(1, 1)], vec![q(n, 1), q(0, 1)], vec![q(n, 2), q(1, 2)]]).unwrap()
    }

    #[test]
    fn atoms_drop_redundant_generators() {
        let m = rational_monoid(&[2, 3, 5]);
        assert_eq!(m.atom_indices(), &[0, 1]);
        assert_eq!(rational_monoid(&[7]).atom_indices(), &[0]);
        assert_eq!(rational_monoid(&[4, 4, 6]).atom_indices(), &[0, 2]);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            FgMonoid::new(BasisContext::rational(), vec![vec![q(0, 1)]]),
            Err(FgError::NonPositiveGenerator { index: 0, .. })
        ));
        assert!(matches!(FgMonoid::new(BasisContext::rational(), vec![]), Err(FgError::EmptyGeneratorList)));
        assert!(matches!(
            FgMonoid::new(BasisContext::rational(), vec![vec![q(1, 1), q(1, 1)]]),
            Err(FgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn membership_in_8_15() {
        let m = rational_monoid(&[8, 15]);
        let f = m.member(&[q(53, 1)], Exec::Sequential).unwrap().unwrap();
        assert_eq!(f.multiplicities, vec![1, 3]);
        assert!(m.member(&[q(7, 1)], Exec::Parallel).unwrap().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn two_three() {
        let m = rational_monoid(&[2, 3]);
        let z = m.factorizations(&[q(6, 1)], Exec::Parallel).unwrap();
        let v: Vec<_> = z.factorizations.iter().map(|f| f.multiplicities.clone()).collect();
        assert_eq!(v, vec![vec![0, 2], vec![3, 0]]);
        assert_eq!(z.lengths().lengths, vec![2, 3]);
        assert_eq!(m.is_ufm(), UfmCertificate::No { kernel: vec![BigInt::from(3), BigInt::from(-2)] });
        let h = m.is_hfm();
        assert!(matches!(h, HfmCertificate::No { .. }));
        assert!(m.verify_hfm(&h));
    }

    #[test]
    fn example_66_m2() {
        let m = example_66(2);
        assert_eq!(m.atom_indices(), &[0, 1, 2]);
        assert_eq!(m.rank(), 2);
        let u = m.is_ufm();
        assert_eq!(u, UfmCertificate::No { kernel: vec![BigInt::from(1), BigInt::from(1), BigInt::from(-2)] });
        assert!(m.verify_ufm(&u));
        let h = m.is_hfm();
        assert_eq!(h, HfmCertificate::Yes { functional: vec![q(1, 2), q(1, 1)] });
        assert!(m.verify_hfm(&h));
        let z = m.factorizations(&[q(2, 1), q(1, 1)], Exec::Sequential).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.lengths().lengths, vec![2]);
        let r = m.classify().unwrap();
        assert_eq!(r.get(Property::Hfm), Tri::Yes);
        assert_eq!(r.get(Property::Ufm), Tri::No);
        assert!(r.trust.independence_declared);
    }

    #[test]
    fn zero_has_the_empty_factorization() {
        let m = rational_monoid(&[2, 3]);
        let z = m.factorizations(&[q(0, 1)], Exec::Sequential).unwrap();
        assert_eq!(z.factorizations, vec![Factorization::new(vec![0, 0])]);
    }

    #[test]
    fn single_atom_functional() {
        let m = rational_monoid(&[5]);
        assert_eq!(m.is_hfm(), HfmCertificate::Yes { functional: vec![q(1, 5)] });
    }
}
