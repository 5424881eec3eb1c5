//! Factorizations, factorization sets and length sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::par::Exec;

/// Multiplicities indexed by atoms (or by exponents for cyclic semirings).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub multiplicities: Vec<u64>,
    pub length: u64,
}

impl Factorization {
    pub fn new(multiplicities: Vec<u64>) -> Self {
        let length = multiplicities.iter().sum();
        Factorization { multiplicities, length }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSet {
    /// Sorted lexicographically by multiplicity vector, no duplicates.
    pub factorizations: Vec<Factorization>,
    /// True only when the enumeration provably covers all of Z(b).
    pub complete: bool,
}

impl FactorizationSet {
    pub fn from_vectors(vectors: Vec<Vec<u64>>, complete: bool) -> Self {
        let set: BTreeSet<Factorization> = vectors.into_iter().map(Factorization::new).collect();
        FactorizationSet { factorizations: set.into_iter().collect(), complete }
    }

    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    pub fn lengths(&self) -> LengthSet {
        let set: BTreeSet<u64> = self.factorizations.iter().map(|f| f.length).collect();
        LengthSet { lengths: set.into_iter().collect(), complete: self.complete }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSet {
    pub lengths: Vec<u64>,
    pub complete: bool,
}

/// All `c >= 0` with `sum c_i * weights[i] = target`, in lexicographic order.
///
/// Weights must be positive. Returns `None` if some coordinate range does
/// not fit in a `u64`.
pub fn knapsack(weights: &[BigInt], target: &BigInt, exec: Exec) -> Option<Vec<Vec<u64>>> {
    assert!(weights.iter().all(|w| w > &BigInt::zero()), "knapsack weights must be positive");
    if target < &BigInt::zero() {
        return Some(Vec::new());
    }
    if weights.is_empty() {
        return Some(if target.is_zero() { vec![Vec::new()] } else { Vec::new() });
    }
    let top = (target / &weights[0]).to_u64()?;
    let branches = usize::try_from(top).ok()?.checked_add(1)?;
    let parts = exec.map(branches, |c0| {
        let mut out = Vec::new();
        let mut cur = vec![c0 as u64];
        let rest = target - &weights[0] * BigInt::from(c0);
        descend(&weights[1..], rest, &mut cur, &mut out);
        out
    });
    Some(parts.into_iter().flatten().collect())
}

fn descend(weights: &[BigInt], rest: BigInt, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    match weights {
        [] => {
            if rest.is_zero() {
                out.push(cur.clone());
            }
        }
        [w] => {
            let (q, r) = rest.div_rem(w);
            if r.is_zero() {
                if let Some(q) = q.to_u64() {
                    cur.push(q);
                    out.push(cur.clone());
                    cur.pop();
                }
            }
        }
        [w, tail @ ..] => {
            let Some(top) = (&rest / w).to_u64() else { return };
            let mut r = rest;
            for c in 0..=top {
                cur.push(c);
                descend(tail, r.clone(), cur, out);
                cur.pop();
                r -= w;
            }
        }
    }
}
