//! Membership in the numerical semigroup `⟨a, b, c⟩`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::lattice::Int;
use crate::relations::WeightsTriple;
use crate::serde_big;

/// Coefficients with `a·m0 + b·m1 + c·m2 = d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupWitness {
    #[serde(with = "serde_big::int")]
    pub m0: Int,
    #[serde(with = "serde_big::int")]
    pub m1: Int,
    #[serde(with = "serde_big::int")]
    pub m2: Int,
}

impl SemigroupWitness {
    pub fn value(&self, w: &WeightsTriple) -> Int {
        &w.a * &self.m0 + &w.b * &self.m1 + &w.c * &self.m2
    }

    pub fn as_array(&self) -> [&Int; 3] {
        [&self.m0, &self.m1, &self.m2]
    }
}

/// Smallest `m ≥ 0` with `b·m ≡ rest (mod c)` and `b·m ≤ rest`.
struct TwoGeneratorSolver {
    g: Int,
    b: Int,
    c_reduced: Int,
    b_inverse: Int,
}

impl TwoGeneratorSolver {
    fn new(b: &Int, c: &Int) -> Self {
        let g = b.gcd(c);
        let c_reduced = c / &g;
        let b_reduced = b / &g;
        let b_inverse = if c_reduced.is_one() {
            Int::zero()
        } else {
            b_reduced.extended_gcd(&c_reduced).x.mod_floor(&c_reduced)
        };
        TwoGeneratorSolver {
            g,
            b: b.clone(),
            c_reduced,
            b_inverse,
        }
    }

    fn min_b_coefficient(&self, rest: &Int) -> Option<Int> {
        if !rest.is_multiple_of(&self.g) {
            return None;
        }
        let m = ((rest / &self.g) * &self.b_inverse).mod_floor(&self.c_reduced);
        (&self.b * &m <= *rest).then_some(m)
    }
}

/// Lexicographically smallest witness `(m0, m1, m2)` for `d ∈ ⟨a, b, c⟩`.
///
/// The smallest feasible `m0` is found by increasing `m0`; for each remainder
/// the smallest `m1` follows from a modular inverse, and `m2` is then forced.
pub fn member(d: &Int, w: &WeightsTriple) -> Option<SemigroupWitness> {
    if d.is_negative() {
        return None;
    }
    let solver = TwoGeneratorSolver::new(&w.b, &w.c);
    let mut m0 = Int::zero();
    let mut rest = d.clone();
    while !rest.is_negative() {
        if let Some(m1) = solver.min_b_coefficient(&rest) {
            let m2 = (&rest - &w.b * &m1) / &w.c;
            let witness = SemigroupWitness { m0, m1, m2 };
            debug_assert_eq!(&witness.value(w), d);
            return Some(witness);
        }
        m0 += 1;
        rest -= &w.a;
    }
    None
}

/// Largest integer outside `⟨a, b, c⟩` (the Frobenius number; `-1` when a
/// weight is 1). Every `d` above it is a member.
///
/// Computed from the Apéry set with respect to the smallest weight, by a
/// shortest-path pass over its residues.
pub fn frobenius_bound(w: &WeightsTriple) -> Result<Int> {
    if !w.a.gcd(&w.b).gcd(&w.c).is_one() {
        return arg(format!(
            "gcd{w} != 1: the semigroup has infinitely many gaps"
        ));
    }
    let mut gens: Vec<u128> = w
        .as_array()
        .iter()
        .map(|g| {
            g.to_u128()
                .ok_or_else(|| Error::Overflow(format!("weight {g} too large")))
        })
        .collect::<Result<_>>()?;
    gens.sort_unstable();
    let modulus = gens[0];
    let size = usize::try_from(modulus)
        .ok()
        .filter(|&s| s <= 50_000_000)
        .ok_or_else(|| {
            Error::Overflow(format!(
                "smallest weight {modulus} too large for the residue table"
            ))
        })?;
    let mut dist = vec![u128::MAX; size];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u128, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in &gens[1..] {
            let nd = d + g;
            let nr = ((r as u128 + g) % modulus) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let max = dist.into_iter().max().unwrap_or(0);
    Ok(Int::from(max) - Int::from(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn w(a: i64, b: i64, c: i64) -> WeightsTriple {
        WeightsTriple::from_i64(a, b, c).unwrap()
    }

    fn wit(m0: i64, m1: i64, m2: i64) -> SemigroupWitness {
        SemigroupWitness {
            m0: int(m0),
            m1: int(m1),
            m2: int(m2),
        }
    }

    #[test]
    fn membership_examples() {
        assert_eq!(member(&int(22), &w(7, 15, 26)), Some(wit(1, 1, 0)));
        assert_eq!(member(&int(7), &w(7, 15, 26)), Some(wit(1, 0, 0)));
        assert_eq!(member(&int(11), &w(7, 15, 26)), None);
        assert_eq!(member(&int(0), &w(7, 15, 26)), Some(wit(0, 0, 0)));
    }

    #[test]
    fn lexicographic_minimum_among_witnesses() {
        // 52 = 2·26 = 7 + 3·15
        assert_eq!(member(&int(52), &w(7, 15, 26)), Some(wit(0, 0, 2)));
        // 45 − 7k for k ≥ 1 never lies in ⟨15, 26⟩
        assert_eq!(member(&int(45), &w(7, 15, 26)), Some(wit(0, 3, 0)));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_bound(&w(2, 3, 5)).unwrap(), int(1));
        assert_eq!(frobenius_bound(&w(3, 5, 7)).unwrap(), int(4));
        assert_eq!(frobenius_bound(&w(1, 5, 7)).unwrap(), int(-1));
        assert!(frobenius_bound(&w(2, 4, 6)).is_err());
    }

    #[test]
    fn frobenius_of_gk_base_matches_membership() {
        let t = w(7, 15, 26);
        let f = frobenius_bound(&t).unwrap();
        assert!(member(&f, &t).is_none());
        let mut d = &f + 1;
        while d <= &f * 2 + 2 {
            assert!(member(&d, &t).is_some(), "{d}");
            d += 1;
        }
    }
}
