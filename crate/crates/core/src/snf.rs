//! Smith normal form over the integers, and the lattice quantities built on it:
//! determinants, sublattice indices and saturations.
//!
//! The reduction is the textbook one: move an entry of minimal absolute value
//! to the pivot, clear its row and column with Euclidean steps, and repair the
//! divisibility chain by folding offending rows into the pivot row.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::lattice::{Int, LatticeVector};

/// Result of a Smith reduction `U · A · V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | … | d_rank`, all positive.
    pub invariants: Vec<Int>,
    pub rank: usize,
    /// `V^{-1}`: the row space of `A` is spanned by `d_i · row_i(V^{-1})`.
    pub right_inverse: Vec<Vec<Int>>,
    /// `det(U) · det(V)`, always ±1.
    pub transform_sign: i8,
}

struct Reducer {
    a: Vec<Vec<Int>>,
    w: Vec<Vec<Int>>,
    sign: i8,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.sign = -self.sign;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            self.w.swap(i, j);
            self.sign = -self.sign;
        }
    }

    /// row_dst -= k · row_src
    fn row_axpy(&mut self, dst: usize, src: usize, k: &Int) {
        for c in 0..self.cols {
            let delta = k * &self.a[src][c];
            self.a[dst][c] -= delta;
        }
    }

    /// col_dst -= k · col_src, mirrored on `V^{-1}` as row_src += k · row_dst.
    fn col_axpy(&mut self, dst: usize, src: usize, k: &Int) {
        for r in 0..self.rows {
            let delta = k * &self.a[r][src];
            self.a[r][dst] -= delta;
        }
        for c in 0..self.cols {
            let delta = k * &self.w[dst][c];
            self.w[src][c] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.a[i] {
            *v = -&*v;
        }
        self.sign = -self.sign;
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                if self.a[r][c].is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if self.a[br][bc].abs() <= self.a[r][c].abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn reduce(mut self) -> SmithForm {
        let limit = self.rows.min(self.cols);
        let mut rank = 0;
        for t in 0..limit {
            let Some((r, c)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if self.a[r][t].is_zero() {
                        continue;
                    }
                    let q = self.a[r][t].div_floor(&self.a[t][t]);
                    self.row_axpy(r, t, &q);
                    if !self.a[r][t].is_zero() {
                        dirty = true;
                    }
                }
                for c in t + 1..self.cols {
                    if self.a[t][c].is_zero() {
                        continue;
                    }
                    let q = self.a[t][c].div_floor(&self.a[t][t]);
                    self.col_axpy(c, t, &q);
                    if !self.a[t][c].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row or column t
                    let (r, c) = self.min_in_cross(t);
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                let offender = (t + 1..self.rows).find(|&r| {
                    (t + 1..self.cols).any(|c| !self.a[r][c].is_multiple_of(&self.a[t][t]))
                });
                match offender {
                    Some(r) => {
                        // fold row r into row t; the next pass shrinks the pivot
                        let minus_one = -Int::one();
                        self.row_axpy(t, r, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        let invariants = (0..rank).map(|i| self.a[i][i].clone()).collect();
        SmithForm {
            invariants,
            rank,
            right_inverse: self.w,
            transform_sign: self.sign,
        }
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let better =
            |cand: &Int, cur: &Int| !cand.is_zero() && (cur.is_zero() || cand.abs() < cur.abs());
        for r in t..self.rows {
            if better(&self.a[r][t], &self.a[best.0][best.1]) {
                best = (r, t);
            }
        }
        for c in t..self.cols {
            if better(&self.a[t][c], &self.a[best.0][best.1]) {
                best = (t, c);
            }
        }
        best
    }
}

/// Smith normal form of an integer matrix given by rows.
pub fn smith_normal_form(rows: &[Vec<Int>]) -> Result<SmithForm> {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != cols) {
        return arg("ragged matrix");
    }
    let w = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    Ok(Reducer {
        a: rows.to_vec(),
        w,
        sign: 1,
        rows: rows.len(),
        cols,
    }
    .reduce())
}

fn rows_of(vs: &[LatticeVector]) -> Vec<Vec<Int>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

/// Row-order determinant of a square matrix, computed from its Smith form.
pub fn det(rows: &[LatticeVector]) -> Result<Int> {
    let k = rows.len();
    if k == 0 || rows.iter().any(|r| r.rank() != k) {
        return arg(format!("determinant needs {k} vectors of rank {k}"));
    }
    let snf = smith_normal_form(&rows_of(rows))?;
    if snf.rank < k {
        return Ok(Int::zero());
    }
    let prod: Int = snf.invariants.iter().product();
    Ok(if snf.transform_sign < 0 { -prod } else { prod })
}

/// Index of a sublattice of `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeIndex {
    Finite(#[serde(with = "crate::serde_big::int")] Int),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            LatticeIndex::Finite(v) => Some(v),
            LatticeIndex::Infinite => None,
        }
    }
}

fn check_rank(generators: &[LatticeVector], rank: usize) -> Result<()> {
    if rank == 0 {
        return arg("rank must be positive");
    }
    if let Some(v) = generators.iter().find(|v| v.rank() != rank) {
        return arg(format!("generator {v} does not have rank {rank}"));
    }
    Ok(())
}

/// `[Z^rank : span(generators)]`, infinite when the span is not full rank.
pub fn lattice_index(generators: &[LatticeVector], rank: usize) -> Result<LatticeIndex> {
    check_rank(generators, rank)?;
    if generators.is_empty() {
        return Ok(LatticeIndex::Infinite);
    }
    let snf = smith_normal_form(&rows_of(generators))?;
    if snf.rank < rank {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite(snf.invariants.iter().product()))
}

/// A basis of `Z^rank ∩ span_Q(generators)`.
pub fn saturation_basis(generators: &[LatticeVector], rank: usize) -> Result<Vec<LatticeVector>> {
    check_rank(generators, rank)?;
    if generators.is_empty() {
        return Ok(Vec::new());
    }
    let snf = smith_normal_form(&rows_of(generators))?;
    snf.right_inverse
        .into_iter()
        .take(snf.rank)
        .map(LatticeVector::new)
        .collect()
}

/// Index of the sublattice spanned by `generators` inside its saturation.
pub fn saturation_index(generators: &[LatticeVector], rank: usize) -> Result<Int> {
    check_rank(generators, rank)?;
    if generators.is_empty() {
        return Ok(Int::one());
    }
    let snf = smith_normal_form(&rows_of(generators))?;
    Ok(snf.invariants.iter().product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn det_examples() {
        assert_eq!(
            det(&[lv(&[5, -3, -1]), lv(&[-1, 2, 0]), lv(&[0, 0, 1])]).unwrap(),
            int(7)
        );
        assert_eq!(
            det(&[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[0, 0, 1])]).unwrap(),
            int(1)
        );
        assert_eq!(det(&[lv(&[-7, -1]), lv(&[5, -3])]).unwrap(), int(26));
        assert_eq!(det(&[lv(&[5, -3]), lv(&[-7, -1])]).unwrap(), int(-26));
        assert_eq!(det(&[lv(&[2, 4]), lv(&[1, 2])]).unwrap(), int(0));
        assert!(det(&[lv(&[1, 2, 3]), lv(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn index_examples() {
        let e = |j| LatticeVector::unit(3, j);
        assert_eq!(
            lattice_index(&[e(0), e(1), e(2)], 3).unwrap(),
            LatticeIndex::Finite(int(1))
        );
        assert_eq!(
            lattice_index(&[lv(&[2, 0]), lv(&[0, 3])], 2).unwrap(),
            LatticeIndex::Finite(int(6))
        );
        assert_eq!(
            lattice_index(&[lv(&[2, 0])], 2).unwrap(),
            LatticeIndex::Infinite
        );
        // e1, e3 and v0 = (x0, y0, -m): index |y0|
        assert_eq!(
            lattice_index(&[e(0), e(2), lv(&[-7, -1, -1])], 3).unwrap(),
            LatticeIndex::Finite(int(1))
        );
        assert_eq!(
            lattice_index(&[e(0), e(2), lv(&[5, -3, -1])], 3).unwrap(),
            LatticeIndex::Finite(int(3))
        );
        assert!(lattice_index(&[lv(&[1, 0])], 3).is_err());
    }

    #[test]
    fn saturation() {
        let basis = saturation_basis(&[lv(&[2, 4, 0]), lv(&[0, 0, 3])], 3).unwrap();
        assert_eq!(basis.len(), 2);
        // saturation contains (1,2,0) and (0,0,1)
        let idx = lattice_index(&[basis[0].clone(), basis[1].clone(), lv(&[0, 1, 0])], 3).unwrap();
        assert_eq!(idx, LatticeIndex::Finite(int(1)));
        assert_eq!(
            saturation_index(&[lv(&[2, 4, 0]), lv(&[0, 0, 3])], 3).unwrap(),
            int(6)
        );
    }

    #[test]
    fn invariant_factor_chain() {
        let rows = vec![
            vec![int(2), int(0), int(0)],
            vec![int(0), int(3), int(0)],
            vec![int(0), int(0), int(4)],
        ];
        let snf = smith_normal_form(&rows).unwrap();
        assert_eq!(snf.invariants, vec![int(1), int(2), int(12)]);
    }
}
