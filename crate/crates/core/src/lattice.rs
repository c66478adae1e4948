//! Exact integers, rationals and lattice vectors.
//!
//! Everything downstream works over [`Int`] (arbitrary precision) and
//! [`Rational`]; there is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::serde_big;

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

/// Non-negative gcd of all entries; 0 only when every entry is 0.
pub fn gcd_all(xs: &[Int]) -> Result<Int> {
    if xs.is_empty() {
        return arg("gcd of an empty list");
    }
    Ok(xs.iter().fold(Int::zero(), |acc, x| acc.gcd(x)))
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(
        Int::one(),
        |acc, x| {
            if x.is_zero() {
                acc
            } else {
                acc.lcm(x)
            }
        },
    )
}

pub fn floor_rat(q: &Rational) -> Int {
    q.floor().to_integer()
}

pub fn ceil_rat(q: &Rational) -> Int {
    q.ceil().to_integer()
}

pub(crate) fn to_i128(v: &Int, what: &str) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::Overflow(format!("{what} = {v} does not fit in 128 bits")))
}

/// An integer vector in `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector {
    #[serde(with = "serde_big::int_vec")]
    coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Result<Self> {
        if coords.is_empty() {
            return arg("lattice vector of rank 0");
        }
        Ok(LatticeVector { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "lattice vector of rank 0");
        LatticeVector {
            coords: coords.iter().map(|&c| Int::from(c)).collect(),
        }
    }

    /// The `j`-th standard basis vector of `Z^rank` (0-based).
    pub fn unit(rank: usize, j: usize) -> Self {
        let mut coords = vec![Int::zero(); rank];
        coords[j] = Int::one();
        LatticeVector { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True iff the gcd of the coordinates is 1. The zero vector is not primitive.
    pub fn is_primitive(&self) -> bool {
        self.coords
            .iter()
            .fold(Int::zero(), |acc, x| acc.gcd(x))
            .is_one()
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_rational(&self, point: &RationalPoint) -> Rational {
        debug_assert_eq!(self.rank(), point.rank());
        self.coords
            .iter()
            .zip(point.coords())
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn scaled(&self, k: &Int) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Primitive integer vector on the ray through a nonzero rational vector.
    pub fn primitive_on_ray(v: &[Rational]) -> Result<LatticeVector> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::Geometry("zero vector spans no ray".into()));
        }
        let den = lcm_all(v.iter().map(|q| q.denom()));
        let scaled: Vec<Int> = v.iter().map(|q| (q * rat_int(&den)).to_integer()).collect();
        let g = scaled.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        Ok(LatticeVector {
            coords: scaled.into_iter().map(|x| x / &g).collect(),
        })
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint {
            coords: self.coords.iter().map(rat_int).collect(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Q^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalPoint {
    #[serde(with = "serde_big::rat_vec")]
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return arg("rational point of rank 0");
        }
        Ok(RationalPoint { coords })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        RationalPoint {
            coords: pairs.iter().map(|&(n, d)| rat(n, d)).collect(),
        }
    }

    pub fn origin(rank: usize) -> Self {
        RationalPoint {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn x(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn y(&self) -> &Rational {
        &self.coords[1]
    }

    pub fn z(&self) -> &Rational {
        &self.coords[2]
    }

    pub fn scaled(&self, k: &Rational) -> RationalPoint {
        RationalPoint {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Lcm of the coordinate denominators.
    pub fn denominator_lcm(&self) -> Int {
        lcm_all(self.coords.iter().map(|q| q.denom()))
    }

    pub fn is_lattice(&self) -> bool {
        self.coords.iter().all(|q| q.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_lattice().then(|| LatticeVector {
            coords: self.coords.iter().map(|q| q.to_integer()).collect(),
        })
    }

    /// Keep the first `k` coordinates.
    pub fn truncated(&self, k: usize) -> RationalPoint {
        RationalPoint {
            coords: self.coords[..k].to_vec(),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Determinant of a square rational matrix by fraction-based elimination.
pub fn det_rational(rows: &[Vec<Rational>]) -> Result<Rational> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return arg("determinant of a non-square matrix");
    }
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Ok(det)
}

/// Solve the square system `rows · z = rhs` exactly; `None` when singular.
pub fn solve_rational(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) || rhs.len() != n {
        return arg("linear system is not square");
    }
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(p, col);
        let pivot = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &pivot;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Ok(Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}

/// Normal vector of the hyperplane through `n` affinely independent points of
/// `Q^n`, as the vector of signed maximal minors of the difference matrix.
pub fn hyperplane_normal(points: &[RationalPoint]) -> Result<Vec<Rational>> {
    let n = points.first().map(RationalPoint::rank).unwrap_or(0);
    if points.len() != n || n == 0 {
        return arg("hyperplane normal needs exactly n points in Q^n");
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).coords)
        .collect();
    let mut normal = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let d = if n == 1 {
            Rational::one()
        } else {
            det_rational(&minor)?
        };
        normal.push(if j % 2 == 0 { d } else { -d });
    }
    if normal.iter().all(Zero::is_zero) {
        return Err(Error::Geometry("points are affinely dependent".into()));
    }
    Ok(normal)
}
