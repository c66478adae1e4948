//! Relations `a·e + b·f = c·g` between three weights and their widths.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::lattice::{int, Int, Rational};
use crate::serde_big;

/// Weights `(a, b, c)` of a weighted projective plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightsTriple {
    #[serde(with = "serde_big::int")]
    pub a: Int,
    #[serde(with = "serde_big::int")]
    pub b: Int,
    #[serde(with = "serde_big::int")]
    pub c: Int,
}

impl WeightsTriple {
    pub fn new(a: Int, b: Int, c: Int) -> Result<Self> {
        if [&a, &b, &c].iter().any(|w| !w.is_positive()) {
            return arg(format!("weights must be positive, got ({a},{b},{c})"));
        }
        Ok(WeightsTriple { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c))
    }

    pub fn as_array(&self) -> [&Int; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn to_vec(&self) -> Vec<Int> {
        vec![self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// The weights reordered as `(w[perm[0]], w[perm[1]], w[perm[2]])`.
    pub fn permuted(&self, perm: [usize; 3]) -> WeightsTriple {
        let w = self.as_array();
        WeightsTriple {
            a: w[perm[0]].clone(),
            b: w[perm[1]].clone(),
            c: w[perm[2]].clone(),
        }
    }

    pub fn pairwise_coprime(&self) -> bool {
        self.a.gcd(&self.b).is_one() && self.a.gcd(&self.c).is_one() && self.b.gcd(&self.c).is_one()
    }

    pub fn product(&self) -> Int {
        &self.a * &self.b * &self.c
    }
}

impl fmt::Display for WeightsTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A relation `(e, f, -g)`: with `(a, b, c) = w.permuted(perm)`, `a·e + b·f = c·g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    #[serde(with = "serde_big::int")]
    pub e: Int,
    #[serde(with = "serde_big::int")]
    pub f: Int,
    #[serde(with = "serde_big::int")]
    pub g: Int,
    /// Input positions of the weights in the roles `a`, `b`, `c`.
    pub perm: [usize; 3],
    #[serde(with = "serde_big::rat")]
    pub width: Rational,
}

impl Relation {
    /// The weights in the roles `(a, b, c)` of this relation.
    pub fn roles(&self, w: &WeightsTriple) -> WeightsTriple {
        w.permuted(self.perm)
    }

    pub fn width_below_one(&self) -> bool {
        self.width < Rational::one()
    }
}

/// The three role assignments: `c` ranges over the inputs, `a`, `b` keep input order.
pub const ROLE_PERMS: [[usize; 3]; 3] = [[0, 1, 2], [0, 2, 1], [1, 2, 0]];

fn width_of(c: &Int, g: &Int, a: &Int, b: &Int) -> Rational {
    Rational::new(c * g * g, a * b)
}

/// Positive solutions of `a·e + b·f = n`, by `e ≡ n/d · (a/d)⁻¹ (mod b/d)`.
struct RelationSolver {
    a: Int,
    b: Int,
    d: Int,
    step: Int,
    a_inverse: Int,
}

impl RelationSolver {
    fn new(a: &Int, b: &Int) -> Self {
        let d = a.gcd(b);
        let step = b / &d;
        let a_inverse = (a / &d).extended_gcd(&step).x.mod_floor(&step);
        RelationSolver {
            a: a.clone(),
            b: b.clone(),
            d,
            step,
            a_inverse,
        }
    }

    /// `(e, f)` with `e, f ≥ 1`, in increasing `e`.
    fn solutions(&self, n: &Int) -> Vec<(Int, Int)> {
        let mut out = Vec::new();
        if !n.is_multiple_of(&self.d) {
            return out;
        }
        let mut e = ((n / &self.d) * &self.a_inverse).mod_floor(&self.step);
        if e.is_zero() {
            e = self.step.clone();
        }
        while &self.a * &e < *n {
            let f = (n - &self.a * &e) / &self.b;
            out.push((e.clone(), f));
            e += &self.step;
        }
        out
    }
}

/// All relations of width `< 1`, over every role assignment, in search order
/// (role assignment, then `g`, then `e` ascending).
pub fn relations_below_width_one(w: &WeightsTriple) -> Vec<Relation> {
    let mut out = Vec::new();
    for perm in ROLE_PERMS {
        let WeightsTriple { a, b, c } = w.permuted(perm);
        let ab = &a * &b;
        let solver = RelationSolver::new(&a, &b);
        let mut g = Int::one();
        while &c * &g * &g < ab {
            for (e, f) in solver.solutions(&(&c * &g)) {
                // scaled relations are skipped, never divided down
                if (&e).gcd(&f).gcd(&g).is_one() {
                    out.push(Relation {
                        width: width_of(&c, &g, &a, &b),
                        e,
                        f,
                        g: g.clone(),
                        perm,
                    });
                }
            }
            g += 1;
        }
    }
    out
}

/// The relation of width `< 1`, if any. For pairwise coprime weights there is
/// at most one; otherwise the first in search order is returned.
pub fn find_relation(w: &WeightsTriple) -> Option<Relation> {
    relations_below_width_one(w).into_iter().next()
}

/// Width `c·g²/(a·b)` of a relation, after checking that it is one.
pub fn relation_width(rel: &Relation, w: &WeightsTriple) -> Result<Rational> {
    let WeightsTriple { a, b, c } = rel.roles(w);
    if !rel.e.is_positive() || !rel.f.is_positive() || !rel.g.is_positive() {
        return arg("relation entries must be positive");
    }
    if &a * &rel.e + &b * &rel.f != &c * &rel.g {
        return arg(format!(
            "({},{},-{}) is not a relation for {}",
            rel.e, rel.f, rel.g, w
        ));
    }
    Ok(width_of(&c, &rel.g, &a, &b))
}

/// The integer `r` with `1 ≤ r ≤ g`, `g | e·r − b` and `g | f·r + a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistinguishedR {
    #[serde(with = "serde_big::int")]
    pub r: Int,
}

/// Every `r` in `[1, g]` meeting both divisibility conditions.
pub fn r_candidates(rel: &Relation, w: &WeightsTriple) -> Vec<Int> {
    let WeightsTriple { a, b, .. } = rel.roles(w);
    let mut out = Vec::new();
    let mut r = Int::one();
    while r <= rel.g {
        if (&rel.e * &r - &b).is_multiple_of(&rel.g) && (&rel.f * &r + &a).is_multiple_of(&rel.g) {
            out.push(r.clone());
        }
        r += 1;
    }
    out
}

pub fn find_r(rel: &Relation, w: &WeightsTriple) -> Result<DistinguishedR> {
    relation_width(rel, w)?;
    let mut found = r_candidates(rel, w);
    match found.len() {
        1 => Ok(DistinguishedR { r: found.remove(0) }),
        0 => Err(Error::Consistency(format!(
            "no r in [1,{}] for relation ({},{},-{})",
            rel.g, rel.e, rel.f, rel.g
        ))),
        _ => Err(Error::Consistency(format!(
            "r is not unique for relation ({},{},-{}): {:?}",
            rel.e,
            rel.f,
            rel.g,
            found.iter().map(ToString::to_string).collect::<Vec<_>>()
        ))),
    }
}

/// Smallest relation of any width (by `g`, role assignment, then `e`) that
/// admits a distinguished `r`, searching `g ≤ max_g`. Used to build a fan of
/// `P(a,b,c)` with the sign pattern `y0, y1 < 0 < y2` when no width-`<1`
/// relation exists.
pub fn find_fan_relation(w: &WeightsTriple, max_g: &Int) -> Option<(Relation, DistinguishedR)> {
    if let Some(rel) = find_relation(w) {
        if let Ok(r) = find_r(&rel, w) {
            return Some((rel, r));
        }
    }
    let solvers: Vec<_> = ROLE_PERMS
        .iter()
        .map(|&perm| {
            let roles = w.permuted(perm);
            (perm, RelationSolver::new(&roles.a, &roles.b), roles)
        })
        .collect();
    let mut g = Int::one();
    while &g <= max_g {
        for (perm, solver, roles) in &solvers {
            for (e, f) in solver.solutions(&(&roles.c * &g)) {
                if (&e).gcd(&f).gcd(&g).is_one() {
                    let rel = Relation {
                        width: width_of(&roles.c, &g, &roles.a, &roles.b),
                        e,
                        f,
                        g: g.clone(),
                        perm: *perm,
                    };
                    if let Ok(r) = find_r(&rel, w) {
                        return Some((rel, r));
                    }
                }
            }
        }
        g += 1;
    }
    None
}

/// `width < 1` as the integer comparison `c·g² < a·b`.
pub fn width_below_one_int(rel: &Relation, w: &WeightsTriple) -> bool {
    let WeightsTriple { a, b, c } = rel.roles(w);
    &c * &rel.g * &rel.g < &a * &b
}
