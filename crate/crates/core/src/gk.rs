//! Triangles and tetrahedra of GK type, their slices, and the slice criteria
//! in dimensions 2 and 3.
//!
//! A 2D GK triangle has vertices `(0,0)`, `P_L`, `P_R` with `(0,1)` on the
//! segment `P_L P_R` and `x(P_L) < 0 < x(P_R) ≤ x(P_L) + 1`. The 3D version
//! has vertices `(0,0,1)`, `(0,1,0)`, `P_L`, `P_R` with the origin on the
//! segment `P_L P_R`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::fans::TriangleDelta;
use crate::lattice::{
    ceil_rat, floor_rat, lcm_all, rat_int, Int, LatticeVector, Rational, RationalPoint,
};
use crate::relations::{r_candidates, Relation, WeightsTriple};
use crate::serde_big;
use crate::snf::det;

/// Multipliers of the base scale at which the criteria are evaluated.
pub const DEFAULT_SCALES: [u32; 3] = [1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkTriangle {
    pub p_l: RationalPoint,
    pub p_r: RationalPoint,
    #[serde(with = "serde_big::rat")]
    pub width: Rational,
    #[serde(with = "serde_big::rat")]
    pub s2: Rational,
}

fn check_width(width: &Rational, x_l: &Rational) -> Result<()> {
    if !x_l.is_negative() || !(width + x_l).is_positive() {
        return Err(Error::Geometry("need x(P_L) < 0 < x(P_R)".into()));
    }
    if width > &Rational::one() {
        return Err(Error::Geometry(format!("width {width} exceeds 1")));
    }
    Ok(())
}

impl GkTriangle {
    pub fn new(p_l: RationalPoint, p_r: RationalPoint) -> Result<Self> {
        if p_l.rank() != 2 || p_r.rank() != 2 {
            return arg("GK triangle vertices must have rank 2");
        }
        let width = p_r.x() - p_l.x();
        check_width(&width, p_l.x())?;
        // (0,1) on the line through P_L and P_R
        let on_line =
            (p_r.x() - p_l.x()) * (Rational::one() - p_l.y()) - (p_r.y() - p_l.y()) * (-p_l.x());
        if !on_line.is_zero() {
            return Err(Error::Geometry(
                "P_L, P_R and (0,1) are not collinear".into(),
            ));
        }
        let s2 = (p_r.y() - p_l.y()) / &width;
        Ok(GkTriangle {
            p_l,
            p_r,
            width,
            s2,
        })
    }

    /// Image under `(x, y) ↦ (−x, y)`.
    pub fn reflected(&self) -> Result<Self> {
        let flip = |p: &RationalPoint| RationalPoint::new(vec![-p.x().clone(), p.y().clone()]);
        GkTriangle::new(flip(&self.p_r)?, flip(&self.p_l)?)
    }

    /// Image under `(x, y) ↦ (x, y + k·x)`; slice counts are unchanged.
    pub fn sheared(&self, k: &Int) -> Result<Self> {
        let k = rat_int(k);
        let shear = |p: &RationalPoint| RationalPoint::new(vec![p.x().clone(), p.y() + &k * p.x()]);
        GkTriangle::new(shear(&self.p_l)?, shear(&self.p_r)?)
    }

    /// The shear with `s2 ∈ [0, 1)`, together with the shear amount.
    pub fn normalized(&self) -> Result<(Self, Int)> {
        let k = -floor_rat(&self.s2);
        Ok((self.sheared(&k)?, k))
    }

    /// Smallest `m` with `m·T` a lattice triangle.
    pub fn base_scale(&self) -> Int {
        lcm_all(
            self.p_l
                .coords()
                .iter()
                .chain(self.p_r.coords())
                .map(|q| q.denom()),
        )
    }

    fn check_scale(&self, m: &Int) -> Result<()> {
        if !m.is_positive() {
            return arg("scale m must be positive");
        }
        if !m.is_multiple_of(&self.base_scale()) {
            return arg(format!("{m}·T is not a lattice triangle"));
        }
        Ok(())
    }

    /// Number of lattice points of `m·T` on the line `x = i`.
    pub fn slice_count(&self, m: &Int, i: &Int) -> Result<Int> {
        self.check_scale(m)?;
        let mq = rat_int(m);
        let i_q = rat_int(i);
        let (xl, yl) = (self.p_l.x() * &mq, self.p_l.y() * &mq);
        let (xr, yr) = (self.p_r.x() * &mq, self.p_r.y() * &mq);
        if i_q < xl || i_q > xr {
            return Ok(Int::zero());
        }
        let top = &yl + (&yr - &yl) * (&i_q - &xl) / (&xr - &xl);
        let bottom = if i.is_negative() {
            &i_q * &yl / &xl
        } else {
            &i_q * &yr / &xr
        };
        let count: Int = floor_rat(&top) - ceil_rat(&bottom) + 1;
        Ok(if count.is_negative() {
            Int::zero()
        } else {
            count
        })
    }

    pub fn left_end(&self, m: &Int) -> Int {
        (self.p_l.x() * rat_int(m)).to_integer()
    }

    pub fn right_end(&self, m: &Int) -> Int {
        (self.p_r.x() * rat_int(m)).to_integer()
    }
}

pub fn slice_count_2d(t: &GkTriangle, m: &Int, i: &Int) -> Result<Int> {
    t.slice_count(m, i)
}

/// `Δ_ξ` as a GK triangle: `P_L` and `P_R` are its two nonzero vertices.
pub fn gk_triangle_from_delta(delta: &TriangleDelta) -> Result<GkTriangle> {
    GkTriangle::new(delta.vertices[1].clone(), delta.vertices[2].clone())
}

fn reject_boundary_width(width: &Rational) -> Result<()> {
    if width >= &Rational::one() {
        return arg(format!("slice criteria need width < 1, got {width}"));
    }
    Ok(())
}

/// Outcome of the surface criterion at one scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCriterion {
    #[serde(with = "serde_big::int")]
    pub m: Int,
    /// Slice count at `m·x(P_L) + 1`.
    #[serde(with = "serde_big::int")]
    pub n: Int,
    /// Slice count at `m·x(P_R) − n + 1`.
    #[serde(with = "serde_big::int")]
    pub right_count: Int,
    #[serde(with = "serde_big::rat")]
    pub n_s2: Rational,
    pub holds: bool,
}

pub fn gk_surface_criterion(t: &GkTriangle, m: &Int) -> Result<SurfaceCriterion> {
    reject_boundary_width(&t.width)?;
    let n = t.slice_count(m, &(t.left_end(m) + 1))?;
    let right_count = t.slice_count(m, &(t.right_end(m) - &n + 1))?;
    let n_s2 = rat_int(&n) * &t.s2;
    let holds = right_count == n && !n_s2.is_integer();
    Ok(SurfaceCriterion {
        m: m.clone(),
        n,
        right_count,
        n_s2,
        holds,
    })
}

fn evaluate_scales<T>(
    base: &Int,
    scales: &[u32],
    eval: impl Fn(&Int) -> Result<T>,
    holds: impl Fn(&T) -> bool,
) -> Result<Vec<T>> {
    if scales.is_empty() {
        return arg("at least one scale is needed");
    }
    let results: Vec<T> = scales
        .iter()
        .map(|&k| eval(&(base * Int::from(k))))
        .collect::<Result<_>>()?;
    let outcomes: Vec<bool> = results.iter().map(&holds).collect();
    if outcomes.iter().any(|&h| h != outcomes[0]) {
        let detail = scales
            .iter()
            .zip(&outcomes)
            .map(|(k, h)| format!("{k}·{base}: {h}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Stability(detail));
    }
    Ok(results)
}

/// Surface criterion at every multiple `k·m0` of the base scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceStability {
    pub triangle: GkTriangle,
    #[serde(with = "serde_big::int")]
    pub base_scale: Int,
    pub per_scale: Vec<SurfaceCriterion>,
    pub holds: bool,
}

pub fn surface_criterion_stable(t: &GkTriangle, scales: &[u32]) -> Result<SurfaceStability> {
    let base = t.base_scale();
    let per_scale = evaluate_scales(&base, scales, |m| gk_surface_criterion(t, m), |r| r.holds)?;
    Ok(SurfaceStability {
        triangle: t.clone(),
        holds: per_scale[0].holds,
        base_scale: base,
        per_scale,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `Δ_ξ` as built from the relation.
    Delta,
    /// Its mirror image in the `y`-axis.
    Reflected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedCheck {
    pub orientation: Orientation,
    /// Shear `k` applied by normalization.
    #[serde(with = "serde_big::int")]
    pub shear: Int,
    pub result: SurfaceStability,
}

/// Surface criterion for the triangle of a relation, in both orientations.
/// The criterion is satisfied when either orientation satisfies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSurfaceCheck {
    pub checks: Vec<OrientedCheck>,
    pub holds: bool,
}

pub fn relation_surface_check(
    delta: &TriangleDelta,
    scales: &[u32],
) -> Result<RelationSurfaceCheck> {
    let base = gk_triangle_from_delta(delta)?;
    let mut checks = Vec::with_capacity(2);
    for (orientation, t) in [
        (Orientation::Delta, base.clone()),
        (Orientation::Reflected, base.reflected()?),
    ] {
        let (t, shear) = t.normalized()?;
        checks.push(OrientedCheck {
            orientation,
            shear,
            result: surface_criterion_stable(&t, scales)?,
        });
    }
    let holds = checks.iter().any(|c| c.result.holds);
    Ok(RelationSurfaceCheck { checks, holds })
}

/// A relation `a·e + b·f = c·g1 = d·g2` among four weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRelation {
    #[serde(with = "serde_big::int")]
    pub e: Int,
    #[serde(with = "serde_big::int")]
    pub f: Int,
    #[serde(with = "serde_big::int")]
    pub g1: Int,
    #[serde(with = "serde_big::int")]
    pub g2: Int,
    /// Input positions of the weights in the roles `a`, `b`, `c`, `d`.
    pub perm: [usize; 4],
    /// `(d·g2)³ / (a·b·c·d)`.
    #[serde(with = "serde_big::rat")]
    pub w: Rational,
}

impl QuadRelation {
    pub fn roles(&self, weights: &[Int]) -> [Int; 4] {
        std::array::from_fn(|i| weights[self.perm[i]].clone())
    }
}

fn check_quad_weights(weights: &[Int]) -> Result<()> {
    if weights.len() != 4 || weights.iter().any(|w| !w.is_positive()) {
        return arg("expected four positive weights");
    }
    Ok(())
}

/// Role assignments: every ordered choice of `(c, d)`, with `a`, `b` the
/// remaining weights in input order.
fn quad_perms() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for c in 0..4 {
        for d in 0..4 {
            if c == d {
                continue;
            }
            let rest: Vec<usize> = (0..4).filter(|&i| i != c && i != d).collect();
            out.push([rest[0], rest[1], c, d]);
        }
    }
    out
}

/// The relation with `W ≤ 1` minimizing `(g2, g1, e)`, then the role
/// assignment order. Since `gcd(g1, g2) = 1`, the common value `c·g1 = d·g2`
/// is `lcm(c, d)`, so each role assignment has one candidate `(g1, g2)`.
pub fn find_quad_relation(weights: &[Int]) -> Result<Option<QuadRelation>> {
    check_quad_weights(weights)?;
    let mut best: Option<(Int, Int, Int, usize, QuadRelation)> = None;
    for (idx, perm) in quad_perms().into_iter().enumerate() {
        let [a, b, c, d] = std::array::from_fn(|i| weights[perm[i]].clone());
        let k = c.lcm(&d);
        let abcd = &a * &b * &c * &d;
        if &k * &k * &k > abcd {
            continue;
        }
        let g1 = &k / &c;
        let g2 = &k / &d;
        let mut e = Int::one();
        while &a * &e < k {
            let rest = &k - &a * &e;
            if rest.is_multiple_of(&b) {
                let f = rest / &b;
                let ef = e.gcd(&f);
                if ef.gcd(&g1).is_one() && ef.gcd(&g2).is_one() {
                    let key = (g2.clone(), g1.clone(), e.clone(), idx);
                    let better = best.as_ref().is_none_or(|(b2, b1, be, bi, _)| {
                        key < (b2.clone(), b1.clone(), be.clone(), *bi)
                    });
                    if better {
                        let w = Rational::new(&k * &k * &k, abcd.clone());
                        let q = QuadRelation {
                            e: e.clone(),
                            f,
                            g1: g1.clone(),
                            g2: g2.clone(),
                            perm,
                            w,
                        };
                        best = Some((key.0, key.1, key.2, key.3, q));
                    }
                    // larger e only loses the tie-break within this assignment
                    break;
                }
            }
            e += 1;
        }
    }
    Ok(best.map(|b| b.4))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkPolytope3 {
    pub p_l: RationalPoint,
    pub p_r: RationalPoint,
    #[serde(with = "serde_big::rat")]
    pub width: Rational,
    #[serde(with = "serde_big::rat")]
    pub s_y: Rational,
    #[serde(with = "serde_big::rat")]
    pub s_z: Rational,
    #[serde(with = "serde_big::int")]
    pub t: Int,
    #[serde(with = "serde_big::int")]
    pub u: Int,
    /// First lattice points on the four rays of the normal fan, in the roles
    /// `a, b, c, d`.
    pub rays: [LatticeVector; 4],
}

/// Whether `(T, U)` puts the first lattice points of the four rays at
/// `(R,e,e)`, `(S,f,f)`, `(T,−g1,0)`, `(U,0,−g2)`: `gcd(T,g1) = gcd(U,g2) = 1`
/// and `g1·g2` divides both `b − e·s` and `a + f·s` for `s = T·g2 + U·g1`.
pub fn tu_admissible(q: &QuadRelation, weights: &[Int], t: &Int, u: &Int) -> Result<bool> {
    check_quad_weights(weights)?;
    let [a, b, _, _] = q.roles(weights);
    if !t.gcd(&q.g1).is_one() || !u.gcd(&q.g2).is_one() {
        return Ok(false);
    }
    let g = &q.g1 * &q.g2;
    let s = t * &q.g2 + u * &q.g1;
    let r_num = &b - &q.e * &s;
    let s_num = &a + &q.f * &s;
    if !r_num.is_multiple_of(&g) || !s_num.is_multiple_of(&g) {
        return Ok(false);
    }
    Ok((r_num / &g).gcd(&q.e).is_one() && (s_num / &g).gcd(&q.f).is_one())
}

/// `(−r, 0)` when `r` is the distinguished integer of `a·e + b·f = c·g1`,
/// `g2 = 1` and that choice is admissible; otherwise the admissible pair with
/// `U ∈ [0, g2)` and `T ∈ [1, g1]` smallest in `(U, T)`.
pub fn default_tu(q: &QuadRelation, weights: &[Int]) -> Result<(Int, Int)> {
    check_quad_weights(weights)?;
    let [a, b, c, _] = q.roles(weights);
    let triple = WeightsTriple::new(a, b, c)?;
    let rel = Relation {
        e: q.e.clone(),
        f: q.f.clone(),
        g: q.g1.clone(),
        perm: [0, 1, 2],
        width: Rational::zero(),
    };
    if let [r] = r_candidates(&rel, &triple).as_slice() {
        let t = -r.clone();
        if q.g2.is_one() && tu_admissible(q, weights, &t, &Int::zero())? {
            return Ok((t, Int::zero()));
        }
    }
    let mut u = Int::zero();
    while u < q.g2 {
        let mut t = Int::one();
        while t <= q.g1 {
            if tu_admissible(q, weights, &t, &u)? {
                return Ok((t, u));
            }
            t += 1;
        }
        u += 1;
    }
    Err(Error::Geometry(format!(
        "no (T, U) gives a lattice fan for the relation ({},{},−{},−{})",
        q.e, q.f, q.g1, q.g2
    )))
}

pub fn gk_polytope_3d(q: &QuadRelation, weights: &[Int], t: &Int, u: &Int) -> Result<GkPolytope3> {
    check_quad_weights(weights)?;
    let roles = q.roles(weights);
    let [a, b, c, d] = roles.clone();
    if &a * &q.e + &b * &q.f != &c * &q.g1 || &c * &q.g1 != &d * &q.g2 {
        return arg("not a relation a·e + b·f = c·g1 = d·g2 for these weights");
    }
    if !t.gcd(&q.g1).is_one() || !u.gcd(&q.g2).is_one() {
        return arg("need gcd(T, g1) = gcd(U, g2) = 1");
    }
    let x = Rational::new(&q.e * &q.g1 * &q.g2, b.clone());
    let lambda = Rational::new(-(&b * &q.f), &a * &q.e);
    let y = rat_int(t) * &x / rat_int(&q.g1);
    let z = rat_int(u) * &x / rat_int(&q.g2);
    let p_r = RationalPoint::new(vec![x.clone(), y.clone(), z.clone()])?;
    let p_l = p_r.scaled(&lambda);
    let width = p_r.x() - p_l.x();
    check_width(&width, p_l.x())?;
    if width != q.w {
        return Err(Error::Consistency(format!(
            "width {width} differs from W = {}",
            q.w
        )));
    }
    let one = Rational::one();
    let rays_q: [Vec<Rational>; 4] = [
        vec![&one - &y - &z, x.clone(), x.clone()],
        vec![
            &lambda * &y + &lambda * &z - &one,
            -(&lambda * &x),
            -(&lambda * &x),
        ],
        vec![y.clone(), -x.clone(), Rational::zero()],
        vec![-(&lambda * &z), Rational::zero(), &lambda * &x],
    ];
    let rays: [LatticeVector; 4] = [
        LatticeVector::primitive_on_ray(&rays_q[0])?,
        LatticeVector::primitive_on_ray(&rays_q[1])?,
        LatticeVector::primitive_on_ray(&rays_q[2])?,
        LatticeVector::primitive_on_ray(&rays_q[3])?,
    ];
    let mut sum = LatticeVector::new(vec![Int::zero(); 3])?;
    for (w, r) in roles.iter().zip(&rays) {
        sum = sum.add(&r.scaled(w));
    }
    if !sum.is_zero() {
        return Err(Error::Geometry(format!("Σ weight·ray = {sum}, expected 0")));
    }
    for omit in 0..4 {
        let rest: Vec<LatticeVector> = (0..4)
            .filter(|&j| j != omit)
            .map(|j| rays[j].clone())
            .collect();
        let m = det(&rest)?.abs();
        if m != roles[omit] {
            return Err(Error::Geometry(format!(
                "|minor| omitting ray {omit} is {m}, expected {}",
                roles[omit]
            )));
        }
    }
    Ok(GkPolytope3 {
        s_y: rat_int(t) / rat_int(&q.g1),
        s_z: rat_int(u) / rat_int(&q.g2),
        p_l,
        p_r,
        width,
        t: t.clone(),
        u: u.clone(),
        rays,
    })
}

impl GkPolytope3 {
    pub fn base_scale(&self) -> Int {
        lcm_all(
            self.p_l
                .coords()
                .iter()
                .chain(self.p_r.coords())
                .map(|q| q.denom()),
        )
    }

    fn check_scale(&self, m: &Int) -> Result<()> {
        if !m.is_positive() {
            return arg("scale m must be positive");
        }
        if !m.is_multiple_of(&self.base_scale()) {
            return arg(format!("{m}·D is not a lattice polytope"));
        }
        Ok(())
    }

    pub fn left_end(&self, m: &Int) -> Int {
        (self.p_l.x() * rat_int(m)).to_integer()
    }

    pub fn right_end(&self, m: &Int) -> Int {
        (self.p_r.x() * rat_int(m)).to_integer()
    }

    /// Size of the slice of `m·D` at `x = i`: the cross-section is the right
    /// triangle `{ Y ≥ y0, Z ≥ z0, (Y − y0) + (Z − z0) ≤ L }`, with corner
    /// `(i, y0, z0)` on the line `P_L P_R`, and its size is the number of
    /// distinct `Y` among its lattice points.
    pub fn slice_size(&self, m: &Int, i: &Int) -> Result<Int> {
        self.check_scale(m)?;
        let (lo, hi) = (self.left_end(m), self.right_end(m));
        if i < &lo || i > &hi {
            return Ok(Int::zero());
        }
        let i_q = rat_int(i);
        let end = if i.is_negative() {
            self.p_l.x()
        } else {
            self.p_r.x()
        };
        let leg = rat_int(m) - &i_q / end;
        let slope_y = self.p_r.y() / self.p_r.x();
        let slope_z = self.p_r.z() / self.p_r.x();
        let y0 = &i_q * slope_y;
        let z0 = &i_q * slope_z;
        let k: Int = floor_rat(&(&y0 + &z0 + leg)) - ceil_rat(&y0) - ceil_rat(&z0);
        Ok(if k.is_negative() { Int::zero() } else { k + 1 })
    }

    /// Image in the `xy`-plane, moved by `(0,1) ↦ (0,0)` and `y ↦ −y`.
    pub fn projection_xy(&self) -> Result<GkTriangle> {
        let one = Rational::one();
        let map = |p: &RationalPoint| RationalPoint::new(vec![p.x().clone(), &one - p.y()]);
        GkTriangle::new(map(&self.p_l)?, map(&self.p_r)?)
    }
}

pub fn slice_size_3d(d: &GkPolytope3, m: &Int, i: &Int) -> Result<Int> {
    d.slice_size(m, i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldCriterion {
    #[serde(with = "serde_big::int")]
    pub m: Int,
    #[serde(with = "serde_big::int")]
    pub n: Int,
    #[serde(with = "serde_big::int")]
    pub right_size: Int,
    #[serde(with = "serde_big::rat_vec")]
    pub n_slopes: Vec<Rational>,
    pub holds: bool,
}

pub fn gk_3fold_criterion(d: &GkPolytope3, m: &Int) -> Result<ThreefoldCriterion> {
    reject_boundary_width(&d.width)?;
    let n = d.slice_size(m, &(d.left_end(m) + 1))?;
    let right_size = d.slice_size(m, &(d.right_end(m) - &n + 1))?;
    let n_q = rat_int(&n);
    let n_slopes = vec![&n_q * &d.s_y, &n_q * &d.s_z];
    let holds = right_size == n && !n_slopes.iter().all(Rational::is_integer);
    Ok(ThreefoldCriterion {
        m: m.clone(),
        n,
        right_size,
        n_slopes,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldStability {
    #[serde(with = "serde_big::int")]
    pub base_scale: Int,
    pub per_scale: Vec<ThreefoldCriterion>,
    pub holds: bool,
}

pub fn threefold_criterion_stable(d: &GkPolytope3, scales: &[u32]) -> Result<ThreefoldStability> {
    let base = d.base_scale();
    let per_scale = evaluate_scales(&base, scales, |m| gk_3fold_criterion(d, m), |r| r.holds)?;
    Ok(ThreefoldStability {
        holds: per_scale[0].holds,
        base_scale: base,
        per_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::triangle_delta;
    use crate::lattice::{int, rat};
    use crate::relations::find_relation;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn gk_delta() -> TriangleDelta {
        let w = WeightsTriple::from_i64(7, 15, 26).unwrap();
        triangle_delta(&find_relation(&w).unwrap(), &w).unwrap()
    }

    #[test]
    fn delta_orientation_fails_and_reflection_holds() {
        let t = gk_triangle_from_delta(&gk_delta()).unwrap();
        assert_eq!(t.s2, rat(1, 2));
        assert_eq!(t.base_scale(), int(105));
        let direct = gk_surface_criterion(&t, &int(105)).unwrap();
        assert_eq!(direct.n, int(8));
        assert!(!direct.holds);
        let mirrored = gk_surface_criterion(&t.reflected().unwrap(), &int(105)).unwrap();
        assert_eq!(mirrored.n, int(1));
        assert_eq!(mirrored.n_s2, rat(-1, 2));
        assert!(mirrored.holds);
        let check = relation_surface_check(&gk_delta(), &DEFAULT_SCALES).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn vertex_slices_and_outside() {
        let t = gk_triangle_from_delta(&gk_delta()).unwrap();
        let m = int(105);
        assert_eq!(t.slice_count(&m, &t.left_end(&m)).unwrap(), int(1));
        assert_eq!(t.slice_count(&m, &t.right_end(&m)).unwrap(), int(1));
        assert_eq!(t.slice_count(&m, &(t.right_end(&m) + 1)).unwrap(), int(0));
        assert!(t.slice_count(&int(7), &int(0)).is_err());
    }

    #[test]
    fn shear_normalizes_slope() {
        let t = gk_triangle_from_delta(&gk_delta())
            .unwrap()
            .reflected()
            .unwrap();
        let (n, k) = t.normalized().unwrap();
        assert_eq!(k, int(1));
        assert_eq!(n.s2, rat(1, 2));
        let m = int(210);
        for i in -200..=30 {
            assert_eq!(
                t.slice_count(&m, &int(i)).unwrap(),
                n.slice_count(&m, &int(i)).unwrap()
            );
        }
    }

    #[test]
    fn quad_relation_examples() {
        let q = find_quad_relation(&ints(&[7, 15, 26, 52]))
            .unwrap()
            .unwrap();
        assert_eq!(
            [&q.e, &q.f, &q.g1, &q.g2],
            [&int(1), &int(3), &int(2), &int(1)]
        );
        assert_eq!(q.perm, [0, 1, 2, 3]);
        assert_eq!(q.w, rat(104, 105));
        assert_eq!(find_quad_relation(&ints(&[1, 1, 1, 1])).unwrap(), None);
        assert!(find_quad_relation(&ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn default_tu_when_minus_r_is_off_lattice() {
        // r = 6 for 29·3 + 46·1 = 19·7; T = −6 leaves the first ray off the lattice
        let w = ints(&[29, 46, 19, 133]);
        let q = find_quad_relation(&w).unwrap().unwrap();
        assert_eq!(
            [&q.e, &q.f, &q.g1, &q.g2],
            [&int(3), &int(1), &int(7), &int(1)]
        );
        assert!(!tu_admissible(&q, &w, &int(-6), &int(0)).unwrap());
        assert_eq!(default_tu(&q, &w).unwrap(), (int(6), int(0)));
        assert!(gk_polytope_3d(&q, &w, &int(-6), &int(0)).is_err());
        gk_polytope_3d(&q, &w, &int(6), &int(0)).unwrap();
    }

    #[test]
    fn overlap_polytope() {
        let w = ints(&[7, 15, 26, 52]);
        let q = find_quad_relation(&w).unwrap().unwrap();
        assert_eq!(default_tu(&q, &w).unwrap(), (int(-1), int(0)));
        let d = gk_polytope_3d(&q, &w, &int(-1), &int(0)).unwrap();
        assert_eq!(d.p_l, RationalPoint::from_pairs(&[(-6, 7), (3, 7), (0, 1)]));
        assert_eq!(
            d.p_r,
            RationalPoint::from_pairs(&[(2, 15), (-1, 15), (0, 1)])
        );
        assert_eq!(d.width, rat(104, 105));
        assert_eq!((d.s_y.clone(), d.s_z.clone()), (rat(-1, 2), rat(0, 1)));
        assert_eq!(
            d.rays,
            [
                LatticeVector::from_i64(&[8, 1, 1]),
                LatticeVector::from_i64(&[-2, 3, 3]),
                LatticeVector::from_i64(&[-1, -2, 0]),
                LatticeVector::from_i64(&[0, 0, -1]),
            ]
        );
        let c = gk_3fold_criterion(&d, &int(105)).unwrap();
        assert_eq!(c.n, int(1));
        assert!(c.holds);
        assert!(
            threefold_criterion_stable(&d, &DEFAULT_SCALES)
                .unwrap()
                .holds
        );
        assert_eq!(d.projection_xy().unwrap().width, d.width);
    }

    #[test]
    fn bad_tu_rejected() {
        let w = ints(&[7, 15, 26, 52]);
        let q = find_quad_relation(&w).unwrap().unwrap();
        assert!(gk_polytope_3d(&q, &w, &int(2), &int(0)).is_err());
    }

    #[test]
    fn width_one_rejected_by_criteria() {
        let t = GkTriangle::new(
            RationalPoint::from_pairs(&[(-1, 2), (1, 1)]),
            RationalPoint::from_pairs(&[(1, 2), (1, 1)]),
        )
        .unwrap();
        assert!(matches!(
            gk_surface_criterion(&t, &int(2)),
            Err(Error::Argument(_))
        ));
    }
}
