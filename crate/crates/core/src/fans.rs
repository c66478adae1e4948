//! Fans of `P(a,b,c)` and `P(a,b,c,d_1,…,d_{n-2})`, the polarizing triangle of
//! a relation, facet-presented polytopes and their projection to the first two
//! coordinates.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::lattice::{
    ceil_rat, floor_rat, hyperplane_normal, lcm_all, rat_int, solve_rational, to_i128, Int,
    LatticeVector, Rational, RationalPoint,
};
use crate::relations::{
    find_r, find_relation, relation_width, DistinguishedR, Relation, WeightsTriple,
};
use crate::semigroup::{member, SemigroupWitness};
use crate::serde_big;
use crate::snf::{det, lattice_index, LatticeIndex};

/// Fan of `P(a,b,c)` built from a relation, with `a·u0 + b·u1 + c·u2 = 0`
/// for the weights in the relation's roles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFan {
    /// Weights in role order `(a, b, c)`.
    pub weights: WeightsTriple,
    pub relation: Relation,
    pub r: DistinguishedR,
    pub rays: [LatticeVector; 3],
}

fn lv2(x: Int, y: Int) -> LatticeVector {
    LatticeVector::new(vec![x, y]).expect("rank 2")
}

/// `u0 = ((er−b)/g, −e)`, `u1 = ((fr+a)/g, −f)`, `u2 = (−r, g)`.
pub fn surface_fan_with_r(
    rel: &Relation,
    w: &WeightsTriple,
    r: DistinguishedR,
) -> Result<SurfaceFan> {
    relation_width(rel, w)?;
    let roles = rel.roles(w);
    let (e, f, g) = (&rel.e, &rel.f, &rel.g);
    let x0 = e * &r.r - &roles.b;
    let x1 = f * &r.r + &roles.a;
    if !x0.is_multiple_of(g) || !x1.is_multiple_of(g) {
        return Err(Error::Consistency(format!(
            "g = {g} does not divide e·r − b = {x0} and f·r + a = {x1}"
        )));
    }
    let fan = SurfaceFan {
        rays: [
            lv2(x0 / g, -e.clone()),
            lv2(x1 / g, -f.clone()),
            lv2(-r.r.clone(), g.clone()),
        ],
        weights: roles,
        relation: rel.clone(),
        r,
    };
    fan.validate()?;
    Ok(fan)
}

pub fn surface_fan(rel: &Relation, w: &WeightsTriple) -> Result<SurfaceFan> {
    let r = find_r(rel, w)?;
    surface_fan_with_r(rel, w, r)
}

impl SurfaceFan {
    pub fn validate(&self) -> Result<()> {
        let q = self.weights.as_array();
        let sum = self.rays[0]
            .scaled(q[0])
            .add(&self.rays[1].scaled(q[1]))
            .add(&self.rays[2].scaled(q[2]));
        if !sum.is_zero() {
            return Err(Error::Consistency(format!("a·u0 + b·u1 + c·u2 = {sum}")));
        }
        for (i, u) in self.rays.iter().enumerate() {
            if !u.is_primitive() {
                return Err(Error::Consistency(format!("u{i} = {u} is not primitive")));
            }
        }
        for omit in 0..3 {
            let pair: Vec<LatticeVector> = (0..3)
                .filter(|&j| j != omit)
                .map(|j| self.rays[j].clone())
                .collect();
            let m = det(&pair)?.abs();
            if &m != q[omit] {
                return Err(Error::Consistency(format!(
                    "|det| of rays omitting u{omit} is {m}, expected {}",
                    q[omit]
                )));
            }
        }
        let y: Vec<&Int> = self.rays.iter().map(|u| &u.coords()[1]).collect();
        if !(y[0].is_negative() && y[1].is_negative() && y[2].is_positive()) {
            return Err(Error::Consistency(
                "second coordinates must satisfy y0, y1 < 0 < y2".into(),
            ));
        }
        Ok(())
    }
}

/// Fan of `P(a,b,c,d_1,…,d_{n-2})`: `v_i = (u_i, −m_{i,3}, …, −m_{i,n})` for
/// `i = 0,1,2` and `v_j = e_j` for `j ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientFan {
    /// `(a, b, c, d_1, …)` with `(a, b, c)` in the surface fan's role order.
    #[serde(with = "serde_big::int_vec")]
    pub weights: Vec<Int>,
    pub rays: Vec<LatticeVector>,
    /// Witnesses for each `d_i` with respect to the role-ordered `(a, b, c)`.
    pub witnesses: Vec<SemigroupWitness>,
}

pub fn ambient_fan_from_surface(surface: &SurfaceFan, ds: &[Int]) -> Result<AmbientFan> {
    let mut witnesses = Vec::with_capacity(ds.len());
    for d in ds {
        if !d.is_positive() {
            return arg(format!("weight {d} is not positive"));
        }
        match member(d, &surface.weights) {
            Some(wit) => witnesses.push(wit),
            None => return Err(Error::NotInSemigroup(d.clone())),
        }
    }
    let n = ds.len() + 2;
    let mut rays = Vec::with_capacity(n + 1);
    for (i, u) in surface.rays.iter().enumerate() {
        let mut coords = u.coords().to_vec();
        coords.extend(witnesses.iter().map(|w| -w.as_array()[i].clone()));
        rays.push(LatticeVector::new(coords)?);
    }
    for j in 2..n {
        rays.push(LatticeVector::unit(n, j));
    }
    let mut weights = surface.weights.to_vec();
    weights.extend(ds.iter().cloned());
    let fan = AmbientFan {
        weights,
        rays,
        witnesses,
    };
    fan.validate()?;
    Ok(fan)
}

/// Fan of `P(a,b,c,ds…)` from the width-`<1` relation of `(a,b,c)`.
pub fn ambient_fan(w: &WeightsTriple, ds: &[Int]) -> Result<AmbientFan> {
    let rel = find_relation(w).ok_or(Error::NoRelation)?;
    let surface = surface_fan(&rel, w)?;
    ambient_fan_from_surface(&surface, ds)
}

impl AmbientFan {
    /// Dimension `n` of the weighted projective space.
    pub fn dim(&self) -> usize {
        self.rays.len() - 1
    }

    /// Weights `(a, b, c)` in role order.
    pub fn base_weights(&self) -> WeightsTriple {
        WeightsTriple {
            a: self.weights[0].clone(),
            b: self.weights[1].clone(),
            c: self.weights[2].clone(),
        }
    }

    pub fn ds(&self) -> &[Int] {
        &self.weights[3..]
    }

    /// The rank-2 rays `u_i` (first two coordinates of `v_0, v_1, v_2`).
    pub fn surface_rays(&self) -> [LatticeVector; 3] {
        std::array::from_fn(|i| {
            lv2(
                self.rays[i].coords()[0].clone(),
                self.rays[i].coords()[1].clone(),
            )
        })
    }

    /// Rays omitting `v_i`.
    pub fn rays_omitting(&self, i: usize) -> Vec<LatticeVector> {
        self.rays
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n < 2 || self.weights.len() != n + 1 || self.witnesses.len() + 2 != n {
            return Err(Error::Consistency("fan has inconsistent sizes".into()));
        }
        if let Some(v) = self.rays.iter().find(|v| v.rank() != n) {
            return Err(Error::Consistency(format!(
                "ray {v} does not have rank {n}"
            )));
        }
        let mut sum = LatticeVector::new(vec![Int::zero(); n])?;
        for (q, v) in self.weights.iter().zip(&self.rays) {
            sum = sum.add(&v.scaled(q));
        }
        if !sum.is_zero() {
            return Err(Error::Consistency(format!("Σ q_i v_i = {sum}")));
        }
        for (i, v) in self.rays.iter().enumerate() {
            if !v.is_primitive() {
                return Err(Error::Consistency(format!("v{i} = {v} is not primitive")));
            }
        }
        if lattice_index(&self.rays, n)? != LatticeIndex::Finite(Int::one()) {
            return Err(Error::Consistency("rays do not span the lattice".into()));
        }
        for j in 3..=n {
            if self.rays[j] != LatticeVector::unit(n, j - 1) {
                return Err(Error::Consistency(format!("v{j} is not e{j}")));
            }
        }
        let base = self.base_weights();
        for (k, wit) in self.witnesses.iter().enumerate() {
            if wit.value(&base) != self.weights[k + 3] {
                return Err(Error::Consistency(format!(
                    "witness {k} does not reconstruct {}",
                    self.weights[k + 3]
                )));
            }
            for i in 0..3 {
                if self.rays[i].coords()[k + 2] != -wit.as_array()[i].clone() {
                    return Err(Error::Consistency(format!(
                        "v{i} does not carry witness {k}"
                    )));
                }
            }
        }
        for i in 0..=n {
            let m = det(&self.rays_omitting(i))?.abs();
            if m != self.weights[i] {
                return Err(Error::Consistency(format!(
                    "|det| of rays omitting v{i} is {m}, expected weight {}",
                    self.weights[i]
                )));
            }
        }
        let y: Vec<&Int> = (0..3).map(|i| &self.rays[i].coords()[1]).collect();
        if !(y[0].is_negative() && y[1].is_negative() && y[2].is_positive()) {
            return Err(Error::Consistency(
                "second coordinates must satisfy y0, y1 < 0 < y2".into(),
            ));
        }
        Ok(())
    }
}

/// Triangle `Δ_ξ` with vertices `(0,0)`, `(−eg/b, −(er−b)/b)`, `(fg/a, (fr+a)/a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDelta {
    pub vertices: [RationalPoint; 3],
    #[serde(with = "serde_big::rat")]
    pub width: Rational,
}

pub fn triangle_delta(rel: &Relation, w: &WeightsTriple) -> Result<TriangleDelta> {
    let width = relation_width(rel, w)?;
    let r = find_r(rel, w)?.r;
    let WeightsTriple { a, b, .. } = rel.roles(w);
    let (e, f, g) = (&rel.e, &rel.f, &rel.g);
    let left = RationalPoint::new(vec![
        Rational::new(-(e * g), b.clone()),
        Rational::new(-(e * &r - &b), b.clone()),
    ])?;
    let right = RationalPoint::new(vec![
        Rational::new(f * g, a.clone()),
        Rational::new(f * &r + &a, a.clone()),
    ])?;
    let extent = right.x() - left.x();
    if extent != width {
        return Err(Error::Consistency(format!(
            "x-extent {extent} of the triangle differs from the width {width}"
        )));
    }
    Ok(TriangleDelta {
        vertices: [RationalPoint::origin(2), left, right],
        width,
    })
}

/// Support numbers for a facet presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Supports {
    /// Equal supports `a_i = k` with the smallest `k` giving a lattice polytope.
    Auto,
    Explicit(Vec<Int>),
}

/// `P = { z : ⟨v_i, z⟩ ≤ a_i }` with one facet per normal. `vertices[i]` lies
/// on every facet except the `i`-th.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetPolytope {
    pub normals: Vec<LatticeVector>,
    #[serde(with = "serde_big::int_vec")]
    pub supports: Vec<Int>,
    pub vertices: Vec<RationalPoint>,
}

fn simplex_vertices(normals: &[LatticeVector], supports: &[Int]) -> Result<Vec<RationalPoint>> {
    let n = normals.len() - 1;
    (0..=n)
        .map(|i| {
            let rows: Vec<Vec<Rational>> = normals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.coords().iter().map(rat_int).collect())
                .collect();
            let rhs: Vec<Rational> = supports
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, a)| rat_int(a))
                .collect();
            let sol = solve_rational(&rows, &rhs)?.ok_or_else(|| {
                Error::Geometry(format!("normals omitting v{i} are linearly dependent"))
            })?;
            RationalPoint::new(sol)
        })
        .collect()
}

fn check_bounded(normals: &[LatticeVector]) -> Result<()> {
    // the normals admit a strictly positive linear relation iff the signed
    // maximal minors all share a sign
    let n = normals.len() - 1;
    let mut sign = 0i8;
    for i in 0..=n {
        let minor: Vec<LatticeVector> = normals
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut d = det(&minor)?;
        if i % 2 == 1 {
            d = -d;
        }
        let s = if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        };
        if s == 0 || (sign != 0 && s != sign) {
            return Err(Error::Geometry("facet presentation is unbounded".into()));
        }
        sign = s;
    }
    Ok(())
}

/// Polytope with facet normals `normals` (one more than the dimension).
pub fn facet_polytope_from_normals(
    normals: &[LatticeVector],
    supports: Supports,
) -> Result<FacetPolytope> {
    let n = normals.first().map(LatticeVector::rank).unwrap_or(0);
    if n == 0 || normals.len() != n + 1 || normals.iter().any(|v| v.rank() != n) {
        return arg("need n+1 normals of rank n");
    }
    check_bounded(normals)?;
    let supports = match supports {
        Supports::Explicit(s) => {
            if s.len() != n + 1 {
                return arg(format!("expected {} supports, got {}", n + 1, s.len()));
            }
            s
        }
        Supports::Auto => {
            let unit = simplex_vertices(normals, &vec![Int::one(); n + 1])?;
            let k = lcm_all(
                unit.iter()
                    .flat_map(|p| p.coords().iter().map(|q| q.denom())),
            );
            vec![k; n + 1]
        }
    };
    let vertices = simplex_vertices(normals, &supports)?;
    for (i, p) in vertices.iter().enumerate() {
        if normals[i].dot_rational(p) >= rat_int(&supports[i]) {
            return Err(Error::Geometry(format!(
                "presentation is degenerate: vertex {i} does not lie strictly inside facet {i}"
            )));
        }
    }
    Ok(FacetPolytope {
        normals: normals.to_vec(),
        supports,
        vertices,
    })
}

pub fn facet_polytope(fan: &AmbientFan, supports: Supports) -> Result<FacetPolytope> {
    facet_polytope_from_normals(&fan.rays, supports)
}

/// Primitive outward facet normals of a simplex, recomputed from its vertices;
/// entry `i` is the normal of the facet opposite vertex `i`.
pub fn simplex_normal_fan(vertices: &[RationalPoint]) -> Result<Vec<LatticeVector>> {
    let n = vertices.first().map(RationalPoint::rank).unwrap_or(0);
    if vertices.len() != n + 1 {
        return arg("a simplex in Q^n has n+1 vertices");
    }
    (0..=n)
        .map(|i| {
            let facet: Vec<RationalPoint> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let normal = LatticeVector::primitive_on_ray(&hyperplane_normal(&facet)?)?;
            let on_facet = normal.dot_rational(&facet[0]);
            let opposite = normal.dot_rational(&vertices[i]);
            Ok(if opposite < on_facet {
                normal
            } else {
                normal.scaled(&-Int::one())
            })
        })
        .collect()
}

impl FacetPolytope {
    pub fn dim(&self) -> usize {
        self.normals.len() - 1
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalPoint::is_lattice)
    }

    pub fn contains(&self, z: &RationalPoint) -> bool {
        self.normals
            .iter()
            .zip(&self.supports)
            .all(|(v, a)| v.dot_rational(z) <= rat_int(a))
    }

    pub fn normal_fan(&self) -> Result<Vec<LatticeVector>> {
        simplex_normal_fan(&self.vertices)
    }

    /// Integer bounding box `[lo_k, hi_k]` per coordinate.
    fn bounding_box(&self) -> Result<(Vec<i128>, Vec<i128>)> {
        let n = self.dim();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for k in 0..n {
            let min = self
                .vertices
                .iter()
                .map(|p| &p.coords()[k])
                .min()
                .expect("vertices");
            let max = self
                .vertices
                .iter()
                .map(|p| &p.coords()[k])
                .max()
                .expect("vertices");
            lo.push(to_i128(&ceil_rat(min), "box bound")?);
            hi.push(to_i128(&floor_rat(max), "box bound")?);
        }
        Ok((lo, hi))
    }

    fn integer_data(&self) -> Result<(Vec<Vec<i128>>, Vec<i128>)> {
        let normals = self
            .normals
            .iter()
            .map(|v| {
                v.coords()
                    .iter()
                    .map(|c| to_i128(c, "normal entry"))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let supports = self
            .supports
            .iter()
            .map(|a| to_i128(a, "support"))
            .collect::<Result<_>>()?;
        Ok((normals, supports))
    }

    /// `ρ(P ∩ M)`: integer points `(z1, z2)` over which the fiber of `P`
    /// contains a lattice point. The fiber is scanned coordinate by coordinate,
    /// the last coordinate by its exact integer interval.
    pub fn projected_lattice_points(&self) -> Result<BTreeSet<(i128, i128)>> {
        let n = self.dim();
        if n < 2 {
            return arg("projection needs dimension at least 2");
        }
        let (normals, supports) = self.integer_data()?;
        let (lo, hi) = self.bounding_box()?;
        let mut out = BTreeSet::new();
        let mut prefix = Vec::with_capacity(n);
        for z1 in lo[0]..=hi[0] {
            for z2 in lo[1]..=hi[1] {
                prefix.clear();
                prefix.extend([z1, z2]);
                if fiber_has_point(&normals, &supports, &mut prefix, &lo, &hi) {
                    out.insert((z1, z2));
                }
            }
        }
        Ok(out)
    }

    /// Number of lattice points of `P`, by the same fiber scan.
    pub fn lattice_point_count(&self) -> Result<u128> {
        let (normals, supports) = self.integer_data()?;
        let (lo, hi) = self.bounding_box()?;
        let mut prefix = Vec::new();
        Ok(count_points(&normals, &supports, &mut prefix, &lo, &hi))
    }
}

fn partial_dot(v: &[i128], prefix: &[i128]) -> i128 {
    v.iter().zip(prefix).map(|(a, b)| a * b).sum()
}

/// Integer interval of the last coordinate, given all earlier ones.
fn last_interval(
    normals: &[Vec<i128>],
    supports: &[i128],
    prefix: &[i128],
    lo: i128,
    hi: i128,
) -> Option<(i128, i128)> {
    let last = prefix.len();
    let (mut lo, mut hi) = (lo, hi);
    for (v, &a) in normals.iter().zip(supports) {
        let rest = a - partial_dot(v, prefix);
        let c = v[last];
        if c > 0 {
            hi = hi.min(rest.div_euclid(c));
        } else if c < 0 {
            // c·z ≤ rest  ⟺  z ≥ rest / c
            lo = lo.max(-(rest.div_euclid(-c)));
        } else if rest < 0 {
            return None;
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn fiber_has_point(
    normals: &[Vec<i128>],
    supports: &[i128],
    prefix: &mut Vec<i128>,
    lo: &[i128],
    hi: &[i128],
) -> bool {
    let n = lo.len();
    let k = prefix.len();
    if k == n {
        return normals
            .iter()
            .zip(supports)
            .all(|(v, &a)| partial_dot(v, prefix) <= a);
    }
    if k == n - 1 {
        return last_interval(normals, supports, prefix, lo[k], hi[k]).is_some();
    }
    for z in lo[k]..=hi[k] {
        prefix.push(z);
        let found = fiber_has_point(normals, supports, prefix, lo, hi);
        prefix.pop();
        if found {
            return true;
        }
    }
    false
}

fn count_points(
    normals: &[Vec<i128>],
    supports: &[i128],
    prefix: &mut Vec<i128>,
    lo: &[i128],
    hi: &[i128],
) -> u128 {
    let n = lo.len();
    let k = prefix.len();
    if k == n - 1 {
        return last_interval(normals, supports, prefix, lo[k], hi[k])
            .map_or(0, |(a, b)| (b - a + 1) as u128);
    }
    let mut total = 0;
    for z in lo[k]..=hi[k] {
        prefix.push(z);
        total += count_points(normals, supports, prefix, lo, hi);
        prefix.pop();
    }
    total
}

fn cross(o: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> Rational {
    (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x())
}

/// Convex hull of points in `Q^2`, counter-clockwise, without collinear points.
pub fn convex_hull_2d(points: &[RationalPoint]) -> Vec<RationalPoint> {
    let mut pts: Vec<RationalPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<RationalPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rational::zero()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rational::zero()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Integer points of a convex polygon given by its counter-clockwise hull.
pub fn polygon_lattice_points(hull: &[RationalPoint]) -> Result<BTreeSet<(i128, i128)>> {
    let mut out = BTreeSet::new();
    if hull.is_empty() {
        return Ok(out);
    }
    let xs = hull.iter().map(RationalPoint::x);
    let ys = hull.iter().map(RationalPoint::y);
    let (x_lo, x_hi) = (
        ceil_rat(xs.clone().min().unwrap()),
        floor_rat(xs.max().unwrap()),
    );
    let (y_lo, y_hi) = (
        ceil_rat(ys.clone().min().unwrap()),
        floor_rat(ys.max().unwrap()),
    );
    let (x_lo, x_hi) = (to_i128(&x_lo, "x")?, to_i128(&x_hi, "x")?);
    let (y_lo, y_hi) = (to_i128(&y_lo, "y")?, to_i128(&y_hi, "y")?);
    // edge inequalities  A·x + B·y ≤ C  with integer coefficients
    let mut edges = Vec::with_capacity(hull.len());
    for i in 0..hull.len() {
        let p = &hull[i];
        let q = &hull[(i + 1) % hull.len()];
        // interior lies to the left of p→q
        let a = q.y() - p.y();
        let b = p.x() - q.x();
        let c = &a * p.x() + &b * p.y();
        let den = lcm_all([a.denom(), b.denom(), c.denom()]);
        let scale = rat_int(&den);
        let to = |v: &Rational| to_i128(&(v * &scale).to_integer(), "edge coefficient");
        edges.push((to(&a)?, to(&b)?, to(&c)?));
    }
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            if edges.iter().all(|&(a, b, c)| a * x + b * y <= c) {
                out.insert((x, y));
            }
        }
    }
    Ok(out)
}

/// The projected triangle `Q = { y : ⟨u_i, y⟩ ≤ q_i }` and the evidence that
/// it is the lattice triangle `ρ(P)` with `ρ(P ∩ M) = ρ(P) ∩ M₁₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    pub normals: [LatticeVector; 3],
    #[serde(with = "serde_big::int_vec")]
    pub supports: Vec<Int>,
    /// `vertices[i]` is the vertex opposite the edge normal to `u_i`.
    pub vertices: [RationalPoint; 3],
    pub lattice_points: usize,
}

/// Build `Q` from `P` and verify it against an independent computation:
/// `Q` equals the hull of the projected vertices of `P`, its vertices are
/// `ρ(ξ_0), ρ(ξ_1), ρ(ξ_2)`, it is a lattice triangle with normal rays
/// `u_0, u_1, u_2`, and the lattice points of `ρ(P)` all lift to `P ∩ M`.
pub fn project_polytope(p: &FacetPolytope) -> Result<Projection> {
    let n = p.dim();
    if n < 2 {
        return arg("projection needs dimension at least 2");
    }
    if !p.is_lattice() {
        return arg("projection is only defined here for lattice polytopes");
    }
    let fail = |msg: String| Err(Error::Consistency(msg));
    let u: [LatticeVector; 3] = std::array::from_fn(|i| {
        LatticeVector::new(p.normals[i].coords()[..2].to_vec()).expect("rank 2")
    });
    for j in 3..=n {
        if p.normals[j] != LatticeVector::unit(n, j - 1) {
            return arg(format!(
                "normal {j} is not e{j}; not built from an ambient fan"
            ));
        }
    }
    // q_i = a_i + Σ_j a_j m_{i,j}, with m_{i,j} = −(v_i)_j
    let supports: Vec<Int> = (0..3)
        .map(|i| {
            let extra: Int = (3..=n)
                .map(|j| &p.supports[j] * -&p.normals[i].coords()[j - 1])
                .sum();
            &p.supports[i] + extra
        })
        .collect();
    let vertices_vec = simplex_vertices(&u, &supports)?;
    let vertices: [RationalPoint; 3] = std::array::from_fn(|i| vertices_vec[i].clone());
    for (i, v) in vertices.iter().enumerate() {
        if !v.is_lattice() {
            return fail(format!("vertex {v} of Q is not a lattice point"));
        }
        let projected = p.vertices[i].truncated(2);
        if &projected != v {
            return fail(format!("vertex {i} of Q is {v} but ρ(ξ_{i}) = {projected}"));
        }
    }
    let projected: Vec<RationalPoint> = p.vertices.iter().map(|v| v.truncated(2)).collect();
    let hull = convex_hull_2d(&projected);
    let hull_set: BTreeSet<RationalPoint> = hull.iter().cloned().collect();
    let q_set: BTreeSet<RationalPoint> = vertices.iter().cloned().collect();
    if hull_set != q_set {
        return fail("Q differs from the convex hull of the projected vertices".into());
    }
    let fan = simplex_normal_fan(&vertices)?;
    if fan != u {
        return fail("normal fan of Q is not spanned by u_0, u_1, u_2".into());
    }
    let image = polygon_lattice_points(&hull)?;
    let lifted = p.projected_lattice_points()?;
    if image != lifted {
        let missing = image.difference(&lifted).next();
        return fail(format!(
            "ρ(P ∩ M) ≠ ρ(P) ∩ M₁₂ (first point without a lift: {missing:?})"
        ));
    }
    Ok(Projection {
        normals: u,
        supports,
        vertices,
        lattice_points: image.len(),
    })
}
