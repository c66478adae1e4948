//! Intersection numbers on `X = P(a,b,c,d_1,…)` and on the surface `S`
//! cut out by the coordinates in `J`, checked against their closed forms.
//!
//! Both class groups have rank one, so divisor classes are rational multiples
//! of a generator (`[A]` on `X`, `[B]` on `S`), and a product of distinct
//! torus-invariant divisors meeting in a simplicial cone is the reciprocal of
//! the cone's multiplicity.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::fans::AmbientFan;
use crate::lattice::{rat_int, Int, LatticeVector, Rational};
use crate::serde_big;
use crate::snf::{lattice_index, saturation_index, smith_normal_form, LatticeIndex};

/// A class `coeff · [generator]` in a rank-one class group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    #[serde(with = "serde_big::rat")]
    pub coeff: Rational,
}

/// `[C_1]` in the basis `{[V_{J∪{0}}], [V_{J∪{1}}]}`, and reduced to a
/// multiple of `[V_J]·[A]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClassOnX {
    #[serde(with = "serde_big::int")]
    pub coeff_v0: Int,
    #[serde(with = "serde_big::int")]
    pub coeff_v1: Int,
    #[serde(with = "serde_big::int")]
    pub reduced: Int,
}

/// Index of the lattice spanned by independent `rays` inside its saturation.
pub fn cone_multiplicity(rays: &[LatticeVector]) -> Result<Int> {
    let rank = match rays.first() {
        Some(v) => v.rank(),
        None => return arg("a cone needs at least one ray"),
    };
    let rows: Vec<Vec<Int>> = rays.iter().map(|v| v.coords().to_vec()).collect();
    if rays.iter().any(|v| v.rank() != rank) {
        return arg("rays of different ranks");
    }
    if smith_normal_form(&rows)?.rank < rays.len() {
        return arg("cone rays are linearly dependent");
    }
    saturation_index(rays, rank)
}

/// `[N : L + N_σ]`, where `L` is given by a basis of a saturated sublattice
/// and `N_σ` is spanned by `sigma_rays`.
pub fn fs_multiplicity(
    l_basis: &[LatticeVector],
    sigma_rays: &[LatticeVector],
) -> Result<LatticeIndex> {
    let rank = match l_basis.first().or(sigma_rays.first()) {
        Some(v) => v.rank(),
        None => return arg("no generators"),
    };
    if !l_basis.is_empty() && !saturation_index(l_basis, rank)?.is_one() {
        return arg("L is not saturated");
    }
    let gens: Vec<LatticeVector> = l_basis.iter().chain(sigma_rays).cloned().collect();
    lattice_index(&gens, rank)
}

/// `λ·d/(abc) − μ < 0`.
pub fn negativity_check(lambda: &Rational, mu: &Rational, d: &Int, abc: &Int) -> bool {
    lambda * rat_int(d) / rat_int(abc) - mu < Rational::from_integer(Int::from(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    /// `[A]^n`.
    pub a_power_n: DivisorClass,
    /// Multiplicity of the cone omitting each ray.
    #[serde(with = "serde_big::int_vec")]
    pub cone_multiplicities: Vec<Int>,
    /// `[B]^2` on `S`.
    pub b_squared: DivisorClass,
    /// `[B]·[Y_j]` for each extra weight.
    pub b_dot_y: Vec<DivisorClass>,
    pub curve_class: CurveClassOnX,
    /// `m_J`, `m_{J∪{0}}`, `m_{J∪{1}}` and, on `S`, `m_2`.
    #[serde(with = "serde_big::int_vec")]
    pub fs_multiplicities: Vec<Int>,
}

fn finite(idx: LatticeIndex, what: &str) -> Result<Int> {
    idx.finite()
        .cloned()
        .ok_or_else(|| Error::Consistency(format!("{what}: L + N_σ is not of full rank")))
}

fn require(ok: bool, identity: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency(format!("identity failed: {identity}")))
    }
}

/// Check the rank-one intersection identities for a fan of
/// `P(a,b,c,d_1,…)` with `(a,b,c)` in role order.
pub fn verify_intersections(fan: &AmbientFan) -> Result<IntersectionReport> {
    fan.validate()?;
    let n = fan.dim();
    let q = &fan.weights;
    let (a, b, c) = (&q[0], &q[1], &q[2]);
    let abc = a * b * c;
    let product: Int = q.iter().product();
    let a_power_n = Rational::new(Int::one(), product.clone());

    let mut cone_multiplicities = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mult = cone_multiplicity(&fan.rays_omitting(i))?;
        let others: Int = q
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| w)
            .product();
        require(
            Rational::new(Int::one(), mult.clone()) == rat_int(&others) * &a_power_n,
            &format!("D_j products omitting {i} equal (Π_(j≠{i}) q_j)·[A]^n"),
        )?;
        cone_multiplicities.push(mult);
    }

    // Fulton–Sturmfels multiplicities, L = ⟨e1⟩ or ⟨e1, e2⟩
    let e = |j| LatticeVector::unit(n, j);
    let e_j: Vec<LatticeVector> = (2..n).map(e).collect();
    let with = |v: &LatticeVector| -> Vec<LatticeVector> {
        let mut s = e_j.clone();
        s.push(v.clone());
        s
    };
    let m_j = finite(fs_multiplicity(&[e(0), e(1)], &e_j)?, "m_J")?;
    require(m_j.is_one(), "m_J = 1")?;
    let m0 = finite(fs_multiplicity(&[e(0)], &with(&fan.rays[0]))?, "m_J∪{0}")?;
    let m1 = finite(fs_multiplicity(&[e(0)], &with(&fan.rays[1]))?, "m_J∪{1}")?;
    let u = fan.surface_rays();
    let y: Vec<Int> = u.iter().map(|v| v.coords()[1].clone()).collect();
    require(
        m0 == y[0].abs() && m1 == y[1].abs(),
        "m_J∪{i} = |y_i| for i = 0, 1",
    )?;
    let m2 = finite(
        fs_multiplicity(&[LatticeVector::unit(2, 0)], std::slice::from_ref(&u[2]))?,
        "m_2",
    )?;
    require(m2 == y[2].abs(), "m_2 = |y_2|")?;

    // [C_1] = −y0 [V_{J∪0}] − y1 [V_{J∪1}]; [V_{J∪i}] = q_i [V_J]·[A]
    let curve_class = CurveClassOnX {
        coeff_v0: m0.clone(),
        coeff_v1: m1.clone(),
        reduced: c * &y[2],
    };
    require(
        &m0 * a + &m1 * b == curve_class.reduced,
        "−y0·a − y1·b = c·y2",
    )?;

    // [B_i]·[B_j] = 1/|det(u_i, u_j)| and [B_i] = q_i [B]
    let mut b_squared = None;
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mult = cone_multiplicity(&[u[i].clone(), u[j].clone()])?;
        let value = Rational::new(Int::one(), mult * &q[i] * &q[j]);
        if let Some(prev) = &b_squared {
            require(prev == &value, "[B]^2 agrees over all pairs of rays")?;
        }
        b_squared = Some(value);
    }
    let b_squared = b_squared.expect("three pairs");
    require(
        b_squared == Rational::new(Int::one(), abc.clone()),
        "[B]^2 = 1/(abc)",
    )?;

    // [B]·[Y_j] = (1/a)[V_J]·[D_0]·[D_j] = (d_j/(ab))·[V_J]·[D_0]·[D_1]
    let mult_01 = cone_multiplicity(
        &with(&fan.rays[0])
            .into_iter()
            .chain([fan.rays[1].clone()])
            .collect::<Vec<_>>(),
    )?;
    require(&mult_01 == c, "cone(e_J, v0, v1) has multiplicity c")?;
    let b_dot_y = fan
        .ds()
        .iter()
        .map(|d| {
            let value = Rational::new(d.clone(), a * b * &mult_01);
            require(
                value == Rational::new(d.clone(), abc.clone()),
                "[B]·[Y_j] = d_j/(abc)",
            )?;
            Ok(DivisorClass { coeff: value })
        })
        .collect::<Result<_>>()?;

    Ok(IntersectionReport {
        a_power_n: DivisorClass { coeff: a_power_n },
        cone_multiplicities,
        b_squared: DivisorClass { coeff: b_squared },
        b_dot_y,
        curve_class,
        fs_multiplicities: vec![m_j, m0, m1, m2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::ambient_fan;
    use crate::lattice::{int, rat};
    use crate::relations::WeightsTriple;

    fn gk_fan(ds: &[i64]) -> AmbientFan {
        let ds: Vec<Int> = ds.iter().map(|&d| int(d)).collect();
        ambient_fan(&WeightsTriple::from_i64(7, 15, 26).unwrap(), &ds).unwrap()
    }

    #[test]
    fn cone_multiplicity_examples() {
        let fan = gk_fan(&[22]);
        let r = &fan.rays;
        assert_eq!(
            cone_multiplicity(&[r[1].clone(), r[2].clone(), r[3].clone()]).unwrap(),
            int(7)
        );
        assert_eq!(
            cone_multiplicity(&[r[0].clone(), r[1].clone(), r[3].clone()]).unwrap(),
            int(26)
        );
        assert_eq!(
            cone_multiplicity(&[LatticeVector::unit(3, 0), LatticeVector::unit(3, 2)]).unwrap(),
            int(1)
        );
        assert!(cone_multiplicity(&[r[3].clone(), r[3].clone()]).is_err());
    }

    #[test]
    fn intersections_for_gk_base() {
        let report = verify_intersections(&gk_fan(&[22])).unwrap();
        assert_eq!(report.b_dot_y[0].coeff, rat(22, 2730));
        assert_eq!(report.b_squared.coeff, rat(1, 2730));
        assert_eq!(report.a_power_n.coeff, rat(1, 7 * 15 * 26 * 22));
        assert_eq!(
            report.cone_multiplicities,
            vec![int(7), int(15), int(26), int(22)]
        );
        assert_eq!(
            report.fs_multiplicities,
            vec![int(1), int(1), int(3), int(2)]
        );

        let surface = verify_intersections(&gk_fan(&[])).unwrap();
        assert_eq!(surface.b_squared.coeff, rat(1, 2730));
        assert!(surface.b_dot_y.is_empty());
    }

    #[test]
    fn fs_infinite_when_not_full_rank() {
        let e = |j| LatticeVector::unit(3, j);
        assert_eq!(
            fs_multiplicity(&[e(0)], &[e(1)]).unwrap(),
            LatticeIndex::Infinite
        );
        assert!(fs_multiplicity(&[LatticeVector::from_i64(&[2, 0, 0])], &[e(1), e(2)]).is_err());
    }

    #[test]
    fn negativity_examples() {
        let abc = int(2730);
        assert!(negativity_check(&rat(52, 1), &rat(1, 1), &int(22), &abc));
        assert!(!negativity_check(&rat(52, 1), &rat(1, 1), &int(53), &abc));
        assert!(negativity_check(
            &rat(1, 1),
            &rat(1_000_000, 1),
            &int(5),
            &abc
        ));
    }
}
