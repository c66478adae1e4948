//! Known families of weighted projective planes whose blow-up at a general
//! point is not a Mori dream space, with their relations, negative curves and
//! the bounds on extra weights they support.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::lattice::{int, rat_int, Int, Rational};
use crate::relations::{find_relation, relation_width, Relation, WeightsTriple};
use crate::serde_big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `(7m−3, 8m−3, (5m−2)m)`.
    #[serde(rename = "GNW1")]
    Gnw1,
    /// `(7m−10, 8m−3, 5m²−7m+1)`.
    #[serde(rename = "GNW2")]
    Gnw2,
    /// `(7, 15+2t, 26+3t)`.
    #[serde(rename = "GKT")]
    Gkt,
    /// `((m+2)², (m+2)³+1, (m+2)³(m²+2m−1)+m²+3m+1)`.
    #[serde(rename = "AGK")]
    Agk,
}

pub const ALL_FAMILIES: [Family; 4] = [Family::Gnw1, Family::Gnw2, Family::Gkt, Family::Agk];

impl Family {
    /// Smallest admissible parameter.
    pub fn min_param(self) -> i64 {
        match self {
            Family::Gnw1 => 4,
            Family::Gnw2 => 3,
            Family::Gkt => 0,
            Family::Agk => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Gnw1 => "GNW1",
            Family::Gnw2 => "GNW2",
            Family::Gkt => "GKT",
            Family::Agk => "AGK",
        }
    }

    /// The family's weights at `param`, without any condition checks.
    pub fn weights(self, p: &Int) -> Result<WeightsTriple> {
        let (a, b, c) = match self {
            Family::Gnw1 => (7 * p - 3, 8 * p - 3, (5 * p - 2) * p),
            Family::Gnw2 => (7 * p - 10, 8 * p - 3, 5 * p * p - 7 * p + 1),
            Family::Gkt => (int(7), 15 + 2 * p, 26 + 3 * p),
            Family::Agk => {
                let s = p + 2;
                let s2 = &s * &s;
                let s3 = &s2 * &s;
                (s2, &s3 + 1, &s3 * (p * p + 2 * p - 1) + p * p + 3 * p + 1)
            }
        };
        WeightsTriple::new(a, b, c)
    }

    /// The family's relation `(e, f, g)` at `param`, in the weights' order.
    fn stated_relation(self, p: &Int) -> Option<(Int, Int, Int)> {
        match self {
            Family::Gnw1 => Some((p.clone(), p.clone(), int(3))),
            Family::Gnw2 => Some((p.clone(), p - 1, int(3))),
            Family::Gkt => Some((int(1), int(3), int(2))),
            Family::Agk => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "gnw1" => Ok(Family::Gnw1),
            "gnw2" => Ok(Family::Gnw2),
            "gkt" | "gk" => Ok(Family::Gkt),
            "agk" => Ok(Family::Agk),
            _ => arg(format!(
                "unknown family '{s}' (expected gnw1, gnw2, gkt or agk)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub ok: bool,
}

fn cond(name: impl Into<String>, ok: bool) -> Condition {
    Condition {
        name: name.into(),
        ok,
    }
}

/// A curve `C ~ λ·π*B − μ·E` on the blow-up of the base surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCurve {
    #[serde(with = "serde_big::rat")]
    pub lambda: Rational,
    #[serde(with = "serde_big::rat")]
    pub mu: Rational,
}

impl NegativeCurve {
    /// `abc·μ/λ`: extra weights strictly below it give negative intersections.
    pub fn bound(&self, w: &WeightsTriple) -> Rational {
        rat_int(&w.product()) * &self.mu / &self.lambda
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub family: Family,
    #[serde(with = "serde_big::int")]
    pub param: Int,
    pub weights: WeightsTriple,
    pub relation: Option<Relation>,
    pub negative_curve: NegativeCurve,
    /// Extra weights `d` below this bound are covered.
    #[serde(with = "serde_big::rat")]
    pub d_bound: Rational,
    pub conditions: Vec<Condition>,
    /// Where the base surface's evidence comes from.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRejection {
    pub family: Family,
    #[serde(with = "serde_big::int")]
    pub param: Int,
    pub weights: Option<WeightsTriple>,
    pub failed: Vec<Condition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FamilyOutcome {
    Accepted(FamilyMember),
    Rejected(FamilyRejection),
}

impl FamilyOutcome {
    pub fn accepted(self) -> Option<FamilyMember> {
        match self {
            FamilyOutcome::Accepted(m) => Some(m),
            FamilyOutcome::Rejected(_) => None,
        }
    }
}

fn finish(
    family: Family,
    p: &Int,
    weights: WeightsTriple,
    mut conditions: Vec<Condition>,
    provenance: &str,
) -> Result<FamilyOutcome> {
    conditions.push(cond("pairwise coprime", weights.pairwise_coprime()));
    if conditions.iter().any(|c| !c.ok) {
        return Ok(FamilyOutcome::Rejected(FamilyRejection {
            family,
            param: p.clone(),
            weights: Some(weights),
            failed: conditions.into_iter().filter(|c| !c.ok).collect(),
        }));
    }
    let (relation, negative_curve, d_bound) = match family.stated_relation(p) {
        Some((e, f, g)) => {
            let mut rel = Relation {
                e,
                f,
                g,
                perm: [0, 1, 2],
                width: Rational::zero(),
            };
            rel.width = relation_width(&rel, &weights)?;
            conditions.push(cond("width < 1", rel.width_below_one()));
            let recovered = find_relation(&weights);
            conditions.push(cond(
                "stated relation is the width < 1 relation",
                recovered.as_ref() == Some(&rel),
            ));
            let curve = NegativeCurve {
                lambda: rat_int(&(&weights.c * &rel.g)),
                mu: Rational::one(),
            };
            let bound = Rational::new(&weights.a * &weights.b, rel.g.clone());
            (Some(rel), curve, bound)
        }
        None => {
            let curve = NegativeCurve {
                lambda: rat_int(&(&weights.c * (p + 1))),
                mu: rat_int(p),
            };
            conditions.push(cond("area identity", agk_area_identity(p, &weights)));
            let bound = curve.bound(&weights);
            (find_relation(&weights), curve, bound)
        }
    };
    if let Some(c) = conditions.iter().find(|c| !c.ok) {
        return Err(Error::Consistency(format!(
            "{family} member {p} fails '{}'",
            c.name
        )));
    }
    Ok(FamilyOutcome::Accepted(FamilyMember {
        family,
        param: p.clone(),
        weights,
        relation,
        negative_curve,
        d_bound,
        conditions,
        provenance: provenance.into(),
    }))
}

/// `(m−1+α+β)(m+1) = (m+1)²c/(ab)`: twice the area of the triangle with
/// vertices `(−α,0)`, `(m−1+β,0)`, `(m,m+1)`.
pub fn agk_area_identity(m: &Int, w: &WeightsTriple) -> bool {
    let s = m + 2;
    let alpha = Rational::new(Int::one(), &s * &s);
    let beta = Rational::new(&s * &s + 1, &s * &s * &s + 1);
    let m1 = rat_int(&(m + 1));
    let twice_area = (rat_int(&(m - 1)) + alpha + beta) * &m1;
    twice_area == &m1 * &m1 * Rational::new(w.c.clone(), &w.a * &w.b)
}

fn check_param(family: Family, p: &Int) -> Result<()> {
    if p < &int(family.min_param()) {
        return arg(format!("{family} needs parameter ≥ {}", family.min_param()));
    }
    Ok(())
}

pub fn gnw1(m: &Int) -> Result<FamilyOutcome> {
    check_param(Family::Gnw1, m)?;
    let w = Family::Gnw1.weights(m)?;
    finish(
        Family::Gnw1,
        m,
        w,
        vec![cond("3 ∤ m", !m.is_multiple_of(&int(3)))],
        "gnw",
    )
}

pub fn gnw2(m: &Int) -> Result<FamilyOutcome> {
    check_param(Family::Gnw2, m)?;
    let w = Family::Gnw2.weights(m)?;
    let conditions = vec![
        cond("3 ∤ 7m−10", !Int::is_multiple_of(&(7 * m - 10), &int(3))),
        cond("m ≢ −7 (mod 59)", !Int::is_multiple_of(&(m + 7), &int(59))),
    ];
    let provenance = if m >= &int(5) { "gnw" } else { "gk-criterion" };
    finish(Family::Gnw2, m, w, conditions, provenance)
}

pub fn gk_t(t: &Int) -> Result<FamilyOutcome> {
    check_param(Family::Gkt, t)?;
    let w = Family::Gkt.weights(t)?;
    finish(
        Family::Gkt,
        t,
        w,
        vec![cond("7 ∤ t−3", !Int::is_multiple_of(&(t - 3), &int(7)))],
        "gk",
    )
}

pub fn agk(m: &Int) -> Result<FamilyOutcome> {
    check_param(Family::Agk, m)?;
    let w = Family::Agk.weights(m)?;
    finish(Family::Agk, m, w, Vec::new(), "agk")
}

pub fn member(family: Family, param: &Int) -> Result<FamilyOutcome> {
    match family {
        Family::Gnw1 => gnw1(param),
        Family::Gnw2 => gnw2(param),
        Family::Gkt => gk_t(param),
        Family::Agk => agk(param),
    }
}

/// Outcomes for every parameter in `lo..=hi` (clamped to the family's range).
pub fn enumerate(family: Family, lo: &Int, hi: &Int) -> Result<Vec<FamilyOutcome>> {
    let mut p = lo.max(&int(family.min_param())).clone();
    let mut out = Vec::new();
    while &p <= hi {
        out.push(member(family, &p)?);
        p += 1;
    }
    Ok(out)
}

fn candidate_param(family: Family, w: &[Int; 3]) -> Option<Int> {
    let [a, b, _] = w;
    let exact = |num: Int, den: i64| num.is_multiple_of(&int(den)).then(|| num / den);
    match family {
        Family::Gnw1 => exact(a + 3, 7),
        Family::Gnw2 => exact(a + 10, 7),
        Family::Gkt => (a == &int(7)).then(|| exact(b - 15, 2)).flatten(),
        Family::Agk => {
            let s = a.sqrt();
            (&s * &s == *a).then(|| s - 2)
        }
    }
}

/// The first accepted family member whose weights are `w` up to order.
pub fn identify(w: &WeightsTriple) -> Option<FamilyMember> {
    let mut sorted = w.to_vec();
    sorted.sort();
    let sorted: [Int; 3] = [sorted[0].clone(), sorted[1].clone(), sorted[2].clone()];
    for family in ALL_FAMILIES {
        let Some(p) = candidate_param(family, &sorted) else {
            continue;
        };
        if p < int(family.min_param()) || p.is_negative() {
            continue;
        }
        let Ok(candidate) = family.weights(&p) else {
            continue;
        };
        if candidate.to_vec() != sorted.to_vec() {
            continue;
        }
        if let Ok(FamilyOutcome::Accepted(m)) = member(family, &p) {
            return Some(m);
        }
    }
    None
}
