//! Decision procedures producing certificates that `Bl_p P(a,b,c,d_1,…)` is
//! not a Mori dream space, given evidence that `Bl_p P(a,b,c)` is not one.
//!
//! The base surface is never decided here: evidence comes from a known family
//! or from the caller, and certificates record which.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::families::{self, Family, FamilyMember, FamilyOutcome, NegativeCurve};
use crate::fans::triangle_delta;
use crate::fans::{ambient_fan_from_surface, surface_fan_with_r, AmbientFan};
use crate::gk::{
    default_tu, find_quad_relation, gk_polytope_3d, relation_surface_check,
    threefold_criterion_stable, QuadRelation, ThreefoldStability, DEFAULT_SCALES,
};
use crate::intersect::{negativity_check, verify_intersections};
use crate::lattice::{int, rat_int, Int, Rational};
use crate::relations::{
    find_fan_relation, find_r, find_relation, DistinguishedR, Relation, WeightsTriple,
};
use crate::semigroup::{member, SemigroupWitness};
use crate::serde_big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem {
    /// Width-`<1` relation with every `d_i² w < abc`.
    Main,
    /// A negative curve `λπ*B − μE` with every `d_i < abcμ/λ`.
    General,
    /// All extra weights equal to the smallest base weight.
    CorollaryA,
    /// The general theorem for the AGK family and its curve.
    CorollaryAgk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Unconditional,
    /// The base surface was asserted by the caller, not matched to a family.
    Conditional,
}

/// How the caller supports that `Bl_p P(a,b,c)` is not a Mori dream space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Family {
        family: Family,
        param: Int,
    },
    Asserted(String),
    /// Look the weights up among the known families.
    Auto,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    Family,
    UserAsserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEvidence {
    pub kind: EvidenceKind,
    pub detail: String,
    pub family: Option<Family>,
    #[serde(with = "serde_big::opt_int")]
    pub param: Option<Int>,
    /// Outcome of the surface slice criterion, recorded for members whose
    /// evidence rests on it.
    pub surface_criterion: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    #[serde(with = "serde_big::int")]
    pub value: Int,
    #[serde(with = "serde_big::rat")]
    pub bound: Rational,
    pub ok: bool,
}

impl BoundCheck {
    fn new(value: &Int, bound: &Rational) -> Self {
        BoundCheck {
            ok: &rat_int(value) < bound,
            value: value.clone(),
            bound: bound.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub is_gk17_overlap: bool,
    pub d_equals_cg: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "serde_big::int_vec")]
    pub weights: Vec<Int>,
    pub theorem: Theorem,
    pub status: Status,
    pub relation: Option<Relation>,
    pub r: Option<DistinguishedR>,
    /// Witnesses for each `d_i` with respect to `(a, b, c)` as given.
    pub witnesses: Vec<SemigroupWitness>,
    pub bounds: Vec<BoundCheck>,
    pub base_evidence: BaseEvidence,
    pub negative_curve: NegativeCurve,
    pub fan: AmbientFan,
    pub overlap: Overlap,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn base(&self) -> WeightsTriple {
        WeightsTriple {
            a: self.weights[0].clone(),
            b: self.weights[1].clone(),
            c: self.weights[2].clone(),
        }
    }

    pub fn ds(&self) -> &[Int] {
        &self.weights[3..]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonCode {
    NotWellFormed,
    NotPairwiseCoprimeAbc,
    NoRelation,
    NotInSemigroup,
    BoundViolated,
    NoBaseEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub code: ReasonCode,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    #[serde(with = "serde_big::int_vec")]
    pub weights: Vec<Int>,
    pub reasons: Vec<Reason>,
}

impl Rejection {
    pub fn has(&self, code: ReasonCode) -> bool {
        self.reasons.iter().any(|r| r.code == code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Certified(Certificate),
    Rejected(Rejection),
}

impl Verdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certified(c) => Some(c),
            Verdict::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Certified(_) => None,
            Verdict::Rejected(r) => Some(r),
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Largest `g` tried when a fan relation of any width is needed.
    pub max_g: Int,
    /// Multipliers of the base scale for the slice criteria.
    pub scales: Vec<u32>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            max_g: int(10_000),
            scales: DEFAULT_SCALES.to_vec(),
        }
    }
}

/// Whether every `n` of the `n+1` weights are coprime.
pub fn well_formed(weights: &[Int]) -> bool {
    (0..weights.len()).all(|skip| {
        weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .fold(Int::zero(), |g, (_, w)| g.gcd(w))
            .is_one()
    })
}

fn check_inputs(w: &WeightsTriple, ds: &[Int]) -> Result<Vec<Int>> {
    if ds.is_empty() {
        return arg("need at least one extra weight (n ≥ 3)");
    }
    if let Some(d) = ds.iter().find(|d| !d.is_positive()) {
        return arg(format!("weight {d} is not positive"));
    }
    let mut weights = w.to_vec();
    weights.extend(ds.iter().cloned());
    Ok(weights)
}

fn reason(code: ReasonCode, detail: impl Into<String>) -> Reason {
    Reason {
        code,
        detail: detail.into(),
    }
}

fn same_multiset(x: &WeightsTriple, y: &WeightsTriple) -> bool {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// Resolved evidence, plus the family member when there is one.
fn resolve_evidence(
    w: &WeightsTriple,
    evidence: &Evidence,
    scales: &[u32],
) -> Result<std::result::Result<(BaseEvidence, Option<FamilyMember>), Reason>> {
    let from_member = |m: FamilyMember| -> Result<(BaseEvidence, Option<FamilyMember>)> {
        let surface_criterion = if m.provenance.starts_with("gk") {
            match &m.relation {
                Some(rel) => {
                    Some(relation_surface_check(&triangle_delta(rel, &m.weights)?, scales)?.holds)
                }
                None => None,
            }
        } else {
            None
        };
        Ok((
            BaseEvidence {
                kind: EvidenceKind::Family,
                detail: format!("{} member {} ({})", m.family, m.param, m.provenance),
                family: Some(m.family),
                param: Some(m.param.clone()),
                surface_criterion,
            },
            Some(m),
        ))
    };
    match evidence {
        Evidence::Family { family, param } => {
            let outcome = match families::member(*family, param) {
                Ok(o) => o,
                Err(e) => return Ok(Err(reason(ReasonCode::NoBaseEvidence, e.to_string()))),
            };
            match outcome {
                FamilyOutcome::Accepted(m) if same_multiset(&m.weights, w) => {
                    Ok(Ok(from_member(m)?))
                }
                FamilyOutcome::Accepted(m) => Ok(Err(reason(
                    ReasonCode::NoBaseEvidence,
                    format!("{family} member {param} has weights {}, not {w}", m.weights),
                ))),
                FamilyOutcome::Rejected(r) => Ok(Err(reason(
                    ReasonCode::NoBaseEvidence,
                    format!(
                        "{family} parameter {param} is not a member: {}",
                        r.failed
                            .iter()
                            .map(|c| c.name.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ))),
            }
        }
        Evidence::Asserted(text) => Ok(Ok((
            BaseEvidence {
                kind: EvidenceKind::UserAsserted,
                detail: text.clone(),
                family: None,
                param: None,
                surface_criterion: None,
            },
            None,
        ))),
        Evidence::Auto => match families::identify(w) {
            Some(m) => Ok(Ok(from_member(m)?)),
            None => Ok(Err(reason(
                ReasonCode::NoBaseEvidence,
                format!("{w} matches no known family; pass family or asserted evidence"),
            ))),
        },
        Evidence::None => Ok(Err(reason(
            ReasonCode::NoBaseEvidence,
            "no evidence supplied",
        ))),
    }
}

fn common_checks(
    weights: &[Int],
    w: &WeightsTriple,
    reasons: &mut Vec<Reason>,
) -> Vec<Option<SemigroupWitness>> {
    if !well_formed(weights) {
        reasons.push(reason(
            ReasonCode::NotWellFormed,
            "some n of the n+1 weights have a common factor",
        ));
    }
    if !w.pairwise_coprime() {
        reasons.push(reason(
            ReasonCode::NotPairwiseCoprimeAbc,
            format!("{w} is not pairwise coprime"),
        ));
    }
    weights[3..]
        .iter()
        .map(|d| {
            let wit = member(d, w);
            if wit.is_none() {
                reasons.push(reason(
                    ReasonCode::NotInSemigroup,
                    format!("{d} ∉ ⟨{},{},{}⟩", w.a, w.b, w.c),
                ));
            }
            wit
        })
        .collect()
}

fn overlap_flags(
    w: &WeightsTriple,
    ds: &[Int],
    rel: Option<&Relation>,
    scales: &[u32],
) -> Result<Overlap> {
    match (ds, rel) {
        ([d], Some(rel)) if rel.width_below_one() => {
            let check = overlap_check(w, d, scales)?;
            Ok(Overlap {
                is_gk17_overlap: check.is_gk17_overlap,
                d_equals_cg: check.d_equals_cg,
            })
        }
        _ => Ok(Overlap {
            is_gk17_overlap: false,
            d_equals_cg: false,
        }),
    }
}

/// Certificate for `P(a,b,c,ds…)` from the width-`<1` relation of `(a,b,c)`.
pub fn certify_main(
    w: &WeightsTriple,
    ds: &[Int],
    evidence: &Evidence,
    opts: &CertifyOptions,
) -> Result<Verdict> {
    let weights = check_inputs(w, ds)?;
    let mut reasons = Vec::new();
    let witnesses = common_checks(&weights, w, &mut reasons);
    let relation = find_relation(w);
    let mut bounds = Vec::new();
    let mut notes = Vec::new();
    match &relation {
        None => reasons.push(reason(
            ReasonCode::NoRelation,
            format!("{w} has no relation of width < 1"),
        )),
        Some(rel) => {
            let roles = rel.roles(w);
            let abc = roles.product();
            let bound = Rational::new(&roles.a * &roles.b, rel.g.clone());
            for d in ds {
                let check = BoundCheck::new(d, &bound);
                // d²·w < abc, evaluated independently of the threshold form
                let width_form = rat_int(&(d * d)) * &rel.width < rat_int(&abc);
                if width_form != check.ok {
                    return Err(Error::Consistency(format!(
                        "bound forms disagree for d = {d}"
                    )));
                }
                if d * &rel.g == &roles.a * &roles.b {
                    notes.push(format!(
                        "d = {d} equals ab/g, so d²w = abc exactly and the strict bound fails"
                    ));
                }
                if !check.ok {
                    reasons.push(reason(
                        ReasonCode::BoundViolated,
                        format!("{d} ≥ ab/g = {bound}"),
                    ));
                }
                bounds.push(check);
            }
        }
    }
    let evidence = resolve_evidence(w, evidence, &opts.scales)?;
    let base = match evidence {
        Ok((base, _)) => Some(base),
        Err(r) => {
            reasons.push(r);
            None
        }
    };
    if !reasons.is_empty() {
        return Ok(Verdict::Rejected(Rejection { weights, reasons }));
    }
    let rel = relation.expect("checked");
    let base = base.expect("checked");
    let r = find_r(&rel, w)?;
    let surface = surface_fan_with_r(&rel, w, r.clone())?;
    let fan = ambient_fan_from_surface(&surface, ds)?;
    verify_intersections(&fan)?;
    let roles = rel.roles(w);
    let curve = NegativeCurve {
        lambda: rat_int(&(&roles.c * &rel.g)),
        mu: Rational::one(),
    };
    for d in ds {
        if !negativity_check(&curve.lambda, &curve.mu, d, &roles.product()) {
            return Err(Error::Consistency(format!(
                "C·Y is not negative for d = {d}"
            )));
        }
    }
    let overlap = overlap_flags(w, ds, Some(&rel), &opts.scales)?;
    let status = match base.kind {
        EvidenceKind::Family => Status::Unconditional,
        EvidenceKind::UserAsserted => Status::Conditional,
    };
    Ok(Verdict::Certified(Certificate {
        weights,
        theorem: Theorem::Main,
        status,
        relation: Some(rel),
        r: Some(r),
        witnesses: witnesses.into_iter().map(|w| w.expect("checked")).collect(),
        bounds,
        base_evidence: base,
        negative_curve: curve,
        fan,
        overlap,
        notes,
    }))
}

/// Certificate from a negative curve `λπ*B − μE` on `Bl_p P(a,b,c)`.
pub fn certify_general(
    w: &WeightsTriple,
    ds: &[Int],
    curve: &NegativeCurve,
    evidence: &Evidence,
    opts: &CertifyOptions,
) -> Result<Verdict> {
    let weights = check_inputs(w, ds)?;
    if !curve.lambda.is_positive() || !curve.mu.is_positive() {
        return arg("λ and μ must be positive");
    }
    let mut reasons = Vec::new();
    let witnesses = common_checks(&weights, w, &mut reasons);
    let bound = curve.bound(w);
    let mut bounds = Vec::new();
    for d in ds {
        let check = BoundCheck::new(d, &bound);
        if check.ok != negativity_check(&curve.lambda, &curve.mu, d, &w.product()) {
            return Err(Error::Consistency(format!(
                "bound forms disagree for d = {d}"
            )));
        }
        if !check.ok {
            reasons.push(reason(
                ReasonCode::BoundViolated,
                format!("{d} ≥ abcμ/λ = {bound}"),
            ));
        }
        bounds.push(check);
    }
    let fan_relation = find_fan_relation(w, &opts.max_g);
    if fan_relation.is_none() {
        reasons.push(reason(
            ReasonCode::NoRelation,
            format!("no relation with a distinguished r for g ≤ {}", opts.max_g),
        ));
    }
    let resolved = resolve_evidence(w, evidence, &opts.scales)?;
    let (base, family_member) = match resolved {
        Ok((b, m)) => (Some(b), m),
        Err(r) => {
            reasons.push(r);
            (None, None)
        }
    };
    if !reasons.is_empty() {
        return Ok(Verdict::Rejected(Rejection { weights, reasons }));
    }
    let base = base.expect("checked");
    let (rel, r) = fan_relation.expect("checked");
    let surface = surface_fan_with_r(&rel, w, r.clone())?;
    let fan = ambient_fan_from_surface(&surface, ds)?;
    verify_intersections(&fan)?;
    let mut notes = Vec::new();
    let is_agk_curve =
        matches!(&family_member, Some(m) if m.family == Family::Agk && &m.negative_curve == curve);
    if let Some(m) = &family_member {
        if &m.negative_curve != curve {
            notes.push(format!(
                "curve (λ, μ) = ({}, {}) was supplied by the caller; the family's curve is ({}, {})",
                curve.lambda, curve.mu, m.negative_curve.lambda, m.negative_curve.mu
            ));
        }
    } else {
        notes.push("negative curve supplied by the caller".into());
    }
    if !rel.width_below_one() {
        notes.push(format!("fan built from a relation of width {}", rel.width));
    }
    let overlap = overlap_flags(w, ds, Some(&rel), &opts.scales)?;
    let status = match base.kind {
        EvidenceKind::Family => Status::Unconditional,
        EvidenceKind::UserAsserted => Status::Conditional,
    };
    Ok(Verdict::Certified(Certificate {
        weights,
        theorem: if is_agk_curve {
            Theorem::CorollaryAgk
        } else {
            Theorem::General
        },
        status,
        relation: Some(rel),
        r: Some(r),
        witnesses: witnesses.into_iter().map(|w| w.expect("checked")).collect(),
        bounds,
        base_evidence: base,
        negative_curve: curve.clone(),
        fan,
        overlap,
        notes,
    }))
}

/// `P(a,b,c,a,…,a)` of dimension `n`, for `a < b < c`.
pub fn certify_all_a(
    w: &WeightsTriple,
    n: usize,
    evidence: &Evidence,
    opts: &CertifyOptions,
) -> Result<Verdict> {
    if !(w.a < w.b && w.b < w.c) {
        return arg(format!("expected a < b < c, got {w}"));
    }
    if n < 3 {
        return arg("dimension must be at least 3");
    }
    let ds = vec![w.a.clone(); n - 2];
    let verdict = certify_main(w, &ds, evidence, opts)?;
    Ok(match verdict {
        Verdict::Certified(mut cert) => {
            cert.theorem = Theorem::CorollaryA;
            cert.notes
                .push("a²w < a² < abc, so the bound holds for d = a".into());
            Verdict::Certified(cert)
        }
        rejected => rejected,
    })
}

/// Evidence and curve from the AGK family at `m`.
pub fn certify_agk(m: &Int, ds: &[Int], opts: &CertifyOptions) -> Result<Verdict> {
    let member = families::agk(m)?
        .accepted()
        .ok_or_else(|| Error::Consistency(format!("AGK member {m} is not pairwise coprime")))?;
    certify_general(
        &member.weights,
        ds,
        &member.negative_curve,
        &Evidence::Family {
            family: Family::Agk,
            param: m.clone(),
        },
        opts,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapCheck {
    /// `find_relation(a,b,c)` has width `< 1` and `d = c·g`.
    pub d_equals_cg: bool,
    pub quad: Option<QuadRelation>,
    /// The 3-fold slice criterion on the polytope of `quad`.
    pub threefold: Option<ThreefoldStability>,
    pub is_gk17_overlap: bool,
}

impl OverlapCheck {
    pub fn is_overlap(&self) -> bool {
        self.d_equals_cg
    }
}

pub fn overlap_check(w: &WeightsTriple, d: &Int, scales: &[u32]) -> Result<OverlapCheck> {
    if !d.is_positive() {
        return arg(format!("weight {d} is not positive"));
    }
    let d_equals_cg = match find_relation(w) {
        Some(rel) => {
            let roles = rel.roles(w);
            &roles.c * &rel.g == *d
        }
        None => false,
    };
    let mut weights = w.to_vec();
    weights.push(d.clone());
    let quad = if well_formed(&weights) {
        find_quad_relation(&weights)?
    } else {
        None
    };
    let threefold = match &quad {
        Some(q) if q.w < Rational::one() => {
            let (t, u) = default_tu(q, &weights)?;
            let polytope = gk_polytope_3d(q, &weights, &t, &u)?;
            Some(threefold_criterion_stable(&polytope, scales)?)
        }
        _ => None,
    };
    let is_gk17_overlap = d_equals_cg && threefold.as_ref().is_some_and(|t| t.holds);
    Ok(OverlapCheck {
        d_equals_cg,
        quad,
        threefold,
        is_gk17_overlap,
    })
}

fn verify_fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}

/// Re-check every stored claim of a certificate from its weights.
pub fn verify(cert: &Certificate) -> Result<()> {
    if cert.weights.len() < 4 {
        return verify_fail("a certificate needs at least four weights");
    }
    let w = cert.base();
    let ds = cert.ds();
    if !well_formed(&cert.weights) {
        return verify_fail("weights are not well-formed");
    }
    if cert.witnesses.len() != ds.len() || cert.bounds.len() != ds.len() {
        return verify_fail("one witness and one bound per extra weight");
    }
    for (d, wit) in ds.iter().zip(&cert.witnesses) {
        if &wit.value(&w) != d || wit.as_array().iter().any(|m| m.is_negative()) {
            return verify_fail(format!("witness does not represent {d}"));
        }
    }
    for (d, b) in ds.iter().zip(&cert.bounds) {
        if &b.value != d || b.ok != (rat_int(d) < b.bound) || !b.ok {
            return verify_fail(format!("bound check for {d} does not hold"));
        }
        if !negativity_check(
            &cert.negative_curve.lambda,
            &cert.negative_curve.mu,
            d,
            &w.product(),
        ) {
            return verify_fail(format!("curve is not negative on Y for d = {d}"));
        }
    }
    let rel = cert.relation.as_ref();
    match cert.theorem {
        Theorem::Main | Theorem::CorollaryA => {
            if !w.pairwise_coprime() {
                return verify_fail("(a,b,c) is not pairwise coprime");
            }
            let rel = rel.ok_or_else(|| Error::Consistency("missing relation".into()))?;
            if find_relation(&w).as_ref() != Some(rel) || !rel.width_below_one() {
                return verify_fail("stored relation is not the width < 1 relation");
            }
            let roles = rel.roles(&w);
            let bound = Rational::new(&roles.a * &roles.b, rel.g.clone());
            if cert.bounds.iter().any(|b| b.bound != bound) {
                return verify_fail("bounds differ from ab/g");
            }
            if cert.negative_curve.lambda != rat_int(&(&roles.c * &rel.g))
                || !cert.negative_curve.mu.is_one()
            {
                return verify_fail("curve is not cg·π*B − E");
            }
            if cert.theorem == Theorem::CorollaryA && ds.iter().any(|d| d != &w.a) {
                return verify_fail("all extra weights must equal a");
            }
        }
        Theorem::General | Theorem::CorollaryAgk => {
            let bound = cert.negative_curve.bound(&w);
            if cert.bounds.iter().any(|b| b.bound != bound) {
                return verify_fail("bounds differ from abcμ/λ");
            }
            if cert.theorem == Theorem::CorollaryAgk {
                let member = match (cert.base_evidence.family, &cert.base_evidence.param) {
                    (Some(Family::Agk), Some(p)) => families::agk(p)?.accepted(),
                    _ => None,
                };
                match member {
                    Some(m) if m.weights == w && m.negative_curve == cert.negative_curve => {}
                    _ => return verify_fail("AGK evidence does not match the weights and curve"),
                }
            }
        }
    }
    if let (Some(rel), Some(r)) = (rel, &cert.r) {
        if &find_r(rel, &w)? != r {
            return verify_fail("stored r is not the distinguished one");
        }
        let surface = surface_fan_with_r(rel, &w, r.clone())?;
        let fan = ambient_fan_from_surface(&surface, ds)?;
        if fan != cert.fan {
            return verify_fail("stored fan differs from the reconstructed one");
        }
    } else {
        return verify_fail("missing relation or r");
    }
    cert.fan.validate()?;
    match (cert.base_evidence.kind, cert.status) {
        (EvidenceKind::UserAsserted, Status::Conditional)
        | (EvidenceKind::Family, Status::Unconditional) => {}
        _ => return verify_fail("status does not match the evidence kind"),
    }
    if cert.base_evidence.kind == EvidenceKind::Family {
        let (Some(family), Some(param)) = (cert.base_evidence.family, &cert.base_evidence.param)
        else {
            return verify_fail("family evidence without family and parameter");
        };
        match families::member(family, param)? {
            FamilyOutcome::Accepted(m) if same_multiset(&m.weights, &w) => {}
            _ => return verify_fail("family evidence does not match the weights"),
        }
    }
    let d_equals_cg = match (ds, find_relation(&w)) {
        ([d], Some(rel)) => &rel.roles(&w).c * &rel.g == *d,
        _ => false,
    };
    if d_equals_cg != cert.overlap.d_equals_cg || (cert.overlap.is_gk17_overlap && !d_equals_cg) {
        return verify_fail("overlap flags are inconsistent");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn w(a: i64, b: i64, c: i64) -> WeightsTriple {
        WeightsTriple::from_i64(a, b, c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn gkt0() -> Evidence {
        Evidence::Family {
            family: Family::Gkt,
            param: int(0),
        }
    }

    fn opts() -> CertifyOptions {
        CertifyOptions::default()
    }

    #[test]
    fn main_examples() {
        let v = certify_main(&w(7, 15, 26), &ints(&[22]), &gkt0(), &opts()).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.theorem, Theorem::Main);
        assert_eq!(cert.bounds[0].bound, rat(105, 2));
        assert!(!cert.overlap.d_equals_cg);
        assert_eq!(cert.base_evidence.surface_criterion, Some(true));
        verify(cert).unwrap();

        let v = certify_main(&w(7, 15, 26), &ints(&[53]), &gkt0(), &opts()).unwrap();
        assert!(v.rejection().unwrap().has(ReasonCode::BoundViolated));
        let v = certify_main(&w(7, 15, 26), &ints(&[11]), &gkt0(), &opts()).unwrap();
        assert!(v.rejection().unwrap().has(ReasonCode::NotInSemigroup));
        let v = certify_main(&w(7, 15, 26), &ints(&[26, 26, 26]), &gkt0(), &opts()).unwrap();
        verify(v.certificate().unwrap()).unwrap();
    }

    #[test]
    fn reasons_accumulate() {
        let v = certify_main(&w(7, 15, 26), &ints(&[11, 53]), &Evidence::None, &opts()).unwrap();
        let r = v.rejection().unwrap();
        assert!(r.has(ReasonCode::NotInSemigroup));
        assert!(r.has(ReasonCode::BoundViolated));
        assert!(r.has(ReasonCode::NoBaseEvidence));
    }

    #[test]
    fn headline_overlap() {
        let v = certify_main(&w(7, 15, 26), &ints(&[52]), &Evidence::Auto, &opts()).unwrap();
        let cert = v.certificate().unwrap();
        assert!(cert.overlap.d_equals_cg);
        assert!(cert.overlap.is_gk17_overlap);
        verify(cert).unwrap();
        assert!(!overlap_check(&w(7, 15, 26), &int(22), &DEFAULT_SCALES)
            .unwrap()
            .is_overlap());
        assert!(!overlap_check(&w(7, 15, 26), &int(26), &DEFAULT_SCALES)
            .unwrap()
            .is_overlap());
    }

    #[test]
    fn asserted_evidence_is_conditional() {
        let v = certify_main(
            &w(7, 15, 26),
            &ints(&[22]),
            &Evidence::Asserted("known".into()),
            &opts(),
        )
        .unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.status, Status::Conditional);
        verify(cert).unwrap();
    }

    #[test]
    fn general_examples() {
        let v = certify_agk(&int(1), &ints(&[37]), &opts()).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.theorem, Theorem::CorollaryAgk);
        assert_eq!(cert.bounds[0].bound, rat(126, 1));
        verify(cert).unwrap();
        let v = certify_agk(&int(1), &ints(&[126]), &opts()).unwrap();
        assert!(v.rejection().unwrap().has(ReasonCode::BoundViolated));
        let v = certify_agk(&int(1), &ints(&[9, 9, 9]), &opts()).unwrap();
        verify(v.certificate().unwrap()).unwrap();
        let v = certify_agk(&int(2), &ints(&[16]), &opts()).unwrap();
        verify(v.certificate().unwrap()).unwrap();
    }

    #[test]
    fn all_a_examples() {
        let ev = Evidence::Family {
            family: Family::Gnw1,
            param: int(4),
        };
        let v = certify_all_a(&w(25, 29, 72), 4, &ev, &opts()).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.weights, ints(&[25, 29, 72, 25, 25]));
        assert_eq!(cert.theorem, Theorem::CorollaryA);
        verify(cert).unwrap();
        assert!(certify_all_a(&w(29, 25, 72), 4, &ev, &opts()).is_err());
        let v = certify_all_a(&w(7, 15, 26), 3, &gkt0(), &opts()).unwrap();
        assert_eq!(v.certificate().unwrap().weights, ints(&[7, 15, 26, 7]));
    }

    #[test]
    fn equality_case_is_noted() {
        // 2 + 3 = 5 has width 5/6; d = 6 gives d²w = abc exactly
        let v = certify_main(
            &w(2, 3, 5),
            &ints(&[6]),
            &Evidence::Asserted("test".into()),
            &opts(),
        )
        .unwrap();
        assert!(v.rejection().unwrap().has(ReasonCode::BoundViolated));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let v = certify_main(&w(7, 15, 26), &ints(&[22]), &gkt0(), &opts()).unwrap();
        let mut cert = v.certificate().unwrap().clone();
        cert.bounds[0].bound = rat(10, 1);
        assert!(verify(&cert).is_err());
        let mut cert = v.certificate().unwrap().clone();
        cert.status = Status::Conditional;
        assert!(verify(&cert).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = certify_main(&w(7, 15, 26), &ints(&[52]), &gkt0(), &opts()).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
