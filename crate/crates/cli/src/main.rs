use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use wps_core::certifier::{
    certify_all_a, certify_general, certify_main, overlap_check, CertifyOptions, Evidence, Verdict,
};
use wps_core::families::{self, Family, FamilyOutcome, NegativeCurve};
use wps_core::fans::triangle_delta;
use wps_core::fans::{ambient_fan, facet_polytope, project_polytope, Supports};
use wps_core::gk::{
    default_tu, find_quad_relation, gk_polytope_3d, relation_surface_check,
    threefold_criterion_stable,
};
use wps_core::intersect::verify_intersections;
use wps_core::relations::{find_r, find_relation};
use wps_core::semigroup::{frobenius_bound, member};
use wps_core::{Error, Int, Rational, WeightsTriple};

#[derive(Parser, Debug)]
#[command(
    name = "wps",
    version,
    about = "Certificates for blow-ups of weighted projective spaces"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        value_enum,
        env = "WPS_FORMAT",
        default_value = "text",
        global = true
    )]
    format: Format,

    /// Search limits, e.g. `max_g=10000,max_param=100`.
    #[arg(long, value_parser = parse_limits, global = true)]
    limits: Option<Limits>,

    /// Multipliers of the base scale for the slice criteria.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", global = true)]
    m_scales: Vec<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
struct Limits {
    max_g: Int,
    max_param: Int,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_g: Int::from(10_000),
            max_param: Int::from(100),
        }
    }
}

fn parse_limits(s: &str) -> Result<Limits, String> {
    let mut limits = Limits::default();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{part}'"))?;
        let value = Int::from_str(value.trim()).map_err(|e| format!("{key}: {e}"))?;
        if value <= Int::from(0) {
            return Err(format!("{key} must be positive"));
        }
        match key.trim() {
            "max_g" => limits.max_g = value,
            "max_param" => limits.max_param = value,
            other => {
                return Err(format!(
                    "unknown limit '{other}' (expected max_g or max_param)"
                ))
            }
        }
    }
    Ok(limits)
}

fn parse_int_list(s: &str) -> Result<Vec<Int>, String> {
    s.split(',')
        .map(|p| Int::from_str(p.trim()).map_err(|e| format!("'{p}': {e}")))
        .collect()
}

/// A comma-separated list of integers.
#[derive(Clone, Debug)]
struct IntList(Vec<Int>);

fn parse_int_list_arg(s: &str) -> Result<IntList, String> {
    parse_int_list(s).map(IntList)
}

fn parse_triple(s: &str) -> Result<WeightsTriple, String> {
    match parse_int_list(s)?.as_slice() {
        [a, b, c] => WeightsTriple::new(a.clone(), b.clone(), c.clone()).map_err(|e| e.to_string()),
        other => Err(format!("expected three weights a,b,c, got {}", other.len())),
    }
}

fn parse_evidence(s: &str) -> Result<Evidence, String> {
    if let Some(text) = s.strip_prefix("assert:") {
        return Ok(Evidence::Asserted(text.to_string()));
    }
    if s == "auto" {
        return Ok(Evidence::Auto);
    }
    if s == "none" {
        return Ok(Evidence::None);
    }
    let rest = s.strip_prefix("family:").ok_or_else(|| {
        format!("expected family:<name>:<param>, assert:<text>, auto or none; got '{s}'")
    })?;
    let (name, param) = rest
        .split_once(':')
        .ok_or_else(|| format!("expected family:<name>:<param>, got '{s}'"))?;
    let family = Family::from_str(name).map_err(|e| e.to_string())?;
    let param = Int::from_str(param).map_err(|e| format!("parameter '{param}': {e}"))?;
    Ok(Evidence::Family { family, param })
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| format!("'{s}': {e}"))
}

#[derive(Args, Debug)]
struct WeightsArg {
    /// Weights a,b,c (positional or --weights).
    #[arg(value_parser = parse_triple, required_unless_present = "weights_flag", conflicts_with = "weights_flag")]
    weights: Option<WeightsTriple>,
    #[arg(long = "weights", id = "weights_flag", value_parser = parse_triple)]
    weights_flag: Option<WeightsTriple>,
}

impl WeightsArg {
    fn get(&self) -> WeightsTriple {
        self.weights
            .clone()
            .or_else(|| self.weights_flag.clone())
            .expect("clap enforces one of the two")
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that Bl_p P(a,b,c,d_1,...) is not a Mori dream space.
    Certify {
        #[command(flatten)]
        weights: WeightsArg,
        /// Extra weights d_1,...,d_{n-2}.
        #[arg(long, value_parser = parse_int_list_arg)]
        ds: Option<IntList>,
        /// Certify P(a,b,c,a,...,a) of this dimension.
        #[arg(long, conflicts_with = "ds")]
        all_a: Option<usize>,
        /// Base evidence: family:<name>:<param>, assert:<text>, auto or none.
        #[arg(long, value_parser = parse_evidence, default_value = "auto")]
        evidence: Evidence,
        /// λ of a negative curve λπ*B − μE (selects the general theorem).
        #[arg(long, value_parser = parse_rational, requires = "mu")]
        lambda: Option<Rational>,
        #[arg(long, value_parser = parse_rational, requires = "lambda")]
        mu: Option<Rational>,
    },
    /// Find the relation of width < 1 between three weights.
    FindRelation {
        /// Weights, as `a b c` or `a,b,c`.
        #[arg(required = true, num_args = 1..=3)]
        weights: Vec<String>,
    },
    /// Semigroup membership of d in <a,b,c>.
    Semigroup {
        #[command(flatten)]
        weights: WeightsArg,
        /// Value to test; omit to print the Frobenius number.
        #[arg(long)]
        d: Option<Int>,
    },
    /// Fan of P(a,b,c,ds...), optionally with its polytope and projection.
    Fan {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, value_parser = parse_int_list_arg)]
        ds: Option<IntList>,
        /// Also build the equal-support lattice polytope and check its projection.
        #[arg(long)]
        polytope: bool,
    },
    /// Slice criteria: the surface criterion, or the 3-fold one with --d.
    GkCheck {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        d: Option<Int>,
    },
    /// Certify members of a family, one JSON document per line.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        param_min: Option<Int>,
        #[arg(long)]
        param_max: Option<Int>,
        /// Dimensions n of P(a,b,c,d_1,...,d_{n-2}).
        #[arg(long, value_delimiter = ',', default_value = "3")]
        dims: Vec<usize>,
        /// all-a, a-plus-b, or a comma list of extra weights.
        #[arg(long, default_value = "all-a")]
        ds: String,
    },
    /// Intersection identities on P(a,b,c,ds...) and its surface.
    Intersect {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, value_parser = parse_int_list_arg)]
        ds: Option<IntList>,
    },
    /// Whether P(a,b,c,d) has d = c·g for the width < 1 relation.
    Overlap {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        d: Int,
    },
}

struct Outcome {
    json: serde_json::Value,
    text: String,
    success: bool,
}

fn outcome<T: Serialize>(value: &T, text: String, success: bool) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        json: serde_json::to_value(value)?,
        text,
        success,
    })
}

/// The serialized name of a unit enum variant.
fn wire_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Certified(c) => {
            let mut lines = vec![
                format!(
                    "certified P({}) by {} [{}]",
                    join(&c.weights),
                    wire_name(&c.theorem),
                    wire_name(&c.status)
                ),
                format!("evidence: {}", c.base_evidence.detail),
            ];
            if let Some(rel) = &c.relation {
                lines.push(format!(
                    "relation: ({},{},-{}) width {}",
                    rel.e, rel.f, rel.g, rel.width
                ));
            }
            for b in &c.bounds {
                lines.push(format!("bound: {} < {}", b.value, b.bound));
            }
            lines.push(format!(
                "overlap: d = cg {}, 3-fold slice criterion overlap {}",
                c.overlap.d_equals_cg, c.overlap.is_gk17_overlap
            ));
            lines.extend(c.notes.iter().map(|n| format!("note: {n}")));
            lines.join("\n")
        }
        Verdict::Rejected(r) => {
            let mut lines = vec![format!("rejected P({})", join(&r.weights))];
            lines.extend(
                r.reasons
                    .iter()
                    .map(|x| format!("{}: {}", wire_name(&x.code), x.detail)),
            );
            lines.join("\n")
        }
    }
}

fn join(v: &[Int]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn options(cli: &Cli) -> CertifyOptions {
    CertifyOptions {
        max_g: cli.limits.clone().unwrap_or_default().max_g,
        scales: cli.m_scales.clone(),
    }
}

fn certify(
    w: &WeightsTriple,
    ds: Option<&[Int]>,
    all_a: Option<usize>,
    evidence: &Evidence,
    curve: Option<NegativeCurve>,
    opts: &CertifyOptions,
) -> wps_core::Result<Verdict> {
    if let Some(n) = all_a {
        return certify_all_a(w, n, evidence, opts);
    }
    let ds = ds.unwrap_or_default();
    let family_curve = match evidence {
        Evidence::Family {
            family: Family::Agk,
            param,
        } => families::agk(param)?.accepted().map(|m| m.negative_curve),
        _ => None,
    };
    match curve.or(family_curve) {
        Some(curve) => certify_general(w, ds, &curve, evidence, opts),
        None => certify_main(w, ds, evidence, opts),
    }
}

fn enumerate_ds(spec: &str, w: &WeightsTriple, n: usize) -> anyhow::Result<Vec<Int>> {
    let k = n
        .checked_sub(2)
        .filter(|&k| k >= 1)
        .ok_or_else(|| anyhow!("dimension {n} < 3"))?;
    match spec {
        "all-a" => Ok(vec![w.a.clone(); k]),
        "a-plus-b" => Ok(vec![&w.a + &w.b; k]),
        list => parse_int_list(list.strip_prefix("list:").unwrap_or(list))
            .map_err(|e| anyhow!("--ds: {e}")),
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<bool> {
    let opts = options(cli);
    let result = match &cli.command {
        Command::Certify {
            weights,
            ds,
            all_a,
            evidence,
            lambda,
            mu,
        } => {
            let curve = match (lambda, mu) {
                (Some(lambda), Some(mu)) => Some(NegativeCurve {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                }),
                _ => None,
            };
            if ds.is_none() && all_a.is_none() {
                bail!(Error::Argument("certify needs --ds or --all-a".into()));
            }
            let v = certify(
                &weights.get(),
                ds.as_ref().map(|l| l.0.as_slice()),
                *all_a,
                evidence,
                curve,
                &opts,
            )?;
            outcome(&v, verdict_text(&v), v.is_certified())?
        }
        Command::FindRelation { weights } => {
            let joined = weights.join(",");
            let w = parse_triple(&joined).map_err(|e| Error::Argument(e))?;
            match find_relation(&w) {
                Some(rel) => {
                    let r = find_r(&rel, &w).ok().map(|r| r.r);
                    let text = format!(
                        "({},{},-{}) roles {} width {}{}",
                        rel.e,
                        rel.f,
                        rel.g,
                        rel.roles(&w),
                        rel.width,
                        r.as_ref().map(|r| format!(" r {r}")).unwrap_or_default()
                    );
                    let json =
                        serde_json::json!({ "relation": rel, "r": r.map(|r| r.to_string()) });
                    outcome(&json, text, true)?
                }
                None => outcome(&serde_json::Value::Null, "none".into(), false)?,
            }
        }
        Command::Semigroup { weights, d } => {
            let w = weights.get();
            match d {
                Some(d) => match member(d, &w) {
                    Some(wit) => {
                        let text = format!(
                            "{d} = {}·{} + {}·{} + {}·{}",
                            wit.m0, w.a, wit.m1, w.b, wit.m2, w.c
                        );
                        outcome(&wit, text, true)?
                    }
                    None => outcome(
                        &serde_json::Value::Null,
                        format!("{d} is not in the semigroup"),
                        false,
                    )?,
                },
                None => {
                    let f = frobenius_bound(&w)?;
                    outcome(
                        &serde_json::json!({ "frobenius": f.to_string() }),
                        format!("frobenius number {f}"),
                        true,
                    )?
                }
            }
        }
        Command::Fan {
            weights,
            ds,
            polytope,
        } => {
            let fan = ambient_fan(
                &weights.get(),
                ds.as_ref().map(|l| l.0.as_slice()).unwrap_or_default(),
            )?;
            let mut text: Vec<String> = fan
                .rays
                .iter()
                .enumerate()
                .map(|(i, v)| format!("v{i} = {v}"))
                .collect();
            let mut json = serde_json::json!({ "fan": fan });
            if *polytope {
                let p = facet_polytope(&fan, Supports::Auto)?;
                text.push(format!("supports {}", join(&p.supports)));
                text.extend(
                    p.vertices
                        .iter()
                        .enumerate()
                        .map(|(i, x)| format!("xi{i} = {x}")),
                );
                let projection = if fan.dim() >= 3 {
                    Some(project_polytope(&p)?)
                } else {
                    None
                };
                if let Some(q) = &projection {
                    text.push(format!(
                        "projection: lattice triangle with {} lattice points, supports {}",
                        q.lattice_points,
                        join(&q.supports)
                    ));
                }
                json["polytope"] = serde_json::to_value(&p)?;
                json["projection"] = serde_json::to_value(&projection)?;
            }
            outcome(&json, text.join("\n"), true)?
        }
        Command::GkCheck { weights, d } => {
            let w = weights.get();
            match d {
                None => {
                    let rel = find_relation(&w).ok_or(Error::NoRelation)?;
                    let check = relation_surface_check(&triangle_delta(&rel, &w)?, &cli.m_scales)?;
                    let text = check
                        .checks
                        .iter()
                        .map(|c| {
                            let first = &c.result.per_scale[0];
                            format!(
                                "{:?}: n = {} at m = {}, n·s2 = {}, holds {}",
                                c.orientation, first.n, first.m, first.n_s2, c.result.holds
                            )
                        })
                        .chain([format!("surface criterion holds: {}", check.holds)])
                        .collect::<Vec<_>>()
                        .join("\n");
                    outcome(&check, text, check.holds)?
                }
                Some(d) => {
                    let mut all = w.to_vec();
                    all.push(d.clone());
                    let q = find_quad_relation(&all)?.ok_or(Error::NoRelation)?;
                    let (t, u) = default_tu(&q, &all)?;
                    let polytope = gk_polytope_3d(&q, &all, &t, &u)?;
                    let check = threefold_criterion_stable(&polytope, &cli.m_scales)?;
                    let first = &check.per_scale[0];
                    let text = format!(
                        "quad ({},{},{},{}) W = {}; n = {} at m = {}; holds {}",
                        q.e, q.f, q.g1, q.g2, q.w, first.n, first.m, check.holds
                    );
                    let json =
                        serde_json::json!({ "quad": q, "polytope": polytope, "criterion": check });
                    outcome(&json, text, check.holds)?
                }
            }
        }
        Command::Enumerate {
            family,
            param_min,
            param_max,
            dims,
            ds,
        } => {
            let limits = cli.limits.clone().unwrap_or_default();
            let hi = param_max.clone().unwrap_or(limits.max_param.clone());
            if hi > limits.max_param {
                bail!(Error::Argument(format!(
                    "--param-max {hi} exceeds max_param = {}",
                    limits.max_param
                )));
            }
            let lo = param_min
                .clone()
                .unwrap_or_else(|| Int::from(family.min_param()));
            let members: Vec<_> = families::enumerate(*family, &lo, &hi)?
                .into_iter()
                .filter_map(FamilyOutcome::accepted)
                .collect();
            let jobs: Vec<(usize, usize)> = (0..members.len())
                .flat_map(|i| dims.iter().map(move |&n| (i, n)))
                .collect();
            let verdicts: Vec<anyhow::Result<Verdict>> = jobs
                .par_iter()
                .map(|&(i, n)| {
                    let m = &members[i];
                    let extra = enumerate_ds(ds, &m.weights, n)?;
                    let evidence = Evidence::Family {
                        family: m.family,
                        param: m.param.clone(),
                    };
                    let all_a =
                        (ds == "all-a" && m.weights.a < m.weights.b && m.weights.b < m.weights.c)
                            .then_some(n);
                    Ok(certify(
                        &m.weights,
                        Some(&extra),
                        all_a,
                        &evidence,
                        None,
                        &opts,
                    )?)
                })
                .collect();
            for v in verdicts {
                let v = v?;
                match cli.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&v)?)?,
                    Format::Text => writeln!(
                        out,
                        "{}",
                        verdict_text(&v).lines().next().unwrap_or_default()
                    )?,
                }
            }
            return Ok(true);
        }
        Command::Intersect { weights, ds } => {
            let fan = ambient_fan(
                &weights.get(),
                ds.as_ref().map(|l| l.0.as_slice()).unwrap_or_default(),
            )?;
            let report = verify_intersections(&fan)?;
            let mut text = vec![
                format!("[A]^n = {}", report.a_power_n.coeff),
                format!("[B]^2 = {}", report.b_squared.coeff),
            ];
            text.extend(
                report
                    .b_dot_y
                    .iter()
                    .map(|x| format!("[B].[Y] = {}", x.coeff)),
            );
            outcome(&report, text.join("\n"), true)?
        }
        Command::Overlap { weights, d } => {
            let check = overlap_check(&weights.get(), d, &cli.m_scales)?;
            let text = format!(
                "d = cg: {}; quad: {}; 3-fold slice criterion overlap: {}",
                check.d_equals_cg,
                check
                    .quad
                    .as_ref()
                    .map(|q| format!("({},{},{},{})", q.e, q.f, q.g1, q.g2))
                    .unwrap_or_else(|| "none".into()),
                check.is_gk17_overlap
            );
            outcome(&check, text, check.is_overlap())?
        }
    };
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&result.json)?)?,
        Format::Text => writeln!(out, "{}", result.text)?,
    }
    Ok(result.success)
}

fn broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.downcast_ref::<io::Error>()
            .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out).context("wps") {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) if broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err
                .chain()
                .any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::Argument(_))));
            ExitCode::from(if usage { 2 } else { 3 })
        }
    }
}
