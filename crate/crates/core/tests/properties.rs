mod common;

use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use wps_core::certifier::{self, CertifyOptions, Evidence, ReasonCode, Verdict};
use wps_core::families::NegativeCurve;
use wps_core::fans::{self, surface_fan};
use wps_core::gk::{self, GkTriangle};
use wps_core::intersect::{negativity_check, verify_intersections};
use wps_core::lattice::{int, rat, rat_int};
use wps_core::relations::{self, find_r};
use wps_core::semigroup::{frobenius_bound, member};
use wps_core::snf::{self, LatticeIndex};
use wps_core::{find_relation, Int, LatticeVector, Rational, WeightsTriple};

fn w3(a: i64, b: i64, c: i64) -> WeightsTriple {
    WeightsTriple::from_i64(a, b, c).unwrap()
}

fn i(v: &Int) -> i64 {
    i64::try_from(v).unwrap()
}

fn vecs(rows: &[Vec<i64>]) -> Vec<LatticeVector> {
    rows.iter().map(|r| LatticeVector::from_i64(r)).collect()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-20i64..=20, cols), rows)
}

/// gcd of all `k×k` minors taken from rows `rows` and columns `cols`.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = 0i128;
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i64>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                .collect();
            g = g.gcd(&common::leibniz_det(&sub));
        }
    }
    g
}

/// Pairwise coprime triples up to `max` having a width-<1 relation.
fn related_triple(max: i64) -> impl Strategy<Value = WeightsTriple> {
    (1..=max, 1..=max, 1..=max).prop_filter_map("no width-<1 relation", |(a, b, c)| {
        if !common::pairwise_coprime(a, b, c) {
            return None;
        }
        let w = w3(a, b, c);
        find_relation(&w).map(|_| w)
    })
}

fn lattice_triangle(t: &GkTriangle, m: &Int) -> [(i64, i64); 3] {
    let pt = |p: &wps_core::RationalPoint| {
        let q = p.scaled(&rat_int(m)).to_lattice().unwrap();
        (i(&q.coords()[0]), i(&q.coords()[1]))
    };
    [(0, 0), pt(&t.p_l), pt(&t.p_r)]
}

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 1_000_000, ..ProptestConfig::default() })]

    #[test]
    fn smith_det_matches_leibniz(m in (1usize..=5).prop_flat_map(|n| matrix(n, n))) {
        let d = snf::det(&vecs(&m)).unwrap();
        prop_assert_eq!(d, Int::from(common::leibniz_det(&m)));
    }

    #[test]
    fn lattice_index_is_gcd_of_maximal_minors(
        m in (1usize..=3).prop_flat_map(|n| (n..=n + 2).prop_flat_map(move |k| matrix(k, n)))
    ) {
        let n = m[0].len();
        let g = minor_gcd(&m, n);
        let index = snf::lattice_index(&vecs(&m), n).unwrap();
        if g == 0 {
            prop_assert_eq!(index, LatticeIndex::Infinite);
        } else {
            prop_assert_eq!(index, LatticeIndex::Finite(Int::from(g)));
        }
    }

    #[test]
    fn saturation_index_is_gcd_of_minors(m in (1usize..=2).prop_flat_map(|k| matrix(k, 3))) {
        let g = minor_gcd(&m, m.len());
        prop_assume!(g != 0);
        prop_assert_eq!(snf::saturation_index(&vecs(&m), 3).unwrap(), Int::from(g));
    }

    #[test]
    fn relations_match_brute_force(a in 1i64..=500, b in 1i64..=500, c in 1i64..=500) {
        let bound = 200;
        let oracle = common::brute_relations([a, b, c], bound);
        let lib: BTreeSet<_> = relations::relations_below_width_one(&w3(a, b, c))
            .into_iter()
            .map(|r| (i(&r.e), i(&r.f), i(&r.g), r.perm))
            .filter(|&(e, f, g, _)| e <= bound && f <= bound && g <= bound)
            .collect();
        prop_assert_eq!(lib, oracle);
    }

    #[test]
    fn at_most_one_relation_when_coprime(a in 1i64..=2000, b in 1i64..=2000, c in 1i64..=2000) {
        prop_assume!(common::pairwise_coprime(a, b, c));
        prop_assert!(relations::relations_below_width_one(&w3(a, b, c)).len() <= 1);
    }

    #[test]
    fn member_is_lex_min_witness(a in 1i64..=60, b in 1i64..=60, c in 1i64..=60, d in 0i64..=3000) {
        let got = member(&int(d), &w3(a, b, c)).map(|s| (i(&s.m0), i(&s.m1), i(&s.m2)));
        prop_assert_eq!(got, common::brute_witness(d, [a, b, c]));
    }

    #[test]
    fn frobenius_matches_dp(a in 2i64..=40, b in 2i64..=40, c in 2i64..=40) {
        prop_assume!(common::gcd3(a, b, c) == 1);
        let limit = 70_000;
        let reach = common::reachable(&[a, b, c], limit);
        let largest_gap = (0..=limit).rev().find(|&d| !reach[d]).map_or(-1, |d| d as i64);
        prop_assert!(largest_gap < (limit as i64) / 2);
        prop_assert_eq!(i(&frobenius_bound(&w3(a, b, c)).unwrap()), largest_gap);
    }

    #[test]
    fn surface_fan_is_balanced(w in related_triple(300)) {
        let rel = find_relation(&w).unwrap();
        let r = find_r(&rel, &w).unwrap();
        prop_assert_eq!(relations::r_candidates(&rel, &w).len(), 1);
        let fan = surface_fan(&rel, &w).unwrap();
        fan.validate().unwrap();
        let roles = rel.roles(&w);
        let (a, b, c) = (i(&roles.a), i(&roles.b), i(&roles.c));
        let (e, f, g, r) = (i(&rel.e), i(&rel.f), i(&rel.g), i(&r.r));
        let want = [[(e * r - b) / g, -e], [(f * r + a) / g, -f], [-r, g]];
        for (ray, want) in fan.rays.iter().zip(want) {
            prop_assert_eq!(ray.coords().iter().map(i).collect::<Vec<_>>(), want.to_vec());
        }
        for k in 0..2 {
            prop_assert_eq!(a * want[0][k] + b * want[1][k] + c * want[2][k], 0);
        }
    }

    #[test]
    fn intersection_identities_hold(
        w in related_triple(60),
        extra in prop::collection::vec(1i64..=200, 1..=2),
    ) {
        let ds: Vec<Int> = extra.iter().map(|&d| int(d)).collect();
        let mut all = w.to_vec();
        all.extend(ds.iter().cloned());
        prop_assume!(certifier::well_formed(&all));
        prop_assume!(extra.iter().all(|&d| common::brute_witness(d, [i(&w.a), i(&w.b), i(&w.c)]).is_some()));
        let fan = fans::ambient_fan(&w, &ds).unwrap();
        let report = verify_intersections(&fan).unwrap();
        let abc = w.product();
        prop_assert_eq!(&report.b_squared.coeff, &Rational::new(int(1), abc.clone()));
        for (dot, d) in report.b_dot_y.iter().zip(&ds) {
            prop_assert_eq!(&dot.coeff, &Rational::new(d.clone(), abc.clone()));
        }
    }

    #[test]
    fn slice_counts_match_brute_force(w in related_triple(40)) {
        let rel = find_relation(&w).unwrap();
        let base = gk::gk_triangle_from_delta(&fans::triangle_delta(&rel, &w).unwrap()).unwrap();
        for t in [base.clone(), base.reflected().unwrap()] {
            let m = t.base_scale();
            prop_assume!(m <= int(300));
            for (x, count) in common::brute_triangle_slices(lattice_triangle(&t, &m)) {
                prop_assert_eq!(i(&gk::slice_count_2d(&t, &m, &int(x)).unwrap()), count);
            }
        }
    }

    #[test]
    fn shear_preserves_slice_counts(w in related_triple(80), k in -4i64..=4) {
        let rel = find_relation(&w).unwrap();
        let t = gk::gk_triangle_from_delta(&fans::triangle_delta(&rel, &w).unwrap()).unwrap();
        let s = t.sheared(&int(k)).unwrap();
        let m = t.base_scale() * 2;
        let mut x = t.left_end(&m);
        while x <= t.right_end(&m) {
            prop_assert_eq!(t.slice_count(&m, &x).unwrap(), s.slice_count(&m, &x).unwrap());
            x += 1;
        }
        let c0 = gk::gk_surface_criterion(&t, &m).unwrap();
        let c1 = gk::gk_surface_criterion(&s, &m).unwrap();
        prop_assert_eq!(&c0.n, &c1.n);
        prop_assert_eq!(&c0.right_count, &c1.right_count);
        prop_assert_eq!(c1.n_s2, c0.n_s2 + rat_int(&c1.n) * rat(k, 1));
    }

    #[test]
    fn quad_relation_for_d_equal_cg(w in related_triple(60)) {
        let rel = find_relation(&w).unwrap();
        let roles = rel.roles(&w);
        let d = &roles.c * &rel.g;
        let weights = vec![w.a.clone(), w.b.clone(), w.c.clone(), d];
        let q = gk::find_quad_relation(&weights).unwrap().unwrap();
        prop_assert_eq!(&q.g2, &int(1));
        prop_assert_eq!(&q.g1, &rel.g);
        prop_assert_eq!(&q.w, &rel.width);
        let (t, u) = gk::default_tu(&q, &weights).unwrap();
        prop_assert!(gk::tu_admissible(&q, &weights, &t, &u).unwrap());
        let d = gk::gk_polytope_3d(&q, &weights, &t, &u).unwrap();
        prop_assert_eq!(&d.width, &rel.width);
    }

    #[test]
    fn admissible_tu_is_exactly_a_lattice_fan(w in related_triple(40), t in -30i64..=30) {
        let rel = find_relation(&w).unwrap();
        let roles = rel.roles(&w);
        let weights = vec![w.a.clone(), w.b.clone(), w.c.clone(), &roles.c * &rel.g];
        let q = gk::find_quad_relation(&weights).unwrap().unwrap();
        let ok = gk::tu_admissible(&q, &weights, &int(t), &int(0)).unwrap();
        let built = gk::gk_polytope_3d(&q, &weights, &int(t), &int(0));
        prop_assert_eq!(built.is_ok(), ok);
    }

    #[test]
    fn negativity_is_the_bound(lambda in 1i64..=500, mu in 1i64..=500, d in 1i64..=2000, abc in 1i64..=5000) {
        let (l, m) = (rat(lambda, 1), rat(mu, 1));
        // λd/abc − μ < 0 ⟺ λd < μ·abc
        prop_assert_eq!(negativity_check(&l, &m, &int(d), &int(abc)), lambda * d < mu * abc);
        let curve = NegativeCurve { lambda: l, mu: m };
        let w = w3(1, 1, abc);
        prop_assert_eq!(rat(d, 1) < curve.bound(&w), lambda * d < mu * abc);
    }

    #[test]
    fn certificates_round_trip_and_verify(w in related_triple(50), d in 1i64..=300) {
        let v = certifier::certify_main(&w, &[int(d)], &Evidence::Asserted("given".into()), &CertifyOptions::default()).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &v);
        if let Some(cert) = v.certificate() {
            certifier::verify(cert).unwrap();
        }
    }

    #[test]
    fn monotone_in_extra_weights(w in related_triple(40), ds in prop::collection::vec(1i64..=150, 2..=4), drop in 0usize..4) {
        let full: Vec<Int> = ds.iter().map(|&d| int(d)).collect();
        let ev = Evidence::Asserted("given".into());
        let opts = CertifyOptions::default();
        let v = certifier::certify_main(&w, &full, &ev, &opts).unwrap();
        prop_assume!(v.is_certified());
        let mut sub = full.clone();
        sub.remove(drop % sub.len());
        let mut all = w.to_vec();
        all.extend(sub.iter().cloned());
        // dropping a weight can break well-formedness only through gcds, never the bounds
        prop_assume!(certifier::well_formed(&all));
        prop_assert!(certifier::certify_main(&w, &sub, &ev, &opts).unwrap().is_certified());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, max_global_rejects: 10_000_000, ..ProptestConfig::default() })]

    #[test]
    fn main_theorem_width_form_equals_threshold_form(w in related_triple(60), d in 1i64..=400) {
        let rel = find_relation(&w).unwrap();
        let roles = rel.roles(&w);
        let (a, b, c) = (i(&w.a), i(&w.b), i(&w.c));
        let (ra, rb, g) = (i(&roles.a), i(&roles.b), i(&rel.g));
        let v = certifier::certify_main(&w, &[int(d)], &Evidence::Asserted("given".into()), &CertifyOptions::default()).unwrap();
        // d²w < abc with w = c'g²/(a'b') is d·g < a'b'
        let below = d * g < ra * rb;
        let in_semigroup = common::brute_witness(d, [a, b, c]).is_some();
        let well_formed = [a, b, c, d].iter().enumerate().all(|(skip, _)| {
            let rest: Vec<i64> = [a, b, c, d].iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect();
            common::gcd3(rest[0], rest[1], rest[2]) == 1
        });
        prop_assert_eq!(v.is_certified(), below && in_semigroup && well_formed);
        if let Some(rej) = v.rejection() {
            prop_assert_eq!(rej.has(ReasonCode::BoundViolated), !below);
            prop_assert_eq!(rej.has(ReasonCode::NotInSemigroup), !in_semigroup);
            prop_assert_eq!(rej.has(ReasonCode::NotWellFormed), !well_formed);
        }
    }
}
