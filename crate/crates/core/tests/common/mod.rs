//! Brute-force oracles shared by the integration tests. None of them call
//! into the algorithms they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

pub fn pairwise_coprime(a: i64, b: i64, c: i64) -> bool {
    gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1
}

/// Determinant by Leibniz expansion.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i64>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]] as i128).product();
        *total += if inversions % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Relations `(e, f, g, [ia, ib, ic])` with `w[ia]·e + w[ib]·f = w[ic]·g`,
/// `gcd(e,f,g) = 1`, width `< 1`, found by looping over `(e, f)` up to `max`.
pub fn brute_relations(w: [i64; 3], max: i64) -> BTreeSet<(i64, i64, i64, [usize; 3])> {
    let mut out = BTreeSet::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 2, 0]] {
        let (a, b, c) = (w[perm[0]], w[perm[1]], w[perm[2]]);
        for e in 1..=max {
            for f in 1..=max {
                let s = a * e + b * f;
                if s % c != 0 {
                    continue;
                }
                let g = s / c;
                if g <= max
                    && gcd3(e, f, g) == 1
                    && (c as i128) * (g as i128) * (g as i128) < (a as i128) * (b as i128)
                {
                    out.insert((e, f, g, perm));
                }
            }
        }
    }
    out
}

/// `reach[d]` for `d ≤ limit`: whether `d` is a non-negative combination of `gens`.
pub fn reachable(gens: &[i64], limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for d in 1..=limit {
        reach[d] = gens
            .iter()
            .any(|&g| g as usize <= d && reach[d - g as usize]);
    }
    reach
}

/// Lexicographically smallest `(m0, m1, m2)` by exhaustive search.
pub fn brute_witness(d: i64, w: [i64; 3]) -> Option<(i64, i64, i64)> {
    for m0 in 0..=d / w[0] {
        for m1 in 0..=(d - m0 * w[0]) / w[1] {
            let rest = d - m0 * w[0] - m1 * w[1];
            if rest % w[2] == 0 {
                return Some((m0, m1, rest / w[2]));
            }
        }
    }
    None
}

/// Lattice points of the triangle with integer vertices, grouped by `x`.
pub fn brute_triangle_slices(v: [(i64, i64); 3]) -> std::collections::BTreeMap<i64, i64> {
    let cross = |o: (i64, i64), a: (i64, i64), p: (i64, i64)| {
        (a.0 - o.0) as i128 * (p.1 - o.1) as i128 - (a.1 - o.1) as i128 * (p.0 - o.0) as i128
    };
    let orient = cross(v[0], v[1], v[2]).signum();
    let xs = v.iter().map(|p| p.0);
    let ys = v.iter().map(|p| p.1);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut out = std::collections::BTreeMap::new();
    for x in x0..=x1 {
        let mut count = 0;
        for y in y0..=y1 {
            let p = (x, y);
            let inside = (0..3).all(|i| cross(v[i], v[(i + 1) % 3], p) * orient >= 0);
            if inside {
                count += 1;
            }
        }
        out.insert(x, count);
    }
    out
}

/// For the tetrahedron with integer vertices, the number of distinct `y`
/// values among its lattice points on each plane `x = i`.
pub fn brute_tetra_slice_sizes(v: [[i64; 3]; 4]) -> std::collections::BTreeMap<i64, i64> {
    let sub = |p: [i64; 3], q: [i64; 3]| [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    let cross = |u: [i64; 3], w: [i64; 3]| {
        [
            u[1] as i128 * w[2] as i128 - u[2] as i128 * w[1] as i128,
            u[2] as i128 * w[0] as i128 - u[0] as i128 * w[2] as i128,
            u[0] as i128 * w[1] as i128 - u[1] as i128 * w[0] as i128,
        ]
    };
    let dot =
        |n: [i128; 3], p: [i64; 3]| n[0] * p[0] as i128 + n[1] * p[1] as i128 + n[2] * p[2] as i128;
    // facet opposite vertex k: n·p ≤ h, oriented so the opposite vertex is inside
    let facets: Vec<([i128; 3], i128)> = (0..4)
        .map(|k| {
            let idx: Vec<usize> = (0..4).filter(|&j| j != k).collect();
            let (p, q, r) = (v[idx[0]], v[idx[1]], v[idx[2]]);
            let mut n = cross(sub(q, p), sub(r, p));
            let mut h = dot(n, p);
            if dot(n, v[k]) > h {
                n = [-n[0], -n[1], -n[2]];
                h = -h;
            }
            (n, h)
        })
        .collect();
    let lo = |c: usize| v.iter().map(|p| p[c]).min().unwrap();
    let hi = |c: usize| v.iter().map(|p| p[c]).max().unwrap();
    let mut out = std::collections::BTreeMap::new();
    for x in lo(0)..=hi(0) {
        let mut ys = BTreeSet::new();
        for y in lo(1)..=hi(1) {
            for z in lo(2)..=hi(2) {
                let p = [x, y, z];
                if facets.iter().all(|&(n, h)| dot(n, p) <= h) {
                    ys.insert(y);
                }
            }
        }
        out.insert(x, ys.len() as i64);
    }
    out
}
