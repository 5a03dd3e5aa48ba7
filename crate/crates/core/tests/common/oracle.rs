//! Brute-force reference computations over `i64`, independent of the library.

use std::collections::BTreeSet;

pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

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

/// Elementary divisors from gcds of minors: `d_k = D_k / D_{k-1}`.
pub fn elementary_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            out.resize(rows.min(cols), 0);
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Integer points `x = Σ c_i g_i` with every `c_i ∈ [0, 1)`, for linearly
/// independent `g_i`; found by scanning the bounding box.
pub fn parallelepiped_count(gens: &[Vec<i64>]) -> u64 {
    let k = gens.len();
    if k == 0 {
        return 1;
    }
    let r = gens[0].len();
    // Choose k coordinates on which the generators are independent.
    let rows = subsets(r, k)
        .into_iter()
        .find(|rs| det(&rs.iter().map(|&i| gens.iter().map(|g| g[i]).collect()).collect::<Vec<_>>()) != 0)
        .expect("independent generators");
    let a: Vec<Vec<i64>> = rows.iter().map(|&i| gens.iter().map(|g| g[i]).collect()).collect();
    let d = det(&a);
    // adj(a)[j][i] = (-1)^{i+j} det(a without row i, column j)
    let adj: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    let minor: Vec<Vec<i64>> = (0..k)
                        .filter(|&x| x != i)
                        .map(|x| (0..k).filter(|&y| y != j).map(|y| a[x][y]).collect())
                        .collect();
                    if (i + j) % 2 == 0 { det(&minor) } else { -det(&minor) }
                })
                .collect()
        })
        .collect();
    let lo: Vec<i64> = (0..r).map(|i| gens.iter().map(|g| g[i].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..r).map(|i| gens.iter().map(|g| g[i].max(0)).sum()).collect();
    let mut count = 0;
    let mut x = lo.clone();
    loop {
        let sub: Vec<i64> = rows.iter().map(|&i| x[i]).collect();
        // d * c = adj * sub
        let dc: Vec<i64> = adj.iter().map(|row| row.iter().zip(&sub).map(|(p, q)| p * q).sum()).collect();
        let inside = dc.iter().all(|&v| if d > 0 { 0 <= v && v < d } else { d < v && v <= 0 });
        if inside {
            let full: Vec<i64> = (0..r).map(|i| gens.iter().zip(&dc).map(|(g, c)| g[i] * c).sum()).collect();
            if full.iter().zip(&x).all(|(f, xi)| *f == d * xi) {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return count;
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// The multiplicity of a simplicial cone with rays `rays` against a lattice
/// with basis `l`, when `rank L + dim σ` is the ambient rank:
/// `[Z^r : L + ZΣ] / [Lin σ ∩ Z^r : ZΣ]`.
pub fn multiplicity_by_cosets(l: &[Vec<i64>], rays: &[Vec<i64>]) -> u64 {
    let all: Vec<Vec<i64>> = l.iter().chain(rays).cloned().collect();
    parallelepiped_count(&all) / parallelepiped_count(rays)
}

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Cones of a rank-2 fan (given by ray lists, at most two rays, the pair in
/// counterclockwise order) whose relative interior meets `ψ + R l`, by
/// scanning `t` on a grid fine enough to hit every crossing point and every
/// gap between consecutive crossings.
pub fn slice_class_2d(cones: &[Vec<Vec<i64>>], psi: &[i64], l: &[i64]) -> BTreeSet<usize> {
    let rays: BTreeSet<&Vec<i64>> = cones.iter().flatten().collect();
    let mut den = 1;
    let mut span = psi.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    for r in &rays {
        let d = det2(r, l).abs();
        if d != 0 {
            den = lcm(den, d);
            span = span.max(det2(r, psi).abs() / d + 1);
        }
    }
    let den = 2 * den;
    let mut out = BTreeSet::new();
    for k in -span * den..=span * den {
        let x = [psi[0] * den + k * l[0], psi[1] * den + k * l[1]];
        for (i, c) in cones.iter().enumerate() {
            let hit = match c.len() {
                0 => x == [0, 0],
                1 => det2(&c[0], &x) == 0 && c[0][0] * x[0] + c[0][1] * x[1] > 0,
                _ => det2(&c[0], &x) > 0 && det2(&x, &c[1]) > 0,
            };
            if hit {
                out.insert(i);
            }
        }
    }
    out
}
