#![allow(dead_code)]

pub mod oracle;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use toric_chow::lattice::{self, ivec, Int, IntMatrix, IntVec, Sublattice};
use toric_chow::polyhedra::{Cone, Fan};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p2() -> (Fan, Sublattice) {
    let f = Fan::from_maximal_cones(
        2,
        &[
            Cone::from_i64(&[&[1, 0], &[0, 1]]),
            Cone::from_i64(&[&[0, 1], &[-1, -1]]),
            Cone::from_i64(&[&[-1, -1], &[1, 0]]),
        ],
    );
    (f, Sublattice::new(2, &[ivec(&[1, 0])]))
}

pub fn p1p1() -> (Fan, Sublattice) {
    let f = Fan::from_maximal_cones(
        2,
        &[
            Cone::from_i64(&[&[1, 0], &[0, 1]]),
            Cone::from_i64(&[&[0, 1], &[-1, 0]]),
            Cone::from_i64(&[&[-1, 0], &[0, -1]]),
            Cone::from_i64(&[&[0, -1], &[1, 0]]),
        ],
    );
    (f, Sublattice::new(2, &[ivec(&[1, 1])]))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

pub fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// A complete rank-2 fan: primitive rays with entries in `[-m, m]`, sorted by
/// angle, consecutive gaps below a half turn.
pub fn random_fan2(rng: &mut impl Rng, m: i64) -> Vec<[i64; 2]> {
    loop {
        let k = rng.gen_range(3..=6);
        let mut rays: Vec<[i64; 2]> = Vec::new();
        while rays.len() < k {
            let v = [rng.gen_range(-m..=m), rng.gen_range(-m..=m)];
            if gcd(v[0], v[1]) == 1 && !rays.contains(&v) {
                rays.push(v);
            }
        }
        rays.sort_by(|a, b| (a[1] as f64).atan2(a[0] as f64).total_cmp(&(b[1] as f64).atan2(b[0] as f64)));
        let ok = (0..k).all(|i| det2(&rays[i], &rays[(i + 1) % k]) > 0);
        if ok {
            return rays;
        }
    }
}

pub fn fan2(rays: &[[i64; 2]]) -> Fan {
    let k = rays.len();
    let cones: Vec<Cone> = (0..k).map(|i| Cone::from_i64(&[&rays[i], &rays[(i + 1) % k]])).collect();
    Fan::from_maximal_cones(2, &cones)
}

fn unimodular3(rng: &mut impl Rng) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..4 {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let c = rng.gen_range(-1..=1);
        let src = m[j];
        for (x, y) in m[i].iter_mut().zip(src) {
            *x += c * y;
        }
    }
    let mut perm = [0, 1, 2];
    perm.shuffle(rng);
    [m[perm[0]], m[perm[1]], m[perm[2]]]
}

/// A complete simplicial rank-3 fan: the orthant fan in a random lattice
/// basis followed by a few stellar subdivisions. Cones are ray triples.
pub fn random_fan3(rng: &mut impl Rng) -> Vec<[[i64; 3]; 3]> {
    let m = unimodular3(rng);
    let apply = |v: [i64; 3]| -> [i64; 3] {
        [0, 1, 2].map(|i| (0..3).map(|j| m[i][j] * v[j]).sum())
    };
    let mut cones = Vec::new();
    for s in 0..8 {
        let sign = |b: usize| if s >> b & 1 == 1 { -1 } else { 1 };
        cones.push([apply([sign(0), 0, 0]), apply([0, sign(1), 0]), apply([0, 0, sign(2)])]);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let c = cones[rng.gen_range(0..cones.len())];
        let face: Vec<[i64; 3]> = if rng.gen_bool(0.5) { c.to_vec() } else { vec![c[0], c[1]] };
        let mut v = [0i64; 3];
        for r in &face {
            for i in 0..3 {
                v[i] += r[i];
            }
        }
        let mut next = Vec::new();
        for c in cones {
            if face.iter().all(|r| c.contains(r)) {
                for r in &face {
                    let mut d = c;
                    let pos = d.iter().position(|x| x == r).unwrap();
                    d[pos] = v;
                    next.push(d);
                }
            } else {
                next.push(c);
            }
        }
        cones = next;
    }
    cones
}

pub fn fan3(cones: &[[[i64; 3]; 3]]) -> Fan {
    let cs: Vec<Cone> = cones.iter().map(|c| Cone::from_i64(&[&c[0], &c[1], &c[2]])).collect();
    Fan::from_maximal_cones(3, &cs)
}

pub fn random_vec(rng: &mut impl Rng, r: usize, m: i64) -> IntVec {
    loop {
        let v: Vec<i64> = (0..r).map(|_| rng.gen_range(-m..=m)).collect();
        if v.iter().any(|&x| x != 0) {
            return ivec(&v);
        }
    }
}

/// A random saturated sublattice of rank `k` in `Z^r`.
pub fn random_sublattice(rng: &mut impl Rng, r: usize, k: usize, m: i64) -> Sublattice {
    loop {
        let gens: Vec<IntVec> = (0..k).map(|_| random_vec(rng, r, m)).collect();
        let l = Sublattice::new(r, &gens);
        if l.rank() == k {
            return l.saturate();
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, m: i64) -> IntMatrix {
    let rs: Vec<IntVec> = (0..rows).map(|_| ivec(&(0..cols).map(|_| rng.gen_range(-m..=m)).collect::<Vec<_>>())).collect();
    IntMatrix::from_rows(rs, cols)
}

/// A random pointed cone: generators in the open half-space `x_0 > 0`
/// (after a random sign flip of the coordinates).
pub fn random_cone(rng: &mut impl Rng, r: usize, m: i64) -> Cone {
    let k = rng.gen_range(1..=r + 2);
    let gens: Vec<IntVec> = (0..k)
        .map(|_| {
            let mut v = random_vec(rng, r, m);
            v[0] = Int::from(rng.gen_range(1..=m));
            v
        })
        .collect();
    let flip: Vec<bool> = (0..r).map(|_| rng.gen_bool(0.5)).collect();
    let gens: Vec<IntVec> = gens
        .into_iter()
        .map(|g| g.iter().zip(&flip).map(|(x, &f)| if f { -x } else { x.clone() }).collect())
        .collect();
    Cone::from_generators(r, &gens)
}

pub fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

pub fn neg(v: &[Int]) -> IntVec {
    lattice::neg(v)
}

/// The corpus for the structural checks: both fixtures plus seeded random fans of
/// rank 2 and 3 with random saturated sublattices of rank 1 and 2.
pub fn corpus() -> Vec<(String, Fan, Sublattice)> {
    let mut out = Vec::new();
    let (f, l) = p2();
    out.push(("p2".to_string(), f, l));
    let (f, l) = p1p1();
    out.push(("p1p1".to_string(), f, l));
    let mut g = rng(2024);
    for i in 0..6 {
        let rays = random_fan2(&mut g, 2);
        let l = random_sublattice(&mut g, 2, 1, 2);
        out.push((format!("rank2-{i}"), fan2(&rays), l));
    }
    for i in 0..6 {
        let cones = random_fan3(&mut g);
        let k = 1 + i % 2;
        let l = random_sublattice(&mut g, 3, k, 1);
        out.push((format!("rank3-{i}-L{k}"), fan3(&cones), l));
    }
    out
}
