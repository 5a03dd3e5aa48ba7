//! Linear algebra over `Q` on top of `BigRational`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Int, IntVec};

pub type Rat = BigRational;

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Multiplies by the positive lcm of the denominators and divides by the
/// content, giving the primitive integer vector on the same ray.
pub fn clear_denominators(v: &[Rat]) -> IntVec {
    let l = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    super::primitive(&ints)
}

/// Returns the integer vector if every entry is integral.
pub fn to_integral(v: &[Rat]) -> Option<IntVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[IntVec]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    rref(&mut m).len()
}

pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solution set of `A x = b` over `Q`: a particular solution and a basis of
/// the homogeneous solutions. `None` if inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    debug_assert_eq!(a.len(), b.len());
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = aug[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -aug[i][f].clone();
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Solves `sum_i c_i * basis[i] = target` for the coefficient vector `c`.
/// `basis` must be linearly independent; returns `None` if `target` is not in the span.
pub fn coordinates_in(basis: &[IntVec], target: &[Int]) -> Option<Vec<Rat>> {
    let n = basis.len();
    let dim = target.len();
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|j| basis.iter().map(|b| Rat::from_integer(b[j].clone())).collect())
        .collect();
    let b = to_rat(target);
    let (x, kernel) = solve(&a, &b, n)?;
    debug_assert!(kernel.is_empty(), "basis is not independent");
    Some(x)
}

/// Rational inverse of a square integer matrix, if nonsingular.
pub fn inverse(rows: &[IntVec]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = to_rat(r);
            v.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn dot_rat(a: &[Rat], b: &[Int]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * Rat::from_integer(y.clone())).sum()
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}
