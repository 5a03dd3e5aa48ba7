//! Fourier–Motzkin feasibility for mixed strict / non-strict linear systems.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::lattice::rational::Rat;
use crate::lattice::{Int, IntVec};

/// `coeffs · t + constant > 0` (strict) or `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Constraint {
    pub coeffs: IntVec,
    pub constant: Int,
    pub strict: bool,
}

/// Per primitive coefficient direction, keeps only the tightest constraint.
/// `None` if some constraint is trivially false.
fn prune(cons: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut best: BTreeMap<IntVec, (Rat, bool)> = BTreeMap::new();
    for c in cons {
        let g = crate::lattice::content(&c.coeffs);
        if g.is_zero() {
            let ok = if c.strict { c.constant.is_positive() } else { !c.constant.is_negative() };
            if ok {
                continue;
            }
            return None;
        }
        let dir: IntVec = c.coeffs.iter().map(|x| x / &g).collect();
        let threshold = Rat::new(c.constant, g);
        best.entry(dir)
            .and_modify(|(b, s)| {
                if threshold < *b || (threshold == *b && c.strict) {
                    *b = threshold.clone();
                    *s = c.strict;
                }
            })
            .or_insert((threshold.clone(), c.strict));
    }
    Some(
        best.into_iter()
            .map(|(dir, (b, strict))| {
                let d = b.denom().clone();
                Constraint { coeffs: dir.iter().map(|x| x * &d).collect(), constant: b.numer().clone(), strict }
            })
            .collect(),
    )
}

/// Decides whether `{t in Q^n : all constraints hold}` is nonempty.
pub(crate) fn feasible(n: usize, cons: Vec<Constraint>) -> bool {
    let Some(mut cons) = prune(cons) else { return false };
    for var in (0..n).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cons {
            match c.coeffs[var].sign() {
                num_bigint::Sign::Plus => pos.push(c),
                num_bigint::Sign::Minus => neg.push(c),
                num_bigint::Sign::NoSign => rest.push(c),
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[var].clone();
                let b = -q.coeffs[var].clone();
                let coeffs: IntVec = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &b + y * &a).collect();
                rest.push(Constraint {
                    coeffs,
                    constant: &p.constant * &b + &q.constant * &a,
                    strict: p.strict || q.strict,
                });
            }
        }
        match prune(rest) {
            Some(next) => cons = next,
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn c(coeffs: &[i64], constant: i64, strict: bool) -> Constraint {
        Constraint { coeffs: ivec(coeffs), constant: constant.into(), strict }
    }

    #[test]
    fn strictness_matters() {
        // t >= 0 and -t >= 0 is feasible, t > 0 and -t >= 0 is not.
        assert!(feasible(1, vec![c(&[1], 0, false), c(&[-1], 0, false)]));
        assert!(!feasible(1, vec![c(&[1], 0, true), c(&[-1], 0, false)]));
    }

    #[test]
    fn two_variables() {
        // x > 0, y > 0, x + y < 1
        assert!(feasible(2, vec![c(&[1, 0], 0, true), c(&[0, 1], 0, true), c(&[-1, -1], 1, true)]));
        // x > 0, y > 0, x + y <= 0
        assert!(!feasible(2, vec![c(&[1, 0], 0, true), c(&[0, 1], 0, true), c(&[-1, -1], 0, false)]));
        assert!(feasible(0, vec![]));
        assert!(!feasible(0, vec![c(&[], -1, false)]));
    }
}
