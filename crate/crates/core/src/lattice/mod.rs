//! Exact integer linear algebra over `Z^r`.

mod matrix;
mod normal_form;
mod quotient;
pub mod rational;
mod sublattice;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, integer_kernel, left_kernel, smith_normal_form, Smith};
pub use quotient::QuotientMap;
pub use sublattice::{LatticeIndex, Sublattice};

pub type Int = BigInt;
pub type IntVec = Vec<Int>;

/// Builds an `IntVec` from small integers.
pub fn ivec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&e| Int::from(e)).collect()
}

pub fn zero_vec(n: usize) -> IntVec {
    vec![Int::zero(); n]
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: &Int) -> IntVec {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[Int]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// gcd of the entries (0 for the zero vector).
pub fn content(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the content; the zero vector is returned unchanged.
pub fn primitive(a: &[Int]) -> IntVec {
    let g = content(a);
    if g.is_zero() {
        a.to_vec()
    } else {
        a.iter().map(|x| x / &g).collect()
    }
}

/// Primitive vector whose first nonzero entry is positive.
pub fn primitive_up_to_sign(a: &[Int]) -> IntVec {
    let p = primitive(a);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

/// Formats a vector as `(a,b,c)`.
pub fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
