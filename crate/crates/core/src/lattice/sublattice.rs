use std::fmt;

use num_traits::{Signed, Zero};

use super::normal_form::{hermite_normal_form, integer_kernel, left_kernel, smith_normal_form};
use super::rational::{self, Rat};
use super::{Int, IntMatrix, IntVec};

/// A subgroup of `Z^r`, stored by its row Hermite normal form basis so that
/// structural equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<IntVec>,
}

/// `[super : sub]`, infinite when the ranks differ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Sublattice {
    /// Lattice generated by arbitrary (possibly dependent) vectors.
    pub fn new(ambient_rank: usize, generators: &[IntVec]) -> Self {
        assert!(generators.iter().all(|g| g.len() == ambient_rank), "generator of wrong length");
        if generators.is_empty() {
            return Self::zero(ambient_rank);
        }
        let (h, _) = hermite_normal_form(&IntMatrix::from_rows(generators.to_vec(), ambient_rank));
        let basis = h.into_rows().into_iter().filter(|r| !super::is_zero(r)).collect();
        Sublattice { ambient_rank, basis }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: Vec::new() }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::identity(ambient_rank).into_rows() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.clone(), self.ambient_rank)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<IntVec> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            let (q, r) = num_integer::Integer::div_rem(&rest[p], &row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        super::is_zero(&rest).then_some(coords)
    }

    /// Rational coordinates of `v` if it lies in the rational span.
    pub fn rational_coordinates(&self, v: &[Int]) -> Option<Vec<Rat>> {
        rational::coordinates_in(&self.basis, v)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn in_span(&self, v: &[Int]) -> bool {
        self.rational_coordinates(v).is_some()
    }

    /// `sum_i c_i * basis[i]`.
    pub fn combine(&self, coords: &[Int]) -> IntVec {
        let mut out = super::zero_vec(self.ambient_rank);
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Integer functionals spanning the annihilator of the rational span.
    pub fn orthogonal_complement(&self) -> Vec<IntVec> {
        integer_kernel(&self.basis, self.ambient_rank)
    }

    /// `span_Q(self) ∩ Z^r`.
    pub fn saturate(&self) -> Sublattice {
        if self.is_zero() {
            return self.clone();
        }
        let eqs = self.orthogonal_complement();
        let basis = integer_kernel(&eqs, self.ambient_rank);
        Sublattice { ambient_rank: self.ambient_rank, basis }
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturate()
    }

    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Sublattice::new(self.ambient_rank, &gens)
    }

    pub fn intersection(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        if self.is_zero() || other.is_zero() {
            return Sublattice::zero(self.ambient_rank);
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let stacked = IntMatrix::from_rows(rows, self.ambient_rank);
        let k = self.rank();
        let gens: Vec<IntVec> = left_kernel(&stacked)
            .iter()
            .map(|c| self.combine(&c[..k]))
            .collect();
        Sublattice::new(self.ambient_rank, &gens)
    }

    /// `[sup : self]`. Fails with `NotASublattice` unless `self ⊆ sup`.
    pub fn index_in(&self, sup: &Sublattice) -> crate::Result<LatticeIndex> {
        assert_eq!(self.ambient_rank, sup.ambient_rank);
        let coords: Option<Vec<IntVec>> = self.basis.iter().map(|b| sup.coordinates(b)).collect();
        let coords = coords.ok_or(crate::Error::NotASublattice)?;
        if self.rank() != sup.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let m = IntMatrix::from_rows(coords, sup.rank());
        Ok(LatticeIndex::Finite(m.determinant().abs()))
    }

    /// Invariant factors of `Z^r / self` restricted to the torsion part, as
    /// the Smith diagonal of the basis (length = rank).
    pub fn elementary_divisors(&self) -> Vec<Int> {
        if self.is_zero() {
            return Vec::new();
        }
        smith_normal_form(&self.basis_matrix()).diagonal()
    }

    /// Image under an integer matrix acting on column vectors.
    pub fn image(&self, m: &IntMatrix) -> Sublattice {
        let gens: Vec<IntVec> = self.basis.iter().map(|b| m.apply(b)).collect();
        Sublattice::new(m.nrows(), &gens)
    }

    /// `{x in Z^r : m x in target}` for `m : Z^r -> Z^q`.
    pub fn preimage(m: &IntMatrix, target: &Sublattice) -> Sublattice {
        let r = m.ncols();
        // x ↦ m x lands in target iff (x, c) solves m x - B^T c = 0 for some c.
        let mut cols: Vec<IntVec> = (0..r).map(|j| m.column(j)).collect();
        for b in &target.basis {
            cols.push(super::neg(b));
        }
        let sys = IntMatrix::from_rows(cols, m.nrows());
        let sols = left_kernel(&sys);
        let gens: Vec<IntVec> = sols.iter().map(|s| s[..r].to_vec()).collect();
        Sublattice::new(r, &gens)
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| super::fmt_vec(b)).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn lat(gens: &[&[i64]]) -> Sublattice {
        let r = gens.first().map_or(2, |g| g.len());
        Sublattice::new(r, &gens.iter().map(|g| ivec(g)).collect::<Vec<_>>())
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(lat(&[&[2, 0]]).saturate(), lat(&[&[1, 0]]));
        assert_eq!(lat(&[&[1, 2]]).saturate(), lat(&[&[1, 2]]));
        assert_eq!(Sublattice::zero(2).saturate(), Sublattice::zero(2));
        assert!(lat(&[&[1, 2]]).is_saturated());
        assert!(!lat(&[&[2, 4]]).is_saturated());
    }

    #[test]
    fn sum_and_intersection() {
        assert_eq!(lat(&[&[1, 0]]).sum(&lat(&[&[0, 1]])), Sublattice::full(2));
        assert_eq!(lat(&[&[1, 2]]).sum(&lat(&[&[1, 0]])), lat(&[&[1, 0], &[0, 2]]));
        assert_eq!(lat(&[&[1, 2]]).sum(&Sublattice::zero(2)), lat(&[&[1, 2]]));
        assert_eq!(lat(&[&[1, 0]]).intersection(&lat(&[&[0, 1]])), Sublattice::zero(2));
        assert_eq!(Sublattice::full(2).intersection(&lat(&[&[1, 1]])), lat(&[&[1, 1]]));
        assert_eq!(
            lat(&[&[2, 0], &[0, 2]]).intersection(&lat(&[&[3, 0], &[0, 3]])),
            lat(&[&[6, 0], &[0, 6]])
        );
    }

    #[test]
    fn index_examples() {
        let s = lat(&[&[1, 0], &[1, 2]]);
        assert_eq!(s.index_in(&Sublattice::full(2)).unwrap(), LatticeIndex::Finite(2.into()));
        assert_eq!(Sublattice::full(2).index_in(&Sublattice::full(2)).unwrap(), LatticeIndex::Finite(1.into()));
        assert_eq!(lat(&[&[1, 0]]).index_in(&Sublattice::full(2)).unwrap(), LatticeIndex::Infinite);
        assert_eq!(Sublattice::full(2).index_in(&s), Err(crate::Error::NotASublattice));
    }

    #[test]
    fn coordinates_and_preimage() {
        let s = lat(&[&[1, 0], &[1, 2]]);
        let c = s.coordinates(&ivec(&[3, 4])).unwrap();
        assert_eq!(s.combine(&c), ivec(&[3, 4]));
        assert!(s.coordinates(&ivec(&[0, 1])).is_none());
        let m = IntMatrix::from_i64(&[&[0, 1]]);
        let pre = Sublattice::preimage(&m, &lat(&[&[2]]));
        assert_eq!(pre, lat(&[&[1, 0], &[0, 2]]));
    }
}
