use super::normal_form::{hermite_normal_form, integer_kernel, smith_normal_form};
use super::{Int, IntMatrix, IntVec, Sublattice};

/// The projection `p: N = Z^r -> Q = N/L ≅ Z^q`.
///
/// The basis of `Q` is fixed by taking the rows of `p` to be the row-HNF basis
/// of the annihilator `L^⊥`; this makes the map canonical for a given `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    source_rank: usize,
    matrix: IntMatrix,
    kernel: Sublattice,
    section: IntMatrix,
}

impl QuotientMap {
    /// Fails with `NotSaturated` unless `kernel` is saturated.
    pub fn new(kernel: &Sublattice) -> crate::Result<Self> {
        if !kernel.is_saturated() {
            return Err(crate::Error::NotSaturated);
        }
        let r = kernel.ambient_rank();
        let annihilator = integer_kernel(kernel.basis(), r);
        let q = annihilator.len();
        let (h, _) = hermite_normal_form(&IntMatrix::from_rows(annihilator, r));
        let matrix = IntMatrix::from_rows(h.into_rows().into_iter().take(q).collect(), r);
        let section = if q == 0 {
            IntMatrix::zeros(r, 0)
        } else {
            // U P V = [I 0]  =>  P (V [U; 0]) = I.
            let snf = smith_normal_form(&matrix);
            let mut padded = IntMatrix::zeros(r, q);
            for i in 0..q {
                for j in 0..q {
                    padded.set(i, j, snf.u.get(i, j).clone());
                }
            }
            snf.v.mul(&padded)
        };
        debug_assert_eq!(matrix.mul(&section), IntMatrix::identity(q));
        Ok(QuotientMap { source_rank: r, matrix, kernel: kernel.clone(), section })
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn kernel(&self) -> &Sublattice {
        &self.kernel
    }

    /// An integer right inverse `s` with `p ∘ s = id_Q`.
    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    pub fn apply(&self, x: &[Int]) -> IntVec {
        self.matrix.apply(x)
    }

    /// Some integer preimage of `v`.
    pub fn lift(&self, v: &[Int]) -> IntVec {
        self.section.apply(v)
    }

    /// `p^{-1}(M) = L + s(M)` for a sublattice `M ⊆ Q`.
    pub fn preimage_lattice(&self, m: &Sublattice) -> Sublattice {
        let lifted = m.image(&self.section);
        self.kernel.sum(&lifted)
    }

    /// True when the Smith form of the matrix is `(I | 0)`.
    pub fn is_surjective(&self) -> bool {
        let d = smith_normal_form(&self.matrix).diagonal();
        d.len() == self.target_rank() && d.iter().all(|x| *x == Int::from(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    #[test]
    fn fixture_projections() {
        let p = QuotientMap::new(&Sublattice::new(2, &[ivec(&[1, 0])])).unwrap();
        assert_eq!(p.matrix(), &IntMatrix::from_i64(&[&[0, 1]]));
        let p = QuotientMap::new(&Sublattice::new(2, &[ivec(&[1, 1])])).unwrap();
        assert_eq!(p.matrix(), &IntMatrix::from_i64(&[&[1, -1]]));
        assert!(p.is_surjective());
        let p = QuotientMap::new(&Sublattice::zero(3)).unwrap();
        assert_eq!(p.matrix(), &IntMatrix::identity(3));
        assert_eq!(
            QuotientMap::new(&Sublattice::new(2, &[ivec(&[2, 0])])),
            Err(crate::Error::NotSaturated)
        );
    }

    #[test]
    fn kernel_and_lift() {
        let l = Sublattice::new(3, &[ivec(&[1, 2, 3])]);
        let p = QuotientMap::new(&l).unwrap();
        assert_eq!(p.target_rank(), 2);
        assert!(crate::lattice::is_zero(&p.apply(&ivec(&[1, 2, 3]))));
        let v = ivec(&[5, -7]);
        assert_eq!(p.apply(&p.lift(&v)), v);
        assert_eq!(p.preimage_lattice(&Sublattice::full(2)), Sublattice::full(3));
    }
}
