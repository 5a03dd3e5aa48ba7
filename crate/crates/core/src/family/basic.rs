use num_traits::Signed;

use super::fiber::WallKind;
use super::UniversalFamily;
use crate::lattice::rational::{self, Rat};
use crate::lattice::{self, Int, IntMatrix, IntVec, Sublattice};
use crate::monoid::AffineMonoid;
use crate::polyhedra::Cone;
use crate::{Error, Result};

/// One relation `v_i - v_j = m u` coming from an internal wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: usize,
    /// Positions in the component list, `i` for the first face of the wall.
    pub i: usize,
    pub j: usize,
    pub u: IntVec,
}

/// `Q_κ` presented as tuples `(v_0, ..., v_n, m_w)` with `v_i ∈ τ_i` and one
/// relation per internal wall.
///
/// The tuples live in `Z^{(n+1) r + w}`; the monoid is stored in coordinates of
/// a basis of the lattice they span, with basis signs chosen so that an
/// interior tuple has nonnegative coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicMonoidPresentation {
    pub kappa: usize,
    /// Cones of `F'` in `M_0(κ)`, in canonical order.
    pub components: Vec<usize>,
    pub relations: Vec<WallRelation>,
    /// Rank of the tuple lattice `Z^{(n+1) r + w}`.
    pub tuple_rank: usize,
    /// Columns are the chosen basis of the tuple lattice's relevant part.
    pub embedding: IntMatrix,
    /// The monoid in the coordinates of `embedding`.
    pub monoid: AffineMonoid,
    lattice: Sublattice,
    signs: Vec<bool>,
}

impl BasicMonoidPresentation {
    pub(crate) fn new(fam: &UniversalFamily, kappa: usize) -> Result<Self> {
        let components = fam.m_k(kappa, 0)?;
        let mut relations = Vec::new();
        for c in fam.m_k(kappa, 1)? {
            let w = fam.wall(kappa, c)?;
            if let WallKind::Internal { first, second } = w.kind {
                let pos = |x| components.iter().position(|&y| y == x);
                let (Some(i), Some(j)) = (pos(first), pos(second)) else {
                    return Err(Error::internal(format!("faces of wall {c} are not components")));
                };
                relations.push(WallRelation { wall: c, i, j, u: w.u });
            }
        }
        Self::from_parts(fam, kappa, components, relations)
    }

    /// The presentation with explicitly given components and relations.
    pub fn from_parts(
        fam: &UniversalFamily,
        kappa: usize,
        components: Vec<usize>,
        relations: Vec<WallRelation>,
    ) -> Result<Self> {
        let r = fam.fan().ambient_rank();
        let n = components.len();
        let total = n * r + relations.len();
        let cones: Vec<&Cone> = components.iter().map(|&c| &fam.fan().cones()[c]).collect();
        let block = |i: usize, v: &[Int]| {
            let mut row = lattice::zero_vec(total);
            row[i * r..(i + 1) * r].clone_from_slice(v);
            row
        };
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for (i, c) in cones.iter().enumerate() {
            eqs.extend(c.equations().iter().map(|e| block(i, e)));
            ineqs.extend(c.facets().iter().map(|h| block(i, h)));
        }
        for (k, rel) in relations.iter().enumerate() {
            for t in 0..r {
                let mut row = lattice::zero_vec(total);
                row[rel.i * r + t] += 1;
                row[rel.j * r + t] -= 1;
                row[n * r + k] = -rel.u[t].clone();
                eqs.push(row);
            }
        }
        let cone = Cone::from_inequalities(total, &ineqs, &eqs);
        if !cone.is_pointed() {
            return Err(Error::internal(format!("presentation cone over {kappa} is not pointed")));
        }
        let lat = cone.linear_span();
        let d = lat.rank();
        let signs: Vec<bool> = match cone.relative_interior_sample() {
            Ok(y0) => lat.coordinates(&y0).expect("sample in span").iter().map(|c| c.is_negative()).collect(),
            Err(_) => vec![false; d],
        };
        let cols: Vec<IntVec> = lat
            .basis()
            .iter()
            .zip(&signs)
            .map(|(b, &s)| if s { lattice::neg(b) } else { b.clone() })
            .collect();
        let embedding = IntMatrix::from_rows(cols, total).transpose();
        let mut pres = BasicMonoidPresentation {
            kappa,
            components,
            relations,
            tuple_rank: total,
            embedding,
            monoid: AffineMonoid::trivial(d),
            lattice: lat,
            signs,
        };
        let gens: Vec<IntVec> = cone
            .rays()
            .iter()
            .map(|g| pres.coordinates(g).ok_or_else(|| Error::internal("ray outside its own span")))
            .collect::<Result<_>>()?;
        pres.monoid = AffineMonoid::from_cone(&Cone::from_generators(d, &gens), &Sublattice::full(d))?;
        Ok(pres)
    }

    /// The same presentation with relation `k` removed.
    pub fn without_relation(&self, fam: &UniversalFamily, k: usize) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.remove(k);
        Self::from_parts(fam, self.kappa, self.components.clone(), rels)
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Coordinates of a tuple in the signed basis.
    pub fn coordinates(&self, tuple: &[Int]) -> Option<IntVec> {
        let c = self.lattice.coordinates(tuple)?;
        Some(c.into_iter().zip(&self.signs).map(|(x, &s)| if s { -x } else { x }).collect())
    }

    pub fn tuple(&self, y: &[Int]) -> IntVec {
        self.embedding.apply(y)
    }

    /// `v ↦ (lift_0(v), ..., lift_n(v), m_w)` in presentation coordinates.
    pub fn from_base(&self, fam: &UniversalFamily, v: &[Int]) -> Result<IntVec> {
        let r = fam.fan().ambient_rank();
        let mut tuple = Vec::with_capacity(self.tuple_rank);
        let mut lifts = Vec::new();
        for &c in &self.components {
            let y = fam.lift_into(c, v)?;
            let y = rational::to_integral(&y)
                .ok_or_else(|| Error::NotInMonoid(format!("{} does not lift integrally", lattice::fmt_vec(v))))?;
            tuple.extend(y.iter().cloned());
            lifts.push(y);
        }
        for rel in &self.relations {
            let d = rational::to_rat(&lattice::sub(&lifts[rel.i], &lifts[rel.j]));
            let k = rel.u.iter().position(|x| !num_traits::Zero::is_zero(x)).expect("nonzero u");
            let m: Rat = &d[k] / Rat::from_integer(rel.u[k].clone());
            if !m.is_integer() {
                return Err(Error::internal("lifts differ by a fractional multiple of u"));
            }
            tuple.push(m.to_integer());
        }
        debug_assert_eq!(tuple.len(), self.components.len() * r + self.relations.len());
        self.coordinates(&tuple).ok_or_else(|| Error::internal("lifted tuple outside the presentation lattice"))
    }

    /// The common image `p(v_0) = ... = p(v_n)` of a tuple.
    pub fn to_base(&self, fam: &UniversalFamily, y: &[Int]) -> Result<IntVec> {
        let r = fam.fan().ambient_rank();
        let t = self.tuple(y);
        let pm = fam.projection().matrix();
        let images: Vec<IntVec> = (0..self.components.len()).map(|i| pm.apply(&t[i * r..(i + 1) * r])).collect();
        match images.first() {
            None => Ok(lattice::zero_vec(pm.nrows())),
            Some(first) if images.iter().all(|x| x == first) => Ok(first.clone()),
            Some(_) => Err(Error::VerificationFailed(format!(
                "components of {} have different images",
                lattice::fmt_vec(y)
            ))),
        }
    }

    /// The dual cone of the presentation monoid: the tropical moduli of the
    /// broken toric varieties over `κ`.
    pub fn tropical_moduli_cone(&self) -> Cone {
        self.monoid.cone().dual()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{fam_p1p1, fam_p2, idx};
    use crate::lattice::ivec;
    use crate::polyhedra::Cone;

    #[test]
    fn p1p1_basic_monoid_is_n() {
        let fam = fam_p1p1();
        let pos = idx(fam.chow().quotient_fan(), &[&[1]]);
        let b = fam.basic_monoid(pos).unwrap();
        assert_eq!(b.components.len(), 2);
        assert_eq!(b.relations.len(), 1);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.monoid.hilbert_basis(), &[ivec(&[1])]);
        assert_eq!(b.tropical_moduli_cone(), Cone::from_i64(&[&[1]]));
        // (v_0, v_1, m) = ((0,-1), (1,0), -1) generates: v_0 - v_1 = m (1,1).
        assert_eq!(b.tuple(&ivec(&[1])), ivec(&[0, -1, 1, 0, -1]));
        assert_eq!(b.from_base(&fam, &ivec(&[1])).unwrap(), ivec(&[1]));
        assert_eq!(b.to_base(&fam, &ivec(&[3])).unwrap(), ivec(&[3]));
    }

    #[test]
    fn p2_basic_monoid_is_n() {
        let fam = fam_p2();
        let g = fam.chow().quotient_fan().clone();
        let b = fam.basic_monoid(idx(&g, &[&[1]])).unwrap();
        assert!(b.relations.is_empty());
        assert_eq!(b.monoid.hilbert_basis(), &[ivec(&[1])]);
        assert_eq!(b.tropical_moduli_cone(), Cone::from_i64(&[&[1]]));
        let z = fam.basic_monoid(idx(&g, &[])).unwrap();
        assert_eq!(z.rank(), 0);
        assert!(z.monoid.is_trivial());
        assert_eq!(z.tropical_moduli_cone(), Cone::whole_space(0));
    }
}
