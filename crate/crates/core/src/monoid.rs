//! Affine monoids: finitely generated submonoids of `Z^r`.
//!
//! A monoid is stored together with its real cone, its group and a minimal
//! generating set. Saturated monoids `C ∩ Λ` may have units (when `C` has
//! lineality); non-saturated ones are always pointed.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::lattice::rational::{self, Rat};
use crate::lattice::{self, smith_normal_form, Int, IntMatrix, IntVec, QuotientMap, Sublattice};
use crate::polyhedra::Cone;
use crate::{par, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMonoid {
    ambient_rank: usize,
    cone: Cone,
    group: Sublattice,
    units: Sublattice,
    hilbert_basis: Vec<IntVec>,
    saturated: bool,
}

impl AffineMonoid {
    /// `c ∩ lattice` for a strictly convex `c`.
    pub fn from_cone(c: &Cone, lattice: &Sublattice) -> Result<AffineMonoid> {
        if !c.is_pointed() {
            return Err(Error::NotStrictlyConvex);
        }
        Ok(Self::saturated(c, lattice))
    }

    /// `c ∩ Z^r`.
    pub fn from_cone_full(c: &Cone) -> Result<AffineMonoid> {
        Self::from_cone(c, &Sublattice::full(c.ambient_rank()))
    }

    /// `c ∩ lattice` for an arbitrary cone; the units are the lattice points of
    /// the lineality space. The group is `lattice ∩ span(c)`.
    pub fn saturated(c: &Cone, lattice: &Sublattice) -> AffineMonoid {
        let r = c.ambient_rank();
        assert_eq!(lattice.ambient_rank(), r);
        let group = lattice.intersection(&c.linear_span());
        let coords = CoordinateCone::new(c, &group);
        let units = coords.units.image(&group.basis_matrix().transpose());
        let mut hb: Vec<IntVec> = Vec::new();
        for u in coords.units.basis() {
            let v = group.combine(u);
            hb.push(v.clone());
            hb.push(lattice::neg(&v));
        }
        for y in hilbert_basis_full(&coords.pointed) {
            let x = coords.quotient.lift(&y);
            hb.push(group.combine(&x));
        }
        hb.sort();
        AffineMonoid { ambient_rank: r, cone: c.clone(), group, units, hilbert_basis: hb, saturated: true }
    }

    /// The monoid generated by `gens`, which must span a strictly convex cone.
    pub fn from_generators(r: usize, gens: &[IntVec]) -> Result<AffineMonoid> {
        let gens: BTreeSet<IntVec> = gens.iter().filter(|g| !lattice::is_zero(g)).cloned().collect();
        let gens: Vec<IntVec> = gens.into_iter().collect();
        let cone = Cone::from_generators(r, &gens);
        if !cone.is_pointed() {
            return Err(Error::NotStrictlyConvex);
        }
        let group = Sublattice::new(r, &gens);
        let sat = Self::saturated(&cone, &group);
        let grading = grading_of(&cone);
        let irreducible: Vec<IntVec> = gens
            .iter()
            .enumerate()
            .filter(|(i, g)| {
                let others: Vec<IntVec> =
                    gens.iter().enumerate().filter(|(j, _)| j != i).map(|(_, h)| h.clone()).collect();
                !generated_contains(&others, &grading, g)
            })
            .map(|(_, g)| g.clone())
            .collect();
        let all_hit = sat.hilbert_basis.iter().all(|h| generated_contains(&irreducible, &grading, h));
        if all_hit {
            return Ok(sat);
        }
        Ok(AffineMonoid {
            ambient_rank: r,
            cone,
            group,
            units: Sublattice::zero(r),
            hilbert_basis: irreducible,
            saturated: false,
        })
    }

    pub fn from_i64(r: usize, gens: &[&[i64]]) -> Result<AffineMonoid> {
        Self::from_generators(r, &gens.iter().map(|g| lattice::ivec(g)).collect::<Vec<_>>())
    }

    /// `{0}` in `Z^r`.
    pub fn trivial(r: usize) -> AffineMonoid {
        Self::saturated(&Cone::zero(r), &Sublattice::full(r))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// The group `M^gp` generated by the monoid.
    pub fn group(&self) -> &Sublattice {
        &self.group
    }

    pub fn units(&self) -> &Sublattice {
        &self.units
    }

    /// A minimal generating set. For pointed monoids this is the Hilbert basis;
    /// otherwise it lists a basis of the units with both signs followed by
    /// lifts of the Hilbert basis of the pointed quotient.
    pub fn hilbert_basis(&self) -> &[IntVec] {
        &self.hilbert_basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_pointed(&self) -> bool {
        self.units.is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.hilbert_basis.is_empty()
    }

    /// A functional positive on every nonzero element of a pointed monoid.
    pub fn grading(&self) -> IntVec {
        grading_of(&self.cone)
    }

    pub fn member(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        if !self.cone.contains(v) || !self.group.contains(v) {
            return false;
        }
        self.saturated || generated_contains(&self.hilbert_basis, &self.grading(), v)
    }

    /// The monoid generated by the images of the generators.
    pub fn image(&self, h: &IntMatrix) -> Result<AffineMonoid> {
        assert_eq!(h.ncols(), self.ambient_rank);
        let gens: Vec<IntVec> = self.hilbert_basis.iter().map(|g| h.apply(g)).collect();
        AffineMonoid::from_generators(h.nrows(), &gens)
    }

    /// `{u ∈ Z^r : <u, x> >= 0 for all x}`; requires a saturated monoid.
    pub fn dual(&self) -> Result<AffineMonoid> {
        if !self.saturated {
            return Err(Error::Unsupported("dual of a non-saturated monoid".into()));
        }
        Ok(Self::saturated(&self.cone.dual(), &Sublattice::full(self.ambient_rank)))
    }

    /// The same monoid written in the HNF basis of its group, so that its group
    /// is all of `Z^d`. Returns the monoid and the `r x d` embedding matrix.
    pub fn in_group_coordinates(&self) -> (AffineMonoid, IntMatrix) {
        let d = self.group.rank();
        let emb = self.group.basis_matrix().transpose();
        let to = |v: &IntVec| self.group.coordinates(v).expect("generator lies in the group");
        let m = if self.saturated {
            let gens: Vec<IntVec> = self.cone.generators().iter().map(|g| {
                rational::clear_denominators(&self.group.rational_coordinates(g).expect("in span"))
            }).collect();
            Self::saturated(&Cone::from_generators(d, &gens), &Sublattice::full(d))
        } else {
            let gens: Vec<IntVec> = self.hilbert_basis.iter().map(to).collect();
            Self::from_generators(d, &gens).expect("pointed")
        };
        (m, emb)
    }

    /// `face ∩ M`.
    pub fn restrict_to_face(&self, face: &Cone) -> Result<AffineMonoid> {
        if !face.is_face_of(&self.cone) {
            return Err(Error::NotAFace);
        }
        if self.saturated {
            return Ok(Self::saturated(face, &self.group));
        }
        let gens: Vec<IntVec> = self.hilbert_basis.iter().filter(|g| face.contains(g)).cloned().collect();
        let m = Self::from_generators(self.ambient_rank, &gens)?;
        Ok(if gens.is_empty() { Self::trivial(self.ambient_rank) } else { m })
    }

    /// All elements of grade at most `bound` for a pointed monoid, sorted.
    pub fn elements_up_to(&self, grading: &[Int], bound: &Int) -> Vec<IntVec> {
        assert!(self.is_pointed(), "enumeration needs a pointed monoid");
        let mut seen: BTreeSet<IntVec> = BTreeSet::new();
        let zero = lattice::zero_vec(self.ambient_rank);
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for h in &self.hilbert_basis {
                    let y = lattice::add(x, h);
                    if &lattice::dot(grading, &y) <= bound && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.hilbert_basis.iter().map(|g| lattice::fmt_vec(g)).collect();
        write!(f, "monoid{{{}}}", gens.join(","))
    }
}

/// Sum of the facet normals: positive on every nonzero point of a pointed cone.
fn grading_of(c: &Cone) -> IntVec {
    c.facets().iter().fold(lattice::zero_vec(c.ambient_rank()), |acc, h| lattice::add(&acc, h))
}

/// Whether `v` is a nonnegative integer combination of `gens`, all of which
/// have positive grade. Depth-first search over multisets, memoizing failures.
fn generated_contains(gens: &[IntVec], grading: &[Int], v: &[Int]) -> bool {
    if lattice::is_zero(v) {
        return true;
    }
    let grades: Vec<Int> = gens.iter().map(|g| lattice::dot(grading, g)).collect();
    debug_assert!(grades.iter().all(|g| g.is_positive()));
    let mut failed: HashSet<(IntVec, usize)> = HashSet::new();
    fn go(
        rest: IntVec,
        from: usize,
        gens: &[IntVec],
        grades: &[Int],
        grading: &[Int],
        failed: &mut HashSet<(IntVec, usize)>,
    ) -> bool {
        if lattice::is_zero(&rest) {
            return true;
        }
        let g = lattice::dot(grading, &rest);
        if !g.is_positive() || failed.contains(&(rest.clone(), from)) {
            return false;
        }
        for i in from..gens.len() {
            if grades[i] <= g && go(lattice::sub(&rest, &gens[i]), i, gens, grades, grading, failed) {
                return true;
            }
        }
        failed.insert((rest, from));
        false
    }
    go(v.to_vec(), 0, gens, &grades, grading, &mut failed)
}

/// A cone expressed in the coordinates of a lattice `G` containing its span's
/// lattice points, split as units ⊕ pointed part.
struct CoordinateCone {
    units: Sublattice,
    quotient: QuotientMap,
    pointed: Cone,
}

impl CoordinateCone {
    fn new(c: &Cone, group: &Sublattice) -> CoordinateCone {
        let d = group.rank();
        let gens: Vec<IntVec> = c
            .generators()
            .iter()
            .map(|g| rational::clear_denominators(&group.rational_coordinates(g).expect("generator in span")))
            .collect();
        let full = Cone::from_generators(d, &gens);
        debug_assert!(full.is_full_dimensional());
        let units = full.lineality().clone();
        let quotient = QuotientMap::new(&units).expect("lineality lattice is saturated");
        let pointed = full.image(quotient.matrix());
        CoordinateCone { units, quotient, pointed }
    }
}

/// Hilbert basis of `c ∩ Z^d` for a pointed full-dimensional cone `c`.
///
/// Every lattice point of `c` lies in some simplicial subcone spanned by `d`
/// independent rays, where it is a point of the half-open parallelepiped plus
/// a nonnegative integer combination of the rays. Those parallelepiped points
/// together with the rays generate; the irreducible ones form the basis.
pub(crate) fn hilbert_basis_full(c: &Cone) -> Vec<IntVec> {
    let d = c.ambient_rank();
    if d == 0 {
        return Vec::new();
    }
    debug_assert!(c.is_pointed() && c.is_full_dimensional());
    let subsets: Vec<Vec<IntVec>> = c
        .rays()
        .iter()
        .cloned()
        .combinations(d)
        .filter(|s| rational::rank(s) == d)
        .collect();
    let mut candidates: BTreeSet<IntVec> = c.rays().iter().cloned().collect();
    for pts in par::map(&subsets, |s| parallelepiped_points(s)) {
        candidates.extend(pts);
    }
    let cands: Vec<IntVec> = candidates.into_iter().collect();
    let keep = par::map(&cands, |x| {
        !cands.iter().any(|h| h != x && c.contains(&lattice::sub(x, h)))
    });
    cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect()
}

/// Nonzero lattice points `sum λ_i r_i` with `0 <= λ_i < 1`.
fn parallelepiped_points(rays: &[IntVec]) -> Vec<IntVec> {
    let d = rays.len();
    let m = IntMatrix::from_rows(rays.to_vec(), d);
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    let v_inv: Vec<IntVec> = rational::inverse(snf.v.rows())
        .expect("unimodular")
        .iter()
        .map(|r| rational::to_integral(r).expect("unimodular inverse is integral"))
        .collect();
    let v_inv = IntMatrix::from_rows(v_inv, d);
    let r_inv = rational::inverse(rays).expect("independent rays");
    let ranges: Vec<Vec<Int>> = diag.iter().map(num_iter).collect();
    let mut out = Vec::new();
    for z in ranges.iter().multi_cartesian_product() {
        let z: IntVec = z.into_iter().cloned().collect();
        if lattice::is_zero(&z) {
            continue;
        }
        // z V^{-1} runs over coset representatives of Z^d / rowspan(rays).
        let x = v_inv.left_apply(&z);
        let lambda: Vec<Rat> = (0..d)
            .map(|j| (0..d).map(|i| Rat::from_integer(x[i].clone()) * &r_inv[i][j]).sum())
            .collect();
        let exact: Vec<Rat> = (0..d)
            .map(|k| lambda.iter().zip(rays).map(|(l, r)| (l - l.floor()) * Rat::from_integer(r[k].clone())).sum())
            .collect();
        let y = rational::to_integral(&exact).expect("parallelepiped point is integral");
        if !lattice::is_zero(&y) {
            out.push(y);
        }
    }
    out
}

fn num_iter(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut i = Int::zero();
    while &i < n {
        out.push(i.clone());
        i += 1;
    }
    out
}

/// A lattice map between two monoids that sends every generator of the
/// source into the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    pub matrix: IntMatrix,
    pub source: AffineMonoid,
    pub target: AffineMonoid,
}

impl MonoidHom {
    pub fn new(matrix: IntMatrix, source: AffineMonoid, target: AffineMonoid) -> Result<MonoidHom> {
        if let Some(g) = unmapped_generator(&matrix, &source, &target) {
            return Err(Error::VerificationFailed(format!(
                "generator {} maps to {}, outside the target monoid",
                lattice::fmt_vec(&g),
                lattice::fmt_vec(&matrix.apply(&g))
            )));
        }
        Ok(MonoidHom { matrix, source, target })
    }

    pub fn apply(&self, x: &[Int]) -> IntVec {
        self.matrix.apply(x)
    }
}

/// The first generator of `source` whose image under `m` is not in `target`.
pub fn unmapped_generator(m: &IntMatrix, source: &AffineMonoid, target: &AffineMonoid) -> Option<IntVec> {
    source.hilbert_basis().iter().find(|g| !target.member(&m.apply(g))).cloned()
}
