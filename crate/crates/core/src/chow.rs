//! The Chow quotient of a complete toric variety by a subtorus, as a toric
//! stack: the quotient fan `G`, the sets `N_0(κ)`, multiplicities, cycles and
//! the monoids `Q_κ`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;

use crate::lattice::{self, integer_kernel, rational, Int, IntVec, LatticeIndex, QuotientMap, Sublattice};
use crate::monoid::AffineMonoid;
use crate::polyhedra::{affine_slice_dim, affine_slice_type, validate_fan, Cone, Fan, SliceType};
use crate::stack::{validate_stack_datum, ToricStackDatum};
use crate::{par, Error, Result};

/// Everything computed for one cone `κ` of the quotient fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCone {
    /// A relative-interior point of `κ` in `Q`.
    pub psi: IntVec,
    /// `N(ψ)`: cones of `F` whose relative interior meets `ψ + L`.
    pub class: Vec<usize>,
    /// Cones of `F` meeting `ψ + L` in exactly one relative-interior point.
    pub n_zero: Vec<usize>,
    pub monoid: AffineMonoid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowQuotient {
    fan: Fan,
    sublattice: Sublattice,
    projection: QuotientMap,
    quotient_fan: Fan,
    cones: Vec<QuotientCone>,
    diagnostics: Vec<String>,
}

/// A cycle `Σ c(σ, L) [σ]` on the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub terms: Vec<(usize, Int)>,
}

/// `N(ψ) = {σ : σ° ∩ (ψ + L) ≠ ∅}` for an integer point `ψ` of `N`.
pub fn class_invariant(f: &Fan, l: &Sublattice, psi: &[Int]) -> BTreeSet<usize> {
    (0..f.len())
        .filter(|&i| affine_slice_type(&f.cones()[i], psi, l) != SliceType::Empty)
        .collect()
}

/// `c(σ, L)`: the index of `L + (Lin σ ∩ N)` in its saturation.
pub fn multiplicity(f: &Fan, l: &Sublattice, index: usize) -> Result<Int> {
    let span = f.cone(index)?.linear_span();
    if span.rank() + l.rank() != span.sum(l).rank() {
        return Err(Error::InfiniteIndex);
    }
    let sum = l.sum(&span);
    match sum.index_in(&sum.saturate())? {
        LatticeIndex::Finite(n) => Ok(n),
        LatticeIndex::Infinite => Err(Error::internal("sum has infinite index in its saturation")),
    }
}

/// The hyperplanes in `Q` spanned by projected rays of `F`. Every projected
/// cone, and every face of one, is a union of faces of this arrangement.
fn arrangement(projected_rays: &[IntVec], q: usize) -> Vec<IntVec> {
    let mut out = BTreeSet::new();
    for subset in projected_rays.iter().cloned().combinations(q - 1) {
        if rational::rank(&subset) != q - 1 {
            continue;
        }
        let normal = integer_kernel(&subset, q);
        out.insert(lattice::primitive_up_to_sign(&normal[0]));
    }
    out.into_iter().collect()
}

/// Full-dimensional regions of a central arrangement in `R^q`.
fn regions(hyperplanes: &[IntVec], q: usize) -> Vec<Cone> {
    let mut current = vec![Cone::whole_space(q)];
    for h in hyperplanes {
        let neg = lattice::neg(h);
        let split = par::map(&current, |c| {
            let gens = c.generators();
            let pos = gens.iter().any(|g| lattice::dot(h, g) > Int::zero());
            let negs = gens.iter().any(|g| lattice::dot(h, g) < Int::zero());
            if pos && negs {
                let mut a = c.facets().to_vec();
                a.push(h.clone());
                let mut b = c.facets().to_vec();
                b.push(neg.clone());
                vec![Cone::from_inequalities(q, &a, c.equations()), Cone::from_inequalities(q, &b, c.equations())]
            } else {
                vec![c.clone()]
            }
        });
        current = split.into_iter().flatten().collect();
    }
    current
}

impl ChowQuotient {
    /// Computes the quotient fan `G` of a complete fan `F` by a saturated `L`.
    ///
    /// Cells of the arrangement spanned by projected rays are grouped by their
    /// class invariant; each group's hull is a cone of `G`. The groups are
    /// checked to be relatively open convex cones.
    pub fn new(f: &Fan, l: &Sublattice) -> Result<ChowQuotient> {
        let r = f.ambient_rank();
        if l.ambient_rank() != r {
            return Err(Error::DimensionMismatch { expected: r, found: l.ambient_rank() });
        }
        validate_fan(f).into_result()?;
        if !f.is_complete() {
            return Err(Error::NotComplete);
        }
        let p = QuotientMap::new(l)?;
        let q = p.target_rank();
        let pm = p.matrix();
        let lift = |v: &IntVec| p.lift(v);

        let cells: Vec<Cone> = if q == 0 {
            vec![Cone::zero(0)]
        } else {
            let rays: BTreeSet<IntVec> = f
                .ray_indices()
                .into_iter()
                .map(|i| pm.apply(&f.cones()[i].rays()[0]))
                .filter(|v| !lattice::is_zero(v))
                .map(|v| lattice::primitive(&v))
                .collect();
            let rays: Vec<IntVec> = rays.into_iter().collect();
            let regs = regions(&arrangement(&rays, q), q);
            let faces: Vec<BTreeSet<Cone>> = par::map(&regs, |c| c.faces());
            faces.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect()
        };
        let samples: Vec<IntVec> = cells
            .iter()
            .map(|c| c.relative_interior_sample().unwrap_or_else(|_| lattice::zero_vec(q)))
            .collect();
        let classes: Vec<BTreeSet<usize>> = par::map(&samples, |s| class_invariant(f, l, &lift(s)));

        let mut groups: BTreeMap<&BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::NotComplete);
            }
            groups.entry(c).or_default().push(i);
        }
        let mut hulls = Vec::new();
        for members in groups.values() {
            let gens: Vec<IntVec> = members.iter().flat_map(|&i| cells[i].generators()).collect();
            let hull = Cone::from_generators(q, &gens);
            let class = &classes[members[0]];
            for (j, s) in samples.iter().enumerate() {
                let inside = if hull.is_zero() { lattice::is_zero(s) } else { hull.relint_contains(s) };
                if inside != (&classes[j] == class) {
                    return Err(Error::InvalidFan(format!(
                        "equivalence class {:?} is not a relatively open convex cone",
                        class
                    )));
                }
            }
            hulls.push(hull);
        }
        let g = Fan::from_cones(q, hulls);
        validate_fan(&g)
            .into_result()
            .map_err(|e| Error::internal(format!("quotient fan is not a fan: {e}")))?;
        if q > 0 && !g.is_complete() {
            return Err(Error::internal("quotient fan is not complete"));
        }

        let per_cone = par::try_map_range(g.len(), |k| -> Result<(QuotientCone, Option<String>)> {
            let kappa = &g.cones()[k];
            let psi = kappa.relative_interior_sample().unwrap_or_else(|_| lattice::zero_vec(q));
            let psi_n = lift(&psi);
            let class: Vec<usize> = class_invariant(f, l, &psi_n).into_iter().collect();
            let n_zero: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&i| affine_slice_type(&f.cones()[i], &psi_n, l) == SliceType::Point)
                .collect();
            let (monoid, diag) = stack_monoid(f, &p, kappa, &n_zero, k)?;
            Ok((QuotientCone { psi, class, n_zero, monoid }, diag))
        })?;
        let mut cones = Vec::new();
        let mut diagnostics = Vec::new();
        for (c, d) in per_cone {
            cones.push(c);
            diagnostics.extend(d);
        }
        Ok(ChowQuotient { fan: f.clone(), sublattice: l.clone(), projection: p, quotient_fan: g, cones, diagnostics })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sublattice
    }

    pub fn projection(&self) -> &QuotientMap {
        &self.projection
    }

    pub fn quotient_fan(&self) -> &Fan {
        &self.quotient_fan
    }

    pub fn cones(&self) -> &[QuotientCone] {
        &self.cones
    }

    pub fn cone_data(&self, kappa: usize) -> Result<&QuotientCone> {
        self.cones.get(kappa).ok_or(Error::UnknownCone { index: kappa, len: self.cones.len() })
    }

    /// Notes about the input that did not prevent the computation.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// `ψ` lifted to `N`.
    pub fn lifted_psi(&self, kappa: usize) -> Result<IntVec> {
        Ok(self.projection.lift(&self.cone_data(kappa)?.psi))
    }

    pub fn n_zero(&self, kappa: usize) -> Result<&[usize]> {
        Ok(&self.cone_data(kappa)?.n_zero)
    }

    /// Cones `σ` of `F` with `dim(σ° ∩ (ψ + L)) = k`.
    pub fn n_k(&self, kappa: usize, k: usize) -> Result<Vec<usize>> {
        let psi = self.lifted_psi(kappa)?;
        Ok(self.cones[kappa]
            .class
            .iter()
            .copied()
            .filter(|&i| affine_slice_dim(&self.fan.cones()[i], &psi, &self.sublattice) == Some(k))
            .collect())
    }

    pub fn multiplicity(&self, sigma: usize) -> Result<Int> {
        multiplicity(&self.fan, &self.sublattice, sigma)
    }

    pub fn cycle(&self, kappa: usize) -> Result<Cycle> {
        let terms = self
            .n_zero(kappa)?
            .iter()
            .map(|&s| Ok((s, self.multiplicity(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cycle { terms })
    }

    pub fn chow_monoid(&self, kappa: usize) -> Result<&AffineMonoid> {
        Ok(&self.cone_data(kappa)?.monoid)
    }

    /// The datum `(G, Q_κ, Q)`. Failure to validate is an internal error.
    pub fn stack_datum(&self) -> Result<ToricStackDatum> {
        let d = ToricStackDatum::new(
            self.quotient_fan.clone(),
            self.cones.iter().map(|c| c.monoid.clone()).collect(),
        )?;
        let rep = validate_stack_datum(&d);
        if !rep.is_valid() {
            let msgs: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::internal(format!("Chow datum is not a stack datum: {}", msgs.join("; "))));
        }
        Ok(d)
    }
}

/// `Q_κ = κ ∩ ⋂_{σ ∈ N_0(κ)} p(Lin σ ∩ N) ∩ span κ`.
///
/// Also reports when the cone `⋂ p(σ)` is strictly larger than `κ`.
fn stack_monoid(
    f: &Fan,
    p: &QuotientMap,
    kappa: &Cone,
    n_zero: &[usize],
    index: usize,
) -> Result<(AffineMonoid, Option<String>)> {
    let q = p.target_rank();
    let span_k = kappa.linear_span();
    let over = p.preimage_lattice(&span_k);
    let mut group = span_k.clone();
    let mut raw_cone = Cone::whole_space(q);
    for &s in n_zero {
        let sigma = &f.cones()[s];
        let m = sigma.linear_span().intersection(&over).image(p.matrix());
        if m.rank() != span_k.rank() {
            return Err(Error::internal(format!("cone {s} of N_0 does not cover cone {index}")));
        }
        group = group.intersection(&m);
        raw_cone = raw_cone.intersect(&sigma.image(p.matrix()));
    }
    if n_zero.is_empty() {
        return Err(Error::internal(format!("N_0 of cone {index} is empty")));
    }
    let diag = (raw_cone != *kappa).then(|| {
        format!("cone {index}: the projected cones of N_0 intersect in {raw_cone}, larger than the cone itself")
    });
    Ok((AffineMonoid::saturated(kappa, &group), diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn p2() -> Fan {
        Fan::from_maximal_cones(
            2,
            &[
                Cone::from_i64(&[&[1, 0], &[0, 1]]),
                Cone::from_i64(&[&[0, 1], &[-1, -1]]),
                Cone::from_i64(&[&[-1, -1], &[1, 0]]),
            ],
        )
    }

    fn p1p1() -> Fan {
        Fan::from_maximal_cones(
            2,
            &[
                Cone::from_i64(&[&[1, 0], &[0, 1]]),
                Cone::from_i64(&[&[0, 1], &[-1, 0]]),
                Cone::from_i64(&[&[-1, 0], &[0, -1]]),
                Cone::from_i64(&[&[0, -1], &[1, 0]]),
            ],
        )
    }

    fn p1() -> Fan {
        Fan::from_maximal_cones(1, &[Cone::from_i64(&[&[1]]), Cone::from_i64(&[&[-1]])])
    }

    fn idx(f: &Fan, rays: &[&[i64]]) -> usize {
        let c = if rays.is_empty() { Cone::zero(f.ambient_rank()) } else { Cone::from_i64(rays) };
        f.index_of(&c).expect("cone in fan")
    }

    #[test]
    fn p2_quotient() {
        let f = p2();
        let l = Sublattice::new(2, &[ivec(&[1, 0])]);
        let cq = ChowQuotient::new(&f, &l).unwrap();
        assert_eq!(cq.quotient_fan(), &p1());
        let pos = idx(cq.quotient_fan(), &[&[1]]);
        assert_eq!(cq.n_zero(pos).unwrap(), &[idx(&f, &[&[0, 1]])]);
        let mut n1 = cq.n_k(pos, 1).unwrap();
        n1.sort();
        let mut expect = vec![idx(&f, &[&[1, 0], &[0, 1]]), idx(&f, &[&[0, 1], &[-1, -1]])];
        expect.sort();
        assert_eq!(n1, expect);
        let zero = idx(cq.quotient_fan(), &[]);
        assert_eq!(cq.n_zero(zero).unwrap(), &[idx(&f, &[])]);
        for (k, c) in cq.quotient_fan().cones().iter().enumerate() {
            assert_eq!(cq.chow_monoid(k).unwrap(), &AffineMonoid::from_cone_full(c).unwrap());
        }
        assert!(cq.stack_datum().is_ok());
        assert!(cq.diagnostics().is_empty());
        assert_eq!(cq.cycle(pos).unwrap().terms, vec![(idx(&f, &[&[0, 1]]), Int::from(1))]);
    }

    #[test]
    fn p2_class_invariants() {
        let f = p2();
        let l = Sublattice::new(2, &[ivec(&[1, 0])]);
        let c: Vec<usize> = class_invariant(&f, &l, &ivec(&[0, 1])).into_iter().collect();
        let mut e = vec![idx(&f, &[&[1, 0], &[0, 1]]), idx(&f, &[&[0, 1], &[-1, -1]]), idx(&f, &[&[0, 1]])];
        e.sort();
        assert_eq!(c, e);
        // The negative x-axis lies in the interior of <(0,1),(-1,-1)>.
        let c: Vec<usize> = class_invariant(&f, &l, &ivec(&[0, 0])).into_iter().collect();
        let mut e = vec![idx(&f, &[]), idx(&f, &[&[1, 0]]), idx(&f, &[&[0, 1], &[-1, -1]])];
        e.sort();
        assert_eq!(c, e);
    }

    #[test]
    fn p1p1_quotient() {
        let f = p1p1();
        let l = Sublattice::new(2, &[ivec(&[1, 1])]);
        let cq = ChowQuotient::new(&f, &l).unwrap();
        assert_eq!(cq.quotient_fan(), &p1());
        let pos = idx(cq.quotient_fan(), &[&[1]]);
        let mut e = vec![idx(&f, &[&[1, 0]]), idx(&f, &[&[0, -1]])];
        e.sort();
        assert_eq!(cq.n_zero(pos).unwrap(), e.as_slice());
        let n1 = cq.n_k(pos, 1).unwrap();
        assert!(n1.contains(&idx(&f, &[&[1, 0], &[0, -1]])));
        assert_eq!(cq.chow_monoid(pos).unwrap().hilbert_basis(), &[ivec(&[1])]);
        let terms = cq.cycle(pos).unwrap().terms;
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(_, m)| *m == Int::from(1)));
        assert!(cq.stack_datum().is_ok());
    }

    #[test]
    fn trivial_subtorus_gives_same_fan() {
        let f = p2();
        let cq = ChowQuotient::new(&f, &Sublattice::zero(2)).unwrap();
        assert_eq!(cq.quotient_fan(), &f);
        let d = cq.stack_datum().unwrap();
        assert_eq!(d, ToricStackDatum::variety(&f).unwrap());
    }

    #[test]
    fn multiplicities() {
        let f = p2();
        let l = Sublattice::new(2, &[ivec(&[1, 2])]);
        assert_eq!(multiplicity(&f, &l, idx(&f, &[&[1, 0]])).unwrap(), Int::from(2));
        let l1 = Sublattice::new(2, &[ivec(&[1, 0])]);
        assert_eq!(multiplicity(&f, &l1, idx(&f, &[&[0, 1]])).unwrap(), Int::from(1));
        assert_eq!(multiplicity(&f, &l1, idx(&f, &[&[1, 0]])), Err(Error::InfiniteIndex));
        assert_eq!(multiplicity(&f, &Sublattice::zero(2), 0).unwrap(), Int::from(1));
        let cq = ChowQuotient::new(&f, &l).unwrap();
        let found = (0..cq.quotient_fan().len()).any(|k| {
            cq.cycle(k).unwrap().terms.contains(&(idx(&f, &[&[1, 0]]), Int::from(2)))
        });
        assert!(found);
    }

    #[test]
    fn rejects_incomplete_and_unsaturated() {
        let f = Fan::from_maximal_cones(2, &[Cone::from_i64(&[&[1, 0], &[0, 1]])]);
        assert_eq!(ChowQuotient::new(&f, &Sublattice::zero(2)), Err(Error::NotComplete));
        let l = Sublattice::new(2, &[ivec(&[2, 0])]);
        assert_eq!(ChowQuotient::new(&p2(), &l), Err(Error::NotSaturated));
    }

    #[test]
    fn full_sublattice() {
        let cq = ChowQuotient::new(&p2(), &Sublattice::full(2)).unwrap();
        assert_eq!(cq.quotient_fan(), &Fan::trivial(0));
        assert!(cq.stack_datum().is_ok());
    }
}
