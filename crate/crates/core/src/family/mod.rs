//! The universal family over the Chow quotient: the refinement `F'` of `F`
//! by the preimages of the cones of `G`, its monoids, and the combinatorics
//! of its fibers.

mod basic;
mod fiber;

use std::collections::BTreeSet;

use crate::chow::ChowQuotient;
use crate::lattice::rational::{self, Rat};
use crate::lattice::{Int, IntMatrix, IntVec, QuotientMap};
use crate::monoid::AffineMonoid;
use crate::polyhedra::{affine_slice_dim, Cone, Fan};
use crate::stack::{validate_stack_morphism, StackMorphism, ToricStackDatum};
use crate::{par, Error, Result};

pub use basic::BasicMonoidPresentation;
pub use fiber::{c_value, FiberComplex, Wall, WallKind, WallStructure};

/// `{p^{-1}(κ) ∩ σ : κ ∈ G, σ ∈ F}` closed under faces.
pub fn refine(f: &Fan, g: &Fan, p: &IntMatrix) -> Fan {
    let pre: Vec<Cone> = par::map(g.cones(), |k| k.preimage(p));
    let pairs: Vec<(usize, usize)> =
        (0..pre.len()).flat_map(|k| (0..f.len()).map(move |s| (k, s))).collect();
    let cones: BTreeSet<Cone> = par::map(&pairs, |&(k, s)| pre[k].intersect(&f.cones()[s])).into_iter().collect();
    let cones: Vec<Cone> = cones.into_iter().collect();
    Fan::from_maximal_cones(f.ambient_rank(), &cones)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalFamily {
    chow: ChowQuotient,
    datum: ToricStackDatum,
    iota: Vec<usize>,
    tau: Vec<usize>,
    to_base: StackMorphism,
    to_target: StackMorphism,
}

impl UniversalFamily {
    /// Builds `(F', N_σ', N)` with `N_σ' = σ' ∩ p^{-1}(Q_τ)` for `τ` the smallest
    /// cone of `G` containing `p(σ')`, and validates both structure maps.
    pub fn new(cq: &ChowQuotient) -> Result<UniversalFamily> {
        let f = cq.fan();
        let g = cq.quotient_fan();
        let p = cq.projection();
        let fp = refine(f, g, p.matrix());
        let placed = par::try_map_range(fp.len(), |i| -> Result<(usize, usize, AffineMonoid)> {
            let c = &fp.cones()[i];
            let sample = c.relative_interior_sample().unwrap_or_else(|_| crate::lattice::zero_vec(f.ambient_rank()));
            let iota = f
                .cone_containing_relint(&sample)
                .ok_or_else(|| Error::internal(format!("cone {i} of the family lies in no cone of the fan")))?;
            let image = c.image(p.matrix());
            let tau = g.smallest_cone_containing(&image).ok_or(Error::NoTargetCone { cone: i })?;
            let q_tau = cq.chow_monoid(tau)?;
            let lattice = p.preimage_lattice(q_tau.group());
            Ok((iota, tau, AffineMonoid::from_cone(c, &lattice)?))
        })?;
        let mut iota = Vec::new();
        let mut tau = Vec::new();
        let mut monoids = Vec::new();
        for (a, b, m) in placed {
            iota.push(a);
            tau.push(b);
            monoids.push(m);
        }
        let datum = ToricStackDatum::new(fp, monoids)?;
        let wrap = |e: Error| Error::internal(format!("family structure map: {e}"));
        let to_base = validate_stack_morphism(p.matrix(), &datum, &cq.stack_datum()?).map_err(wrap)?;
        let variety = ToricStackDatum::variety(f)?;
        let id = IntMatrix::identity(f.ambient_rank());
        let to_target = validate_stack_morphism(&id, &datum, &variety).map_err(wrap)?;
        Ok(UniversalFamily { chow: cq.clone(), datum, iota, tau, to_base, to_target })
    }

    pub fn chow(&self) -> &ChowQuotient {
        &self.chow
    }

    pub fn datum(&self) -> &ToricStackDatum {
        &self.datum
    }

    pub fn fan(&self) -> &Fan {
        self.datum.fan()
    }

    pub fn projection(&self) -> &QuotientMap {
        self.chow.projection()
    }

    pub fn to_base(&self) -> &StackMorphism {
        &self.to_base
    }

    pub fn to_target(&self) -> &StackMorphism {
        &self.to_target
    }

    /// `ι(σ')`: the cone of `F` whose relative interior contains that of `σ'`.
    pub fn iota(&self, cone: usize) -> Result<usize> {
        self.iota.get(cone).copied().ok_or(Error::UnknownCone { index: cone, len: self.iota.len() })
    }

    /// The smallest cone of `G` containing `p(σ')`.
    pub fn base_cone(&self, cone: usize) -> Result<usize> {
        self.tau.get(cone).copied().ok_or(Error::UnknownCone { index: cone, len: self.tau.len() })
    }

    pub fn monoid(&self, cone: usize) -> Result<&AffineMonoid> {
        self.datum.monoid(cone)
    }

    /// `M_k(κ)`: cones `σ'` with `p(σ') = κ` and `dim σ' = dim κ + k`.
    ///
    /// Each member is checked against the other description, that the fiber
    /// `σ'° ∩ p^{-1}(ψ)` over an interior point `ψ` of `κ` has dimension `k`.
    pub fn m_k(&self, kappa: usize, k: usize) -> Result<Vec<usize>> {
        let g = self.chow.quotient_fan();
        let kc = g.cone(kappa)?;
        let psi = self.chow.lifted_psi(kappa)?;
        let l = self.chow.sublattice();
        let mut out = Vec::new();
        for (i, c) in self.fan().cones().iter().enumerate() {
            if self.tau[i] != kappa || c.dim() != kc.dim() + k {
                continue;
            }
            if c.image(self.projection().matrix()) != *kc {
                continue;
            }
            if affine_slice_dim(c, &psi, l) != Some(k) {
                return Err(Error::internal(format!(
                    "cone {i} has relative dimension {k} over cone {kappa} but a fiber of another dimension"
                )));
            }
            out.push(i);
        }
        Ok(out)
    }

    /// `ι` restricted to `M_0(κ)`, checked to be a bijection onto `N_0(κ)`.
    pub fn m0_n0_bijection(&self, kappa: usize) -> Result<Vec<(usize, usize)>> {
        let m0 = self.m_k(kappa, 0)?;
        let pairs: Vec<(usize, usize)> = m0.iter().map(|&c| (c, self.iota[c])).collect();
        let image: BTreeSet<usize> = pairs.iter().map(|&(_, s)| s).collect();
        let n0: BTreeSet<usize> = self.chow.n_zero(kappa)?.iter().copied().collect();
        if image.len() != pairs.len() || image != n0 {
            return Err(Error::internal(format!("iota is not a bijection from M_0 to N_0 over cone {kappa}")));
        }
        Ok(pairs)
    }

    pub fn fiber(&self, kappa: usize) -> Result<FiberComplex> {
        FiberComplex::new(self, kappa)
    }

    pub fn basic_monoid(&self, kappa: usize) -> Result<BasicMonoidPresentation> {
        BasicMonoidPresentation::new(self, kappa)
    }

    /// The unique point of `span(face)` over `v`, which must lie in `p(span(face))`.
    pub(crate) fn lift_into(&self, face: usize, v: &[Int]) -> Result<Vec<Rat>> {
        lift_into(self.projection().matrix(), &self.fan().cones()[face], v)
            .ok_or_else(|| Error::internal(format!("cone {face} does not map isomorphically onto its image")))
    }
}

/// The unique `y ∈ span(c)` with `p y = v`, if `p` is injective on `span(c)`
/// and `v` lies in the image.
pub(crate) fn lift_into(p: &IntMatrix, c: &Cone, v: &[Int]) -> Option<Vec<Rat>> {
    let span = c.linear_span();
    let basis = span.basis();
    let images: Vec<IntVec> = basis.iter().map(|b| p.apply(b)).collect();
    let a: Vec<Vec<Rat>> = (0..p.nrows())
        .map(|row| images.iter().map(|im| Rat::from_integer(im[row].clone())).collect())
        .collect();
    let (coef, kernel) = rational::solve(&a, &rational::to_rat(v), basis.len())?;
    if !kernel.is_empty() {
        return None;
    }
    let mut y = vec![Rat::from_integer(Int::from(0)); p.ncols()];
    for (c, b) in coef.iter().zip(basis) {
        for (yk, bk) in y.iter_mut().zip(b) {
            *yk += c * Rat::from_integer(bk.clone());
        }
    }
    Some(y)
}
