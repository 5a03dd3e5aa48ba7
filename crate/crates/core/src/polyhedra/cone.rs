use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::fm::{self, Constraint};
use crate::lattice::rational::{self, Rat};
use crate::lattice::{self, integer_kernel, Int, IntMatrix, IntVec, Sublattice};

/// A rational polyhedral cone in `R^r`, carrying both descriptions.
///
/// Canonical form: `lineality` is the saturated lattice of the lineality
/// space; `rays` are the primitive extreme rays of the pointed part, each
/// chosen orthogonal to the lineality space, sorted lexicographically.
/// `facets` are primitive inward normals lying in the linear span of the cone
/// and `equations` is an HNF basis of the annihilator of that span.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    lineality: Sublattice,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

/// Extreme rays and lineality of `{x : a·x >= 0 (a in ineqs), e·x = 0 (e in eqs)}`.
///
/// A nonzero `x` orthogonal to the lineality space is extreme iff the active
/// constraints (together with the equations and the lineality directions)
/// have rank `r - 1`, so it suffices to try every subset of the inequalities
/// of the right size.
fn extreme_rays(r: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> (Sublattice, Vec<IntVec>) {
    let ineqs: Vec<IntVec> = ineqs
        .iter()
        .filter(|a| !lattice::is_zero(a))
        .map(|a| lattice::primitive(a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut all = ineqs.clone();
    all.extend(eqs.iter().cloned());
    let lineality = Sublattice::new(r, &integer_kernel(&all, r));
    let mut base: Vec<IntVec> = eqs.to_vec();
    base.extend(lineality.basis().iter().cloned());
    let base_rank = rational::rank(&base);
    if base_rank >= r {
        return (lineality, Vec::new());
    }
    let pointed_dim = r - base_rank;
    let mut rays = BTreeSet::new();
    for subset in ineqs.iter().combinations(pointed_dim - 1) {
        let mut rows = base.clone();
        rows.extend(subset.into_iter().cloned());
        if rational::rank(&rows) != r - 1 {
            continue;
        }
        let kernel = integer_kernel(&rows, r);
        debug_assert_eq!(kernel.len(), 1);
        let x = &kernel[0];
        let vals: Vec<Int> = ineqs.iter().map(|a| lattice::dot(a, x)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            rays.insert(x.clone());
        } else if vals.iter().all(|v| !v.is_positive()) {
            rays.insert(lattice::neg(x));
        }
    }
    (lineality, rays.into_iter().collect())
}

impl Cone {
    /// `{0}` in `R^r`.
    pub fn zero(r: usize) -> Cone {
        Cone::from_generators(r, &[])
    }

    /// All of `R^r`.
    pub fn whole_space(r: usize) -> Cone {
        Cone::from_inequalities(r, &[], &[])
    }

    /// The cone generated by `rays` (lineality allowed).
    pub fn from_generators(r: usize, gens: &[IntVec]) -> Cone {
        assert!(gens.iter().all(|g| g.len() == r), "generator of wrong length");
        let gens: Vec<IntVec> = gens.iter().filter(|g| !lattice::is_zero(g)).cloned().collect();
        let (span_perp, facets) = extreme_rays(r, &gens, &[]);
        let equations = span_perp.basis().to_vec();
        let (lineality, rays) = extreme_rays(r, &facets, &equations);
        Cone { ambient_rank: r, rays, lineality, facets, equations }
    }

    /// `{x : h·x >= 0 for h in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(r: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Cone {
        assert!(ineqs.iter().chain(eqs).all(|g| g.len() == r), "functional of wrong length");
        let (lineality, rays) = extreme_rays(r, ineqs, eqs);
        let mut gens = rays.clone();
        for b in lineality.basis() {
            gens.push(b.clone());
            gens.push(lattice::neg(b));
        }
        let (span_perp, facets) = extreme_rays(r, &gens, &[]);
        Cone { ambient_rank: r, rays, lineality, facets, equations: span_perp.basis().to_vec() }
    }

    pub fn from_i64(rays: &[&[i64]]) -> Cone {
        let r = rays.first().map_or(0, |x| x.len());
        Cone::from_generators(r, &rays.iter().map(|x| lattice::ivec(x)).collect::<Vec<_>>())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.rank()
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// Rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for b in self.lineality.basis() {
            g.push(b.clone());
            g.push(lattice::neg(b));
        }
        g
    }

    /// `span(c) ∩ Z^r`.
    pub fn linear_span(&self) -> Sublattice {
        Sublattice::new(self.ambient_rank, &integer_kernel(&self.equations, self.ambient_rank))
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| lattice::dot(e, x).is_zero())
            && self.facets.iter().all(|h| !lattice::dot(h, x).is_negative())
    }

    pub fn contains_rational(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| rational::dot_rat(x, e).is_zero())
            && self.facets.iter().all(|h| !rational::dot_rat(x, h).is_negative())
    }

    pub fn relint_contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| lattice::dot(e, x).is_zero())
            && self.facets.iter().all(|h| lattice::dot(h, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient_rank, &ineqs, &eqs)
    }

    /// Cone generated by the images of the generators under `m` (acting on columns).
    pub fn image(&self, m: &IntMatrix) -> Cone {
        assert_eq!(m.ncols(), self.ambient_rank);
        let gens: Vec<IntVec> = self.generators().iter().map(|g| m.apply(g)).collect();
        Cone::from_generators(m.nrows(), &gens)
    }

    /// `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &IntMatrix) -> Cone {
        assert_eq!(m.nrows(), self.ambient_rank);
        let ineqs: Vec<IntVec> = self.facets.iter().map(|h| m.left_apply(h)).collect();
        let eqs: Vec<IntVec> = self.equations.iter().map(|e| m.left_apply(e)).collect();
        Cone::from_inequalities(m.ncols(), &ineqs, &eqs)
    }

    /// `{u : u·x >= 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(lattice::neg(e));
        }
        Cone::from_generators(self.ambient_rank, &gens)
    }

    /// The smallest face of `self` containing every point of `points`.
    pub fn minimal_face_containing(&self, points: &[IntVec]) -> Cone {
        let tight: Vec<&IntVec> = self
            .facets
            .iter()
            .filter(|h| points.iter().all(|p| lattice::dot(h, p).is_zero()))
            .collect();
        let mut gens: Vec<IntVec> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|h| lattice::dot(h, r).is_zero()))
            .cloned()
            .collect();
        for b in self.lineality.basis() {
            gens.push(b.clone());
            gens.push(lattice::neg(b));
        }
        Cone::from_generators(self.ambient_rank, &gens)
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient_rank == other.ambient_rank
            && other.contains_cone(self)
            && other.minimal_face_containing(&self.generators()) == *self
    }

    /// The facets as cones.
    pub fn facet_cones(&self) -> Vec<Cone> {
        self.facets
            .iter()
            .map(|h| {
                let mut gens: Vec<IntVec> =
                    self.rays.iter().filter(|r| lattice::dot(h, r).is_zero()).cloned().collect();
                for b in self.lineality.basis() {
                    gens.push(b.clone());
                    gens.push(lattice::neg(b));
                }
                Cone::from_generators(self.ambient_rank, &gens)
            })
            .collect()
    }

    /// Every face, including `self` and the minimal face (the lineality space).
    pub fn faces(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if out.contains(&c) {
                continue;
            }
            stack.extend(c.facet_cones());
            out.insert(c);
        }
        out
    }

    /// A point of the relative interior: the sum of the rays and lineality basis.
    pub fn relative_interior_sample(&self) -> crate::Result<IntVec> {
        if self.is_zero() {
            return Err(crate::Error::ZeroCone);
        }
        let mut x = lattice::zero_vec(self.ambient_rank);
        for g in self.rays.iter().chain(self.lineality.basis()) {
            x = lattice::add(&x, g);
        }
        debug_assert!(self.relint_contains(&x));
        Ok(x)
    }

    /// `count` deterministic, pairwise distinct relative-interior points.
    pub fn interior_samples(&self, count: usize) -> crate::Result<Vec<IntVec>> {
        if self.is_zero() {
            return Err(crate::Error::ZeroCone);
        }
        let gens: Vec<&IntVec> = self.rays.iter().chain(self.lineality.basis()).collect();
        let n_rays = self.rays.len();
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        let mut i = 0usize;
        while out.len() < count {
            let mut x = lattice::zero_vec(self.ambient_rank);
            for (j, g) in gens.iter().enumerate() {
                // Positive weights on rays, arbitrary integer weights on lineality.
                let w = if j < n_rays {
                    1 + ((i + 1) * (j + 2) + i * i + i / 7) % (7 + i / 7)
                } else {
                    (i * (j + 3)) % 5 + i / 5
                } as i64;
                let w = if j >= n_rays && (i + j) % 2 == 1 { -w } else { w };
                x = lattice::add(&x, &lattice::scale(g, &Int::from(w)));
            }
            if seen.insert(x.clone()) {
                out.push(x);
            }
            i += 1;
        }
        Ok(out)
    }

    fn sort_key(&self) -> (std::cmp::Reverse<usize>, &Vec<IntVec>, &Sublattice, usize) {
        (std::cmp::Reverse(self.dim()), &self.rays, &self.lineality, self.ambient_rank)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key()
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Higher-dimensional cones first, then lexicographic in the rays.
impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rays.hash(state);
        self.lineality.hash(state);
        self.ambient_rank.hash(state);
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| lattice::fmt_vec(r)).collect();
        write!(f, "cone[{}]", rays.join(","))?;
        if !self.lineality.is_zero() {
            write!(f, "+lin{}", self.lineality)?;
        }
        Ok(())
    }
}

/// How an affine subspace `psi + span(L)` meets the relative interior of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SliceType {
    Empty,
    Point,
    PositiveDim,
}

/// Dimension of `relint(c) ∩ (psi + span_R(L))`, or `None` if it is empty.
///
/// The strict inequalities cut out a relatively open subset of the affine
/// solution space of the cone's equations, so when nonempty its dimension is
/// that of `span(c) ∩ span(L)`. Feasibility is decided by Fourier–Motzkin.
/// `psi` may be any positive multiple of the intended point: both sides are
/// invariant under positive scaling.
pub fn affine_slice_dim(c: &Cone, psi: &[Int], l: &Sublattice) -> Option<usize> {
    let r = c.ambient_rank();
    assert_eq!(psi.len(), r);
    assert_eq!(l.ambient_rank(), r);
    let lb = l.basis();
    let k = lb.len();
    let eq_rows: Vec<Vec<Rat>> = c
        .equations()
        .iter()
        .map(|e| lb.iter().map(|b| Rat::from_integer(lattice::dot(e, b))).collect())
        .collect();
    let eq_rhs: Vec<Rat> = c.equations().iter().map(|e| Rat::from_integer(-lattice::dot(e, psi))).collect();
    let (t0, kernel) = rational::solve(&eq_rows, &eq_rhs, k)?;
    let m = kernel.len();
    let cons: Vec<Constraint> = c
        .facets()
        .iter()
        .map(|h| {
            let hl: Vec<Rat> = lb.iter().map(|b| Rat::from_integer(lattice::dot(h, b))).collect();
            let constant: Rat = Rat::from_integer(lattice::dot(h, psi))
                + t0.iter().zip(&hl).map(|(a, b)| a * b).sum::<Rat>();
            let coeffs: Vec<Rat> =
                kernel.iter().map(|kv| kv.iter().zip(&hl).map(|(a, b)| a * b).sum()).collect();
            let mut all = coeffs.clone();
            all.push(constant);
            let den = all.iter().fold(Int::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let den = Rat::from_integer(den);
            let ints: Vec<Int> = all.iter().map(|x| (x * &den).to_integer()).collect();
            Constraint { coeffs: ints[..m].to_vec(), constant: ints[m].clone(), strict: true }
        })
        .collect();
    fm::feasible(m, cons).then_some(m)
}

pub fn affine_slice_type(c: &Cone, psi: &[Int], l: &Sublattice) -> SliceType {
    match affine_slice_dim(c, psi, l) {
        None => SliceType::Empty,
        Some(0) => SliceType::Point,
        Some(_) => SliceType::PositiveDim,
    }
}
