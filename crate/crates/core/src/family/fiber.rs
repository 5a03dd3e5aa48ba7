use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::{Signed, Zero};

use super::UniversalFamily;
use crate::lattice::rational::{self, Rat};
use crate::lattice::{self, Int, IntVec};
use crate::{Error, Result};

/// How a relative-dimension-one cone over `κ` meets the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallKind {
    /// One face over `κ`: a marked divisor of the fiber.
    Boundary { face: usize },
    /// Two faces over `κ`, `first < second` in the canonical order: a node
    /// joining two components.
    Internal { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub cone: usize,
    pub kind: WallKind,
    /// Primitive generator of `span(σ') ∩ L`, pointing away from the face for
    /// boundary walls and from the first face to the second for internal ones.
    pub u: IntVec,
}

impl Wall {
    pub fn is_internal(&self) -> bool {
        matches!(self.kind, WallKind::Internal { .. })
    }
}

/// The monoid of a wall as a product (boundary) or a fiber product over `N`
/// (internal), verified in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallStructure {
    /// `N_σ' ≅ Q_κ × N` via `(v, n) ↦ lift(v) + n u`.
    Product { face: usize, u: IntVec },
    /// `N_σ' ≅ Q_κ ×_N N^2`, where `Q_κ -> N` is the `c` map and `N^2 -> N` is
    /// addition, via `(v, a, b) ↦ lift_1(v) + b u`. `c_on_basis` lists `c` on
    /// the Hilbert basis of `Q_κ`.
    FiberProduct { first: usize, second: usize, u: IntVec, c_on_basis: Vec<(IntVec, Int)> },
}

/// `t` with `d = t u`, for `d` known to be parallel to `u`.
fn ratio(d: &[Rat], u: &[Int]) -> Result<Rat> {
    let k = u.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::internal("zero direction"))?;
    let t = &d[k] / Rat::from_integer(u[k].clone());
    if d.iter().zip(u).any(|(di, ui)| *di != &t * Rat::from_integer(ui.clone())) {
        return Err(Error::internal("difference of lifts is not parallel to the wall direction"));
    }
    Ok(t)
}

fn integral(v: &[Rat]) -> Result<IntVec> {
    rational::to_integral(v).ok_or_else(|| Error::internal("lift of a monoid element is not integral"))
}

impl UniversalFamily {
    /// Classifies `σ' ∈ M_1(κ)` by its faces mapping isomorphically onto `κ`.
    pub fn wall(&self, kappa: usize, cone: usize) -> Result<Wall> {
        if !self.m_k(kappa, 1)?.contains(&cone) {
            return Err(Error::NotAWall);
        }
        let fp = self.fan();
        let sigma = &fp.cones()[cone];
        let kc = self.chow().quotient_fan().cone(kappa)?;
        let pm = self.projection().matrix();
        let faces: Vec<usize> = fp
            .faces_of(cone)
            .into_iter()
            .filter(|&j| j != cone && fp.cones()[j].dim() == kc.dim() && fp.cones()[j].image(pm) == *kc)
            .collect();
        let dir = sigma.linear_span().intersection(self.chow().sublattice());
        if dir.rank() != 1 {
            return Err(Error::internal(format!("cone {cone} meets L in rank {}", dir.rank())));
        }
        let u = dir.basis()[0].clone();
        match *faces.as_slice() {
            [face] => {
                let x = sigma.relative_interior_sample()?;
                let y = self.lift_into(face, &pm.apply(&x))?;
                let d: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| Rat::from_integer(a.clone()) - b).collect();
                let t = ratio(&d, &u)?;
                let u = if t.is_negative() { lattice::neg(&u) } else { u };
                Ok(Wall { cone, kind: WallKind::Boundary { face }, u })
            }
            [first, second] => {
                let psi = &self.chow().cone_data(kappa)?.psi;
                let y1 = self.lift_into(first, psi)?;
                let y2 = self.lift_into(second, psi)?;
                let d: Vec<Rat> = y2.iter().zip(&y1).map(|(a, b)| a - b).collect();
                let t = ratio(&d, &u)?;
                let u = if t.is_negative() { lattice::neg(&u) } else { u };
                Ok(Wall { cone, kind: WallKind::Internal { first, second }, u })
            }
            _ => Err(Error::internal(format!(
                "cone {cone} has {} faces mapping isomorphically onto cone {kappa}",
                faces.len()
            ))),
        }
    }

    /// Integer lifts of `v ∈ Q_κ` into the two faces of an internal wall and
    /// the multiple `m` with `lift_2 - lift_1 = m u`.
    fn wall_lifts(&self, wall: &Wall, v: &[Int]) -> Result<(IntVec, IntVec, Int)> {
        let WallKind::Internal { first, second } = wall.kind else {
            return Err(Error::NotAWall);
        };
        let y1 = integral(&self.lift_into(first, v)?)?;
        let y2 = integral(&self.lift_into(second, v)?)?;
        let m = ratio(&rational::to_rat(&lattice::sub(&y2, &y1)), &wall.u)?;
        Ok((y1, y2, m.to_integer()))
    }

    /// Checks the product or fiber-product description of `N_σ'` for a wall.
    /// Elements of `Q_κ` up to grade `bound` are pushed forward; every Hilbert
    /// basis element of `N_σ'` is pulled back.
    pub fn wall_structure(&self, kappa: usize, cone: usize, bound: u32) -> Result<WallStructure> {
        let wall = self.wall(kappa, cone)?;
        let q = self.chow().chow_monoid(kappa)?;
        let n = self.monoid(cone)?;
        let pm = self.projection().matrix();
        let fail = |what: &str, x: &[Int]| {
            Err(Error::VerificationFailed(format!("cone {cone}: {what} at {}", lattice::fmt_vec(x))))
        };
        match wall.kind {
            WallKind::Boundary { face } => {
                if !n.member(&wall.u) {
                    return fail("wall direction outside the monoid", &wall.u);
                }
                for h in q.hilbert_basis() {
                    let y = integral(&self.lift_into(face, h)?)?;
                    if !n.member(&y) {
                        return fail("lift of a base generator outside the monoid", &y);
                    }
                }
                for x in n.hilbert_basis() {
                    let v = pm.apply(x);
                    if !q.member(&v) {
                        return fail("generator maps outside the base monoid", x);
                    }
                    let y = integral(&self.lift_into(face, &v)?)?;
                    let t = ratio(&rational::to_rat(&lattice::sub(x, &y)), &wall.u)?;
                    if !t.is_integer() || t.is_negative() {
                        return fail("generator has no preimage in the product", x);
                    }
                }
                Ok(WallStructure::Product { face, u: wall.u })
            }
            WallKind::Internal { first, second } => {
                let grading = q.grading();
                for v in q.elements_up_to(&grading, &Int::from(bound)) {
                    let (y1, _, m) = self.wall_lifts(&wall, &v)?;
                    if m.is_negative() {
                        return fail("negative c value", &v);
                    }
                    let mut b = Int::zero();
                    while b <= m {
                        let x = lattice::add(&y1, &lattice::scale(&wall.u, &b));
                        if !n.member(&x) {
                            return fail("fiber product element maps outside the monoid", &x);
                        }
                        b += 1;
                    }
                }
                for x in n.hilbert_basis() {
                    let v = pm.apply(x);
                    if !q.member(&v) {
                        return fail("generator maps outside the base monoid", x);
                    }
                    let (y1, _, m) = self.wall_lifts(&wall, &v)?;
                    let t = ratio(&rational::to_rat(&lattice::sub(x, &y1)), &wall.u)?;
                    if !t.is_integer() || t.is_negative() || t > Rat::from_integer(m) {
                        return fail("generator has no preimage in the fiber product", x);
                    }
                }
                let c_on_basis = q
                    .hilbert_basis()
                    .iter()
                    .map(|h| Ok((h.clone(), self.wall_lifts(&wall, h)?.2)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(WallStructure::FiberProduct { first, second, u: wall.u, c_on_basis })
            }
        }
    }
}

/// One less than the number of points of `N_σ'` on the segment joining the
/// two lifts of `v` to an internal wall.
pub fn c_value(fam: &UniversalFamily, kappa: usize, cone: usize, v: &[Int]) -> Result<Int> {
    let wall = fam.wall(kappa, cone)?;
    if !fam.chow().chow_monoid(kappa)?.member(v) {
        return Err(Error::NotInMonoid(lattice::fmt_vec(v)));
    }
    let (y1, _, m) = fam.wall_lifts(&wall, v)?;
    let n = fam.monoid(cone)?;
    let mut count = Int::zero();
    let mut j = Int::zero();
    while j <= m {
        if n.member(&lattice::add(&y1, &lattice::scale(&wall.u, &j))) {
            count += 1;
        }
        j += 1;
    }
    Ok(count - 1)
}

/// The fiber of the family over an interior point of `κ`, as a complex of
/// components (`M_0`), walls (`M_1`) and higher strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComplex {
    pub kappa: usize,
    /// Cones of `F'` in `M_0(κ)`.
    pub components: Vec<usize>,
    /// `ι` of each component: the matching cone of `N_0(κ)`.
    pub component_labels: Vec<usize>,
    pub walls: Vec<Wall>,
    /// `M_k(κ)` for `k = 2, ..., rank L`.
    pub higher: Vec<Vec<usize>>,
    /// Internal walls as edges between component positions.
    pub edges: Vec<(usize, usize, usize)>,
    pub notes: Vec<String>,
}

impl FiberComplex {
    pub(crate) fn new(fam: &UniversalFamily, kappa: usize) -> Result<FiberComplex> {
        let bij = fam.m0_n0_bijection(kappa)?;
        let components: Vec<usize> = bij.iter().map(|&(c, _)| c).collect();
        let component_labels: Vec<usize> = bij.iter().map(|&(_, s)| s).collect();
        let walls = fam
            .m_k(kappa, 1)?
            .into_iter()
            .map(|c| fam.wall(kappa, c))
            .collect::<Result<Vec<_>>>()?;
        let rank_l = fam.chow().sublattice().rank();
        let higher = (2..=rank_l).map(|k| fam.m_k(kappa, k)).collect::<Result<Vec<_>>>()?;
        let pos = |c: usize| {
            components
                .iter()
                .position(|&x| x == c)
                .ok_or_else(|| Error::internal(format!("wall face {c} is not a component")))
        };
        let mut edges = Vec::new();
        let mut notes = Vec::new();
        let mut seen = BTreeSet::new();
        for w in &walls {
            if let WallKind::Internal { first, second } = w.kind {
                edges.push((pos(first)?, pos(second)?, w.cone));
                let label = fam.iota(w.cone)?;
                if !seen.insert(label) {
                    notes.push(format!("walls share the cone {label} of the fan under iota"));
                }
            }
        }
        let fc = FiberComplex { kappa, components, component_labels, walls, higher, edges, notes };
        if !fc.is_connected() {
            return Err(Error::internal(format!("fiber over cone {kappa} is disconnected")));
        }
        Ok(fc)
    }

    pub fn internal_walls(&self) -> impl Iterator<Item = &Wall> {
        self.walls.iter().filter(|w| w.is_internal())
    }

    pub fn boundary_walls(&self) -> impl Iterator<Item = &Wall> {
        self.walls.iter().filter(|w| !w.is_internal())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.components.len();
        if n == 0 {
            return false;
        }
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == i && !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        reached.into_iter().all(|r| r)
    }

    /// The adjacency graph in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph fiber_{} {{", self.kappa);
        for (i, (c, l)) in self.components.iter().zip(&self.component_labels).enumerate() {
            let _ = writeln!(s, "  c{i} [label=\"cone {c} (iota {l})\"];");
        }
        for &(a, b, w) in &self.edges {
            let u = self.walls.iter().find(|x| x.cone == w).map(|x| lattice::fmt_vec(&x.u)).unwrap_or_default();
            let _ = writeln!(s, "  c{a} -- c{b} [label=\"wall {w} u={u}\"];");
        }
        s.push_str("}\n");
        s
    }
}
