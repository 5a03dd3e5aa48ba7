//! Executable checks of the structural properties of the universal family:
//! integrality of the monoid maps, reduced fibers, equidimensionality and the
//! basic-monoid presentation.

use std::collections::HashSet;
use std::fmt;

use num_traits::ToPrimitive;

use crate::family::{BasicMonoidPresentation, UniversalFamily};
use crate::lattice::{self, Int, IntMatrix, IntVec};
use crate::monoid::{AffineMonoid, MonoidHom};
use crate::polyhedra::Fan;
use crate::stack::ToricStackDatum;
use crate::{par, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// A bounded search could not be completed.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Counterexamples for `Fail`, reasons for `Inconclusive`.
    pub witnesses: Vec<String>,
    pub parameters: Vec<(String, String)>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport { name: name.into(), verdict: Verdict::Pass, witnesses: Vec::new(), parameters: Vec::new() }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.push((k.into(), v.to_string()));
        self
    }

    fn fail(&mut self, witness: String) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(witness);
    }

    fn inconclusive(&mut self, reason: String) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
        self.witnesses.push(reason);
    }

    /// Folds another report into this one; the worst verdict wins.
    fn absorb(&mut self, other: CheckReport) {
        self.verdict = self.verdict.max(other.verdict);
        self.witnesses.extend(other.witnesses);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `h` rewritten between the group coordinates of source and target, so both
/// monoids have full-rank groups.
pub fn in_group_coordinates(h: &MonoidHom) -> MonoidHom {
    let (s, es) = h.source.in_group_coordinates();
    let (t, _) = h.target.in_group_coordinates();
    let cols: Vec<IntVec> = (0..es.ncols())
        .map(|k| {
            let img = h.matrix.apply(&es.column(k));
            h.target.group().coordinates(&img).expect("image of the source group lies in the target group")
        })
        .collect();
    let m = IntMatrix::from_rows(cols, t.ambient_rank()).transpose();
    MonoidHom { matrix: m, source: s, target: t }
}

/// The dual map `Hom(T, N) -> Hom(S, N)` of `h: S -> T`, in group coordinates.
/// Both monoids must be saturated.
pub fn dual_hom(h: &MonoidHom) -> Result<MonoidHom> {
    let c = in_group_coordinates(h);
    let source = c.target.dual()?;
    let target = c.source.dual()?;
    MonoidHom::new(c.matrix.transpose(), source, target)
}

/// Membership test on `i64` vectors for a monoid in group coordinates.
enum Membership {
    Facets(Vec<Vec<i64>>),
    Listed(HashSet<Vec<i64>>),
}

impl Membership {
    fn contains(&self, v: &[i64]) -> bool {
        match self {
            Membership::Facets(fs) => fs.iter().all(|f| f.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() >= 0),
            Membership::Listed(set) => set.contains(v),
        }
    }
}

fn small(v: &[Int]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Sum of the Hilbert basis of the dual: a grading positive on the monoid.
fn dual_grading(m: &AffineMonoid) -> Result<IntVec> {
    let d = AffineMonoid::saturated(m.cone(), &crate::lattice::Sublattice::full(m.ambient_rank())).dual()?;
    Ok(d.hilbert_basis().iter().fold(lattice::zero_vec(m.ambient_rank()), |a, b| lattice::add(&a, b)))
}

/// Bounded check of the equational criterion for integrality of `h: S -> T`:
/// whenever `h(s1) + t1 = h(s2) + t2` there are `s3, s4 ∈ S` and `t ∈ T` with
/// `s1 + s3 = s2 + s4`, `t1 = h(s3) + t` and `t2 = h(s4) + t`.
///
/// All identities whose terms have grade at most `bound` are enumerated and
/// witnesses `s3` are searched up to grade `2 bound`. Pass therefore means no
/// violation exists within the bound.
pub fn check_integral(h: &MonoidHom, bound: u32) -> CheckReport {
    let mut rep = CheckReport::new("integral").param("bound", bound);
    let c = in_group_coordinates(h);
    if !c.source.is_pointed() || !c.target.is_pointed() {
        rep.inconclusive("monoids with units are not enumerated".into());
        return rep;
    }
    let (gs, gt) = match (dual_grading(&c.source), dual_grading(&c.target)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            rep.inconclusive("no grading available".into());
            return rep;
        }
    };
    let b = Int::from(bound);
    let src = c.source.elements_up_to(&gs, &b);
    let witnesses = c.source.elements_up_to(&gs, &(&b * 2));
    let tgt = c.target.elements_up_to(&gt, &b);
    let member_s = if c.source.is_saturated() {
        Membership::Facets(c.source.cone().facets().iter().filter_map(|f| small(f)).collect())
    } else {
        let all = c.source.elements_up_to(&gs, &(&b * 3));
        Membership::Listed(all.iter().filter_map(|v| small(v)).collect())
    };
    let member_t = if c.target.is_saturated() {
        Membership::Facets(c.target.cone().facets().iter().filter_map(|f| small(f)).collect())
    } else {
        Membership::Listed(tgt.iter().filter_map(|v| small(v)).collect())
    };
    let conv = |xs: &[IntVec]| -> Option<Vec<Vec<i64>>> { xs.iter().map(|v| small(v)).collect() };
    let hm: Option<Vec<Vec<i64>>> = c.matrix.rows().iter().map(|r| small(r)).collect();
    let (Some(src), Some(wit), Some(tgt), Some(hm), Some(gt)) = (conv(&src), conv(&witnesses), conv(&tgt), hm, small(&gt))
    else {
        rep.inconclusive("entries exceed 64 bits".into());
        return rep;
    };
    let apply = |x: &[i64]| -> Vec<i64> { hm.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect() };
    let img: Vec<Vec<i64>> = src.iter().map(|s| apply(s)).collect();
    let img_w: Vec<Vec<i64>> = wit.iter().map(|s| apply(s)).collect();
    let grade_t = |x: &[i64]| -> i64 { gt.iter().zip(x).map(|(a, b)| a * b).sum() };
    let bound = bound as i64;

    // Witnesses usable for a given t1 are those with t1 - h(s3) in T; this
    // depends on t1 alone.
    let usable: Vec<Vec<usize>> = tgt
        .iter()
        .map(|t1| {
            (0..wit.len())
                .filter(|&w| {
                    let t: Vec<i64> = (0..t1.len()).map(|k| t1[k] - img_w[w][k]).collect();
                    member_t.contains(&t)
                })
                .collect()
        })
        .collect();

    let pairs: Vec<(usize, usize)> =
        (0..src.len()).flat_map(|i| (i + 1..src.len()).map(move |j| (i, j))).collect();
    let bad = par::map(&pairs, |&(i1, i2)| {
        let (s1, s2) = (&src[i1], &src[i2]);
        for (j, t1) in tgt.iter().enumerate() {
            let t2: Vec<i64> = (0..t1.len()).map(|k| img[i1][k] + t1[k] - img[i2][k]).collect();
            if !member_t.contains(&t2) || grade_t(&t2) > bound {
                continue;
            }
            let found = usable[j].iter().any(|&w| {
                let s3 = &wit[w];
                let s4: Vec<i64> = (0..s1.len()).map(|k| s1[k] + s3[k] - s2[k]).collect();
                member_s.contains(&s4)
            });
            if !found {
                return Some(format!("s1={:?} s2={:?} t1={:?} t2={:?}", s1, s2, t1, t2));
            }
        }
        None
    });
    if let Some(w) = bad.into_iter().flatten().next() {
        rep.fail(w);
    }
    rep
}

/// Integrality of the dual maps `Hom(Q_τ, N) -> Hom(N_σ', N)` over every
/// maximal cone of the family.
pub fn check_family_integral(fam: &UniversalFamily, bound: u32) -> Result<CheckReport> {
    let mut rep = CheckReport::new("integral").param("bound", bound);
    let p = fam.projection().matrix();
    let maximal = fam.fan().maximal_indices();
    let parts = par::try_map_range(maximal.len(), |k| -> Result<CheckReport> {
        let i = maximal[k];
        let tau = fam.base_cone(i)?;
        let h = MonoidHom::new(p.clone(), fam.monoid(i)?.clone(), fam.chow().chow_monoid(tau)?.clone())?;
        let mut r = check_integral(&dual_hom(&h)?, bound);
        for w in &mut r.witnesses {
            *w = format!("cone {i}: {w}");
        }
        Ok(r)
    })?;
    for r in parts {
        rep.absorb(r);
    }
    Ok(rep)
}

/// Surjectivity of every `N_σ' -> Q_τ`, `τ = tau[σ']`: each Hilbert basis
/// element of `Q_τ` must be the image of an element of `N_σ'`.
pub fn check_reduced_data(
    total: &ToricStackDatum,
    base: &ToricStackDatum,
    p: &IntMatrix,
    tau: &[usize],
) -> CheckReport {
    let mut rep = CheckReport::new("reduced");
    let found = par::map_range(total.fan().len(), |i| {
        let q = &base.monoids()[tau[i]];
        match total.monoids()[i].image(p) {
            Ok(img) => q
                .hilbert_basis()
                .iter()
                .find(|h| !img.member(h))
                .map(|h| format!("cone {i}: {} is not hit", lattice::fmt_vec(h))),
            Err(e) => Some(format!("cone {i}: image monoid: {e}")),
        }
    });
    for w in found.into_iter().flatten() {
        rep.fail(w);
    }
    rep
}

pub fn check_reduced(fam: &UniversalFamily) -> Result<CheckReport> {
    let tau = (0..fam.fan().len()).map(|i| fam.base_cone(i)).collect::<Result<Vec<_>>>()?;
    Ok(check_reduced_data(fam.datum(), &fam.chow().stack_datum()?, fam.projection().matrix(), &tau))
}

/// Every cone of `src` maps onto a cone of `dst`.
pub fn check_equidimensional_map(m: &IntMatrix, src: &Fan, dst: &Fan) -> CheckReport {
    let mut rep = CheckReport::new("equidimensional");
    let bad = par::map(src.cones(), |c| {
        let img = c.image(m);
        dst.index_of(&img).is_none().then(|| format!("{c} maps onto {img}, which is not a cone of the target"))
    });
    for w in bad.into_iter().flatten() {
        rep.fail(w);
    }
    rep
}

pub fn check_equidimensional(fam: &UniversalFamily) -> CheckReport {
    check_equidimensional_map(fam.projection().matrix(), fam.fan(), fam.chow().quotient_fan())
}

/// Checks that `v ↦ (lifts, m_w)` and `(v_i, m_w) ↦ p(v_0)` are mutually
/// inverse between `Q_κ` and the presentation, on both Hilbert bases.
pub fn check_presentation(fam: &UniversalFamily, pres: &BasicMonoidPresentation) -> Result<CheckReport> {
    let kappa = pres.kappa;
    let mut rep = CheckReport::new("basic_monoid").param("cone", kappa);
    let q = fam.chow().chow_monoid(kappa)?;
    for h in q.hilbert_basis() {
        match pres.from_base(fam, h) {
            Ok(y) if !pres.monoid.member(&y) => {
                rep.fail(format!("{} lifts outside the presentation", lattice::fmt_vec(h)))
            }
            Ok(y) => match pres.to_base(fam, &y) {
                Ok(x) if &x == h => {}
                _ => rep.fail(format!("{} does not round-trip", lattice::fmt_vec(h))),
            },
            Err(e) => rep.fail(format!("{}: {e}", lattice::fmt_vec(h))),
        }
    }
    for g in pres.monoid.hilbert_basis() {
        match pres.to_base(fam, g) {
            Ok(x) if !q.member(&x) => rep.fail(format!("{} maps outside Q", lattice::fmt_vec(g))),
            Ok(x) => match pres.from_base(fam, &x) {
                Ok(y) if &y == g => {}
                _ => rep.fail(format!("presentation element {} does not round-trip", lattice::fmt_vec(g))),
            },
            Err(e) => rep.fail(format!("{}: {e}", lattice::fmt_vec(g))),
        }
    }
    Ok(rep)
}

pub fn check_basic_monoid(fam: &UniversalFamily, kappa: usize) -> Result<CheckReport> {
    check_presentation(fam, &fam.basic_monoid(kappa)?)
}

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckSelection {
    pub integral: bool,
    pub reduced: bool,
    pub equidimensional: bool,
    pub basic: bool,
    pub bound: u32,
}

impl Default for CheckSelection {
    fn default() -> Self {
        CheckSelection { integral: true, reduced: true, equidimensional: true, basic: true, bound: 8 }
    }
}

pub fn run_checks(fam: &UniversalFamily, sel: &CheckSelection) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if sel.integral {
        out.push(check_family_integral(fam, sel.bound)?);
    }
    if sel.reduced {
        out.push(check_reduced(fam)?);
    }
    if sel.equidimensional {
        out.push(check_equidimensional(fam));
    }
    if sel.basic {
        let g = fam.chow().quotient_fan().len();
        let mut rep = CheckReport::new("basic_monoid");
        for r in par::try_map_range(g, |k| check_basic_monoid(fam, k))? {
            rep.absorb(r);
        }
        out.push(rep);
    }
    Ok(out)
}
