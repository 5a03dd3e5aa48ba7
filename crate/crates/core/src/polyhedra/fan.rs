use std::collections::BTreeSet;
use std::fmt;

use super::cone::Cone;
use crate::lattice::{Int, IntMatrix};
use crate::{par, Error, Result};

/// A collection of cones in `R^r` indexed in canonical order: higher
/// dimension first, then lexicographically by rays. Index 0 of a nonempty
/// pure fan is therefore always a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// The fan generated by `maximal` together with all of their faces.
    pub fn from_maximal_cones(r: usize, maximal: &[Cone]) -> Fan {
        let faces: Vec<BTreeSet<Cone>> = par::map(maximal, |c| c.faces());
        let mut all: BTreeSet<Cone> = faces.into_iter().flatten().collect();
        all.insert(Cone::zero(r));
        Fan { ambient_rank: r, cones: all.into_iter().collect() }
    }

    /// Exactly the listed cones, deduplicated and sorted, with no face closure.
    /// Used to validate fans given in full by the user.
    pub fn from_cones(r: usize, cones: Vec<Cone>) -> Fan {
        let set: BTreeSet<Cone> = cones.into_iter().collect();
        Fan { ambient_rank: r, cones: set.into_iter().collect() }
    }

    /// The fan consisting of the origin only.
    pub fn trivial(r: usize) -> Fan {
        Fan { ambient_rank: r, cones: vec![Cone::zero(r)] }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone(&self, index: usize) -> Result<&Cone> {
        self.cones.get(index).ok_or(Error::UnknownCone { index, len: self.cones.len() })
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    /// Indices of the cones that are not proper faces of another member.
    pub fn maximal_indices(&self) -> Vec<usize> {
        let flags = par::map_range(self.cones.len(), |i| {
            let c = &self.cones[i];
            !self.cones.iter().any(|d| d.dim() > c.dim() && c.is_face_of(d))
        });
        flags.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.maximal_indices().into_iter().map(|i| &self.cones[i]).collect()
    }

    pub fn is_maximal(&self, index: usize) -> bool {
        self.maximal_indices().contains(&index)
    }

    /// Indices of the one-dimensional cones.
    pub fn ray_indices(&self) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].dim() == 1).collect()
    }

    /// Indices of the faces of cone `index` (including itself).
    pub fn faces_of(&self, index: usize) -> Vec<usize> {
        let c = &self.cones[index];
        (0..self.cones.len()).filter(|&j| self.cones[j].is_face_of(c)).collect()
    }

    /// All pairs `(face, cone)` with `face ≤ cone`.
    pub fn face_relation(&self) -> Vec<(usize, usize)> {
        let per: Vec<Vec<(usize, usize)>> =
            par::map_range(self.cones.len(), |i| self.faces_of(i).into_iter().map(|j| (j, i)).collect());
        per.into_iter().flatten().collect()
    }

    /// The unique member whose relative interior contains `x`.
    pub fn cone_containing_relint(&self, x: &[Int]) -> Option<usize> {
        self.cones.iter().position(|c| c.relint_contains(x))
    }

    /// The smallest member containing `c`, if any.
    pub fn smallest_cone_containing(&self, c: &Cone) -> Option<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cones[i].contains_cone(c))
            .min_by_key(|&i| (self.cones[i].dim(), i))
    }

    /// Whether the support is all of `R^r`: the fan is pure of full dimension
    /// and every codimension-one cone lies in exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        let r = self.ambient_rank;
        if r == 0 {
            return true;
        }
        let max = self.maximal_cones();
        if max.is_empty() || max.iter().any(|c| c.dim() != r) {
            return false;
        }
        self.cones.iter().filter(|c| c.dim() == r - 1).all(|w| {
            max.iter().filter(|m| w.is_face_of(m)).count() == 2
        })
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cones.iter().enumerate() {
            writeln!(f, "{i}: {c}")?;
        }
        Ok(())
    }
}

/// A single defect found by [`validate_fan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    WrongAmbientRank { cone: usize },
    NotStrictlyConvex { cone: usize },
    MissingFace { cone: usize, face: String },
    IntersectionNotAFace { first: usize, second: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::WrongAmbientRank { cone } => write!(f, "cone {cone}: wrong ambient rank"),
            FanViolation::NotStrictlyConvex { cone } => write!(f, "cone {cone}: not strictly convex"),
            FanViolation::MissingFace { cone, face } => write!(f, "cone {cone}: face {face} is not a member"),
            FanViolation::IntersectionNotAFace { first, second } => {
                write!(f, "cones {first} and {second}: intersection is not a common face")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanReport {
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidFan(msgs.join("; ")))
        }
    }
}

/// Checks strict convexity, closure under faces and that any two maximal
/// members meet in a common face. Pairwise intersections of arbitrary members
/// then follow from face closure.
pub fn validate_fan(f: &Fan) -> FanReport {
    let mut report = FanReport::default();
    let r = f.ambient_rank();
    for (i, c) in f.cones().iter().enumerate() {
        if c.ambient_rank() != r {
            report.violations.push(FanViolation::WrongAmbientRank { cone: i });
        } else if !c.is_pointed() {
            report.violations.push(FanViolation::NotStrictlyConvex { cone: i });
        }
    }
    if !report.is_valid() {
        return report;
    }
    let missing: Vec<Vec<FanViolation>> = par::map_range(f.len(), |i| {
        f.cones()[i]
            .faces()
            .into_iter()
            .filter(|face| f.index_of(face).is_none())
            .map(|face| FanViolation::MissingFace { cone: i, face: face.to_string() })
            .collect()
    });
    report.violations.extend(missing.into_iter().flatten());
    let max = f.maximal_indices();
    let pairs: Vec<(usize, usize)> =
        max.iter().enumerate().flat_map(|(a, &i)| max[a + 1..].iter().map(move |&j| (i, j))).collect();
    let bad = par::map(&pairs, |&(i, j)| {
        let (a, b) = (&f.cones()[i], &f.cones()[j]);
        let m = a.intersect(b);
        (!(m.is_face_of(a) && m.is_face_of(b))).then_some(FanViolation::IntersectionNotAFace { first: i, second: j })
    });
    report.violations.extend(bad.into_iter().flatten());
    report
}

/// A lattice map together with, for each source cone, the smallest target cone
/// containing its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMorphism {
    pub lattice_map: IntMatrix,
    pub source: Fan,
    pub target: Fan,
    pub cone_assignment: Vec<usize>,
}

pub fn check_fan_morphism(m: &IntMatrix, src: &Fan, dst: &Fan) -> Result<FanMorphism> {
    if m.ncols() != src.ambient_rank() {
        return Err(Error::DimensionMismatch { expected: src.ambient_rank(), found: m.ncols() });
    }
    if m.nrows() != dst.ambient_rank() {
        return Err(Error::DimensionMismatch { expected: dst.ambient_rank(), found: m.nrows() });
    }
    let assignment = par::try_map_range(src.len(), |i| {
        let img = src.cones()[i].image(m);
        dst.smallest_cone_containing(&img).ok_or(Error::NoTargetCone { cone: i })
    })?;
    Ok(FanMorphism {
        lattice_map: m.clone(),
        source: src.clone(),
        target: dst.clone(),
        cone_assignment: assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p2() -> Fan {
        Fan::from_maximal_cones(
            2,
            &[
                Cone::from_i64(&[&[1, 0], &[0, 1]]),
                Cone::from_i64(&[&[0, 1], &[-1, -1]]),
                Cone::from_i64(&[&[-1, -1], &[1, 0]]),
            ],
        )
    }

    #[test]
    fn p2_fan_is_valid_and_complete() {
        let f = p2();
        assert_eq!(f.len(), 7);
        assert!(validate_fan(&f).is_valid());
        assert!(f.is_complete());
        assert_eq!(f.maximal_indices(), vec![0, 1, 2]);
        assert_eq!(f.ray_indices().len(), 3);
        assert_eq!(f.cones()[6], Cone::zero(2));
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let a = Cone::from_i64(&[&[1, 0], &[0, 1]]);
        let b = Cone::from_i64(&[&[1, 1], &[-1, 1]]);
        let f = Fan::from_maximal_cones(2, &[a, b]);
        let rep = validate_fan(&f);
        assert!(rep.violations.iter().any(|v| matches!(v, FanViolation::IntersectionNotAFace { .. })));
    }

    #[test]
    fn missing_face_and_lineality() {
        let f = Fan::from_cones(2, vec![Cone::from_i64(&[&[1, 0], &[0, 1]])]);
        assert!(validate_fan(&f).violations.iter().any(|v| matches!(v, FanViolation::MissingFace { .. })));
        let h = Fan::from_cones(2, vec![Cone::from_i64(&[&[1, 0], &[0, 1], &[0, -1]])]);
        assert_eq!(validate_fan(&h).violations, vec![FanViolation::NotStrictlyConvex { cone: 0 }]);
        assert!(validate_fan(&Fan::trivial(2)).is_valid());
        assert!(!Fan::trivial(2).is_complete());
    }

    #[test]
    fn morphisms() {
        let f = p2();
        let id = IntMatrix::identity(2);
        let m = check_fan_morphism(&id, &f, &f).unwrap();
        assert_eq!(m.cone_assignment, (0..7).collect::<Vec<_>>());
        let p = IntMatrix::from_i64(&[&[0, 1]]);
        let g = Fan::from_maximal_cones(1, &[Cone::from_i64(&[&[1]]), Cone::from_i64(&[&[-1]])]);
        assert_eq!(check_fan_morphism(&p, &f, &g), Err(Error::NoTargetCone { cone: 0 }));
    }
}
