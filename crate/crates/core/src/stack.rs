//! Toric stack data `(F, N_sigma, N)` and their morphisms.

use std::fmt;

use crate::lattice::{self, Int, IntMatrix, Sublattice};
use crate::monoid::{unmapped_generator, AffineMonoid};
use crate::polyhedra::{check_fan_morphism, validate_fan, Fan, FanMorphism, FanViolation};
use crate::{par, Error, Result};

/// A fan in `Z^r` together with one monoid per cone, indexed like the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricStackDatum {
    fan: Fan,
    monoids: Vec<AffineMonoid>,
}

impl ToricStackDatum {
    pub fn new(fan: Fan, monoids: Vec<AffineMonoid>) -> Result<ToricStackDatum> {
        if monoids.len() != fan.len() {
            return Err(Error::DimensionMismatch { expected: fan.len(), found: monoids.len() });
        }
        if let Some(m) = monoids.iter().find(|m| m.ambient_rank() != fan.ambient_rank()) {
            return Err(Error::DimensionMismatch { expected: fan.ambient_rank(), found: m.ambient_rank() });
        }
        Ok(ToricStackDatum { fan, monoids })
    }

    /// The toric variety of `fan`: `N_sigma = sigma ∩ N`.
    pub fn variety(fan: &Fan) -> Result<ToricStackDatum> {
        let full = Sublattice::full(fan.ambient_rank());
        let monoids = par::try_map_range(fan.len(), |i| AffineMonoid::from_cone(&fan.cones()[i], &full))?;
        ToricStackDatum::new(fan.clone(), monoids)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn lattice_rank(&self) -> usize {
        self.fan.ambient_rank()
    }

    pub fn monoids(&self) -> &[AffineMonoid] {
        &self.monoids
    }

    pub fn monoid(&self, index: usize) -> Result<&AffineMonoid> {
        self.monoids.get(index).ok_or(Error::UnknownCone { index, len: self.monoids.len() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumViolation {
    Fan(FanViolation),
    /// The monoid's cone differs from the fan cone it is attached to.
    ConeMismatch { cone: usize },
    NotSaturated { cone: usize },
    /// `N_tau != tau ∩ N_sigma`.
    FaceIncompatible { cone: usize, face: usize },
    MaximalNotFullDimensional { cone: usize },
    InfiniteIndex { cone: usize },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::Fan(v) => write!(f, "{v}"),
            DatumViolation::ConeMismatch { cone } => write!(f, "cone {cone}: monoid does not span the cone"),
            DatumViolation::NotSaturated { cone } => write!(f, "cone {cone}: monoid is not saturated"),
            DatumViolation::FaceIncompatible { cone, face } => {
                write!(f, "cone {cone}: restriction to face {face} differs from the face's monoid")
            }
            DatumViolation::MaximalNotFullDimensional { cone } => {
                write!(f, "cone {cone}: maximal but not full-dimensional")
            }
            DatumViolation::InfiniteIndex { cone } => write!(f, "cone {cone}: monoid group has infinite index"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatumReport {
    pub violations: Vec<DatumViolation>,
}

impl DatumReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the fan, that each monoid is a saturated monoid spanning its cone,
/// face compatibility `N_tau = tau ∩ N_sigma`, and that maximal cones are
/// full-dimensional with monoid groups of finite index.
pub fn validate_stack_datum(d: &ToricStackDatum) -> DatumReport {
    let fan = d.fan();
    let mut report = DatumReport {
        violations: validate_fan(fan).violations.into_iter().map(DatumViolation::Fan).collect(),
    };
    if !report.is_valid() {
        return report;
    }
    let r = d.lattice_rank();
    let maximal = fan.maximal_indices();
    let per_cone = par::map_range(fan.len(), |i| {
        let mut v = Vec::new();
        let c = &fan.cones()[i];
        let m = &d.monoids[i];
        if m.cone() != c {
            v.push(DatumViolation::ConeMismatch { cone: i });
            return v;
        }
        if !m.is_saturated() {
            v.push(DatumViolation::NotSaturated { cone: i });
        }
        for j in fan.faces_of(i) {
            if j == i {
                continue;
            }
            match m.restrict_to_face(&fan.cones()[j]) {
                Ok(res) if res == d.monoids[j] => {}
                _ => v.push(DatumViolation::FaceIncompatible { cone: i, face: j }),
            }
        }
        if maximal.contains(&i) {
            if c.dim() != r {
                v.push(DatumViolation::MaximalNotFullDimensional { cone: i });
            } else if m.group().rank() != r {
                v.push(DatumViolation::InfiniteIndex { cone: i });
            }
        }
        v
    });
    report.violations.extend(per_cone.into_iter().flatten());
    report
}

/// A fan morphism whose lattice map also carries every `N_sigma` into the
/// monoid of the assigned target cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackMorphism {
    pub lattice_map: IntMatrix,
    pub cone_assignment: FanMorphism,
}

pub fn validate_stack_morphism(
    m: &IntMatrix,
    src: &ToricStackDatum,
    dst: &ToricStackDatum,
) -> Result<StackMorphism> {
    let fm = check_fan_morphism(m, src.fan(), dst.fan())?;
    let checks = par::map_range(src.fan().len(), |i| {
        let tgt = &dst.monoids[fm.cone_assignment[i]];
        unmapped_generator(m, &src.monoids[i], tgt)
            .map(|g| Error::MonoidNotMapped { cone: i, generator: lattice::fmt_vec(&g) })
    });
    if let Some(e) = checks.into_iter().flatten().next() {
        return Err(e);
    }
    Ok(StackMorphism { lattice_map: m.clone(), cone_assignment: fm })
}

/// Invariant factors of `N / N_sigma^gp` for a maximal cone; all ones exactly
/// when the stabilizer is trivial.
pub fn stabilizer_invariants(d: &ToricStackDatum, index: usize) -> Result<Vec<Int>> {
    let m = d.monoid(index)?;
    if !d.fan().is_maximal(index) {
        return Err(Error::NotMaximalCone { cone: index });
    }
    Ok(m.group().elementary_divisors())
}

/// Two data over the same lattice are equal once fans and monoids are put in
/// canonical form. Since cones are indexed canonically this is structural
/// equality.
pub fn data_equal_after_canonicalization(a: &ToricStackDatum, b: &ToricStackDatum) -> bool {
    a.lattice_rank() == b.lattice_rank() && a.fan == b.fan && a.monoids == b.monoids
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Cone;

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

    #[test]
    fn variety_datum_is_valid() {
        let d = ToricStackDatum::variety(&p2()).unwrap();
        assert!(validate_stack_datum(&d).is_valid());
        for i in d.fan().maximal_indices() {
            assert_eq!(stabilizer_invariants(&d, i).unwrap(), vec![Int::from(1), Int::from(1)]);
        }
        assert_eq!(stabilizer_invariants(&d, 4), Err(Error::NotMaximalCone { cone: 4 }));
        assert!(data_equal_after_canonicalization(&d, &d));
        let id = IntMatrix::identity(2);
        assert!(validate_stack_morphism(&id, &d, &d).is_ok());
    }

    #[test]
    fn doubled_monoid_breaks_face_compatibility() {
        let d = ToricStackDatum::variety(&p2()).unwrap();
        let mut monoids = d.monoids().to_vec();
        let doubled = Sublattice::new(2, &[lattice::ivec(&[2, 0]), lattice::ivec(&[0, 2])]);
        monoids[0] = AffineMonoid::from_cone(&d.fan().cones()[0], &doubled).unwrap();
        let bad = ToricStackDatum::new(d.fan().clone(), monoids).unwrap();
        let rep = validate_stack_datum(&bad);
        assert!(rep.violations.iter().any(|v| matches!(v, DatumViolation::FaceIncompatible { cone: 0, .. })));
        assert_eq!(stabilizer_invariants(&bad, 0).unwrap(), vec![Int::from(2), Int::from(2)]);
        assert!(!data_equal_after_canonicalization(&d, &bad));
        // Halving the lattice does not carry the original monoids into the doubled one.
        let two = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let err = validate_stack_morphism(&IntMatrix::identity(2), &d, &bad).unwrap_err();
        assert!(matches!(err, Error::MonoidNotMapped { cone: 0, .. }));
        assert!(validate_stack_morphism(&two, &d, &bad).is_ok());
    }

    #[test]
    fn stabilizer_of_doubled_ray() {
        let f = Fan::from_maximal_cones(1, &[Cone::from_i64(&[&[1]]), Cone::from_i64(&[&[-1]])]);
        let two = Sublattice::new(1, &[lattice::ivec(&[2])]);
        let monoids: Vec<AffineMonoid> =
            f.cones().iter().map(|c| AffineMonoid::from_cone(c, &two).unwrap()).collect();
        let d = ToricStackDatum::new(f, monoids).unwrap();
        assert!(validate_stack_datum(&d).is_valid());
        assert_eq!(stabilizer_invariants(&d, 0).unwrap(), vec![Int::from(2)]);
    }
}
