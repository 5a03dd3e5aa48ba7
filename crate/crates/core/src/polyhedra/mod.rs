//! Rational polyhedral cones and fans.

mod cone;
mod fan;
pub(crate) mod fm;

pub use cone::{affine_slice_dim, affine_slice_type, Cone, SliceType};
pub use fan::{check_fan_morphism, validate_fan, Fan, FanMorphism, FanReport, FanViolation};
