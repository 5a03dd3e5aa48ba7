//! Exact computation of the Chow quotient of a projective toric variety by a
//! subtorus, presented as a toric stack.
//!
//! The pipeline is:
//!
//! 1. [`lattice`]: integer normal forms, sublattices and the quotient map `p: N -> Q = N/L`.
//! 2. [`polyhedra`]: rational cones (both V- and H-descriptions) and fans.
//! 3. [`monoid`]: affine monoids and Hilbert bases.
//! 4. [`stack`]: toric stack data `(F, N_sigma, N)` and their morphisms.
//! 5. [`chow`]: the quotient fan `G`, cycles and the stack monoids `Q_kappa`.
//! 6. [`family`]: the universal family `F'`, its fibers and basic monoids.
//! 7. [`verify`]: executable checkers for the structural properties of the family.
//! 8. [`document`] and [`cli`]: the JSON document format and command dispatch.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`). With the default
//! `parallel` feature, per-cone work runs on rayon; without it everything is
//! sequential and produces byte-identical results.

pub mod chow;
pub mod cli;
pub mod document;
mod error;
pub mod family;
pub mod lattice;
pub mod monoid;
mod par;
pub mod polyhedra;
pub mod stack;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Int, IntMatrix, IntVec};
