//! Exact and numerical tools for double-sided torus actions on `SU(3)`.
//!
//! A pair of homomorphisms `ρ_L, ρ_R : (S¹)² → T` into the maximal torus of
//! `SU(3)` is described by six integer weight vectors. From them we derive
//! the cone data `A_j, B_j, C ∈ ℚ²` and decide the cone condition that makes
//! the moment-map level set in the quadric `M ⊂ ℂ⁶` a copy of `SU(3)` carrying
//! a transverse Kähler foliation by torus orbits.
//!
//! The crate is split by what each part computes:
//!
//! * [`geometry`]: exact rational cones in the plane and integer lattices.
//! * [`weights`]: weight systems, the cone condition and its consequences.
//! * [`isotropy`]: freeness and isotropy groups on support strata.
//! * [`quadric`]: floating-point model of the quadric, sampling and
//!   pointwise certification of the transverse Kähler structure.
//! * [`cohomology`]: finite-dimensional DGA models for basic, de Rham and
//!   Dolbeault cohomology tables.
//! * [`report`]: JSON inputs and reports shared by the command-line tool.

pub mod cohomology;
pub mod error;
pub mod geometry;
pub mod isotropy;
pub mod quadric;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
pub use geometry::{Rat, Rat2};
pub use weights::{DerivedConeData, WeightSystem};
