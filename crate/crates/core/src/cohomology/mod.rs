//! Finite-dimensional DGA models for the basic cohomology of the foliation,
//! the de Rham cohomology of `SU(3)` and the Dolbeault branches.
//!
//! `H*_B` is modelled by the coinvariant algebra of `S₃`, the cohomology of
//! the flag manifold: it has graded dimensions `1, 2, 2, 1` in degrees
//! `0, 2, 4, 6` and the hard Lefschetz class `x₁ − x₃`.

mod algebra;
mod dga;
mod field;

pub use algebra::{basic_model, lefschetz_check, lefschetz_class, x1, GradedAlgebra, LefschetzReport};
pub use dga::{
    derham_model, dga_cohomology, hodge_model, hodge_numbers, printed_diamond, su3_derham_model,
    BettiTable, DGAModel, Generator, HodgeBeta, HodgeTable, SU3_BETTI,
};
pub use field::{rank, Eisenstein, Field};
