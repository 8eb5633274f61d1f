//! Numeric tensor calculus on the tangent bundle of a Riemannian manifold
//! equipped with the synectic metric `ˢg = ᶜg + ᵛa`.

// Index loops mirror the component formulas; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod bundle;
pub mod catalog;
pub mod dsl;
pub mod geometry;
pub mod jet;
pub mod report;
pub mod runner;
pub mod sampling;
pub mod tensor;
pub mod theorems;
