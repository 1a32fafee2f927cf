//! Dynamic Casimir response of deformable two-plate cavities.
//!
//! The crate evaluates the same-plate and cross-plate response kernels
//! `A±(q, ω; H)` of a scalar field between two perfectly reflecting plates,
//! classifies the `(q, ω)` plane into its propagating, dissipative and
//! divergent regions, and derives the mechanical observables of corrugated
//! plates from them (mass and viscosity tensors, Josephson-like lateral
//! forces, capillary-wave corrections, static Casimir energy).
//!
//! All numerics run in natural units (`ħ = c = 1`) with the meter as base
//! length; [`units`] converts at the edges.

pub mod integrands;
pub mod kernels;
pub mod quad;
pub mod response;
pub mod statics;
pub mod units;

pub use kernels::{
    a_divergence_info, a_minus, a_minus_single, a_plus, a_plus_single, a_pm_residue_sum, evaluate,
    b_constant, classify, DivergenceInfo, KernelError, KernelKind, KernelMethod, KernelPoint, KernelValue,
    Region, Separation,
};
pub use num_complex::Complex64;
