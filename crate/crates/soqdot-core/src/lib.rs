//! Numerical core for a spin-orbit-coupled double quantum dot.
//!
//! The crate is organized around five layers:
//!
//! * [`linalg`] — dense complex linear algebra: Hermitian eigendecomposition,
//!   spectral matrix functions, tensor products, partial traces, trace norm.
//! * [`quantum`] — density matrices, projective/Kraus channels and the
//!   quantum-information measures (entropies, Uhlmann fidelity, concurrence,
//!   discord, entropic uncertainty with memory, quantum witness).
//! * [`analytic`] — the closed-form model states and report for the
//!   perturbed two-electron double dot, the oracle for the numeric paths.
//! * [`dqd`] — grid discretization, two-electron configuration interaction
//!   with a softened Coulomb kernel, Rashba spin-orbit blocks and the
//!   pre/post-measurement entropy sweeps.
//! * [`vmc`] — continuous-spin variational Monte Carlo for four electrons in
//!   a four-well potential with a Slater-Jastrow trial state.
//!
//! All quantities are dimensionless; natural logarithms are used for every
//! entropy. See `dqd::units` for the GaAs conversion factors.

pub mod analytic;
pub mod crosscheck;
pub mod dqd;
pub mod linalg;
pub mod quantum;
pub mod vmc;

pub use num_complex::Complex64;
