//! Grid model of the interacting double (and four-well) quantum dot:
//! single-particle finite-difference solver, two-electron configuration
//! interaction with a softened Coulomb kernel, Rashba spin-orbit blocks and
//! the pre/post-measurement entropy sweeps.
//!
//! Everything is dimensionless: positions in units of d0, energies in units
//! of hbar^2/(m* d0^2) (11.4 meV for the GaAs defaults), the confinement
//! parameter beta sets the single-dot level spacing to beta (n + 1/2).

mod ci;
mod single_particle;
mod spin_orbit;
mod sweep;

pub use ci::{ci_basis, ci_diagonalize, coulomb_matrix_elements, CiBasis, CiMeta, CiResult, CiState, PairState};
pub use single_particle::{
    heitler_london_orbital, solve_single_particle, OrbitalMeta, OrbitalSet,
};
pub use spin_orbit::{add_spin_orbit, numeric_rdms, RdmPair, SpinOrbitBasisItem, SpinOrbitResult};
pub use sweep::{entropy_sweep, SweepConfig, SweepRow};

use crate::linalg::LinalgError;
use crate::quantum::QuantumError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DqdError {
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Uniform 1D grid, positions in units of d0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, DqdError> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(DqdError::BadGrid(format!("bad range [{x_min}, {x_max}]")));
        }
        if n_points < 64 {
            return Err(DqdError::BadGrid(format!("need at least 64 points, got {n_points}")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Symmetric default box; widened automatically when the tilted minima
    /// would fall outside.
    pub fn auto(pot: &PotentialSpec, n_points: usize) -> Result<Self, DqdError> {
        let pad = 5.0 / pot.beta.sqrt() + 2.0;
        let mut lo: f64 = -12.0;
        let mut hi: f64 = 12.0;
        for c in pot.effective_minima() {
            lo = lo.min(c - pad);
            hi = hi.max(c + pad);
        }
        Self::new(lo, hi, n_points)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n_points).map(|i| self.x_min + h * i as f64).collect()
    }

    /// Trapezoid weights: h inside, h/2 at the two ends.
    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.n_points];
        w[0] = 0.5 * h;
        w[self.n_points - 1] = 0.5 * h;
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotKind {
    /// Minima at -ell/2, +ell/2.
    Double,
    /// Minima at -3 ell/2, -ell/2, +ell/2, +3 ell/2.
    Four,
}

/// Piecewise-parabolic confinement: `V(x) = (beta^2/2) min_c (x - c)^2`.
/// The electric-field term `+ E0 x` is added by the Hamiltonian builders,
/// not by `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub kind: DotKind,
    pub beta: f64,
    pub ell: f64,
    pub e_field: f64,
}

impl PotentialSpec {
    pub fn double(beta: f64, ell: f64, e_field: f64) -> Self {
        Self { kind: DotKind::Double, beta, ell, e_field }
    }

    pub fn four(beta: f64, ell: f64, e_field: f64) -> Self {
        Self { kind: DotKind::Four, beta, ell, e_field }
    }

    pub fn minima(&self) -> Vec<f64> {
        match self.kind {
            DotKind::Double => vec![-0.5 * self.ell, 0.5 * self.ell],
            DotKind::Four => vec![
                -1.5 * self.ell,
                -0.5 * self.ell,
                0.5 * self.ell,
                1.5 * self.ell,
            ],
        }
    }

    /// Minima of V(x) + E0 x: shifted against the field by E0/beta^2.
    pub fn effective_minima(&self) -> Vec<f64> {
        let d = self.e_field / (self.beta * self.beta);
        self.minima().into_iter().map(|c| c - d).collect()
    }

    pub fn v(&self, x: f64) -> f64 {
        let mut best = f64::INFINITY;
        for c in self.minima() {
            let d = x - c;
            best = best.min(d * d);
        }
        0.5 * self.beta * self.beta * best
    }

    /// Whether the grid spans every tilted minimum with a 5/sqrt(beta)
    /// margin.
    pub fn covered_by(&self, grid: &Grid1D) -> bool {
        let pad = 5.0 / self.beta.sqrt();
        self.effective_minima()
            .iter()
            .all(|&c| grid.x_min <= c - pad && grid.x_max >= c + pad)
    }
}

/// Softened Coulomb interaction `strength / sqrt((x1-x2)^2 + softening^2)`.
///
/// The softening length stands in for the transverse confinement width of
/// the quasi-1D channel; `strength = 1` matches the GaAs value
/// e^2/(kappa d0) in the dimensionless energy unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombParams {
    pub strength: f64,
    pub softening: f64,
}

impl Default for CoulombParams {
    fn default() -> Self {
        Self { strength: 1.0, softening: 0.1 }
    }
}

impl CoulombParams {
    pub fn none() -> Self {
        Self { strength: 0.0, softening: 0.1 }
    }

    pub fn validate(&self) -> Result<(), DqdError> {
        if !(self.strength.is_finite() && self.strength >= 0.0) {
            return Err(DqdError::BadInput(format!("coulomb strength {}", self.strength)));
        }
        if !(self.softening.is_finite() && self.softening > 0.0) {
            return Err(DqdError::BadInput(format!("coulomb softening {}", self.softening)));
        }
        Ok(())
    }

    pub fn kernel(&self, x1: f64, x2: f64) -> f64 {
        let d = x1 - x2;
        self.strength / (d * d + self.softening * self.softening).sqrt()
    }
}

/// GaAs conversion factors for reporting; all computation stays
/// dimensionless.
pub mod units {
    /// Energy unit hbar^2/(m* d0^2) in meV (the beta = 1 level spacing).
    pub const ENERGY_MEV: f64 = 11.4;
    /// Length unit d0 in nm.
    pub const LENGTH_NM: f64 = 10.0;
    /// Field unit (E0 = 1) in V/um.
    pub const EFIELD_V_PER_UM: f64 = 1.1;

    pub fn energy_to_mev(e: f64) -> f64 {
        e * ENERGY_MEV
    }

    pub fn length_to_nm(x: f64) -> f64 {
        x * LENGTH_NM
    }

    pub fn efield_to_v_per_um(e0: f64) -> f64 {
        e0 * EFIELD_V_PER_UM
    }
}

#[cfg(test)]
mod tests;
