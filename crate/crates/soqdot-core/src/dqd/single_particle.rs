//! Single-particle finite-difference solver and the Heitler-London
//! reference orbitals.

use super::{DqdError, Grid1D, PotentialSpec};
use crate::linalg::sym_tridiag_eig;

#[derive(Debug, Clone, Copy)]
pub struct OrbitalMeta {
    /// Largest relative eigenvalue change under one grid refinement.
    pub refine_delta: f64,
    /// Set when `refine_delta` exceeds 1e-4.
    pub coarse_warning: bool,
}

/// Grid-sampled orbitals, orthonormal under the trapezoid rule, energies
/// ascending.
#[derive(Debug, Clone)]
pub struct OrbitalSet {
    pub grid: Grid1D,
    pub energies: Vec<f64>,
    pub orbitals: Vec<Vec<f64>>,
    pub meta: OrbitalMeta,
}

impl OrbitalSet {
    /// Wrap externally supplied grid functions; they must be orthonormal
    /// under the trapezoid rule within 1e-8.
    pub fn from_functions(
        grid: Grid1D,
        energies: Vec<f64>,
        orbitals: Vec<Vec<f64>>,
    ) -> Result<Self, DqdError> {
        if energies.len() != orbitals.len() {
            return Err(DqdError::BadInput("energies/orbitals length mismatch".into()));
        }
        let set = Self {
            grid,
            energies,
            orbitals,
            meta: OrbitalMeta { refine_delta: 0.0, coarse_warning: false },
        };
        let defect = set.orthonormality_defect();
        if defect > 1e-8 {
            return Err(DqdError::BadInput(format!(
                "orbitals not orthonormal: defect {defect:.3e}"
            )));
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.orbitals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbitals.is_empty()
    }

    /// Trapezoid inner product of two grid functions.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        let w = self.grid.weights();
        a.iter().zip(b).zip(&w).map(|((x, y), wt)| x * y * wt).sum()
    }

    /// Overlaps of an external grid function with every orbital.
    pub fn project(&self, f: &[f64]) -> Vec<f64> {
        self.orbitals.iter().map(|phi| self.inner(phi, f)).collect()
    }

    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner(&self.orbitals[i], &self.orbitals[j]) - want).abs());
            }
        }
        worst
    }

    /// Antisymmetrized first-derivative matrix `g[a][b] = <phi_a | d/dx phi_b>`
    /// from central differences.
    pub fn derivative_matrix(&self) -> Vec<Vec<f64>> {
        let raw = self.raw_derivative_matrix();
        let n = self.len();
        let mut g = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in 0..n {
                g[a][b] = 0.5 * (raw[a][b] - raw[b][a]);
            }
        }
        g
    }

    /// Largest symmetric part of the raw derivative matrix; vanishing
    /// boundary terms make the exact matrix antisymmetric.
    pub fn derivative_defect(&self) -> f64 {
        let raw = self.raw_derivative_matrix();
        let n = self.len();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                worst = worst.max((raw[a][b] + raw[b][a]).abs());
            }
        }
        worst
    }

    fn raw_derivative_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let np = self.grid.n_points;
        let h = self.grid.spacing();
        let derivs: Vec<Vec<f64>> = self
            .orbitals
            .iter()
            .map(|phi| {
                let mut d = vec![0.0; np];
                for u in 0..np {
                    d[u] = match u {
                        0 => (phi[1] - phi[0]) / h,
                        _ if u == np - 1 => (phi[np - 1] - phi[np - 2]) / h,
                        _ => (phi[u + 1] - phi[u - 1]) / (2.0 * h),
                    };
                }
                d
            })
            .collect();
        (0..n).map(|a| (0..n).map(|b| self.inner(&self.orbitals[a], &derivs[b])).collect()).collect()
    }
}

fn lowest_eigenpairs(
    grid: &Grid1D,
    pot: &PotentialSpec,
    n_orbitals: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>), DqdError> {
    let xs = grid.points();
    let h = grid.spacing();
    let kin = 1.0 / (h * h);
    let diag: Vec<f64> = xs.iter().map(|&x| kin + pot.v(x) + pot.e_field * x).collect();
    let sub = vec![-0.5 * kin; grid.n_points - 1];
    let (vals, vecs) = sym_tridiag_eig(&diag, &sub, want_vectors)?;
    let vals = vals[..n_orbitals].to_vec();
    let vecs = vecs.map(|v| v[..n_orbitals].to_vec());
    Ok((vals, vecs))
}

/// Lowest eigenpairs of `-d^2/dx^2 / 2 + V(x) + x E0` on the grid
/// (Dirichlet box). Orbitals are trapezoid-normalized with a deterministic
/// sign (largest-magnitude sample positive). A refinement probe on the
/// doubled grid reports the eigenvalue drift in the metadata.
pub fn solve_single_particle(
    grid: &Grid1D,
    pot: &PotentialSpec,
    n_orbitals: usize,
) -> Result<OrbitalSet, DqdError> {
    if n_orbitals == 0 || n_orbitals > grid.n_points / 4 {
        return Err(DqdError::BadInput(format!(
            "n_orbitals {n_orbitals} must be in 1..={}",
            grid.n_points / 4
        )));
    }
    if !pot.covered_by(grid) {
        return Err(DqdError::BadGrid(format!(
            "grid [{}, {}] does not cover the tilted minima with a 5/sqrt(beta) margin",
            grid.x_min, grid.x_max
        )));
    }
    let (energies, vecs) = lowest_eigenpairs(grid, pot, n_orbitals, true)?;
    let h = grid.spacing();
    let mut orbitals = vecs.unwrap();
    for phi in &mut orbitals {
        // l2-normalized eigenvector -> trapezoid-normalized function
        let scale = 1.0 / h.sqrt();
        let mut peak = 0usize;
        for (u, v) in phi.iter().enumerate() {
            if v.abs() > phi[peak].abs() {
                peak = u;
            }
        }
        let sign = if phi[peak] < 0.0 { -scale } else { scale };
        for v in phi.iter_mut() {
            *v *= sign;
        }
    }

    // refinement probe: doubled resolution, eigenvalues only
    let fine = Grid1D::new(grid.x_min, grid.x_max, grid.n_points * 2 - 1)?;
    let (fine_vals, _) = lowest_eigenpairs(&fine, pot, n_orbitals, false)?;
    let mut refine_delta = 0.0f64;
    for (a, b) in energies.iter().zip(&fine_vals) {
        refine_delta = refine_delta.max((a - b).abs() / b.abs().max(1e-12));
    }
    let meta = OrbitalMeta { refine_delta, coarse_warning: refine_delta > 1e-4 };
    Ok(OrbitalSet { grid: *grid, energies, orbitals, meta })
}

/// Heitler-London orbital: harmonic-oscillator eigenfunction of level
/// `level` centered at `center`, sampled on the grid and renormalized under
/// the trapezoid rule.
pub fn heitler_london_orbital(grid: &Grid1D, beta: f64, center: f64, level: usize) -> Vec<f64> {
    let xs = grid.points();
    let mut f: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let y = beta.sqrt() * (x - center);
            hermite(level, y) * (-0.5 * y * y).exp()
        })
        .collect();
    let w = grid.weights();
    let norm: f64 = f.iter().zip(&w).map(|(v, wt)| v * v * wt).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut f {
            *v /= norm;
        }
    }
    f
}

fn hermite(n: usize, y: f64) -> f64 {
    let mut h0 = 1.0;
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * y;
    for k in 1..n {
        let h2 = 2.0 * y * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}
