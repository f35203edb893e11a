//! Quantum discord of a two-qubit state, minimized over rank-1 projective
//! measurements on one side.

use super::{
    embed_on_subsystem, shannon_entropy, von_neumann_entropy, DensityMatrix, QuantumError,
};
use crate::linalg::{partial_trace, ComplexMatrix};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which qubit the minimization measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasuredSide {
    A,
    B,
}

/// Grid density and refinement settings for the discord minimization.
#[derive(Debug, Clone, Copy)]
pub struct DiscordOptions {
    /// Bloch-sphere grid is `grid x grid` over (theta, phi).
    pub grid: usize,
    /// Refinement stops when the simplex objective spread is below this.
    pub refine_tol: f64,
    pub max_refine_iters: usize,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self { grid: 64, refine_tol: 1e-8, max_refine_iters: 400 }
    }
}

/// Eigenvalues of a 2x2 Hermitian matrix, closed form.
fn eig2(m: &ComplexMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let half = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [half - disc, half + disc]
}

struct Objective<'a> {
    rho: &'a DensityMatrix,
    measured: usize,
    other: usize,
}

impl<'a> Objective<'a> {
    fn new(rho: &'a DensityMatrix, side: MeasuredSide) -> Self {
        let (measured, other) = match side {
            MeasuredSide::A => (0usize, 1usize),
            MeasuredSide::B => (1, 0),
        };
        Self { rho, measured, other }
    }

    /// Average conditional entropy of the unmeasured qubit for the
    /// measurement direction (theta, phi).
    fn eval(&mut self, theta: f64, phi: f64) -> f64 {
        let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let phase = Complex64::from_polar(1.0, phi);
        let m = [Complex64::new(ct, 0.0), phase * st];
        let m_perp = [-phase.conj() * st, Complex64::new(ct, 0.0)];
        let mut total = 0.0;
        for v in [&m, &m_perp] {
            let proj = ComplexMatrix::from_fn(2, |i, j| v[i] * v[j].conj());
            let lifted = embed_on_subsystem(&proj, self.rho.shape(), self.measured)
                .expect("two-qubit shape");
            let projected = lifted.mul(self.rho.matrix()).unwrap().mul(&lifted).unwrap();
            let p = projected.trace().re;
            if p > 1e-14 {
                let cond =
                    partial_trace(&projected, self.rho.shape().dims(), &[self.other]).unwrap();
                let eigs = eig2(&cond);
                let probs: Vec<f64> = eigs.iter().map(|&x| (x / p).max(0.0)).collect();
                total += p * shannon_entropy(&probs);
            }
        }
        total
    }
}

/// Nelder-Mead refinement on (theta, phi) starting from the best grid point.
fn refine(
    obj: &mut Objective<'_>,
    start: (f64, f64),
    step: (f64, f64),
    opts: &DiscordOptions,
) -> f64 {
    let mut simplex = vec![
        (start.0, start.1),
        (start.0 + step.0, start.1),
        (start.0, start.1 + step.1),
    ];
    let mut values: Vec<f64> = simplex.iter().map(|&(t, p)| obj.eval(t, p)).collect();
    for _ in 0..opts.max_refine_iters {
        // order best..worst
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let (b, m, w) = (order[0], order[1], order[2]);
        if values[w] - values[b] < opts.refine_tol {
            break;
        }
        let centroid = (
            0.5 * (simplex[b].0 + simplex[m].0),
            0.5 * (simplex[b].1 + simplex[m].1),
        );
        let reflect = (
            centroid.0 + (centroid.0 - simplex[w].0),
            centroid.1 + (centroid.1 - simplex[w].1),
        );
        let fr = obj.eval(reflect.0, reflect.1);
        if fr < values[b] {
            let expand = (
                centroid.0 + 2.0 * (centroid.0 - simplex[w].0),
                centroid.1 + 2.0 * (centroid.1 - simplex[w].1),
            );
            let fe = obj.eval(expand.0, expand.1);
            if fe < fr {
                simplex[w] = expand;
                values[w] = fe;
            } else {
                simplex[w] = reflect;
                values[w] = fr;
            }
        } else if fr < values[m] {
            simplex[w] = reflect;
            values[w] = fr;
        } else {
            let contract = (
                centroid.0 + 0.5 * (simplex[w].0 - centroid.0),
                centroid.1 + 0.5 * (simplex[w].1 - centroid.1),
            );
            let fc = obj.eval(contract.0, contract.1);
            if fc < values[w] {
                simplex[w] = contract;
                values[w] = fc;
            } else {
                // shrink toward best
                for k in 0..3 {
                    if k == b {
                        continue;
                    }
                    simplex[k] = (
                        simplex[b].0 + 0.5 * (simplex[k].0 - simplex[b].0),
                        simplex[b].1 + 0.5 * (simplex[k].1 - simplex[b].1),
                    );
                    values[k] = obj.eval(simplex[k].0, simplex[k].1);
                }
            }
        }
    }
    values.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Quantum discord of a two-qubit state with projective measurements on the
/// chosen side:
/// `D = S(rho_measured) - S(rho_AB) + min over measurements of the average
/// conditional entropy of the other side`. Exhaustive Bloch grid followed by
/// simplex refinement; deterministic.
pub fn quantum_discord(
    rho: &DensityMatrix,
    side: MeasuredSide,
    opts: &DiscordOptions,
) -> Result<f64, QuantumError> {
    if rho.dim() != 4 || rho.shape().dims() != [2, 2] {
        return Err(QuantumError::NotTwoQubits { dim: rho.dim() });
    }
    let measured_idx = match side {
        MeasuredSide::A => 0usize,
        MeasuredSide::B => 1,
    };
    let s_measured = von_neumann_entropy(&rho.reduced(&[measured_idx])?)?;
    let s_ab = von_neumann_entropy(rho)?;
    let mut obj = Objective::new(rho, side);
    let g = opts.grid.max(2);
    let mut best = f64::INFINITY;
    let mut best_at = (0.0, 0.0);
    for i in 0..g {
        let theta = PI * i as f64 / (g - 1) as f64;
        for j in 0..g {
            let phi = 2.0 * PI * j as f64 / g as f64;
            let v = obj.eval(theta, phi);
            if v < best {
                best = v;
                best_at = (theta, phi);
            }
        }
    }
    let refined = refine(&mut obj, best_at, (PI / g as f64, 2.0 * PI / g as f64), opts);
    let cond_min = refined.min(best);
    Ok(s_measured - s_ab + cond_min)
}
