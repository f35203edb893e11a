//! Hermitian eigendecomposition: complex Householder reduction to real
//! symmetric tridiagonal form followed by implicit QL with Wilkinson shifts.

use super::{ComplexMatrix, LinalgError, HERMITICITY_TOL};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending, the k-th
/// column of `eigenvectors` is the eigenvector of `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// Reconstruct `V diag(lambda) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lam = self.eigenvalues[k];
            for i in 0..n {
                let w = v[(i, k)] * lam;
                for j in 0..n {
                    out[(i, j)] += w * v[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Complex elementary reflector: returns `(beta, tau)` with `beta` real such
/// that `H^dag (alpha; x) = (beta; 0)` for `H = I - tau u u^dag`, `u = (1; x)`
/// after `x` has been rescaled in place.
fn larfg(alpha: Complex64, x: &mut [Complex64]) -> (f64, Complex64) {
    let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if xnorm == 0.0 && alpha.im == 0.0 {
        return (alpha.re, ZERO);
    }
    let norm = (alpha.re * alpha.re + alpha.im * alpha.im + xnorm * xnorm).sqrt();
    let beta = if alpha.re >= 0.0 { -norm } else { norm };
    let tau = Complex64::new((beta - alpha.re) / beta, -alpha.im / beta);
    let scale = (alpha - beta).inv();
    for z in x.iter_mut() {
        *z *= scale;
    }
    (beta, tau)
}

/// Reduce a Hermitian matrix in place to real tridiagonal `(d, e)` while
/// accumulating the unitary `Q` with `A = Q T Q^dag`. `e[i]` couples sites
/// `i` and `i+1`; `e[n-1]` is zero padding.
fn tridiagonalize(a: &mut ComplexMatrix, q: &mut ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let m = n - i - 1;
        let alpha = a[(i + 1, i)];
        let mut x: Vec<Complex64> = (i + 2..n).map(|r| a[(r, i)]).collect();
        let (beta, tau) = larfg(alpha, &mut x);
        e[i] = beta;
        if tau != ZERO {
            let mut u = Vec::with_capacity(m);
            u.push(ONE);
            u.extend_from_slice(&x);
            // w = tau * A22 u,  then w += (-tau/2 (w^dag u)) u
            let mut w = vec![ZERO; m];
            for r in 0..m {
                let mut s = ZERO;
                let row = a.row(i + 1 + r);
                for c in 0..m {
                    s += row[i + 1 + c] * u[c];
                }
                w[r] = tau * s;
            }
            let dot: Complex64 = w.iter().zip(&u).map(|(wi, ui)| wi.conj() * ui).sum();
            let corr = -(tau * dot) * Complex64::new(0.5, 0.0);
            for r in 0..m {
                w[r] += corr * u[r];
            }
            // A22 -= u w^dag + w u^dag (exactly Hermitian update)
            for r in 0..m {
                for c in 0..m {
                    let delta = u[r] * w[c].conj() + w[r] * u[c].conj();
                    a[(i + 1 + r, i + 1 + c)] -= delta;
                }
            }
            // Q := Q H, H = I - tau u u^dag acting on columns i+1..n
            for row in 0..n {
                let mut s = ZERO;
                for c in 0..m {
                    s += q[(row, i + 1 + c)] * u[c];
                }
                s *= tau;
                for c in 0..m {
                    let delta = s * u[c].conj();
                    q[(row, i + 1 + c)] -= delta;
                }
            }
        }
    }
    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    (d, e)
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `rotate(i, j, c, s)` applies each plane rotation to the caller's
/// eigenvector columns `i` and `j`.
fn tql2(
    d: &mut [f64],
    e: &mut [f64],
    mut rotate: impl FnMut(usize, usize, f64, f64),
) -> Result<(), LinalgError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(LinalgError::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut hit_zero = false;
            let mut i = m - 1;
            loop {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    hit_zero = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                rotate(i, i + 1, c, s);
                if i == l {
                    break;
                }
                i -= 1;
            }
            if hit_zero && i > l {
                continue;
            }
            if !hit_zero {
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian within [`HERMITICITY_TOL`] per entry (it is
/// symmetrized before the reduction); otherwise the call is rejected with
/// the measured asymmetry.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    let defect = a.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { max_asym: defect, tol: HERMITICITY_TOL });
    }
    let mut work = a.symmetrized();
    let n = work.dim();
    let mut q = ComplexMatrix::identity(n);
    let (mut d, mut e) = tridiagonalize(&mut work, &mut q);
    tql2(&mut d, &mut e, |i, j, c, s| {
        for k in 0..n {
            let f = q[(k, j)];
            let g = q[(k, i)];
            q[(k, j)] = g * s + f * c;
            q[(k, i)] = g * c - f * s;
        }
    })?;
    // sort ascending, permute eigenvector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].partial_cmp(&d[y]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Eigendecomposition of a real symmetric tridiagonal matrix given by its
/// diagonal `d` and subdiagonal `e` (`e[i]` couples sites `i` and `i+1`).
///
/// Returns ascending eigenvalues and, when `want_vectors`, the real
/// eigenvector matrix stored column-major as `vecs[k][i]` = component `i` of
/// eigenvector `k`.
pub fn sym_tridiag_eig(
    diag: &[f64],
    sub: &[f64],
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>), LinalgError> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&sub[..n.saturating_sub(1)]);
    if want_vectors {
        // z is column-major: z[j] is eigenvector column j
        let mut z: Vec<Vec<f64>> = (0..n)
            .map(|j| {
                let mut col = vec![0.0; n];
                col[j] = 1.0;
                col
            })
            .collect();
        tql2(&mut d, &mut e, |i, j, c, s| {
            let (left, right) = {
                // split to get two &mut columns
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                debug_assert!(a + 1 == b || a != b);
                let (lo, hi) = z.split_at_mut(b);
                (&mut lo[a], &mut hi[0])
            };
            // rotate columns (i, j): matches the complex path
            for k in 0..n {
                let f = right[k];
                let g = left[k];
                right[k] = g * s + f * c;
                left[k] = g * c - f * s;
            }
        })?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| d[x].partial_cmp(&d[y]).unwrap());
        let vals: Vec<f64> = order.iter().map(|&k| d[k]).collect();
        let vecs: Vec<Vec<f64>> = order.iter().map(|&k| z[k].clone()).collect();
        Ok((vals, Some(vecs)))
    } else {
        tql2(&mut d, &mut e, |_, _, _, _| {})?;
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok((d, None))
    }
}
