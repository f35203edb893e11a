//! Dense complex linear algebra on square matrices.
//!
//! Everything here is self-contained: the Hermitian eigensolver reduces the
//! matrix to real symmetric tridiagonal form with complex Householder
//! reflectors and then runs implicit QL with Wilkinson shifts, in the
//! tred/tql lineage. Robust and deterministic for the dimensions this crate
//! needs (up to a few hundred).

mod eig;

pub use eig::{hermitian_eig, sym_tridiag_eig, HermitianEig};

use num_complex::Complex64;
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Per-entry tolerance for accepting a matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix data has {len} entries, not the {expected} required for dim {dim}")]
    BadShape { dim: usize, len: usize, expected: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: max |A - A^dag| entry {max_asym:.3e} exceeds {tol:.1e}")]
    NotHermitian { max_asym: f64, tol: f64 },
    #[error("QL iteration failed to converge for eigenvalue {index}")]
    NoConvergence { index: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("scalar function undefined (non-finite) at eigenvalue {value:.6e}")]
    Domain { value: f64 },
    #[error("subsystem factors {product} do not multiply to matrix dim {dim}")]
    FactorMismatch { product: usize, dim: usize },
    #[error("invalid subsystem selection: {0}")]
    BadSelection(String),
}

/// Dense complex square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim.min(8) {
            for j in 0..self.dim.min(8) {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Validating constructor: `data` is row-major with `dim * dim` finite entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != dim * dim {
            return Err(LinalgError::BadShape { dim, len: data.len(), expected: dim * dim });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { row: k / dim, col: k % dim });
            }
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from real entries (imaginary parts zero).
    pub fn from_real(dim: usize, rows: &[f64]) -> Result<Self, LinalgError> {
        Self::new(dim, rows.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of |A - A^dag|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// (A + A^dag)/2.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let rhs = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += a * rhs[j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Kronecker product. `out[(i*dB+k, j*dB+l)] = a[(i,j)] * b[(k,l)]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a chain of matrices.
pub fn kron_all(ms: &[&ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for m in ms {
        out = kron(&out, m);
    }
    out
}

/// Enumerate the flat indices reachable by a mixed-radix counter over the
/// selected factors, all other factors held at zero.
fn mixed_radix_bases(dims: &[usize], select: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for f in (0..dims.len().saturating_sub(1)).rev() {
        strides[f] = strides[f + 1] * dims[f + 1];
    }
    let count: usize = select.iter().map(|&f| dims[f]).product();
    let mut bases = Vec::with_capacity(count.max(1));
    let mut counter = vec![0usize; select.len()];
    loop {
        let base: usize = select.iter().zip(&counter).map(|(&f, &c)| c * strides[f]).sum();
        bases.push(base);
        // increment, last factor fastest
        let mut pos = select.len();
        loop {
            if pos == 0 {
                return bases;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < dims[select[pos]] {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Partial trace of `m` over the factors not listed in `keep`.
///
/// `dims` are the tensor-factor dimensions (their product must equal the
/// matrix dimension); `keep` selects the factors retained, in ascending
/// order of factor index. The trace is preserved: tr(out) = tr(m).
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix, LinalgError> {
    let product: usize = dims.iter().product();
    if product != m.dim() {
        return Err(LinalgError::FactorMismatch { product, dim: m.dim() });
    }
    if keep.is_empty() {
        return Err(LinalgError::BadSelection("keep set is empty".into()));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.last().copied().unwrap_or(0) >= dims.len() {
        return Err(LinalgError::BadSelection(format!(
            "factor index {} out of range (have {} factors)",
            keep.last().unwrap(),
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
    let kept_bases = mixed_radix_bases(dims, &keep);
    let traced_bases = mixed_radix_bases(dims, &traced);
    let dk = kept_bases.len();
    let mut out = ComplexMatrix::zeros(dk);
    for (ik, &bi) in kept_bases.iter().enumerate() {
        for (jk, &bj) in kept_bases.iter().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for &bt in &traced_bases {
                s += m[(bi + bt, bj + bt)];
            }
            out[(ik, jk)] = s;
        }
    }
    Ok(out)
}

/// Spectral matrix function: `V diag(f(lambda)) V^dag` for Hermitian input.
///
/// Errors if the input is not Hermitian within [`HERMITICITY_TOL`] or if `f`
/// returns a non-finite value at any eigenvalue.
pub fn matrix_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(a)?;
    let n = a.dim();
    let mut mapped = Vec::with_capacity(n);
    for &lam in &eig.eigenvalues {
        let y = f(lam);
        if !y.is_finite() {
            return Err(LinalgError::Domain { value: lam });
        }
        mapped.push(y);
    }
    // V diag(y) V^dag
    let v = &eig.eigenvectors;
    let mut out = ComplexMatrix::zeros(n);
    for k in 0..n {
        if mapped[k] == 0.0 {
            continue;
        }
        let col: Vec<Complex64> = (0..n).map(|i| v[(i, k)]).collect();
        for i in 0..n {
            let w = col[i] * mapped[k];
            for j in 0..n {
                out[(i, j)] += w * col[j].conj();
            }
        }
    }
    Ok(out.symmetrized())
}

/// Trace norm: sum of singular values. Equals the sum of |eigenvalue| for
/// Hermitian input.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64, LinalgError> {
    // singular values = sqrt of eigenvalues of M^dag M
    let mtm = m.adjoint().mul(m)?;
    let eig = hermitian_eig(&mtm.symmetrized())?;
    Ok(eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum())
}
