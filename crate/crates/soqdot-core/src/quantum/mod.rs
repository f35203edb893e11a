//! Density matrices, measurement channels and quantum-information measures.
//!
//! States carry a [`SubsystemShape`] (ordered tensor-factor dimensions) so
//! partial traces are always well-defined. All entropies use the natural
//! logarithm.

mod discord;

pub use discord::{quantum_discord, DiscordOptions, MeasuredSide};

use crate::linalg::{
    self, hermitian_eig, kron_all, matrix_function, partial_trace, ComplexMatrix, LinalgError,
};
use num_complex::Complex64;
use thiserror::Error;

/// Tolerance on the norm of a state vector.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance on the trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue a density matrix may carry.
pub const POSITIVITY_TOL: f64 = 1e-9;
/// Completeness/trace-preservation tolerance for operator sets.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Measurement probabilities below this report no post-state.
pub const PROB_FLOOR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("subsystem shape must have at least one factor of dimension >= 1")]
    EmptyShape,
    #[error("shape product {product} does not match dimension {dim}")]
    ShapeMismatch { product: usize, dim: usize },
    #[error("state vector norm {norm} deviates from 1 beyond {tol:.1e}")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("density matrix trace {trace} deviates from 1 beyond {tol:.1e}")]
    TraceNotOne { trace: f64, tol: f64 },
    #[error("density matrix has eigenvalue {min_eig:.3e} below -{tol:.1e}")]
    NotPositive { min_eig: f64, tol: f64 },
    #[error("subsystem index {index} out of range ({factors} factors)")]
    BadSubsystem { index: usize, factors: usize },
    #[error("operator set incomplete: max |sum - I| entry = {defect:.3e}")]
    IncompleteOperators { defect: f64 },
    #[error("projectors are not orthogonal idempotents: defect {defect:.3e}")]
    NotProjectors { defect: f64 },
    #[error("Kraus set is not trace preserving: max |sum L^dag L - I| entry = {defect:.3e}")]
    NotTracePreserving { defect: f64 },
    #[error("operation requires a two-qubit state, got dimension {dim}")]
    NotTwoQubits { dim: usize },
    #[error("operator dimension {got} does not match expected {expected}")]
    OperatorDim { got: usize, expected: usize },
}

/// Ordered tensor-factor dimensions of a composite system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self, QuantumError> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(QuantumError::EmptyShape);
        }
        Ok(Self { dims })
    }

    pub fn single(dim: usize) -> Self {
        Self { dims: vec![dim] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    fn check(&self, dim: usize) -> Result<(), QuantumError> {
        let product = self.total_dim();
        if product != dim {
            return Err(QuantumError::ShapeMismatch { product, dim });
        }
        Ok(())
    }

    /// Shape of the factors listed in `keep` (ascending).
    pub fn kept(&self, keep: &[usize]) -> Result<Self, QuantumError> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &f in &keep {
            if f >= self.dims.len() {
                return Err(QuantumError::BadSubsystem { index: f, factors: self.dims.len() });
            }
        }
        SubsystemShape::new(keep.iter().map(|&f| self.dims[f]).collect())
    }
}

/// Normalized pure state with tensor structure.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    shape: SubsystemShape,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, shape: SubsystemShape) -> Result<Self, QuantumError> {
        shape.check(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotNormalized { norm, tol: NORM_TOL });
        }
        Ok(Self { amplitudes, shape })
    }

    /// Normalize and wrap; errors only on a zero vector.
    pub fn normalized(
        mut amplitudes: Vec<Complex64>,
        shape: SubsystemShape,
    ) -> Result<Self, QuantumError> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(QuantumError::NotNormalized { norm, tol: NORM_TOL });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::new(amplitudes, shape)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Validated density matrix: Hermitian, unit trace, positive semidefinite
/// within tolerances.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    shape: SubsystemShape,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, shape: SubsystemShape) -> Result<Self, QuantumError> {
        shape.check(matrix.dim())?;
        let defect = matrix.hermiticity_defect();
        if defect > linalg::HERMITICITY_TOL {
            return Err(QuantumError::Linalg(LinalgError::NotHermitian {
                max_asym: defect,
                tol: linalg::HERMITICITY_TOL,
            }));
        }
        let matrix = matrix.symmetrized();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(QuantumError::TraceNotOne { trace, tol: TRACE_TOL });
        }
        let eig = hermitian_eig(&matrix)?;
        let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min_eig < -POSITIVITY_TOL {
            return Err(QuantumError::NotPositive { min_eig, tol: POSITIVITY_TOL });
        }
        Ok(Self { matrix, shape })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Partial trace keeping the listed factors.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix, QuantumError> {
        let kept_shape = self.shape.kept(keep)?;
        let m = partial_trace(&self.matrix, self.shape.dims(), keep)?;
        DensityMatrix::new(m, kept_shape)
    }

    /// Eigenvalues ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, QuantumError> {
        Ok(hermitian_eig(&self.matrix)?.eigenvalues)
    }

    /// tr(rho^2).
    pub fn purity(&self) -> f64 {
        let n = self.matrix.dim();
        let mut p = 0.0;
        for i in 0..n {
            for j in 0..n {
                p += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        p
    }
}

/// One branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    pub outcome: usize,
    pub probability: f64,
    /// Absent when the branch probability is below [`PROB_FLOOR`].
    pub post_state: Option<DensityMatrix>,
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

/// |psi><psi| as a validated density matrix.
pub fn pure_density(psi: &StateVector) -> Result<DensityMatrix, QuantumError> {
    let n = psi.dim();
    let a = psi.amplitudes();
    let m = ComplexMatrix::from_fn(n, |i, j| a[i] * a[j].conj());
    DensityMatrix::new(m, psi.shape().clone())
}

/// -sum p ln p with the 0 ln 0 := 0 convention; entries in [-1e-9, 0] are
/// clamped to zero.
pub fn shannon_entropy(ps: &[f64]) -> f64 {
    let mut s = 0.0;
    for &p in ps {
        if p > 0.0 {
            s -= p * p.ln();
        }
    }
    s
}

/// Von Neumann entropy S = -tr(rho ln rho), natural log.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64, QuantumError> {
    let eigs = rho.eigenvalues()?;
    Ok(shannon_entropy(&eigs))
}

/// Conditional entropy S(A|B) = S(rho_AB) - S(rho_B), where B is the set of
/// factors listed in `b_factors`. May be negative for entangled states.
pub fn conditional_entropy(rho: &DensityMatrix, b_factors: &[usize]) -> Result<f64, QuantumError> {
    let rho_b = rho.reduced(b_factors)?;
    Ok(von_neumann_entropy(rho)? - von_neumann_entropy(&rho_b)?)
}

/// Uhlmann fidelity in the squared-overlap convention:
/// `F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`. Symmetric in its arguments
/// and equal to `|<psi|phi>|^2` on pure inputs.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64, QuantumError> {
    if rho.dim() != sigma.dim() {
        return Err(QuantumError::Linalg(LinalgError::DimMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        }));
    }
    let sqrt_rho = matrix_function(rho.matrix(), |x| x.max(0.0).sqrt())?;
    let inner = sqrt_rho.mul(sigma.matrix())?.mul(&sqrt_rho)?.symmetrized();
    let eig = hermitian_eig(&inner)?;
    // eigenvalues of rank-deficient products carry O(eps) noise that the
    // square root would amplify to sqrt(eps); clamp relative garbage first
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let floor = 1e-13 * top;
    let root_sum: f64 =
        eig.eigenvalues.iter().map(|&l| if l > floor { l.sqrt() } else { 0.0 }).sum();
    Ok(root_sum * root_sum)
}

/// Wootters concurrence of a two-qubit state.
///
/// Square roots of the eigenvalues of `rho (sy x sy) rho* (sy x sy)` in
/// descending order give `C = max(0, r1 - r2 - r3 - r4)`; tiny negative
/// eigenvalues (>= -1e-10) are clamped to zero.
pub fn concurrence2q(rho: &DensityMatrix) -> Result<f64, QuantumError> {
    if rho.dim() != 4 {
        return Err(QuantumError::NotTwoQubits { dim: rho.dim() });
    }
    let yy = linalg::kron(&pauli_y(), &pauli_y());
    let rho_tilde = yy.mul(&rho.matrix().conj())?.mul(&yy)?;
    // eigenvalues of rho*rho_tilde equal those of the Hermitian
    // sqrt(rho) rho_tilde sqrt(rho)
    let sqrt_rho = matrix_function(rho.matrix(), |x| x.max(0.0).sqrt())?;
    let herm = sqrt_rho.mul(&rho_tilde)?.mul(&sqrt_rho)?.symmetrized();
    let mut eigs = hermitian_eig(&herm)?.eigenvalues;
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let roots: Vec<f64> = eigs
        .iter()
        .map(|&l| if l < 0.0 && l >= -1e-10 { 0.0 } else { l })
        .map(|l| l.max(0.0).sqrt())
        .collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Embed an operator acting on one tensor factor into the full space.
pub fn embed_on_subsystem(
    op: &ComplexMatrix,
    shape: &SubsystemShape,
    subsystem: usize,
) -> Result<ComplexMatrix, QuantumError> {
    if subsystem >= shape.factors() {
        return Err(QuantumError::BadSubsystem { index: subsystem, factors: shape.factors() });
    }
    if op.dim() != shape.dims()[subsystem] {
        return Err(QuantumError::OperatorDim { got: op.dim(), expected: shape.dims()[subsystem] });
    }
    let before: usize = shape.dims()[..subsystem].iter().product();
    let after: usize = shape.dims()[subsystem + 1..].iter().product();
    let ib = ComplexMatrix::identity(before);
    let ia = ComplexMatrix::identity(after);
    Ok(kron_all(&[&ib, op, &ia]))
}

fn validate_projectors(
    projectors: &[ComplexMatrix],
    dim: usize,
) -> Result<(), QuantumError> {
    let mut sum = ComplexMatrix::zeros(dim);
    for p in projectors {
        if p.dim() != dim {
            return Err(QuantumError::OperatorDim { got: p.dim(), expected: dim });
        }
        sum = sum.add(p)?;
        // idempotence
        let p2 = p.mul(p)?;
        let defect = p2.sub(p)?.max_abs();
        if defect > COMPLETENESS_TOL {
            return Err(QuantumError::NotProjectors { defect });
        }
    }
    let defect = sum.sub(&ComplexMatrix::identity(dim))?.max_abs();
    if defect > COMPLETENESS_TOL {
        return Err(QuantumError::IncompleteOperators { defect });
    }
    // pairwise orthogonality
    for (i, p) in projectors.iter().enumerate() {
        for q in projectors.iter().skip(i + 1) {
            let defect = p.mul(q)?.max_abs();
            if defect > COMPLETENESS_TOL {
                return Err(QuantumError::NotProjectors { defect });
            }
        }
    }
    Ok(())
}

/// Projective measurement of a subsystem.
///
/// `projectors` form a complete orthogonal set on the chosen factor. Record
/// `k` carries the Born probability `tr((Pi_k x I) rho)` and the normalized
/// post-measurement state; branches with probability below [`PROB_FLOOR`]
/// carry no post-state.
pub fn projective_measure(
    rho: &DensityMatrix,
    projectors: &[ComplexMatrix],
    subsystem: usize,
) -> Result<Vec<MeasurementRecord>, QuantumError> {
    let d_sub = *rho
        .shape()
        .dims()
        .get(subsystem)
        .ok_or(QuantumError::BadSubsystem { index: subsystem, factors: rho.shape().factors() })?;
    validate_projectors(projectors, d_sub)?;
    let mut records = Vec::with_capacity(projectors.len());
    for (k, p) in projectors.iter().enumerate() {
        let lifted = embed_on_subsystem(p, rho.shape(), subsystem)?;
        let projected = lifted.mul(rho.matrix())?.mul(&lifted)?;
        let probability = projected.trace().re;
        let post_state = if probability > PROB_FLOOR {
            Some(DensityMatrix::new(
                projected.scale_re(1.0 / probability),
                rho.shape().clone(),
            )?)
        } else {
            None
        };
        records.push(MeasurementRecord { outcome: k, probability: probability.max(0.0), post_state });
    }
    Ok(records)
}

/// Blind measurement: `rho -> sum_k (Pi_k x I) rho (Pi_k x I)`. Trace
/// preserving, result block-diagonal in the projector basis.
pub fn dephase(
    rho: &DensityMatrix,
    projectors: &[ComplexMatrix],
    subsystem: usize,
) -> Result<DensityMatrix, QuantumError> {
    let d_sub = *rho
        .shape()
        .dims()
        .get(subsystem)
        .ok_or(QuantumError::BadSubsystem { index: subsystem, factors: rho.shape().factors() })?;
    validate_projectors(projectors, d_sub)?;
    let mut out = ComplexMatrix::zeros(rho.dim());
    for p in projectors {
        let lifted = embed_on_subsystem(p, rho.shape(), subsystem)?;
        out = out.add(&lifted.mul(rho.matrix())?.mul(&lifted)?)?;
    }
    DensityMatrix::new(out, rho.shape().clone())
}

/// Apply a trace-preserving Kraus channel given by full-dimension operators.
pub fn kraus_apply(
    rho: &DensityMatrix,
    operators: &[ComplexMatrix],
) -> Result<DensityMatrix, QuantumError> {
    let dim = rho.dim();
    let mut norm = ComplexMatrix::zeros(dim);
    for l in operators {
        if l.dim() != dim {
            return Err(QuantumError::OperatorDim { got: l.dim(), expected: dim });
        }
        norm = norm.add(&l.adjoint().mul(l)?)?;
    }
    let defect = norm.sub(&ComplexMatrix::identity(dim))?.max_abs();
    if defect > COMPLETENESS_TOL {
        return Err(QuantumError::NotTracePreserving { defect });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for l in operators {
        out = out.add(&l.mul(rho.matrix())?.mul(&l.adjoint())?)?;
    }
    DensityMatrix::new(out, rho.shape().clone())
}

/// Quantum witness `W = |tr{ probe (N(rho) - N(Xi)) }|` where `Xi` is the
/// blind-measured state `sum_k Pi_k rho Pi_k`.
///
/// All operators act on the full space; use [`embed_on_subsystem`] to lift
/// subsystem operators. `W = 0` certifies that the blind measurement is
/// invisible to the probe after the channel.
pub fn quantum_witness(
    rho: &DensityMatrix,
    channel: &[ComplexMatrix],
    blind: &[ComplexMatrix],
    probe: &ComplexMatrix,
) -> Result<f64, QuantumError> {
    let dim = rho.dim();
    if probe.dim() != dim {
        return Err(QuantumError::OperatorDim { got: probe.dim(), expected: dim });
    }
    validate_projectors(blind, dim)?;
    let mut xi = ComplexMatrix::zeros(dim);
    for p in blind {
        xi = xi.add(&p.mul(rho.matrix())?.mul(p)?)?;
    }
    let xi = DensityMatrix::new(xi, rho.shape().clone())?;
    let n_rho = kraus_apply(rho, channel)?;
    let n_xi = kraus_apply(&xi, channel)?;
    let diff = n_rho.matrix().sub(n_xi.matrix())?;
    Ok(probe.mul(&diff)?.trace().re.abs())
}

/// Result of the entropic uncertainty evaluation with quantum memory.
#[derive(Debug, Clone, Copy)]
pub struct BertaRecord {
    /// S(R|B): conditional entropy after dephasing A in the X basis.
    pub s_rb: f64,
    /// S(Q|B): same for the Y basis.
    pub s_qb: f64,
    /// Basis overlap c = max |<x_m|y_n>|^2.
    pub c: f64,
    /// S(R|B) + S(Q|B).
    pub lhs: f64,
    /// ln(1/c) + S(A|B).
    pub rhs: f64,
    /// lhs - rhs; nonnegative up to numerics.
    pub slack: f64,
}

fn validate_basis(basis: &ComplexMatrix, dim: usize) -> Result<(), QuantumError> {
    if basis.dim() != dim {
        return Err(QuantumError::OperatorDim { got: basis.dim(), expected: dim });
    }
    let btb = basis.adjoint().mul(basis)?;
    let defect = btb.sub(&ComplexMatrix::identity(dim))?.max_abs();
    if defect > COMPLETENESS_TOL {
        return Err(QuantumError::IncompleteOperators { defect });
    }
    Ok(())
}

fn basis_projectors(basis: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let n = basis.dim();
    (0..n)
        .map(|k| {
            let col = basis.column(k);
            ComplexMatrix::from_fn(n, |i, j| col[i] * col[j].conj())
        })
        .collect()
}

/// Entropic uncertainty relation with quantum memory for two measurements on
/// subsystem A (factor 0) of a bipartite state.
///
/// `x_basis` and `y_basis` hold the measurement eigenvectors in their
/// columns. Builds the dephased states `rho_RB`, `rho_QB`, the overlap
/// `c = max |<x_m|y_n>|^2` and the two sides of
/// `S(R|B) + S(Q|B) >= ln(1/c) + S(A|B)`.
pub fn berta_uncertainty(
    rho: &DensityMatrix,
    x_basis: &ComplexMatrix,
    y_basis: &ComplexMatrix,
) -> Result<BertaRecord, QuantumError> {
    if rho.shape().factors() != 2 {
        return Err(QuantumError::BadSubsystem { index: 1, factors: rho.shape().factors() });
    }
    let da = rho.shape().dims()[0];
    validate_basis(x_basis, da)?;
    validate_basis(y_basis, da)?;
    let rho_rb = dephase(rho, &basis_projectors(x_basis), 0)?;
    let rho_qb = dephase(rho, &basis_projectors(y_basis), 0)?;
    let s_b = von_neumann_entropy(&rho.reduced(&[1])?)?;
    let s_rb = von_neumann_entropy(&rho_rb)? - s_b;
    let s_qb = von_neumann_entropy(&rho_qb)? - s_b;
    let mut c = 0.0f64;
    for m in 0..da {
        for n in 0..da {
            let olap: Complex64 =
                (0..da).map(|i| x_basis[(i, m)].conj() * y_basis[(i, n)]).sum();
            c = c.max(olap.norm_sqr());
        }
    }
    let s_ab = von_neumann_entropy(rho)? - s_b;
    let lhs = s_rb + s_qb;
    let rhs = (1.0 / c).ln() + s_ab;
    Ok(BertaRecord { s_rb, s_qb, c, lhs, rhs, slack: lhs - rhs })
}

#[cfg(test)]
mod tests;
