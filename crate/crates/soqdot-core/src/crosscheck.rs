//! Side-by-side evaluation of the closed forms against the matrix numerics.
//!
//! Every row pairs a closed-form value with the same quantity computed from
//! the model states through the density-matrix machinery. The two routes
//! share no code beyond the state constructors, so agreement is a real
//! check. Rows are tagged with the tolerance class they are expected to
//! meet.

use crate::analytic::{
    build_states, closed_form_report, measurement_outcomes, ModelError, ModelParams,
};
use crate::linalg::ComplexMatrix;
use crate::quantum::{
    berta_uncertainty, concurrence2q, conditional_entropy, dephase, embed_on_subsystem,
    kraus_apply, projective_measure, quantum_discord, quantum_witness, uhlmann_fidelity,
    von_neumann_entropy, DensityMatrix, DiscordOptions, MeasuredSide, QuantumError,
};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// How tightly a cross-check row is expected to close.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TolClass {
    /// Both routes compute the same quantity: 1e-9.
    Exact,
    /// The closed form is a leading-order expression:
    /// max(1e-9, 3 (alpha^2/beta)^2).
    Perturbative,
    /// The witness null result: 1e-10.
    WitnessZero,
}

impl TolClass {
    pub fn tolerance(&self, p: &ModelParams) -> f64 {
        let u = p.alpha * p.alpha / p.beta;
        match self {
            TolClass::Exact => 1e-9,
            TolClass::Perturbative => (3.0 * u * u).max(1e-9),
            TolClass::WitnessZero => 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CrossCheckRow {
    pub name: &'static str,
    pub closed: f64,
    pub numeric: f64,
    pub class: TolClass,
}

impl CrossCheckRow {
    pub fn abs_diff(&self) -> f64 {
        (self.closed - self.numeric).abs()
    }

    pub fn passes(&self, p: &ModelParams) -> bool {
        self.abs_diff() <= self.class.tolerance(p)
    }
}

/// Projectors of the spin filter on one qubit: index 0 blocks (spin-down),
/// index 1 transmits (spin-up).
pub fn filter_projectors() -> [ComplexMatrix; 2] {
    [
        ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, 1.0]).unwrap(),
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
    ]
}

/// Eigenbasis columns of sigma_z in the (up, down) ordering: |1> = up first.
pub fn z_basis() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// Eigenbasis columns of sigma_x: (|0> +- |1>)/sqrt(2).
pub fn x_basis() -> ComplexMatrix {
    let r = FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, &[r, -r, r, r]).unwrap()
}

/// Spin-flip Kraus pair on one qubit: {|0><1|, |1><0|}.
pub fn flip_kraus() -> [ComplexMatrix; 2] {
    [
        ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]).unwrap(),
        ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap(),
    ]
}

fn matrix_dev(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, QuantumError> {
    Ok(a.matrix().sub(b.matrix())?.max_abs())
}

/// Run the full closed-form vs numeric comparison at one parameter point.
pub fn cross_check(
    p: &ModelParams,
    discord_opts: &DiscordOptions,
) -> Result<Vec<CrossCheckRow>, ModelError> {
    let states = build_states(p)?;
    let outcomes = measurement_outcomes(p)?;
    let report = closed_form_report(p)?;
    let mut rows = Vec::new();
    let mut push = |name, closed, numeric, class| {
        rows.push(CrossCheckRow { name, closed, numeric, class });
    };

    // measurement probabilities and post-states on the shared pure state;
    // the spin filter acts on the first spin factor (index 1 of (3, 2, 2))
    let records = projective_measure(&states.rho_ab, &filter_projectors(), 1)?;
    push("gamma0", report.gamma0, records[0].probability, TolClass::Exact);
    push("gamma1", report.gamma1, records[1].probability, TolClass::Exact);

    let post0 = records[0].post_state.as_ref();
    let post1 = records[1].post_state.as_ref();
    if let Some(post) = post0 {
        let sigma1 = post.reduced(&[1, 2])?;
        let varrho1 = post.reduced(&[0])?;
        push("sigma1_dev", 0.0, matrix_dev(&sigma1, &outcomes.sigma1)?, TolClass::Exact);
        push("varrho1_dev", 0.0, matrix_dev(&varrho1, &outcomes.varrho1)?, TolClass::Exact);
    }
    let post1 = post1.expect("transmitted branch always has weight");
    let sigma2 = post1.reduced(&[1, 2])?;
    let varrho2 = post1.reduced(&[0])?;
    push("sigma2_dev", 0.0, matrix_dev(&sigma2, &outcomes.sigma2)?, TolClass::Exact);
    push("varrho2_dev", 0.0, matrix_dev(&varrho2, &outcomes.varrho2)?, TolClass::Exact);

    // entropies
    push(
        "s_spin_pre",
        report.s_spin_pre.exact,
        von_neumann_entropy(&states.rho_s)?,
        TolClass::Exact,
    );
    push(
        "s_orb_pre",
        report.s_orb_pre.exact,
        von_neumann_entropy(&states.rho_or)?,
        TolClass::Exact,
    );
    push("s_spin_post", report.s_spin_post.exact, von_neumann_entropy(&sigma2)?, TolClass::Exact);
    push("s_orb_post", report.s_orb_post.exact, von_neumann_entropy(&varrho2)?, TolClass::Exact);
    push(
        "conditional_post",
        0.0,
        conditional_entropy(&sigma2, &[1])?,
        TolClass::Exact,
    );

    // fidelity between the transmitted post-measurement spin state and the
    // pre-measurement spin state, both routes
    let fid = uhlmann_fidelity(&sigma2, &states.rho_s)?;
    push("fidelity", report.fidelity.exact, fid, TolClass::Exact);
    push("fidelity_paper", report.fidelity.paper, fid, TolClass::Perturbative);

    // concurrences
    let conc_pre = concurrence2q(&states.rho_s)?;
    push("concurrence_pre", report.concurrence_pre.exact, conc_pre, TolClass::Exact);
    push("concurrence_pre_paper", report.concurrence_pre.paper, conc_pre, TolClass::Perturbative);
    push("concurrence_post", 0.0, concurrence2q(&sigma2)?, TolClass::Exact);

    // discord difference
    let d_pre = quantum_discord(&states.rho_s, MeasuredSide::A, discord_opts)?;
    let d_post = quantum_discord(&sigma2, MeasuredSide::A, discord_opts)?;
    push(
        "discord_difference",
        report.discord_difference.paper,
        d_pre - d_post,
        TolClass::Perturbative,
    );

    // witness protocol: flip channel and blind measurement on A, probe on B
    let shape = states.rho_s.shape().clone();
    let channel: Vec<ComplexMatrix> = flip_kraus()
        .iter()
        .map(|k| embed_on_subsystem(k, &shape, 0))
        .collect::<Result<_, _>>()?;
    let blind: Vec<ComplexMatrix> = filter_projectors()
        .iter()
        .map(|k| embed_on_subsystem(k, &shape, 0))
        .collect::<Result<_, _>>()?;
    let probe = embed_on_subsystem(&filter_projectors()[1], &shape, 1)?;
    let w = quantum_witness(&states.rho_s, &channel, &blind, &probe)?;
    push("witness", 0.0, w, TolClass::WitnessZero);
    let n_rho = kraus_apply(&states.rho_s, &channel)?;
    let p_b = probe.mul(n_rho.matrix())?.trace().re;
    push("p_b1", report.witness_prob, p_b, TolClass::Exact);
    let xi = dephase(&states.rho_s, &filter_projectors(), 0)?;
    let n_xi = kraus_apply(&xi, &channel)?;
    let g_b = probe.mul(n_xi.matrix())?.trace().re;
    push("g_b1", report.witness_prob, g_b, TolClass::Exact);

    // conditional entropies of the memory analysis
    push(
        "s_ab_pure",
        report.s_ab_pure,
        conditional_entropy(&states.rho_ab, &[2])?,
        TolClass::Exact,
    );
    push(
        "s_ab_mixed",
        report.s_ab_mixed,
        conditional_entropy(&states.rho_s, &[1])?,
        TolClass::Exact,
    );
    let berta = berta_uncertainty(&states.rho_s, &z_basis(), &x_basis())?;
    push("s_rb", report.s_rb, berta.s_rb, TolClass::Exact);
    push("s_qb", report.s_qb, berta.s_qb, TolClass::Exact);
    push("berta_c", 0.5, berta.c, TolClass::Exact);
    let closed_slack = report.s_rb + report.s_qb - 2.0f64.ln() - report.s_ab_mixed;
    push("berta_slack", closed_slack, berta.slack, TolClass::Exact);

    Ok(rows)
}
