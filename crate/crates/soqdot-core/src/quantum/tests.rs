use super::*;
use crate::linalg::kron;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ket(amps: &[(f64, f64)], dims: &[usize]) -> StateVector {
    let v: Vec<Complex64> = amps.iter().map(|&(r, i)| c(r, i)).collect();
    StateVector::normalized(v, SubsystemShape::new(dims.to_vec()).unwrap()).unwrap()
}

fn random_pure(rng: &mut impl Rng, dims: &[usize]) -> StateVector {
    let n: usize = dims.iter().product();
    let amps: Vec<Complex64> =
        (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    StateVector::normalized(amps, SubsystemShape::new(dims.to_vec()).unwrap()).unwrap()
}

fn random_density(rng: &mut impl Rng, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    // mixture of a few random pure states
    let mut m = ComplexMatrix::zeros(n);
    let mut weights = [0.0; 3];
    let mut total = 0.0;
    for w in &mut weights {
        *w = rng.gen_range(0.1..1.0);
        total += *w;
    }
    for &w in &weights {
        let psi = random_pure(rng, dims);
        let a = psi.amplitudes();
        for i in 0..n {
            for j in 0..n {
                let add = a[i] * a[j].conj() * (w / total);
                let cur = m[(i, j)];
                m[(i, j)] = cur + add;
            }
        }
    }
    DensityMatrix::new(m, SubsystemShape::new(dims.to_vec()).unwrap()).unwrap()
}

fn bell_state() -> DensityMatrix {
    let psi = ket(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], &[2, 2]);
    pure_density(&psi).unwrap()
}

fn z_projectors() -> Vec<ComplexMatrix> {
    vec![
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
        ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, 1.0]).unwrap(),
    ]
}

#[test]
fn pure_density_examples() {
    let zero = ket(&[(1.0, 0.0), (0.0, 0.0)], &[2]);
    let rho = pure_density(&zero).unwrap();
    assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
    assert!(rho.matrix()[(1, 1)].norm() < 1e-14);

    let plus = ket(&[(1.0, 0.0), (1.0, 0.0)], &[2]);
    let rho = pure_density(&plus).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!((rho.matrix()[(i, j)].re - 0.5).abs() < 1e-12);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let psi = random_pure(&mut rng, &[12]);
    let rho = pure_density(&psi).unwrap();
    assert!((rho.purity() - 1.0).abs() < 1e-9);
}

#[test]
fn rejects_unnormalized() {
    let bad = StateVector::new(
        vec![c(1.0, 0.0), c(1.0, 0.0)],
        SubsystemShape::new(vec![2]).unwrap(),
    );
    assert!(matches!(bad, Err(QuantumError::NotNormalized { .. })));
}

#[test]
fn entropy_examples() {
    let pure = pure_density(&ket(&[(1.0, 0.0), (0.0, 0.0)], &[2])).unwrap();
    assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);

    let mixed = DensityMatrix::new(
        ComplexMatrix::identity(2).scale_re(0.5),
        SubsystemShape::single(2),
    )
    .unwrap();
    assert!((von_neumann_entropy(&mixed).unwrap() - 2.0f64.ln()).abs() < 1e-12);
}

#[test]
fn conditional_entropy_examples() {
    let bell = bell_state();
    assert!((conditional_entropy(&bell, &[1]).unwrap() + 2.0f64.ln()).abs() < 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_density(&mut rng, &[2]);
    let b = random_density(&mut rng, &[3]);
    let joint = DensityMatrix::new(
        kron(a.matrix(), b.matrix()),
        SubsystemShape::new(vec![2, 3]).unwrap(),
    )
    .unwrap();
    let expect = von_neumann_entropy(&a).unwrap();
    assert!((conditional_entropy(&joint, &[1]).unwrap() - expect).abs() < 1e-9);
}

#[test]
fn fidelity_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rho = random_density(&mut rng, &[2, 2]);
    assert!((uhlmann_fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-9);

    let up = pure_density(&ket(&[(1.0, 0.0), (0.0, 0.0)], &[2])).unwrap();
    let dn = pure_density(&ket(&[(0.0, 0.0), (1.0, 0.0)], &[2])).unwrap();
    assert!(uhlmann_fidelity(&up, &dn).unwrap().abs() < 1e-12);

    // pure inputs: F = |<psi|phi>|^2, and symmetry
    let psi = random_pure(&mut rng, &[4]);
    let phi = random_pure(&mut rng, &[4]);
    let f = uhlmann_fidelity(&pure_density(&psi).unwrap(), &pure_density(&phi).unwrap()).unwrap();
    assert!((f - psi.inner(&phi).norm_sqr()).abs() < 1e-9);

    let sigma = random_density(&mut rng, &[2, 2]);
    let f1 = uhlmann_fidelity(&rho, &sigma).unwrap();
    let f2 = uhlmann_fidelity(&sigma, &rho).unwrap();
    assert!((f1 - f2).abs() < 1e-9);
    assert!((0.0..=1.0 + 1e-9).contains(&f1));
}

#[test]
fn fidelity_dimension_mismatch() {
    let a = DensityMatrix::new(ComplexMatrix::identity(2).scale_re(0.5), SubsystemShape::single(2))
        .unwrap();
    let b = DensityMatrix::new(
        ComplexMatrix::identity(4).scale_re(0.25),
        SubsystemShape::single(4),
    )
    .unwrap();
    assert!(uhlmann_fidelity(&a, &b).is_err());
}

#[test]
fn concurrence_bell_is_one() {
    assert!((concurrence2q(&bell_state()).unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn concurrence_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let rho = random_density(&mut rng, &[2, 2]);
        let c0 = concurrence2q(&rho).unwrap();
        // random local unitaries from 2x2 Hermitian exponentials via spectral map
        let mut local = Vec::new();
        for _ in 0..2 {
            let h = {
                let mut m = ComplexMatrix::zeros(2);
                m[(0, 0)] = c(rng.gen_range(-1.0..1.0), 0.0);
                m[(1, 1)] = c(rng.gen_range(-1.0..1.0), 0.0);
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(0, 1)] = z;
                m[(1, 0)] = z.conj();
                m
            };
            // U = V diag(e^{i lambda}) V^dag
            let eig = crate::linalg::hermitian_eig(&h).unwrap();
            let v = &eig.eigenvectors;
            let mut u = ComplexMatrix::zeros(2);
            for k in 0..2 {
                let ph = Complex64::from_polar(1.0, eig.eigenvalues[k]);
                for i in 0..2 {
                    for j in 0..2 {
                        let add = v[(i, k)] * ph * v[(j, k)].conj();
                        let cur = u[(i, j)];
                        u[(i, j)] = cur + add;
                    }
                }
            }
            local.push(u);
        }
        let u_full = kron(&local[0], &local[1]);
        let rotated = DensityMatrix::new(
            u_full.mul(rho.matrix()).unwrap().mul(&u_full.adjoint()).unwrap(),
            rho.shape().clone(),
        )
        .unwrap();
        let c1 = concurrence2q(&rotated).unwrap();
        assert!((c0 - c1).abs() < 1e-8, "concurrence changed: {c0} vs {c1}");
    }
}

#[test]
fn projective_measure_basics() {
    let rho = pure_density(&ket(&[(1.0, 0.0), (0.0, 0.0)], &[2])).unwrap();
    let recs = projective_measure(&rho, &z_projectors(), 0).unwrap();
    assert!((recs[0].probability - 1.0).abs() < 1e-12);
    assert!(recs[1].probability < 1e-12);
    assert!(recs[1].post_state.is_none());
    let total: f64 = recs.iter().map(|r| r.probability).sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn projective_measure_rejects_incomplete() {
    let rho = pure_density(&ket(&[(1.0, 0.0), (0.0, 0.0)], &[2])).unwrap();
    let only_one = vec![z_projectors().remove(0)];
    assert!(matches!(
        projective_measure(&rho, &only_one, 0),
        Err(QuantumError::IncompleteOperators { .. })
    ));
}

#[test]
fn dephase_examples() {
    // diagonal state unchanged
    let diag = DensityMatrix::new(
        ComplexMatrix::from_real(2, &[0.3, 0.0, 0.0, 0.7]).unwrap(),
        SubsystemShape::single(2),
    )
    .unwrap();
    let out = dephase(&diag, &z_projectors(), 0).unwrap();
    assert!(out.matrix().sub(diag.matrix()).unwrap().max_abs() < 1e-12);

    // plus state fully decoheres
    let plus = pure_density(&ket(&[(1.0, 0.0), (1.0, 0.0)], &[2])).unwrap();
    let out = dephase(&plus, &z_projectors(), 0).unwrap();
    let expect = ComplexMatrix::identity(2).scale_re(0.5);
    assert!(out.matrix().sub(&expect).unwrap().max_abs() < 1e-12);

    // idempotence on random states
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let rho = random_density(&mut rng, &[2, 2]);
        let once = dephase(&rho, &z_projectors(), 0).unwrap();
        let twice = dephase(&once, &z_projectors(), 0).unwrap();
        assert!(once.matrix().sub(twice.matrix()).unwrap().max_abs() < 1e-12);
    }
}

#[test]
fn kraus_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rho = random_density(&mut rng, &[2]);
    let id = kraus_apply(&rho, &[ComplexMatrix::identity(2)]).unwrap();
    assert!(id.matrix().sub(rho.matrix()).unwrap().max_abs() < 1e-12);

    // bit flip swaps populations
    let p = 0.3;
    let diag = DensityMatrix::new(
        ComplexMatrix::from_real(2, &[p, 0.0, 0.0, 1.0 - p]).unwrap(),
        SubsystemShape::single(2),
    )
    .unwrap();
    let l1 = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    let l2 = ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
    let flipped = kraus_apply(&diag, &[l1, l2]).unwrap();
    assert!((flipped.matrix()[(0, 0)].re - (1.0 - p)).abs() < 1e-12);
    assert!((flipped.matrix()[(1, 1)].re - p).abs() < 1e-12);
}

#[test]
fn kraus_rejects_non_trace_preserving() {
    let rho = bell_state();
    let half = ComplexMatrix::identity(4).scale_re(0.5);
    assert!(matches!(
        kraus_apply(&rho, &[half]),
        Err(QuantumError::NotTracePreserving { .. })
    ));
}

#[test]
fn channels_preserve_trace_and_positivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let rho = random_density(&mut rng, &[2, 2]);
        let deph = dephase(&rho, &z_projectors(), rng.gen_range(0..2)).unwrap();
        assert!((deph.matrix().trace().re - 1.0).abs() < 1e-9);
        let min = deph.eigenvalues().unwrap()[0];
        assert!(min > -1e-9);
    }
}

#[test]
fn subadditivity_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let rho = random_density(&mut rng, &[2, 3]);
        let s_ab = von_neumann_entropy(&rho).unwrap();
        let s_a = von_neumann_entropy(&rho.reduced(&[0]).unwrap()).unwrap();
        let s_b = von_neumann_entropy(&rho.reduced(&[1]).unwrap()).unwrap();
        assert!(s_ab <= s_a + s_b + 1e-9);
    }
}

#[test]
fn witness_zero_for_classical_state() {
    // diagonal two-qubit state, channel on A, probe on B: structurally zero
    let shape = SubsystemShape::new(vec![2, 2]).unwrap();
    let rho = DensityMatrix::new(
        ComplexMatrix::from_real(
            4,
            &[
                0.4, 0.0, 0.0, 0.0, //
                0.0, 0.3, 0.0, 0.0, //
                0.0, 0.0, 0.2, 0.0, //
                0.0, 0.0, 0.0, 0.1,
            ],
        )
        .unwrap(),
        shape.clone(),
    )
    .unwrap();
    let flip_dn = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    let flip_up = ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
    let channel = vec![
        embed_on_subsystem(&flip_dn, &shape, 0).unwrap(),
        embed_on_subsystem(&flip_up, &shape, 0).unwrap(),
    ];
    let blind: Vec<ComplexMatrix> =
        z_projectors().iter().map(|p| embed_on_subsystem(p, &shape, 0).unwrap()).collect();
    let probe = embed_on_subsystem(&z_projectors()[0], &shape, 1).unwrap();
    let w = quantum_witness(&rho, &channel, &blind, &probe).unwrap();
    assert!(w < 1e-12);
}

#[test]
fn witness_detects_coherence_with_probe_on_measured_side() {
    // |+><+| x |0><0|, identity channel, blind z-measurement on A,
    // probe |+><+| on A: the blind measurement destroys the coherence the
    // probe looks for, so W = 1/2.
    let shape = SubsystemShape::new(vec![2, 2]).unwrap();
    let plus = ket(&[(1.0, 0.0), (1.0, 0.0)], &[2]);
    let rho_a = pure_density(&plus).unwrap();
    let up = pure_density(&ket(&[(1.0, 0.0), (0.0, 0.0)], &[2])).unwrap();
    let rho = DensityMatrix::new(kron(rho_a.matrix(), up.matrix()), shape.clone()).unwrap();
    let channel = vec![ComplexMatrix::identity(4)];
    let blind: Vec<ComplexMatrix> =
        z_projectors().iter().map(|p| embed_on_subsystem(p, &shape, 0).unwrap()).collect();
    let probe = embed_on_subsystem(rho_a.matrix(), &shape, 0).unwrap();
    let w = quantum_witness(&rho, &channel, &blind, &probe).unwrap();
    assert!((w - 0.5).abs() < 1e-12, "w = {w}");
}

#[test]
fn discord_product_state_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let a = random_density(&mut rng, &[2]);
    let b = random_density(&mut rng, &[2]);
    let rho = DensityMatrix::new(
        kron(a.matrix(), b.matrix()),
        SubsystemShape::new(vec![2, 2]).unwrap(),
    )
    .unwrap();
    let d = quantum_discord(&rho, MeasuredSide::A, &DiscordOptions::default()).unwrap();
    assert!(d.abs() < 1e-6, "d = {d}");
}

#[test]
fn discord_bell_state_is_ln2() {
    let d = quantum_discord(&bell_state(), MeasuredSide::A, &DiscordOptions::default()).unwrap();
    assert!((d - 2.0f64.ln()).abs() < 1e-6, "d = {d}");
}

#[test]
fn discord_classical_quantum_state_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5 {
        let rho = random_density(&mut rng, &[2, 2]);
        let cq = dephase(&rho, &z_projectors(), 0).unwrap();
        let d = quantum_discord(&cq, MeasuredSide::A, &DiscordOptions::default()).unwrap();
        assert!(d.abs() < 1e-6, "d = {d}");
        assert!(d >= -1e-8);
    }
}

#[test]
fn berta_slack_nonnegative_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let r = 0.5f64.sqrt();
    let x_basis = ComplexMatrix::identity(2);
    let y_basis = ComplexMatrix::new(2, vec![c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)]).unwrap();
    for _ in 0..50 {
        let rho = random_density(&mut rng, &[2, 2]);
        let rec = berta_uncertainty(&rho, &x_basis, &y_basis).unwrap();
        assert!((rec.c - 0.5).abs() < 1e-12);
        assert!(rec.slack >= -1e-9, "slack {}", rec.slack);
    }
    // random bases as well
    for _ in 0..20 {
        let rho = random_density(&mut rng, &[2, 2]);
        let h = {
            let mut m = ComplexMatrix::zeros(2);
            m[(0, 0)] = c(rng.gen_range(-1.0..1.0), 0.0);
            m[(1, 1)] = c(rng.gen_range(-1.0..1.0), 0.0);
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(0, 1)] = z;
            m[(1, 0)] = z.conj();
            m
        };
        let u = crate::linalg::hermitian_eig(&h).unwrap().eigenvectors;
        let rec = berta_uncertainty(&rho, &x_basis, &u).unwrap();
        assert!(rec.slack >= -1e-9, "slack {}", rec.slack);
    }
}

#[test]
fn berta_rejects_bad_basis() {
    let rho = bell_state();
    let not_unitary = ComplexMatrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
    assert!(berta_uncertainty(&rho, &not_unitary, &ComplexMatrix::identity(2)).is_err());
}

