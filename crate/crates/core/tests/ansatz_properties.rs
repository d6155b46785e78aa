use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vqe_core::ansatz::{
    append_generator, build_brc, build_brc_spin_adapted, build_fermionic_pool, build_hea,
    build_kupccgsd, build_ldca, build_qucc, build_uccsd0, build_uccsd_singlet, AnsatzBuild,
};
use vqe_core::hamiltonian::hf_state_index;
use vqe_core::qubit_operator::number_operator;
use vqe_core::sim::PauliSum;
use vqe_core::ParamCircuit;

fn mean_number_spread(b: &AnsatzBuild, n_electrons: usize, draws: usize, seed: u64) -> f64 {
    let n = b.n_qubits();
    let num = PauliSum::new(&number_operator(n), n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let x: Vec<f64> = (0..b.n_params()).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
        let s = b.circuit.apply(&x, b.initial_state).unwrap();
        worst = worst.max((num.expectation(&s).unwrap() - n_electrons as f64).abs());
    }
    worst
}

/// A circuit assembled the way ADAPT grows one: random pool entries, each
/// with its own parameter.
fn random_adapt_build(n: usize, n_e: usize, len: usize, seed: u64) -> AnsatzBuild {
    let pool = build_fermionic_pool(n, n_e).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = ParamCircuit::new(n);
    for k in 0..len {
        let e = &pool.entries[rng.gen_range(0..pool.len())];
        let name = format!("a{k}_{}", e.label);
        append_generator(&mut c, &e.qubit_generator(n).unwrap(), &name).unwrap();
    }
    let mut b = build_uccsd_singlet(n, n_e).unwrap();
    b.name = "ADAPT".into();
    b.circuit = c;
    b
}

#[test]
fn conserving_families_keep_particle_number() {
    for (n, n_e) in [(4, 2), (8, 4)] {
        let builds = [
            build_uccsd_singlet(n, n_e).unwrap(),
            build_uccsd0(n, n_e).unwrap(),
            build_kupccgsd(n, n_e, 1).unwrap(),
            build_kupccgsd(n, n_e, 2).unwrap(),
            build_qucc(n, n_e).unwrap(),
            build_brc_spin_adapted(n, n_e).unwrap(),
            random_adapt_build(n, n_e, 6, 3),
        ];
        for b in &builds {
            assert!(b.particle_conserving, "{}", b.name);
            assert_eq!(b.initial_state, hf_state_index(n, n_e));
            let spread = mean_number_spread(b, n_e, 200, 17);
            assert!(spread < 1e-10, "{} on {n} qubits: {spread:e}", b.name);
        }
    }
    let brc = build_brc(6, 3).unwrap();
    assert!(mean_number_spread(&brc, 3, 200, 5) < 1e-10);
}

#[test]
fn non_conserving_families_are_flagged() {
    let mut hea = build_hea(4, 2);
    hea.initial_state = hf_state_index(4, 2);
    assert!(!hea.particle_conserving);
    assert!(mean_number_spread(&hea, 2, 20, 1) > 1e-6);
    let ldca = build_ldca(4, 1).unwrap();
    assert!(!ldca.particle_conserving);
}

#[test]
fn brc_counts_follow_eta_times_holes() {
    for n_modes in 2..=10 {
        for eta in 1..n_modes {
            assert_eq!(build_brc(n_modes, eta).unwrap().n_params(), eta * (n_modes - eta));
        }
    }
}

#[test]
fn kupccgsd_count_is_linear_in_k() {
    for (n, n_e) in [(4, 2), (8, 4), (12, 4)] {
        let one = build_kupccgsd(n, n_e, 1).unwrap().n_params();
        for k in 2..=4 {
            assert_eq!(build_kupccgsd(n, n_e, k).unwrap().n_params(), k * one);
        }
    }
}

#[test]
fn uccsd0_shares_uccsd_count() {
    for (n, n_e) in [(4, 2), (8, 4), (12, 4), (12, 2), (10, 6)] {
        assert_eq!(
            build_uccsd0(n, n_e).unwrap().n_params(),
            build_uccsd_singlet(n, n_e).unwrap().n_params()
        );
    }
}
