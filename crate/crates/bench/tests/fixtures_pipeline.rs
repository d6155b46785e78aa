//! FCIDUMP fixtures through the full Hamiltonian pipeline.

use std::path::PathBuf;

use proptest::prelude::*;
use vqe_bench::molecule::MoleculeSpec;
use vqe_bench::sweep::load_point;
use vqe_bench::{load_fcidump, parse_fcidump};
use vqe_core::ansatz::{build_brc, build_brc_spin_adapted};
use vqe_core::exact::{exact_ground_energy, Sector};
use vqe_core::hamiltonian::{build_qubit_hamiltonian, hf_energy, hf_state_index};
use vqe_core::qubit_operator::number_operator;
use vqe_core::sim::PauliSum;
use vqe_core::{QubitOperator, StateVector};

const H2_FCI: f64 = -1.1372701747;
const H2_FCI_TOL: f64 = 1e-8;
const SECTOR_TOL: f64 = 1e-10;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn h2_text() -> String {
    std::fs::read_to_string(fixtures().join("H2/0.7414.fcidump")).unwrap()
}

fn all_points() -> Vec<(MoleculeSpec, f64)> {
    let mut out = Vec::new();
    for name in ["H2", "H4", "LiH"] {
        let spec = MoleculeSpec::from_fixtures(&fixtures(), name).unwrap();
        for &b in &spec.bond_lengths.clone() {
            out.push((spec.clone(), b));
        }
    }
    out
}

#[test]
fn fixtures_cover_three_molecules() {
    let h2 = MoleculeSpec::from_fixtures(&fixtures(), "H2").unwrap();
    let h4 = MoleculeSpec::from_fixtures(&fixtures(), "H4").unwrap();
    let lih = MoleculeSpec::from_fixtures(&fixtures(), "LiH").unwrap();
    assert_eq!((h2.n_qubits, h2.n_electrons), (4, 2));
    assert_eq!((h4.n_qubits, h4.n_electrons), (8, 4));
    assert_eq!(h4.bond_lengths, [0.6, 0.9, 1.2, 1.5, 1.8]);
    assert_eq!(lih.bond_lengths, [1.0, 1.6, 2.4]);
}

#[test]
fn h2_hamiltonian_has_fifteen_terms() {
    let h = build_qubit_hamiltonian(&parse_fcidump(&h2_text()).unwrap()).unwrap();
    assert_eq!(h.len(), 15);
    assert!(h.is_hermitian(1e-12));
}

#[test]
fn h2_fci_energy() {
    let spec = MoleculeSpec::from_fixtures(&fixtures(), "H2").unwrap();
    let p = load_point(&spec, 0.7414).unwrap();
    assert!((p.fci - H2_FCI).abs() < H2_FCI_TOL, "{}", p.fci);
}

#[test]
fn hartree_fock_lies_above_fci_everywhere() {
    for (spec, b) in all_points() {
        let p = load_point(&spec, b).unwrap();
        assert!(p.hf >= p.fci, "{} @ {b}: hf {} fci {}", spec.name, p.hf, p.fci);
    }
}

#[test]
fn hf_energy_is_the_reference_expectation() {
    for (spec, b) in all_points() {
        let d = load_fcidump(spec.path(b).unwrap()).unwrap();
        let n = d.n_qubits();
        let h = build_qubit_hamiltonian(&d).unwrap();
        let state = StateVector::basis(n, hf_state_index(n, d.n_electrons)).unwrap();
        let direct = PauliSum::new(&h, n).unwrap().expectation(&state).unwrap();
        assert!((direct - hf_energy(&h, n, d.n_electrons).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn sector_and_full_space_agree() {
    for name in ["H2", "H4"] {
        let spec = MoleculeSpec::from_fixtures(&fixtures(), name).unwrap();
        for &b in &spec.bond_lengths {
            let d = load_fcidump(spec.path(b).unwrap()).unwrap();
            let n = d.n_qubits();
            let h = build_qubit_hamiltonian(&d).unwrap();
            let full = exact_ground_energy(&h, n, None).unwrap();
            let sector = exact_ground_energy(&h, n, Some(Sector { n_electrons: d.n_electrons, ms2: None })).unwrap();
            let singlet = exact_ground_energy(&h, n, Some(Sector::new(d.n_electrons, 0))).unwrap();
            assert!((full - sector).abs() < SECTOR_TOL, "{name} @ {b}: {full} vs {sector}");
            assert!((sector - singlet).abs() < SECTOR_TOL, "{name} @ {b}: {sector} vs {singlet}");
        }
    }
}

#[test]
fn h2_hamiltonian_conserves_particle_number() {
    let h = build_qubit_hamiltonian(&parse_fcidump(&h2_text()).unwrap()).unwrap();
    let c = h.commutator(&number_operator(4)).pruned(1e-12);
    assert!(c.is_empty(), "{c}");
}

#[test]
fn brc_count_on_four_orbitals_two_electrons() {
    assert_eq!(build_brc(4, 2).unwrap().n_params(), 4);
    assert_eq!(build_brc_spin_adapted(8, 4).unwrap().n_params(), 4);
}

fn dense(h: &QubitOperator, n: usize) -> Vec<f64> {
    h.to_dense(n).unwrap().iter().flat_map(|z| [z.re, z.im]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn line_order_does_not_matter(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let text = h2_text();
        let (header, body): (Vec<&str>, Vec<&str>) = {
            let lines: Vec<&str> = text.lines().collect();
            let end = lines.iter().position(|l| l.trim() == "&END").unwrap();
            (lines[..=end].to_vec(), lines[end + 1..].iter().copied().filter(|l| !l.trim().is_empty()).collect())
        };
        prop_assert_eq!(body.len(), perm.len());
        let mut shuffled: Vec<&str> = header.clone();
        shuffled.extend(perm.iter().map(|&i| body[i]));
        let a = build_qubit_hamiltonian(&parse_fcidump(&text).unwrap()).unwrap();
        let b = build_qubit_hamiltonian(&parse_fcidump(&shuffled.join("\n")).unwrap()).unwrap();
        let (da, db) = (dense(&a, 4), dense(&b, 4));
        for (x, y) in da.iter().zip(&db) {
            prop_assert!((x - y).abs() < 1e-14);
        }
    }
}
