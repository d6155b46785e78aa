//! Second-quantized molecular Hamiltonians built from one- and two-electron
//! integrals, plus the Hartree–Fock reference.
//!
//! Spin orbitals are interleaved: spatial orbital `p` maps to qubit `2p`
//! (spin up) and `2p + 1` (spin down).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fermion::{FermionOperator, Ladder};
use crate::jordan_wigner::jordan_wigner;
use crate::qubit_operator::QubitOperator;
use crate::sim::{PauliSum, StateVector};
use crate::Error;

/// Tolerance for the symmetry checks in [`IntegralData::validate`].
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Molecular-orbital integrals in chemists' notation `(pq|rs)`, in Hartree.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralData {
    pub n_spatial: usize,
    pub n_electrons: usize,
    /// Twice the spin projection.
    pub ms2: i32,
    pub core_energy: f64,
    /// Row-major `n_spatial × n_spatial`.
    pub h1: Vec<f64>,
    /// Row-major `n_spatial⁴`, index `((p·n + q)·n + r)·n + s`.
    pub g2: Vec<f64>,
}

impl IntegralData {
    /// All-zero integrals for `n_spatial` orbitals.
    pub fn zeros(n_spatial: usize, n_electrons: usize) -> Self {
        IntegralData {
            n_spatial,
            n_electrons,
            ms2: 0,
            core_energy: 0.0,
            h1: alloc::vec![0.0; n_spatial * n_spatial],
            g2: alloc::vec![0.0; n_spatial.pow(4)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn h1(&self, p: usize, q: usize) -> f64 {
        self.h1[p * self.n_spatial + q]
    }

    pub fn g2(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.g2[self.g2_index(p, q, r, s)]
    }

    fn g2_index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_spatial;
        ((p * n + q) * n + r) * n + s
    }

    pub fn set_h1(&mut self, p: usize, q: usize, value: f64) {
        let n = self.n_spatial;
        self.h1[p * n + q] = value;
        self.h1[q * n + p] = value;
    }

    /// Writes `value` into all eight index permutations related by real
    /// orbital symmetry.
    pub fn set_g2(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            let i = self.g2_index(a, b, c, d);
            self.g2[i] = value;
        }
    }

    /// Checks array sizes and the `h1` / 8-fold `g2` symmetries.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n_spatial;
        if self.h1.len() != n * n || self.g2.len() != n.pow(4) {
            return Err(Error::InvalidArgument(
                "integral arrays do not match the orbital count".into(),
            ));
        }
        if self.n_electrons > 2 * n {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} electrons do not fit in {} spin orbitals",
                self.n_electrons,
                2 * n
            )));
        }
        for p in 0..n {
            for q in 0..n {
                if (self.h1(p, q) - self.h1(q, p)).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "h1 not symmetric at ({p}, {q})"
                    )));
                }
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g2(p, q, r, s);
                        let images = [
                            self.g2(q, p, r, s),
                            self.g2(p, q, s, r),
                            self.g2(r, s, p, q),
                        ];
                        if images.iter().any(|w| (v - w).abs() > SYMMETRY_TOL) {
                            return Err(Error::InvalidArgument(alloc::format!(
                                "g2 breaks 8-fold symmetry at ({p}, {q}, {r}, {s})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Σ h_pq a†_p a_q + ½ Σ (pq|rs) a†_p a†_r a_s a_q + E_core` over spin orbitals.
pub fn build_fermionic_hamiltonian(d: &IntegralData) -> Result<FermionOperator, Error> {
    d.validate()?;
    let n = d.n_spatial;
    let mut op = FermionOperator::zero();
    if d.core_energy != 0.0 {
        op.add_term(&[], Complex64::new(d.core_energy, 0.0));
    }
    for p in 0..n {
        for q in 0..n {
            let h = d.h1(p, q);
            if h == 0.0 {
                continue;
            }
            for spin in 0..2 {
                op.add_term(
                    &[Ladder::create(2 * p + spin), Ladder::annihilate(2 * q + spin)],
                    Complex64::new(h, 0.0),
                );
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let g = d.g2(p, q, r, s);
                    if g == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (pp, qq) = (2 * p + sigma, 2 * q + sigma);
                            let (rr, ss) = (2 * r + tau, 2 * s + tau);
                            if pp == rr || qq == ss {
                                continue;
                            }
                            op.add_term(
                                &[
                                    Ladder::create(pp),
                                    Ladder::create(rr),
                                    Ladder::annihilate(ss),
                                    Ladder::annihilate(qq),
                                ],
                                Complex64::new(0.5 * g, 0.0),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(op)
}

/// Jordan–Wigner image of the molecular Hamiltonian on `2·n_spatial` qubits.
pub fn build_qubit_hamiltonian(d: &IntegralData) -> Result<QubitOperator, Error> {
    let f = build_fermionic_hamiltonian(d)?;
    jordan_wigner(&f, d.n_qubits())
}

/// `Σ_i a†_i a_i` over `n_modes` spin orbitals.
pub fn fermionic_number_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::zero();
    for i in 0..n_modes {
        op.add_term(
            &[Ladder::create(i), Ladder::annihilate(i)],
            Complex64::new(1.0, 0.0),
        );
    }
    op
}

/// Basis index with the lowest `n_electrons` spin orbitals occupied.
pub fn hf_state_index(n_qubits: usize, n_electrons: usize) -> usize {
    debug_assert!(n_electrons <= n_qubits);
    (1usize << n_electrons) - 1
}

/// `⟨HF|H|HF⟩`.
pub fn hf_energy(h: &QubitOperator, n_qubits: usize, n_electrons: usize) -> Result<f64, Error> {
    if n_electrons > n_qubits {
        return Err(Error::InvalidArgument(alloc::format!(
            "{n_electrons} electrons do not fit in {n_qubits} qubits"
        )));
    }
    let state = StateVector::basis(n_qubits, hf_state_index(n_qubits, n_electrons))?;
    PauliSum::new(h, n_qubits)?.expectation(&state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    #[test]
    fn single_level_is_spin_duplicated() {
        let mut d = IntegralData::zeros(1, 0);
        d.set_h1(0, 0, -1.0);
        let f = build_fermionic_hamiltonian(&d).unwrap();
        assert_eq!(f.len(), 2);
        let m1 = Complex64::new(-1.0, 0.0);
        assert_eq!(f.coefficient(&[Ladder::create(0), Ladder::annihilate(0)]), m1);
        assert_eq!(f.coefficient(&[Ladder::create(1), Ladder::annihilate(1)]), m1);
    }

    #[test]
    fn core_energy_only() {
        let mut d = IntegralData::zeros(2, 2);
        d.core_energy = 0.5;
        let f = build_fermionic_hamiltonian(&d).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coefficient(&[]), Complex64::new(0.5, 0.0));
        let q = build_qubit_hamiltonian(&d).unwrap();
        assert_eq!(q.coefficient(&PauliString::IDENTITY), Complex64::new(0.5, 0.0));
        assert!((hf_energy(&q, 4, 2).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hf_indices() {
        assert_eq!(hf_state_index(4, 2), 3);
        assert_eq!(hf_state_index(4, 0), 0);
        assert_eq!(hf_state_index(12, 4), 15);
    }

    #[test]
    fn zero_hamiltonian_hf_energy() {
        assert_eq!(hf_energy(&QubitOperator::zero(), 4, 2).unwrap(), 0.0);
    }

    #[test]
    fn asymmetric_integrals_rejected() {
        let mut d = IntegralData::zeros(2, 2);
        d.h1[1] = 0.3;
        assert!(d.validate().is_err());
        let mut d = IntegralData::zeros(2, 2);
        d.g2[1] = 0.3;
        assert!(d.validate().is_err());
    }
}
