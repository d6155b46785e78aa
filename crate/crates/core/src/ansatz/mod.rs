//! Ansatz builders.
//!
//! Every builder returns an [`AnsatzBuild`]: a [`ParamCircuit`] plus the
//! generator list it was compiled from, the initial basis state, and the
//! initialization policy the driver should use.

use alloc::string::String;
use alloc::vec::Vec;

use crate::fermion::FermionOperator;
use crate::jordan_wigner::{jordan_wigner, qubit_ladder_map};
use crate::qubit_operator::QubitOperator;
use crate::sim::{Angle, Gate, ParamCircuit};
use crate::Error;

pub mod adaptive;
pub mod fixed;
pub mod layered;

pub use adaptive::{
    adapt_vqe, build_fermionic_pool, build_qubit_pool, qcc_optimize, qubit_adapt_vqe,
    AdaptOptions, AdaptiveTrace, OperatorPool, PoolEntry, PoolKind, QccMeanField, QccOptions,
    TraceStep,
};
pub use fixed::{build_kupccgsd, build_qucc, build_uccsd0, build_uccsd_singlet};
pub use layered::{build_brc, build_brc_spin_adapted, build_hea, build_ldca, givens_compilation};

/// Tolerance on the real part of a generator's qubit image.
pub const ANTI_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExcitationKind {
    Single,
    Double,
    PairedDouble,
    GeneralizedSingle,
    QubitSingle,
    QubitDouble,
}

impl ExcitationKind {
    /// Qubit excitations are mapped without Jordan–Wigner parity strings.
    pub fn is_qubit(self) -> bool {
        matches!(self, ExcitationKind::QubitSingle | ExcitationKind::QubitDouble)
    }
}

/// One excitation `T`; the circuit exponentiates `θ · prefactor · (T − T†)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcitationGenerator {
    pub kind: ExcitationKind,
    /// Spin orbitals touched, creations first.
    pub orbitals: Vec<usize>,
    pub excitation: FermionOperator,
    pub param_name: String,
    pub prefactor: f64,
}

impl ExcitationGenerator {
    /// `T − T†`.
    pub fn anti_hermitian(&self) -> FermionOperator {
        &self.excitation - &self.excitation.adjoint()
    }

    /// Qubit image of `prefactor · (T − T†)`.
    pub fn qubit_image(&self, n_qubits: usize) -> Result<QubitOperator, Error> {
        let a = self.anti_hermitian();
        let q = if self.kind.is_qubit() {
            qubit_ladder_map(&a, n_qubits)?
        } else {
            jordan_wigner(&a, n_qubits)?
        };
        Ok(q.scale(num_complex::Complex64::new(self.prefactor, 0.0)))
    }
}

/// How the driver draws starting parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitPolicy {
    Zeros,
    Uniform { lo: f64, hi: f64 },
}

impl InitPolicy {
    pub fn is_random(&self) -> bool {
        matches!(self, InitPolicy::Uniform { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzBuild {
    pub name: String,
    pub circuit: ParamCircuit,
    pub generators: Vec<ExcitationGenerator>,
    pub particle_conserving: bool,
    pub init_policy: InitPolicy,
    /// Basis index the circuit is applied to.
    pub initial_state: usize,
    /// Independent starts used when the policy is random.
    pub restarts: usize,
}

impl AnsatzBuild {
    pub fn n_params(&self) -> usize {
        self.circuit.n_params()
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits
    }
}

/// First-order, single-step Trotter product of the generators.
///
/// Each generator's image `Σ_P i c_P P` becomes one `exp(iθ c_P P)` gate per
/// Pauli string, in sorted string order, bound to the generator's parameter
/// with prefactor `c_P`. Generators whose image vanishes are skipped.
pub fn trotterize(gens: &[ExcitationGenerator], n_qubits: usize) -> Result<ParamCircuit, Error> {
    let mut c = ParamCircuit::new(n_qubits);
    for g in gens {
        append_generator(&mut c, &g.qubit_image(n_qubits)?, &g.param_name)?;
    }
    Ok(c)
}

/// Appends `exp(θ · op)` for an anti-Hermitian qubit operator, one gate per
/// string, bound to `name`.
pub fn append_generator(c: &mut ParamCircuit, op: &QubitOperator, name: &str) -> Result<(), Error> {
    for (p, coeff) in op.iter() {
        if coeff.re.abs() > ANTI_HERMITIAN_TOL {
            return Err(Error::NonHermitian { imag: coeff.re });
        }
        if p.is_identity() {
            // global phase
            continue;
        }
        c.push_bound(Gate::pauli_evolution(*p, Angle::Fixed(0.0)), name, coeff.im);
    }
    Ok(())
}

pub(crate) fn check_closed_shell(n_qubits: usize, n_electrons: usize) -> Result<(), Error> {
    if n_electrons % 2 != 0 {
        return Err(Error::OpenShell { n_electrons });
    }
    if n_qubits % 2 != 0 || n_electrons > n_qubits {
        return Err(Error::InvalidArgument(alloc::format!(
            "{n_electrons} electrons on {n_qubits} qubits is not a closed-shell spin-orbital register"
        )));
    }
    Ok(())
}

/// Drops generators whose anti-Hermitian part vanishes, keeping order.
pub(crate) fn prune_generators(gens: Vec<ExcitationGenerator>) -> Vec<ExcitationGenerator> {
    gens.into_iter()
        .filter(|g| !g.anti_hermitian().is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::Ladder;
    use alloc::string::ToString;
    use alloc::vec;
    use num_complex::Complex64;

    fn single(a: usize, i: usize) -> ExcitationGenerator {
        ExcitationGenerator {
            kind: ExcitationKind::Single,
            orbitals: vec![a, i],
            excitation: FermionOperator::from_term(
                &[Ladder::create(a), Ladder::annihilate(i)],
                Complex64::new(1.0, 0.0),
            ),
            param_name: "t".to_string(),
            prefactor: 1.0,
        }
    }

    #[test]
    fn empty_list_gives_empty_circuit() {
        let c = trotterize(&[], 4).unwrap();
        assert!(c.gates.is_empty());
        assert_eq!(c.n_params(), 0);
    }

    #[test]
    fn single_excitation_two_gates() {
        let c = trotterize(&[single(2, 0)], 4).unwrap();
        assert_eq!(c.gates.len(), 2);
        assert_eq!(c.n_params(), 1);
        // a†_2 a_0 − h.c. ↦ (i/2)(Y0 Z1 X2 − X0 Z1 Y2)
        let mut got: Vec<(String, f64)> = c
            .gates
            .iter()
            .map(|g| match (&g.kind, g.bound_param()) {
                (crate::sim::GateKind::PauliEvolution(p), Some((_, pf))) => (p.to_string(), pf),
                _ => panic!("unexpected gate"),
            })
            .collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got[0].0, "X0 Z1 Y2");
        assert!((got[0].1 + 0.5).abs() < 1e-15);
        assert_eq!(got[1].0, "Y0 Z1 X2");
        assert!((got[1].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn double_excitation_eight_gates() {
        let g = ExcitationGenerator {
            kind: ExcitationKind::Double,
            orbitals: vec![2, 3, 0, 1],
            excitation: FermionOperator::from_term(
                &[
                    Ladder::create(3),
                    Ladder::create(2),
                    Ladder::annihilate(1),
                    Ladder::annihilate(0),
                ],
                Complex64::new(1.0, 0.0),
            ),
            param_name: "d".to_string(),
            prefactor: 1.0,
        };
        let c = trotterize(&[g], 4).unwrap();
        assert_eq!(c.gates.len(), 8);
        for gate in &c.gates {
            let (_, pf) = gate.bound_param().unwrap();
            assert!((pf.abs() - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn shared_parameter_binds_all_gates() {
        let mut a = single(2, 0);
        let mut b = single(3, 1);
        a.param_name = "s".into();
        b.param_name = "s".into();
        let c = trotterize(&[a, b], 4).unwrap();
        assert_eq!(c.n_params(), 1);
        assert_eq!(c.gates.len(), 4);
    }
}
