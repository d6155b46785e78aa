//! Dense statevector simulation.

pub mod circuit;
pub mod gradient;
pub mod pauli_sum;
pub mod state;

pub use circuit::{apply_circuit, Angle, Gate, GateKind, ParamCircuit, ParamValues};
pub use gradient::{
    adjoint_gradient, commutator_gradient, energy, energy_and_gradient,
    energy_and_shift_gradient, parameter_shift, parameter_shift_gradient, GeneratorForm,
};
pub use pauli_sum::{expectation, PauliSum};
pub use state::StateVector;

use crate::pauli::PauliString;

/// Returns `exp(iθP)|s⟩`.
pub fn apply_pauli_evolution(s: &StateVector, p: &PauliString, theta: f64) -> StateVector {
    let mut out = s.clone();
    out.apply_pauli_evolution(p, theta);
    out
}
