//! Variational quantum eigensolver building blocks.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only numerical code:
//!
//! - [`pauli`], [`qubit_operator`], [`fermion`], [`jordan_wigner`]: operator
//!   algebra and the fermion-to-qubit encoding.
//! - [`hamiltonian`], [`exact`]: molecular Hamiltonians from integrals,
//!   Hartree–Fock reference states and exact ground energies.
//! - [`sim`]: dense statevector simulation, expectation values and gradients.
//! - [`ansatz`]: fixed, layered and adaptive ansatz builders.
//! - [`optimize`], [`driver`]: BFGS and the VQE loop around it.
//!
//! File formats, timing and the command-line harness live in the companion
//! `vqe-bench` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

use alloc::string::String;

pub mod ansatz;
pub mod driver;
pub mod exact;
pub mod fermion;
pub mod hamiltonian;
pub mod jordan_wigner;
pub mod optimize;
pub mod pauli;
pub mod qubit_operator;
pub mod sim;

pub use fermion::{FermionOperator, FermionTerm, Ladder};
pub use jordan_wigner::jordan_wigner;
pub use pauli::{Pauli, PauliString};
pub use qubit_operator::QubitOperator;
pub use sim::{ParamCircuit, StateVector};

/// Coefficients with magnitude below this are dropped from operators.
pub const PRUNE_TOL: f64 = 1e-12;

/// Chemical accuracy in Hartree.
pub const CHEMICAL_ACCURACY: f64 = 0.0016;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed Pauli token `{0}`")]
    MalformedToken(String),
    #[error("duplicate qubit index {0} in Pauli string")]
    DuplicateQubit(usize),
    #[error("malformed operator line `{0}`")]
    MalformedLine(String),
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("operator is not Hermitian (imaginary part {imag:e})")]
    NonHermitian { imag: f64 },
    #[error("Hilbert space of {n_qubits} qubits exceeds the supported size")]
    DimensionOverflow { n_qubits: usize },
    #[error("open-shell input ({n_electrons} electrons) is not supported")]
    OpenShell { n_electrons: usize },
    #[error("parameter `{0}` is bound to a gate the parameter-shift rule cannot handle")]
    IneligibleParameterShift(String),
    #[error("operator pool is empty")]
    EmptyPool,
    #[error("objective returned a non-finite value")]
    NonFinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
