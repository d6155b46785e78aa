//! Fermion-to-qubit encoding.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fermion::{FermionOperator, Ladder};
use crate::pauli::{Pauli, PauliString};
use crate::qubit_operator::QubitOperator;
use crate::Error;

/// Jordan–Wigner image of `f` on `n_qubits` qubits.
///
/// `a†_i ↦ ½(X_i − iY_i) Z_{i−1} ⋯ Z_0` and `a_i ↦ ½(X_i + iY_i) Z_{i−1} ⋯ Z_0`.
pub fn jordan_wigner(f: &FermionOperator, n_qubits: usize) -> Result<QubitOperator, Error> {
    map_ladders(f, n_qubits, true)
}

/// Same as [`jordan_wigner`] without the `Z` parity strings: `a†_i ↦ Q†_i`,
/// `a_i ↦ Q_i`. Used to build qubit excitation operators.
pub fn qubit_ladder_map(f: &FermionOperator, n_qubits: usize) -> Result<QubitOperator, Error> {
    map_ladders(f, n_qubits, false)
}

fn map_ladders(
    f: &FermionOperator,
    n_qubits: usize,
    with_parity: bool,
) -> Result<QubitOperator, Error> {
    if n_qubits > crate::pauli::MAX_QUBITS {
        return Err(Error::QubitOutOfRange {
            qubit: n_qubits - 1,
            n_qubits: crate::pauli::MAX_QUBITS,
        });
    }
    let mut cache: Vec<[Option<QubitOperator>; 2]> = alloc::vec![[None, None]; n_qubits];
    let mut out = QubitOperator::zero();
    for (factors, coeff) in f.iter() {
        let mut term = QubitOperator::from_term(PauliString::IDENTITY, *coeff);
        for l in factors {
            if l.mode >= n_qubits {
                return Err(Error::ModeOutOfRange {
                    mode: l.mode,
                    n_modes: n_qubits,
                });
            }
            let slot = &mut cache[l.mode][l.dagger as usize];
            let image = slot.get_or_insert_with(|| ladder_image(*l, with_parity));
            term = term.multiply(image);
        }
        for (p, c) in term.iter() {
            out.add_term(*p, *c);
        }
    }
    Ok(out)
}

fn ladder_image(l: Ladder, with_parity: bool) -> QubitOperator {
    let chain = if with_parity {
        (1u64 << l.mode) - 1
    } else {
        0
    };
    let bit = 1u64 << l.mode;
    let x = PauliString::from_masks(bit, chain);
    let y = PauliString::from_masks(bit, chain | bit);
    // ½(X ∓ iY): minus for creation, plus for annihilation
    let sign = if l.dagger { -0.5 } else { 0.5 };
    let mut op = QubitOperator::from_term(x, Complex64::new(0.5, 0.0));
    op.add_term(y, Complex64::new(0.0, sign));
    op
}

/// Convenience for `Q†_i` / `Q_i` on a single qubit.
pub fn qubit_ladder(qubit: usize, dagger: bool) -> QubitOperator {
    let x = PauliString::single(qubit, Pauli::X).expect("qubit < 64");
    let y = PauliString::single(qubit, Pauli::Y).expect("qubit < 64");
    let mut op = QubitOperator::from_real(x, 0.5);
    op.add_term(y, Complex64::new(0.0, if dagger { -0.5 } else { 0.5 }));
    op
}
