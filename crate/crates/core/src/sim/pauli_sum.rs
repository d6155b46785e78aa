use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::state::StateVector;
use crate::qubit_operator::QubitOperator;
use crate::Error;

/// Imaginary residue above which an expectation value is rejected.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Largest register for which a [`PauliSum`] is compiled.
pub const MAX_COMPILED_QUBITS: usize = 22;

/// A qubit operator compiled for repeated application to dense states.
///
/// Terms sharing an x mask act as `X^x · D` with `D` diagonal, so the operator
/// is stored as one diagonal per distinct x mask: `(O ψ)[i ^ x] += D_x[i] ψ[i]`.
#[derive(Clone, Debug)]
pub struct PauliSum {
    n_qubits: usize,
    groups: Vec<(usize, Vec<Complex64>)>,
}

impl PauliSum {
    pub fn new(op: &QubitOperator, n_qubits: usize) -> Result<Self, Error> {
        op.check_qubits(n_qubits)?;
        if n_qubits > MAX_COMPILED_QUBITS {
            return Err(Error::DimensionOverflow { n_qubits });
        }
        let dim = 1usize << n_qubits;
        let mut by_x: BTreeMap<u64, Vec<Complex64>> = BTreeMap::new();
        for (p, c) in op.iter() {
            let diag = by_x
                .entry(p.x_mask())
                .or_insert_with(|| alloc::vec![Complex64::default(); dim]);
            for (i, d) in diag.iter_mut().enumerate() {
                let (phase, _) = p.act_on_basis(i);
                *d += phase.apply(*c);
            }
        }
        Ok(PauliSum {
            n_qubits,
            groups: by_x.into_iter().map(|(x, d)| (x as usize, d)).collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Basis-state coupling list: `(row, value)` entries of column `col`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.groups.iter().map(move |(x, d)| (col ^ x, d[col]))
    }

    fn check(&self, state: &StateVector) -> Result<(), Error> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: self.n_qubits.max(1) - 1,
                n_qubits: state.n_qubits(),
            });
        }
        Ok(())
    }

    /// `O|ψ⟩` as raw amplitudes.
    pub fn apply(&self, state: &StateVector) -> Result<Vec<Complex64>, Error> {
        self.check(state)?;
        let psi = state.amplitudes();
        let mut out = alloc::vec![Complex64::default(); psi.len()];
        self.apply_into(psi, &mut out);
        Ok(out)
    }

    pub(crate) fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) {
        for o in out.iter_mut() {
            *o = Complex64::default();
        }
        for (x, d) in &self.groups {
            let x = *x;
            if x == 0 {
                for i in 0..psi.len() {
                    out[i] += d[i] * psi[i];
                }
            } else {
                for i in 0..psi.len() {
                    out[i ^ x] += d[i] * psi[i];
                }
            }
        }
    }

    /// `⟨ψ|O|ψ⟩` without any hermiticity check.
    pub fn expectation_complex(&self, state: &StateVector) -> Result<Complex64, Error> {
        self.check(state)?;
        let psi = state.amplitudes();
        let mut acc = Complex64::default();
        for (x, d) in &self.groups {
            let x = *x;
            let mut g = Complex64::default();
            for i in 0..psi.len() {
                g += psi[i ^ x].conj() * d[i] * psi[i];
            }
            acc += g;
        }
        Ok(acc)
    }

    /// Real expectation value; fails if the imaginary residue exceeds
    /// [`IMAG_RESIDUE_TOL`].
    pub fn expectation(&self, state: &StateVector) -> Result<f64, Error> {
        let e = self.expectation_complex(state)?;
        if e.im.abs() > IMAG_RESIDUE_TOL {
            return Err(Error::NonHermitian { imag: e.im });
        }
        Ok(e.re)
    }
}

/// `Σ_i c_i ⟨s|P_i|s⟩` for a Hermitian operator.
pub fn expectation(h: &QubitOperator, s: &StateVector) -> Result<f64, Error> {
    PauliSum::new(h, s.n_qubits())?.expectation(s)
}
