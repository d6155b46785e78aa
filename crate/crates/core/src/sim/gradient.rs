//! Energies and parameter gradients of circuits.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::circuit::{GateKind, ParamCircuit, ParamValues};
use super::pauli_sum::{PauliSum, IMAG_RESIDUE_TOL};
use super::state::{inner, StateVector};
use crate::qubit_operator::QubitOperator;
use crate::Error;

/// `⟨ψ(θ)|H|ψ(θ)⟩`.
pub fn energy(c: &ParamCircuit, h: &PauliSum, values: &[f64], initial: usize) -> Result<f64, Error> {
    let state = c.apply(values, initial)?;
    h.expectation(&state)
}

/// Energy and full gradient from one forward pass and one reverse sweep.
///
/// With `φ_k` the state after gate `k` and `λ_k = U_{k+1}† ⋯ U_N† H φ_N`,
/// `∂E/∂θ_k = 2 Re⟨λ_k| G_k |φ_k⟩` where `dU_k/dθ = G_k U_k`. Gates sharing a
/// parameter accumulate `prefactor · ∂E/∂θ_k`.
pub fn energy_and_gradient(
    c: &ParamCircuit,
    h: &PauliSum,
    values: &[f64],
    initial: usize,
) -> Result<(f64, Vec<f64>), Error> {
    let mut phi = c.apply(values, initial)?;
    let mut lam = StateVector::from_amplitudes(h.apply(&phi)?)?;
    let e = inner(phi.amplitudes(), lam.amplitudes());
    if e.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::NonHermitian { imag: e.im });
    }
    let mut grad = alloc::vec![0.0; c.n_params()];
    let mut scratch = phi.clone();
    for (k, g) in c.gates.iter().enumerate().rev() {
        let theta = c.gate_angle(k, values);
        if let Some((param, prefactor)) = g.bound_param() {
            scratch.amplitudes_mut().copy_from_slice(phi.amplitudes());
            g.apply_generator(&mut scratch);
            let d = inner(lam.amplitudes(), scratch.amplitudes());
            grad[param] += prefactor * 2.0 * d.re;
        }
        g.apply_with_angle(&mut phi, theta, true);
        g.apply_with_angle(&mut lam, theta, true);
    }
    Ok((e.re, grad))
}

/// Named-parameter form of [`energy_and_gradient`].
pub fn adjoint_gradient(
    c: &ParamCircuit,
    h: &QubitOperator,
    values: &ParamValues,
    initial: usize,
) -> Result<(f64, ParamValues), Error> {
    let v = c.resolve(values)?;
    let hs = PauliSum::new(h, c.n_qubits)?;
    let (e, g) = energy_and_gradient(c, &hs, &v, initial)?;
    Ok((e, c.named(&g)))
}

/// `∂E/∂v` for parameter index `param` via the two-term shift rule
/// `E(θ + π/4) − E(θ − π/4)` per bound gate. Every gate bound to the
/// parameter must be a Pauli evolution `exp(iθP)` with `P² = I`.
pub fn parameter_shift(
    c: &ParamCircuit,
    h: &PauliSum,
    values: &[f64],
    initial: usize,
    param: usize,
) -> Result<f64, Error> {
    let mut total = 0.0;
    let mut found = false;
    for (k, g) in c.gates.iter().enumerate() {
        let Some((p, prefactor)) = g.bound_param() else {
            continue;
        };
        if p != param {
            continue;
        }
        if !matches!(g.kind, GateKind::PauliEvolution(_)) {
            return Err(Error::IneligibleParameterShift(c.param_names[param].clone()));
        }
        found = true;
        let plus = h.expectation(&c.apply_shifted(values, initial, (k, FRAC_PI_4))?)?;
        let minus = h.expectation(&c.apply_shifted(values, initial, (k, -FRAC_PI_4))?)?;
        total += prefactor * (plus - minus);
    }
    if !found {
        return Err(Error::UnknownParameter(
            c.param_names.get(param).cloned().unwrap_or_default(),
        ));
    }
    Ok(total)
}

/// Named-parameter form of [`parameter_shift`].
pub fn parameter_shift_gradient(
    c: &ParamCircuit,
    h: &QubitOperator,
    values: &ParamValues,
    initial: usize,
    name: &str,
) -> Result<f64, Error> {
    let v = c.resolve(values)?;
    let idx = c
        .param_index(name)
        .ok_or_else(|| Error::UnknownParameter(name.into()))?;
    let hs = PauliSum::new(h, c.n_qubits)?;
    parameter_shift(c, &hs, &v, initial, idx)
}

/// Energy and every component of the gradient by the shift rule.
pub fn energy_and_shift_gradient(
    c: &ParamCircuit,
    h: &PauliSum,
    values: &[f64],
    initial: usize,
) -> Result<(f64, Vec<f64>), Error> {
    let e = energy(c, h, values, initial)?;
    let grad = (0..c.n_params())
        .map(|p| parameter_shift(c, h, values, initial, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((e, grad))
}

/// How a screening generator enters the circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorForm {
    /// Anti-Hermitian `τ` appended as `exp(θτ)`: derivative `⟨ψ|[H, τ]|ψ⟩`.
    AntiHermitian,
    /// Hermitian (Pauli) `τ` appended as `exp(iθτ)`: derivative `i⟨ψ|[H, τ]|ψ⟩`.
    Pauli,
}

/// Derivative at `θ = 0` of the energy after appending the generator `tau`
/// to `state`.
pub fn commutator_gradient(
    h: &PauliSum,
    tau: &QubitOperator,
    form: GeneratorForm,
    state: &StateVector,
) -> Result<f64, Error> {
    let h_psi = h.apply(state)?;
    let t = PauliSum::new(tau, state.n_qubits())?;
    let t_psi = t.apply(state)?;
    let z: Complex64 = inner(&h_psi, &t_psi);
    // ⟨ψ|[H,τ]|ψ⟩ = ⟨Hψ|τψ⟩ − ⟨τ†ψ|Hψ⟩
    Ok(match form {
        GeneratorForm::AntiHermitian => 2.0 * z.re,
        GeneratorForm::Pauli => -2.0 * z.im,
    })
}
