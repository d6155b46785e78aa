use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::state::{hadamard_matrix, rotation_matrix, StateVector};
use crate::pauli::{Pauli, PauliString};
use crate::Error;

/// Parameter values keyed by name.
pub type ParamValues = BTreeMap<String, f64>;

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    /// `exp(−iθX/2)`
    RX,
    /// `exp(−iθY/2)`
    RY,
    /// `exp(−iθZ/2)`
    RZ,
    CNOT,
    /// `exp(+iθP)`
    PauliEvolution(PauliString),
    /// Fermionic two-mode rotation, see [`StateVector::apply_givens`].
    GivensRotation,
    SqrtISwap,
    X,
    H,
}

impl GateKind {
    pub fn is_parameterized(&self) -> bool {
        matches!(
            self,
            GateKind::RX
                | GateKind::RY
                | GateKind::RZ
                | GateKind::PauliEvolution(_)
                | GateKind::GivensRotation
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::CNOT => "CNOT",
            GateKind::PauliEvolution(_) => "PauliEvolution",
            GateKind::GivensRotation => "GivensRotation",
            GateKind::SqrtISwap => "SqrtISwap",
            GateKind::X => "X",
            GateKind::H => "H",
        }
    }
}

/// Rotation angle of a parameterized gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Fixed(f64),
    /// `θ = prefactor · value(param_names[param])`.
    Bound { param: usize, prefactor: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub angle: Option<Angle>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, angle: Option<Angle>) -> Self {
        Gate {
            kind,
            targets,
            angle,
        }
    }

    pub fn pauli_evolution(p: PauliString, angle: Angle) -> Self {
        let targets = p.ops().map(|(q, _)| q).collect();
        Gate::new(GateKind::PauliEvolution(p), targets, Some(angle))
    }

    pub fn rz(q: usize, angle: Angle) -> Self {
        Gate::new(GateKind::RZ, alloc::vec![q], Some(angle))
    }

    pub fn sqrt_iswap(a: usize, b: usize) -> Self {
        Gate::new(GateKind::SqrtISwap, alloc::vec![a, b], None)
    }

    pub fn givens(a: usize, b: usize, angle: Angle) -> Self {
        Gate::new(GateKind::GivensRotation, alloc::vec![a, b], Some(angle))
    }

    pub fn bound_param(&self) -> Option<(usize, f64)> {
        match self.angle {
            Some(Angle::Bound { param, prefactor }) => Some((param, prefactor)),
            _ => None,
        }
    }

    fn resolve_angle(&self, values: &[f64]) -> f64 {
        match self.angle {
            Some(Angle::Fixed(t)) => t,
            Some(Angle::Bound { param, prefactor }) => prefactor * values[param],
            None => 0.0,
        }
    }

    /// Applies the gate (or its inverse) with an explicit angle.
    pub fn apply_with_angle(&self, state: &mut StateVector, theta: f64, inverse: bool) {
        let t = if inverse { -theta } else { theta };
        match &self.kind {
            GateKind::RX => state.apply_single(self.targets[0], rotation_matrix(Pauli::X, t)),
            GateKind::RY => state.apply_single(self.targets[0], rotation_matrix(Pauli::Y, t)),
            GateKind::RZ => state.apply_single(self.targets[0], rotation_matrix(Pauli::Z, t)),
            GateKind::CNOT => state.apply_cnot(self.targets[0], self.targets[1]),
            GateKind::PauliEvolution(p) => state.apply_pauli_evolution(p, t),
            GateKind::GivensRotation => state.apply_givens(self.targets[0], self.targets[1], t),
            GateKind::SqrtISwap => state.apply_sqrt_iswap(self.targets[0], self.targets[1], inverse),
            GateKind::X => state.apply_x(self.targets[0]),
            GateKind::H => state.apply_single(self.targets[0], hadamard_matrix()),
        }
    }

    /// Replaces `state` by `G|state⟩` where `dU/dθ = G·U(θ)`.
    /// Returns `false` for gates without a rotation angle.
    pub fn apply_generator(&self, state: &mut StateVector) -> bool {
        let minus_half_i = Complex64::new(0.0, -0.5);
        let single = |state: &mut StateVector, axis: Pauli| {
            let p = PauliString::single(self.targets[0], axis).expect("qubit < 64");
            state.apply_pauli(&p);
            for a in state.amplitudes_mut() {
                *a *= minus_half_i;
            }
        };
        match &self.kind {
            GateKind::RX => single(state, Pauli::X),
            GateKind::RY => single(state, Pauli::Y),
            GateKind::RZ => single(state, Pauli::Z),
            GateKind::PauliEvolution(p) => {
                state.apply_pauli(p);
                for a in state.amplitudes_mut() {
                    *a = Complex64::new(-a.im, a.re);
                }
            }
            GateKind::GivensRotation => {
                state.apply_givens_generator(self.targets[0], self.targets[1])
            }
            _ => return false,
        }
        true
    }
}

/// An ordered gate list with named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCircuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub param_names: Vec<String>,
}

impl ParamCircuit {
    pub fn new(n_qubits: usize) -> Self {
        ParamCircuit {
            n_qubits,
            gates: Vec::new(),
            param_names: Vec::new(),
        }
    }

    pub fn n_params(&self) -> usize {
        self.param_names.len()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.param_names.iter().position(|n| n == name)
    }

    /// Index of `name`, registering it if new.
    pub fn add_parameter(&mut self, name: &str) -> usize {
        match self.param_index(name) {
            Some(i) => i,
            None => {
                self.param_names.push(name.to_string());
                self.param_names.len() - 1
            }
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    /// Appends `gate` with its angle bound to `name` (registered if new).
    pub fn push_bound(&mut self, mut gate: Gate, name: &str, prefactor: f64) {
        let param = self.add_parameter(name);
        gate.angle = Some(Angle::Bound { param, prefactor });
        self.gates.push(gate);
    }

    /// Appends every gate of `other`, re-binding its parameters by name.
    pub fn extend_from(&mut self, other: &ParamCircuit) {
        for g in &other.gates {
            let mut g = g.clone();
            if let Some(Angle::Bound { param, prefactor }) = g.angle {
                let idx = self.add_parameter(&other.param_names[param]);
                g.angle = Some(Angle::Bound {
                    param: idx,
                    prefactor,
                });
            }
            self.gates.push(g);
        }
    }

    /// Checks qubit ranges, arities and the parameter binding invariants.
    pub fn validate(&self) -> Result<(), Error> {
        let mut bound = alloc::vec![false; self.param_names.len()];
        for g in &self.gates {
            let arity = match g.kind {
                GateKind::CNOT | GateKind::GivensRotation | GateKind::SqrtISwap => 2,
                GateKind::PauliEvolution(ref p) => p.weight() as usize,
                _ => 1,
            };
            if g.targets.len() != arity {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{} gate expects {} targets, got {}",
                    g.kind.name(),
                    arity,
                    g.targets.len()
                )));
            }
            for &q in &g.targets {
                if q >= self.n_qubits {
                    return Err(Error::QubitOutOfRange {
                        qubit: q,
                        n_qubits: self.n_qubits,
                    });
                }
            }
            if arity == 2 && g.targets[0] == g.targets[1] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{} gate on a repeated qubit",
                    g.kind.name()
                )));
            }
            match (g.kind.is_parameterized(), g.angle) {
                (true, None) => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "{} gate without an angle",
                        g.kind.name()
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "{} gate takes no angle",
                        g.kind.name()
                    )))
                }
                _ => {}
            }
            if let Some(Angle::Bound { param, .. }) = g.angle {
                if param >= bound.len() {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "gate bound to unregistered parameter index {param}"
                    )));
                }
                bound[param] = true;
            }
        }
        if let Some(i) = bound.iter().position(|b| !b) {
            return Err(Error::InvalidArgument(alloc::format!(
                "parameter `{}` is not bound to any gate",
                self.param_names[i]
            )));
        }
        Ok(())
    }

    /// Orders a name → value map into the circuit's parameter order.
    pub fn resolve(&self, values: &ParamValues) -> Result<Vec<f64>, Error> {
        self.param_names
            .iter()
            .map(|n| {
                values
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::MissingParameter(n.clone()))
            })
            .collect()
    }

    pub fn named(&self, values: &[f64]) -> ParamValues {
        self.param_names
            .iter()
            .cloned()
            .zip(values.iter().copied())
            .collect()
    }

    fn check_values(&self, values: &[f64]) -> Result<(), Error> {
        if values.len() != self.param_names.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "expected {} parameter values, got {}",
                self.param_names.len(),
                values.len()
            )));
        }
        Ok(())
    }

    /// Runs the circuit on a basis state.
    pub fn apply(&self, values: &[f64], initial: usize) -> Result<StateVector, Error> {
        let mut state = StateVector::basis(self.n_qubits, initial)?;
        self.apply_to(&mut state, values)?;
        Ok(state)
    }

    pub fn apply_to(&self, state: &mut StateVector, values: &[f64]) -> Result<(), Error> {
        self.check_values(values)?;
        if state.n_qubits() != self.n_qubits {
            return Err(Error::InvalidArgument(alloc::format!(
                "circuit on {} qubits applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        self.validate()?;
        for g in &self.gates {
            g.apply_with_angle(state, g.resolve_angle(values), false);
        }
        Ok(())
    }

    /// Like [`apply`](Self::apply) with gate `shift.0`'s angle offset by `shift.1`.
    pub(crate) fn apply_shifted(
        &self,
        values: &[f64],
        initial: usize,
        shift: (usize, f64),
    ) -> Result<StateVector, Error> {
        self.check_values(values)?;
        self.validate()?;
        let mut state = StateVector::basis(self.n_qubits, initial)?;
        for (k, g) in self.gates.iter().enumerate() {
            let mut t = g.resolve_angle(values);
            if k == shift.0 {
                t += shift.1;
            }
            g.apply_with_angle(&mut state, t, false);
        }
        Ok(state)
    }

    pub(crate) fn gate_angle(&self, gate: usize, values: &[f64]) -> f64 {
        self.gates[gate].resolve_angle(values)
    }

    /// Number of gates acting on two or more qubits.
    pub fn multi_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.targets.len() >= 2).count()
    }

    pub fn count_kind(&self, kind_name: &str) -> usize {
        self.gates.iter().filter(|g| g.kind.name() == kind_name).count()
    }
}

/// Runs `c` with named parameter values from the basis state `initial`.
pub fn apply_circuit(
    c: &ParamCircuit,
    values: &ParamValues,
    initial: usize,
) -> Result<StateVector, Error> {
    let v = c.resolve(values)?;
    c.apply(&v, initial)
}
