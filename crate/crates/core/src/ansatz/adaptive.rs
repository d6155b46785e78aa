//! Adaptive ansatz construction: fermionic ADAPT, qubit-ADAPT and the
//! iterative qubit coupled-cluster method.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::fixed::build_uccsd_singlet;
use super::{append_generator, AnsatzBuild, ExcitationGenerator, InitPolicy};
use crate::driver::{optimize_circuit, Clock, GradientMethod};
use crate::optimize::{golden_section, OptimizerConfig};
use crate::pauli::PauliString;
use crate::qubit_operator::QubitOperator;
use crate::sim::state::inner;
use crate::sim::{Angle, Gate, GateKind, ParamCircuit, PauliSum, StateVector};
use crate::{Error, CHEMICAL_ACCURACY};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoolKind {
    FermionicSd,
    QubitPauli,
    QccEntangler,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PoolOperator {
    /// Spin-resolved excitations sharing one parameter.
    Fermionic(Vec<ExcitationGenerator>),
    /// A single Pauli string `P`, appended as `exp(iθP)`.
    Pauli(PauliString),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoolEntry {
    pub label: String,
    pub operator: PoolOperator,
}

impl PoolEntry {
    /// Anti-Hermitian qubit operator `A` such that the appended gate is
    /// `exp(θA)`.
    pub fn qubit_generator(&self, n_qubits: usize) -> Result<QubitOperator, Error> {
        match &self.operator {
            PoolOperator::Fermionic(gens) => {
                let mut op = QubitOperator::zero();
                for g in gens {
                    op = &op + &g.qubit_image(n_qubits)?;
                }
                Ok(op)
            }
            PoolOperator::Pauli(p) => Ok(QubitOperator::from_term(*p, Complex64::new(0.0, 1.0))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPool {
    pub kind: PoolKind,
    pub entries: Vec<PoolEntry>,
}

impl OperatorPool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same strings relabelled as QCC entanglers.
    pub fn as_entanglers(&self) -> OperatorPool {
        OperatorPool {
            kind: PoolKind::QccEntangler,
            entries: self.entries.clone(),
        }
    }
}

/// Singlet UCCSD generators, one entry per shared parameter.
pub fn build_fermionic_pool(n_qubits: usize, n_electrons: usize) -> Result<OperatorPool, Error> {
    let b = build_uccsd_singlet(n_qubits, n_electrons)?;
    let mut entries: Vec<PoolEntry> = Vec::new();
    for g in b.generators {
        match entries.last_mut() {
            Some(PoolEntry {
                label,
                operator: PoolOperator::Fermionic(gs),
            }) if *label == g.param_name => gs.push(g),
            _ => entries.push(PoolEntry {
                label: g.param_name.clone(),
                operator: PoolOperator::Fermionic(vec![g]),
            }),
        }
    }
    Ok(OperatorPool {
        kind: PoolKind::FermionicSd,
        entries,
    })
}

/// Splits each fermionic entry into Jordan–Wigner strings, keeps those with
/// an odd number of `Y`, removes every `Z`, and deduplicates. Entries are
/// sorted by string.
pub fn build_qubit_pool(fermionic: &OperatorPool, n_qubits: usize) -> Result<OperatorPool, Error> {
    let mut strings = BTreeSet::new();
    for e in &fermionic.entries {
        for p in e.qubit_generator(n_qubits)?.strings() {
            if p.y_count() % 2 == 1 {
                strings.insert(p.without_z());
            }
        }
    }
    Ok(OperatorPool {
        kind: PoolKind::QubitPauli,
        entries: strings
            .into_iter()
            .map(|p| PoolEntry {
                label: p.to_string(),
                operator: PoolOperator::Pauli(p),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub chosen_label: String,
    /// Norm of the screening gradient before the choice. QCC stores the
    /// magnitude of the best single-entangler energy lowering instead.
    pub gradient_norm: f64,
    pub energy: f64,
    pub n_params: usize,
    pub wall_time: f64,
}

/// Product-state mean field: qubit `q` is `RZ(φ_q) RY(θ_q)|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct QccMeanField {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveTrace {
    pub initial_energy: f64,
    pub steps: Vec<TraceStep>,
    /// Screening value at the last check (zero if none was made).
    pub final_gradient_norm: f64,
    /// `true` if the loop stopped on its own criterion.
    pub converged: bool,
    /// `true` if the iteration cap ended the loop.
    pub truncated: bool,
    pub energy: f64,
    pub values: Vec<f64>,
    pub n_evaluations: usize,
    pub wall_time: f64,
    pub mean_field: Option<QccMeanField>,
}

impl AdaptiveTrace {
    fn new(initial_energy: f64, values: Vec<f64>) -> Self {
        AdaptiveTrace {
            initial_energy,
            steps: Vec::new(),
            final_gradient_norm: 0.0,
            converged: false,
            truncated: false,
            energy: initial_energy,
            values,
            n_evaluations: 0,
            wall_time: 0.0,
            mean_field: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptOptions {
    /// Stop when the screening gradient norm drops below this.
    pub epsilon: f64,
    pub max_iters: usize,
    /// Central finite-difference step for fermionic screening.
    pub fd_step: f64,
    pub optimizer: OptimizerConfig,
}

impl Default for AdaptOptions {
    fn default() -> Self {
        AdaptOptions {
            epsilon: 1e-2,
            max_iters: 100,
            fd_step: 1e-5,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Index of the largest `|g_i|`; the lowest index wins ties.
fn argmax_abs(g: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in g.iter().enumerate() {
        if v.abs() > g[best].abs() {
            best = i;
        }
    }
    best
}

fn norm2(g: &[f64]) -> f64 {
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn adaptive_build(name: &str, circuit: ParamCircuit, gens: Vec<ExcitationGenerator>, conserving: bool, initial_state: usize) -> AnsatzBuild {
    AnsatzBuild {
        name: String::from(name),
        circuit,
        generators: gens,
        particle_conserving: conserving,
        init_policy: InitPolicy::Zeros,
        initial_state,
        restarts: 1,
    }
}

/// Screening by central differences: `(E(+δ) − E(−δ)) / 2δ` after appending
/// `exp(±δA)` to the current state.
pub fn finite_difference_screening(
    h: &PauliSum,
    pool: &[ParamCircuit],
    state: &StateVector,
    step: f64,
) -> Result<Vec<f64>, Error> {
    pool.iter()
        .map(|c| {
            let mut plus = state.clone();
            c.apply_to(&mut plus, &[step])?;
            let mut minus = state.clone();
            c.apply_to(&mut minus, &[-step])?;
            Ok((h.expectation(&plus)? - h.expectation(&minus)?) / (2.0 * step))
        })
        .collect()
}

/// Fermionic ADAPT-VQE starting from the basis state `initial_state`.
///
/// Each iteration screens every pool entry by finite differences, stops if
/// the gradient norm is below `epsilon`, otherwise appends the Trotterized
/// entry with the largest `|g|` as a new parameter starting at zero and
/// re-optimizes all parameters from the previous optimum.
pub fn adapt_vqe(
    h: &QubitOperator,
    n_qubits: usize,
    pool: &OperatorPool,
    initial_state: usize,
    opts: &AdaptOptions,
    clock: &dyn Clock,
) -> Result<(AnsatzBuild, AdaptiveTrace), Error> {
    if !(opts.epsilon > 0.0) {
        return Err(Error::InvalidArgument("ADAPT threshold must be positive".into()));
    }
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let start = clock.seconds();
    let hs = PauliSum::new(h, n_qubits)?;
    let mut screens = Vec::with_capacity(pool.len());
    for e in &pool.entries {
        let mut c = ParamCircuit::new(n_qubits);
        append_generator(&mut c, &e.qubit_generator(n_qubits)?, "probe")?;
        c.add_parameter("probe");
        screens.push(c);
    }
    let mut circuit = ParamCircuit::new(n_qubits);
    let mut gens = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let e0 = hs.expectation(&StateVector::basis(n_qubits, initial_state)?)?;
    let mut trace = AdaptiveTrace::new(e0, Vec::new());
    let mut conserving = true;
    loop {
        let state = circuit.apply(&values, initial_state)?;
        let g = finite_difference_screening(&hs, &screens, &state, opts.fd_step)?;
        let gnorm = norm2(&g);
        trace.final_gradient_norm = gnorm;
        if gnorm < opts.epsilon {
            trace.converged = true;
            break;
        }
        if trace.steps.len() >= opts.max_iters {
            trace.truncated = true;
            break;
        }
        let k = argmax_abs(&g);
        let entry = &pool.entries[k];
        let name = format!("a{}_{}", trace.steps.len(), entry.label);
        append_generator(&mut circuit, &entry.qubit_generator(n_qubits)?, &name)?;
        circuit.add_parameter(&name);
        match &entry.operator {
            PoolOperator::Fermionic(gs) => gens.extend(gs.iter().cloned().map(|mut g| {
                g.param_name = name.clone();
                g
            })),
            PoolOperator::Pauli(_) => conserving = false,
        }
        values.push(0.0);
        let res = optimize_circuit(&circuit, &hs, initial_state, &values, &opts.optimizer, GradientMethod::Adjoint)?;
        trace.n_evaluations += res.n_evals;
        values = res.x;
        trace.energy = res.f;
        trace.steps.push(TraceStep {
            chosen_label: entry.label.clone(),
            gradient_norm: gnorm,
            energy: res.f,
            n_params: circuit.n_params(),
            wall_time: clock.seconds() - start,
        });
    }
    trace.values = values;
    trace.wall_time = clock.seconds() - start;
    Ok((adaptive_build("ADAPT", circuit, gens, conserving, initial_state), trace))
}

/// `∂E/∂θ` at `θ = 0` for appending `exp(iθP)`, for every pool string.
pub fn pauli_screening(h: &PauliSum, pool: &OperatorPool, state: &StateVector) -> Result<Vec<f64>, Error> {
    let h_psi = h.apply(state)?;
    pool.entries
        .iter()
        .map(|e| match &e.operator {
            PoolOperator::Pauli(p) => {
                let mut t = state.clone();
                t.apply_pauli(p);
                Ok(-2.0 * inner(&h_psi, t.amplitudes()).im)
            }
            PoolOperator::Fermionic(_) => Err(Error::InvalidArgument(
                "qubit screening needs a Pauli pool".into(),
            )),
        })
        .collect()
}

/// Qubit-ADAPT: like [`adapt_vqe`] but screening uses the analytic
/// commutator `i⟨ψ|[H, P]|ψ⟩`, each step appends one `exp(iθP)` gate, and
/// re-optimization uses shift-rule gradients.
pub fn qubit_adapt_vqe(
    h: &QubitOperator,
    n_qubits: usize,
    pool: &OperatorPool,
    initial_state: usize,
    opts: &AdaptOptions,
    clock: &dyn Clock,
) -> Result<(AnsatzBuild, AdaptiveTrace), Error> {
    if !(opts.epsilon > 0.0) {
        return Err(Error::InvalidArgument("ADAPT threshold must be positive".into()));
    }
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let start = clock.seconds();
    let hs = PauliSum::new(h, n_qubits)?;
    let mut circuit = ParamCircuit::new(n_qubits);
    let mut values: Vec<f64> = Vec::new();
    let e0 = hs.expectation(&StateVector::basis(n_qubits, initial_state)?)?;
    let mut trace = AdaptiveTrace::new(e0, Vec::new());
    loop {
        let state = circuit.apply(&values, initial_state)?;
        let g = pauli_screening(&hs, pool, &state)?;
        let gnorm = norm2(&g);
        trace.final_gradient_norm = gnorm;
        if gnorm < opts.epsilon {
            trace.converged = true;
            break;
        }
        if trace.steps.len() >= opts.max_iters {
            trace.truncated = true;
            break;
        }
        let k = argmax_abs(&g);
        let entry = &pool.entries[k];
        let PoolOperator::Pauli(p) = entry.operator else {
            unreachable!("screening rejects fermionic entries")
        };
        let name = format!("a{}_{}", trace.steps.len(), entry.label);
        circuit.push_bound(Gate::pauli_evolution(p, Angle::Fixed(0.0)), &name, 1.0);
        values.push(0.0);
        let res = optimize_circuit(&circuit, &hs, initial_state, &values, &opts.optimizer, GradientMethod::ParameterShift)?;
        trace.n_evaluations += res.n_evals;
        values = res.x;
        trace.energy = res.f;
        trace.steps.push(TraceStep {
            chosen_label: entry.label.clone(),
            gradient_norm: gnorm,
            energy: res.f,
            n_params: circuit.n_params(),
            wall_time: clock.seconds() - start,
        });
    }
    trace.values = values;
    trace.wall_time = clock.seconds() - start;
    Ok((adaptive_build("qubit-ADAPT", circuit, Vec::new(), false, initial_state), trace))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QccOptions {
    pub max_entanglers: usize,
    /// Stop when the best candidate lowers the energy by less than this.
    pub improvement_tol: f64,
    /// Stop once within `chem_tol` of `reference`, when one is given.
    pub reference: Option<f64>,
    pub chem_tol: f64,
    /// Coarse grid over `[−π, π]` used to seed the 1-D search.
    pub grid_points: usize,
    pub line_tol: f64,
    pub optimizer: OptimizerConfig,
}

impl Default for QccOptions {
    fn default() -> Self {
        QccOptions {
            max_entanglers: 30,
            improvement_tol: 1e-6,
            reference: None,
            chem_tol: CHEMICAL_ACCURACY,
            grid_points: 17,
            line_tol: 1e-6,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Minimum over `τ` of `A cos²τ + B sin²τ + C sin 2τ`, the energy after
/// `exp(iτP)`, found by a coarse grid followed by golden-section refinement.
fn entangler_minimum(a: f64, b: f64, c: f64, opts: &QccOptions) -> Result<(f64, f64), Error> {
    let e = |t: f64| {
        let (s, co) = t.sin_cos();
        a * co * co + b * s * s + 2.0 * c * s * co
    };
    let n = opts.grid_points.max(3);
    let h = 2.0 * PI / (n - 1) as f64;
    let mut best = (0.0, e(0.0));
    for k in 0..n {
        let t = -PI + h * k as f64;
        let v = e(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    let refined = golden_section(|t| Ok(e(t)), best.0 - h, best.0 + h, opts.line_tol)?;
    Ok(if refined.1 < best.1 { refined } else { best })
}

/// Iterative qubit coupled cluster.
///
/// The mean field (an RY·RZ pair per qubit, started at the Hartree–Fock
/// occupation) is optimized first. Each round ranks every entangler by the
/// energy lowering of `exp(iτP)` alone with everything else frozen, appends
/// the best one at its optimal `τ`, and re-optimizes all parameters.
pub fn qcc_optimize(
    h: &QubitOperator,
    n_qubits: usize,
    n_electrons: usize,
    pool: &OperatorPool,
    opts: &QccOptions,
    clock: &dyn Clock,
) -> Result<(AnsatzBuild, AdaptiveTrace), Error> {
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    if n_electrons > n_qubits {
        return Err(Error::InvalidArgument("more electrons than qubits".into()));
    }
    let start = clock.seconds();
    let hs = PauliSum::new(h, n_qubits)?;
    let mut circuit = ParamCircuit::new(n_qubits);
    let mut values = Vec::new();
    for q in 0..n_qubits {
        circuit.push_bound(Gate::new(GateKind::RY, vec![q], None), &format!("mf_theta_{q}"), 1.0);
        circuit.push_bound(Gate::new(GateKind::RZ, vec![q], None), &format!("mf_phi_{q}"), 1.0);
        values.push(if q < n_electrons { PI } else { 0.0 });
        values.push(0.0);
    }
    let e_start = hs.expectation(&circuit.apply(&values, 0)?)?;
    let mut trace = AdaptiveTrace::new(e_start, Vec::new());
    let res = optimize_circuit(&circuit, &hs, 0, &values, &opts.optimizer, GradientMethod::Adjoint)?;
    trace.n_evaluations += res.n_evals;
    values = res.x;
    trace.energy = res.f;
    trace.mean_field = Some(QccMeanField {
        thetas: values.iter().step_by(2).copied().collect(),
        phis: values.iter().skip(1).step_by(2).copied().collect(),
    });
    let reached = |e: f64| opts.reference.is_some_and(|r| (e - r).abs() < opts.chem_tol);
    loop {
        if reached(trace.energy) {
            trace.converged = true;
            break;
        }
        if trace.steps.len() >= opts.max_entanglers {
            trace.truncated = true;
            break;
        }
        let state = circuit.apply(&values, 0)?;
        let h_psi = hs.apply(&state)?;
        let e_now = inner(state.amplitudes(), &h_psi).re;
        let mut best: Option<(usize, f64, f64)> = None;
        for (k, entry) in pool.entries.iter().enumerate() {
            let PoolOperator::Pauli(p) = entry.operator else {
                return Err(Error::InvalidArgument("QCC needs a Pauli pool".into()));
            };
            let mut t = state.clone();
            t.apply_pauli(&p);
            let ht = hs.apply(&t)?;
            let b = inner(t.amplitudes(), &ht).re;
            let c = -inner(&h_psi, t.amplitudes()).im;
            let (tau, e_min) = entangler_minimum(e_now, b, c, opts)?;
            let delta = e_min - e_now;
            if best.map_or(true, |(_, d, _)| delta < d) {
                best = Some((k, delta, tau));
            }
        }
        let (k, delta, tau) = best.expect("pool is nonempty");
        trace.final_gradient_norm = delta.abs();
        if -delta < opts.improvement_tol {
            trace.converged = true;
            break;
        }
        let entry = &pool.entries[k];
        let PoolOperator::Pauli(p) = entry.operator else { unreachable!() };
        let name = format!("e{}_{}", trace.steps.len(), entry.label);
        circuit.push_bound(Gate::pauli_evolution(p, Angle::Fixed(0.0)), &name, 1.0);
        values.push(tau);
        let res = optimize_circuit(&circuit, &hs, 0, &values, &opts.optimizer, GradientMethod::Adjoint)?;
        trace.n_evaluations += res.n_evals;
        values = res.x;
        trace.energy = res.f;
        trace.steps.push(TraceStep {
            chosen_label: entry.label.clone(),
            gradient_norm: delta.abs(),
            energy: res.f,
            n_params: circuit.n_params(),
            wall_time: clock.seconds() - start,
        });
    }
    trace.values = values;
    trace.wall_time = clock.seconds() - start;
    Ok((adaptive_build("QCC", circuit, Vec::new(), false, 0), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::NoClock;
    use crate::sim::{commutator_gradient, GeneratorForm};

    #[test]
    fn fermionic_pool_matches_uccsd() {
        let pool = build_fermionic_pool(4, 2).unwrap();
        assert_eq!(pool.len(), 2);
        for (nq, ne) in [(8, 4), (12, 4)] {
            assert_eq!(
                build_fermionic_pool(nq, ne).unwrap().len(),
                build_uccsd_singlet(nq, ne).unwrap().n_params()
            );
        }
        for e in &pool.entries {
            let img = e.qubit_generator(4).unwrap();
            assert!(img.is_anti_hermitian(1e-12));
            assert!(img.strings().all(|p| p.y_count() % 2 == 1));
        }
    }

    fn labels(pool: &OperatorPool) -> Vec<String> {
        pool.entries.iter().map(|e| e.label.clone()).collect()
    }

    #[test]
    fn qubit_pool_strips_parity_strings() {
        use crate::fermion::{FermionOperator, Ladder};
        let single = |a: usize, i: usize| OperatorPool {
            kind: PoolKind::FermionicSd,
            entries: vec![PoolEntry {
                label: "s".into(),
                operator: PoolOperator::Fermionic(vec![ExcitationGenerator {
                    kind: super::super::ExcitationKind::Single,
                    orbitals: vec![a, i],
                    excitation: FermionOperator::from_term(
                        &[Ladder::create(a), Ladder::annihilate(i)],
                        Complex64::new(1.0, 0.0),
                    ),
                    param_name: "s".into(),
                    prefactor: 1.0,
                }]),
            }],
        };
        assert_eq!(labels(&build_qubit_pool(&single(1, 0), 4).unwrap()), ["X0 Y1", "Y0 X1"]);
        assert_eq!(labels(&build_qubit_pool(&single(3, 0), 4).unwrap()), ["X0 Y3", "Y0 X3"]);
        let pool = build_qubit_pool(&build_fermionic_pool(8, 4).unwrap(), 8).unwrap();
        for e in &pool.entries {
            let PoolOperator::Pauli(p) = e.operator else { panic!() };
            assert_eq!(p.y_count() % 2, 1);
            assert_eq!(p.z_count(), 0);
        }
    }

    #[test]
    fn huge_threshold_stops_immediately() {
        let h = QubitOperator::from_real("Z0 Z1".parse().unwrap(), -1.0);
        let pool = build_fermionic_pool(4, 2).unwrap();
        let opts = AdaptOptions {
            epsilon: 1e3,
            ..Default::default()
        };
        let (b, t) = adapt_vqe(&h, 4, &pool, 0b0011, &opts, &NoClock).unwrap();
        assert!(t.steps.is_empty() && t.converged);
        assert_eq!(b.n_params(), 0);
        assert_eq!(t.energy, -1.0);
    }

    #[test]
    fn commuting_pool_stops_at_start() {
        let h = QubitOperator::from_real("Z0".parse().unwrap(), 1.0);
        let pool = OperatorPool {
            kind: PoolKind::QubitPauli,
            entries: vec![PoolEntry {
                label: "Z0".into(),
                operator: PoolOperator::Pauli("Z0".parse().unwrap()),
            }],
        };
        let (b, t) = qubit_adapt_vqe(&h, 1, &pool, 0, &AdaptOptions::default(), &NoClock).unwrap();
        assert!(t.converged && t.steps.is_empty());
        assert_eq!(b.circuit.gates.len(), 0);
    }

    #[test]
    fn finite_differences_match_commutator() {
        // an entangled 4-qubit state and a small Hamiltonian
        let mut h = QubitOperator::zero();
        for (s, c) in [("Z0 Z1", 0.4), ("X0 X1 Y2 Y3", 0.2), ("Z2", -0.3), ("Y0 Y1 X2 X3", 0.1), ("Z1 Z3", 0.25)] {
            h.add_term(s.parse().unwrap(), Complex64::new(c, 0.0));
        }
        let hs = PauliSum::new(&h, 4).unwrap();
        let pool = build_fermionic_pool(4, 2).unwrap();
        let mut state = StateVector::basis(4, 0b0011).unwrap();
        state.apply_givens(0, 2, 0.3);
        state.apply_givens(1, 3, -0.2);
        state.apply_pauli_evolution(&"X0 X1 X2 Y3".parse().unwrap(), 0.17);
        let mut circuits = Vec::new();
        for e in &pool.entries {
            let mut c = ParamCircuit::new(4);
            append_generator(&mut c, &e.qubit_generator(4).unwrap(), "p").unwrap();
            circuits.push(c);
        }
        let fd = finite_difference_screening(&hs, &circuits, &state, 1e-5).unwrap();
        for (e, g) in pool.entries.iter().zip(&fd) {
            let tau = e.qubit_generator(4).unwrap();
            let exact = commutator_gradient(&hs, &tau, GeneratorForm::AntiHermitian, &state).unwrap();
            assert!((exact - g).abs() < 1e-4, "{} {} {}", e.label, exact, g);
        }
    }

    #[test]
    fn qcc_product_ground_state() {
        let h = QubitOperator::from_real("Z0".parse().unwrap(), -1.0);
        let pool = OperatorPool {
            kind: PoolKind::QccEntangler,
            entries: vec![PoolEntry {
                label: "Y0".into(),
                operator: PoolOperator::Pauli("Y0".parse().unwrap()),
            }],
        };
        let (b, t) = qcc_optimize(&h, 1, 0, &pool, &QccOptions::default(), &NoClock).unwrap();
        assert!((t.energy + 1.0).abs() < 1e-12);
        assert!(t.steps.is_empty());
        assert_eq!(b.n_params(), 2);
        let mf = t.mean_field.unwrap();
        assert_eq!(mf.thetas.len() + mf.phis.len(), 2);
        assert!(mf.thetas[0].abs() < 1e-8);
    }

    #[test]
    fn qcc_rejects_empty_pool() {
        let pool = OperatorPool {
            kind: PoolKind::QccEntangler,
            entries: vec![],
        };
        assert!(matches!(
            qcc_optimize(&QubitOperator::identity(), 1, 0, &pool, &QccOptions::default(), &NoClock),
            Err(Error::EmptyPool)
        ));
    }

    #[test]
    fn entangler_minimum_is_exact() {
        let opts = QccOptions::default();
        // A cos² + B sin² + C sin 2τ has minimum (A+B)/2 − sqrt(((A−B)/2)² + C²)
        for (a, b, c) in [(0.3, -0.2, 0.4), (-1.0, 1.0, 0.0), (0.1, 0.1, -0.05)] {
            let (_, e) = entangler_minimum(a, b, c, &opts).unwrap();
            let want = (a + b) / 2.0 - (((a - b) / 2.0f64).powi(2) + c * c).sqrt();
            assert!((e - want).abs() < 1e-10, "{e} vs {want}");
        }
    }
}
