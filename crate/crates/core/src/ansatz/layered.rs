//! Layered ansatzes: hardware-efficient, low-depth circuit ansatz (LDCA)
//! and basis-rotation circuits (BRC).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{AnsatzBuild, InitPolicy};
use crate::pauli::{Pauli, PauliString};
use crate::sim::{Angle, Gate, GateKind, ParamCircuit};
use crate::Error;

/// Restarts per depth in the layer-growth protocol.
pub const HEA_RESTARTS: usize = 10;
pub const LDCA_RESTARTS: usize = 20;
pub const BRC_RESTARTS: usize = 20;

fn rotation_layer(c: &mut ParamCircuit, n_qubits: usize, layer: usize) {
    for q in 0..n_qubits {
        c.push_bound(Gate::new(GateKind::RY, vec![q], None), &format!("l{layer}_ry_{q}"), 1.0);
        c.push_bound(Gate::new(GateKind::RZ, vec![q], None), &format!("l{layer}_rz_{q}"), 1.0);
    }
}

/// Hardware-efficient ansatz: an RY·RZ layer on every qubit, then `depth`
/// repetitions of a nearest-neighbour CNOT chain followed by another
/// rotation layer. Applied to `|0…0⟩` unless the caller changes
/// `initial_state`.
pub fn build_hea(n_qubits: usize, depth: usize) -> AnsatzBuild {
    let mut c = ParamCircuit::new(n_qubits);
    rotation_layer(&mut c, n_qubits, 0);
    for layer in 1..=depth {
        for q in 0..n_qubits.saturating_sub(1) {
            c.push(Gate::new(GateKind::CNOT, vec![q, q + 1], None));
        }
        rotation_layer(&mut c, n_qubits, layer);
    }
    AnsatzBuild {
        name: String::from("HEA"),
        circuit: c,
        generators: Vec::new(),
        particle_conserving: false,
        init_policy: InitPolicy::Uniform { lo: 0.0, hi: 2.0 * PI },
        initial_state: 0,
        restarts: HEA_RESTARTS,
    }
}

const MATCHGATE_TERMS: [(Pauli, Pauli, &str); 5] = [
    (Pauli::X, Pauli::X, "xx"),
    (Pauli::Y, Pauli::Y, "yy"),
    (Pauli::Z, Pauli::Z, "zz"),
    (Pauli::X, Pauli::Y, "xy"),
    (Pauli::Y, Pauli::X, "yx"),
];

/// Low-depth circuit ansatz: `cycles` cycles of `⌈n/2⌉` layers, each layer a
/// matchgate block on every even pair then every odd pair, followed by one
/// RZ per qubit. A block is `exp(iθP)` for `P` in XX, YY, ZZ, XY, YX, each
/// with its own parameter.
pub fn build_ldca(n_qubits: usize, cycles: usize) -> Result<AnsatzBuild, Error> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument("LDCA needs at least 2 qubits".into()));
    }
    if cycles == 0 {
        return Err(Error::InvalidArgument("LDCA needs at least one cycle".into()));
    }
    let mut c = ParamCircuit::new(n_qubits);
    let layers = n_qubits.div_ceil(2);
    for cycle in 0..cycles {
        for layer in 0..layers {
            for start in [0, 1] {
                for a in (start..n_qubits - 1).step_by(2) {
                    let b = a + 1;
                    for (pa, pb, tag) in MATCHGATE_TERMS {
                        let p = PauliString::from_ops([(a, pa), (b, pb)])?;
                        c.push_bound(
                            Gate::pauli_evolution(p, Angle::Fixed(0.0)),
                            &format!("c{cycle}_l{layer}_{a}_{b}_{tag}"),
                            1.0,
                        );
                    }
                }
            }
        }
    }
    for q in 0..n_qubits {
        c.push_bound(Gate::new(GateKind::RZ, vec![q], None), &format!("phase_{q}"), 1.0);
    }
    Ok(AnsatzBuild {
        name: String::from("LDCA"),
        circuit: c,
        generators: Vec::new(),
        particle_conserving: false,
        init_policy: InitPolicy::Uniform { lo: 0.0, hi: 2.0 * PI },
        initial_state: 0,
        restarts: LDCA_RESTARTS,
    })
}

/// Givens network positions `(row, step)` in execution order. Row `r` walks
/// the particle initially in mode `r` through pairs `(r + j, r + j + 1)`.
fn brc_schedule(n_modes: usize, n_electrons: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for r in (0..n_electrons).rev() {
        for j in 0..n_modes - n_electrons {
            let layer = 2 * (n_electrons - 1 - r) + j;
            slots.push((layer, r, j));
        }
    }
    slots.sort();
    slots.into_iter().map(|(_, r, j)| (r, j)).collect()
}

fn check_brc(n_modes: usize, n_electrons: usize) -> Result<(), Error> {
    if n_electrons == 0 || n_electrons >= n_modes {
        return Err(Error::InvalidArgument(format!(
            "basis rotation needs 0 < electrons < modes, got {n_electrons} of {n_modes}"
        )));
    }
    Ok(())
}

fn brc_build(circuit: ParamCircuit, initial_state: usize) -> AnsatzBuild {
    AnsatzBuild {
        name: String::from("BRC"),
        circuit,
        generators: Vec::new(),
        particle_conserving: true,
        init_policy: InitPolicy::Uniform { lo: -PI, hi: PI },
        initial_state,
        restarts: BRC_RESTARTS,
    }
}

/// Basis-rotation circuit on `n_modes` qubits: `η(N − η)` Givens rotations
/// between adjacent modes, applied to the state with the lowest `η` modes
/// filled.
pub fn build_brc(n_modes: usize, n_electrons: usize) -> Result<AnsatzBuild, Error> {
    check_brc(n_modes, n_electrons)?;
    let mut c = ParamCircuit::new(n_modes);
    for (r, j) in brc_schedule(n_modes, n_electrons) {
        c.push_bound(
            Gate::givens(r + j, r + j + 1, Angle::Fixed(0.0)),
            &format!("g_{r}_{j}"),
            1.0,
        );
    }
    Ok(brc_build(c, (1usize << n_electrons) - 1))
}

/// Spin-adapted basis rotation for a closed-shell molecule: the same Givens
/// network on the spin-up qubits `2p` and the spin-down qubits `2p + 1`,
/// sharing parameters. The count is `η(N − η)` with `N` spatial orbitals and
/// `η` electrons per spin.
pub fn build_brc_spin_adapted(n_qubits: usize, n_electrons: usize) -> Result<AnsatzBuild, Error> {
    super::check_closed_shell(n_qubits, n_electrons)?;
    let n_spatial = n_qubits / 2;
    let eta = n_electrons / 2;
    check_brc(n_spatial, eta)?;
    let mut c = ParamCircuit::new(n_qubits);
    for (r, j) in brc_schedule(n_spatial, eta) {
        let name = format!("g_{r}_{j}");
        let (p, q) = (r + j, r + j + 1);
        for spin in 0..2 {
            c.push_bound(
                Gate::givens(2 * p + spin, 2 * q + spin, Angle::Fixed(0.0)),
                &name,
                1.0,
            );
        }
    }
    Ok(brc_build(c, (1usize << n_electrons) - 1))
}

/// Five-gate decomposition of the Givens rotation on qubits `(0, 1)` into
/// two `√iSWAP` and three Z rotations, in execution order.
pub fn givens_compilation(theta: f64) -> Vec<Gate> {
    vec![
        Gate::rz(0, Angle::Fixed(-PI)),
        Gate::sqrt_iswap(0, 1),
        Gate::rz(0, Angle::Fixed(PI - theta)),
        Gate::rz(1, Angle::Fixed(theta)),
        Gate::sqrt_iswap(0, 1),
    ]
}
