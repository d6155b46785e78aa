//! Fixed-circuit unitary coupled-cluster families.
//!
//! Spatial orbital `p` owns spin orbitals `2p` (up) and `2p + 1` (down).
//! Occupied spatial orbitals are `0..n_electrons / 2`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{
    check_closed_shell, prune_generators, trotterize, AnsatzBuild, ExcitationGenerator,
    ExcitationKind, InitPolicy,
};
use crate::fermion::{FermionOperator, Ladder};
use crate::hamiltonian::hf_state_index;
use crate::Error;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Restarts for the randomly initialized generalized ansatz.
pub const KUPCCGSD_RESTARTS: usize = 10;

fn so(p: usize, spin: usize) -> usize {
    2 * p + spin
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn product(creators: &[usize], annihilators: &[usize]) -> FermionOperator {
    let factors: Vec<Ladder> = creators
        .iter()
        .map(|&m| Ladder::create(m))
        .chain(annihilators.iter().map(|&m| Ladder::annihilate(m)))
        .collect();
    FermionOperator::from_term(&factors, one())
}

fn generator(
    kind: ExcitationKind,
    orbitals: Vec<usize>,
    excitation: FermionOperator,
    name: &str,
) -> ExcitationGenerator {
    ExcitationGenerator {
        kind,
        orbitals,
        excitation,
        param_name: String::from(name),
        prefactor: 1.0,
    }
}

/// One generator per normal-ordered term of `op`, all bound to `name` with
/// the term's coefficient as prefactor. Keeping elementary excitations apart
/// lets each one Trotterize into mutually commuting strings.
fn split_terms(kind: ExcitationKind, op: &FermionOperator, name: &str) -> Vec<ExcitationGenerator> {
    op.iter()
        .map(|(factors, c)| {
            debug_assert!(c.im.abs() < 1e-12);
            let mut g = generator(
                kind,
                factors.iter().map(|l| l.mode).collect(),
                FermionOperator::from_term(factors, one()),
                name,
            );
            g.prefactor = c.re;
            g
        })
        .collect()
}

fn fixed_build(
    name: &str,
    gens: Vec<ExcitationGenerator>,
    n_qubits: usize,
    n_electrons: usize,
    init_policy: InitPolicy,
    restarts: usize,
) -> Result<AnsatzBuild, Error> {
    let gens = prune_generators(gens);
    let circuit = trotterize(&gens, n_qubits)?;
    Ok(AnsatzBuild {
        name: String::from(name),
        circuit,
        generators: gens,
        particle_conserving: true,
        init_policy,
        initial_state: hf_state_index(n_qubits, n_electrons),
        restarts,
    })
}

/// Spatial `(occupied, virtual)` single excitations, occupied index major.
fn spatial_singles(n_spatial: usize, n_occ: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n_occ {
        for a in n_occ..n_spatial {
            out.push((i, a));
        }
    }
    out
}

/// Spin-summed singles `Σ_σ a†_{aσ} a_{iσ}`, one parameter per spatial pair.
fn singlet_singles(n_spatial: usize, n_occ: usize) -> Vec<ExcitationGenerator> {
    let mut gens = Vec::new();
    for (i, a) in spatial_singles(n_spatial, n_occ) {
        let name = format!("s_{i}_{a}");
        for spin in 0..2 {
            let (aa, ii) = (so(a, spin), so(i, spin));
            gens.push(generator(
                ExcitationKind::Single,
                vec![aa, ii],
                product(&[aa], &[ii]),
                &name,
            ));
        }
    }
    gens
}

/// Spin-adapted (singlet) UCCSD.
///
/// Singles share one parameter across both spins. Doubles are keyed by an
/// unordered pair of spatial singles `(i→a, j→b)` and collect every
/// spin-preserving assignment `a†_{aσ} a_{iσ} a†_{bτ} a_{jτ}` that does not
/// repeat a spin orbital.
pub fn build_uccsd_singlet(n_qubits: usize, n_electrons: usize) -> Result<AnsatzBuild, Error> {
    check_closed_shell(n_qubits, n_electrons)?;
    let n_spatial = n_qubits / 2;
    let n_occ = n_electrons / 2;
    let mut gens = singlet_singles(n_spatial, n_occ);
    let singles = spatial_singles(n_spatial, n_occ);
    for s1 in 0..singles.len() {
        for s2 in s1..singles.len() {
            let (i, a) = singles[s1];
            let (j, b) = singles[s2];
            let name = format!("d_{i}_{a}_{j}_{b}");
            if s1 == s2 {
                let orbs = [so(a, 0), so(i, 0), so(a, 1), so(i, 1)];
                let op = &product(&[orbs[0]], &[orbs[1]]) * &product(&[orbs[2]], &[orbs[3]]);
                gens.push(generator(ExcitationKind::Double, orbs.to_vec(), op, &name));
                continue;
            }
            for sigma in 0..2 {
                for tau in 0..2 {
                    let (aa, ii) = (so(a, sigma), so(i, sigma));
                    let (bb, jj) = (so(b, tau), so(j, tau));
                    if aa == bb || ii == jj {
                        continue;
                    }
                    let op = &product(&[aa], &[ii]) * &product(&[bb], &[jj]);
                    gens.push(generator(ExcitationKind::Double, vec![aa, bb, ii, jj], op, &name));
                }
            }
        }
    }
    fixed_build("UCCSD", gens, n_qubits, n_electrons, InitPolicy::Zeros, 1)
}

/// Singlet pair creator on spatial orbitals `p ≤ q`.
fn singlet_pair(p: usize, q: usize) -> FermionOperator {
    if p == q {
        return product(&[so(p, 0), so(p, 1)], &[]);
    }
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut op = FermionOperator::zero();
    op.add_term(&[Ladder::create(so(p, 0)), Ladder::create(so(q, 1))], Complex64::new(r, 0.0));
    op.add_term(&[Ladder::create(so(q, 0)), Ladder::create(so(p, 1))], Complex64::new(r, 0.0));
    op
}

/// Triplet pair creators `m = +1, 0, −1` on spatial orbitals `p < q`.
fn triplet_pair(p: usize, q: usize) -> [FermionOperator; 3] {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut zero = FermionOperator::zero();
    zero.add_term(&[Ladder::create(so(p, 0)), Ladder::create(so(q, 1))], Complex64::new(r, 0.0));
    zero.add_term(&[Ladder::create(so(q, 0)), Ladder::create(so(p, 1))], Complex64::new(-r, 0.0));
    [
        product(&[so(p, 0), so(q, 0)], &[]),
        zero,
        product(&[so(p, 1), so(q, 1)], &[]),
    ]
}

/// UCCSD with doubles written in the pair basis.
///
/// Singles match [`build_uccsd_singlet`]. Each double moves a singlet pair
/// `P_ij → P_ab` (`i ≤ j`, `a ≤ b`) or a triplet pair `Σ_m Q†_{ab,m} Q_{ij,m}`
/// (`i < j`, `a < b`), one parameter per channel, so the parameter count is
/// the same as singlet UCCSD.
pub fn build_uccsd0(n_qubits: usize, n_electrons: usize) -> Result<AnsatzBuild, Error> {
    check_closed_shell(n_qubits, n_electrons)?;
    let n_spatial = n_qubits / 2;
    let n_occ = n_electrons / 2;
    let mut gens = singlet_singles(n_spatial, n_occ);
    for i in 0..n_occ {
        for j in i..n_occ {
            for a in n_occ..n_spatial {
                for b in a..n_spatial {
                    let op = &singlet_pair(a, b) * &singlet_pair(i, j).adjoint();
                    gens.extend(split_terms(ExcitationKind::Double, &op, &format!("ps_{i}_{j}_{a}_{b}")));
                    if i < j && a < b {
                        let up = triplet_pair(a, b);
                        let down = triplet_pair(i, j);
                        let mut op = FermionOperator::zero();
                        for (c, d) in up.iter().zip(down.iter()) {
                            op = &op + &(c * &d.adjoint());
                        }
                        gens.extend(split_terms(ExcitationKind::Double, &op, &format!("pt_{i}_{j}_{a}_{b}")));
                    }
                }
            }
        }
    }
    fixed_build("UCCSD0", gens, n_qubits, n_electrons, InitPolicy::Zeros, 1)
}

/// k-fold unitary pair coupled cluster with generalized singles and doubles.
///
/// Each block carries, for every spatial pair `P < Q`, a spin-summed
/// generalized single `Σ_σ a†_{Qσ} a_{Pσ}` and a paired double
/// `a†_{Qα} a†_{Qβ} a_{Pβ} a_{Pα}`, each with its own parameter.
pub fn build_kupccgsd(n_qubits: usize, n_electrons: usize, k: usize) -> Result<AnsatzBuild, Error> {
    check_closed_shell(n_qubits, n_electrons)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k-UpCCGSD needs k >= 1".into()));
    }
    let n_spatial = n_qubits / 2;
    let mut gens = Vec::new();
    for block in 0..k {
        for p in 0..n_spatial {
            for q in p + 1..n_spatial {
                let mut op = FermionOperator::zero();
                for spin in 0..2 {
                    op.add_term(
                        &[Ladder::create(so(q, spin)), Ladder::annihilate(so(p, spin))],
                        one(),
                    );
                }
                gens.extend(split_terms(ExcitationKind::GeneralizedSingle, &op, &format!("k{block}_g_{p}_{q}")));
            }
        }
        for p in 0..n_spatial {
            for q in p + 1..n_spatial {
                let orbs = [so(q, 0), so(q, 1), so(p, 1), so(p, 0)];
                gens.push(generator(
                    ExcitationKind::PairedDouble,
                    orbs.to_vec(),
                    product(&orbs[..2], &orbs[2..]),
                    &format!("k{block}_p_{p}_{q}"),
                ));
            }
        }
    }
    fixed_build(
        &format!("{k}-UpCCGSD"),
        gens,
        n_qubits,
        n_electrons,
        InitPolicy::Uniform { lo: 0.0, hi: TWO_PI },
        KUPCCGSD_RESTARTS,
    )
}

/// Qubit UCCSD: spin-preserving singles and doubles built from qubit
/// excitation operators, one parameter per spin-orbital excitation.
pub fn build_qucc(n_qubits: usize, n_electrons: usize) -> Result<AnsatzBuild, Error> {
    check_closed_shell(n_qubits, n_electrons)?;
    let occ = 0..n_electrons;
    let virt = n_electrons..n_qubits;
    let mut gens = Vec::new();
    for i in occ.clone() {
        for a in virt.clone() {
            if i % 2 == a % 2 {
                gens.push(generator(
                    ExcitationKind::QubitSingle,
                    vec![a, i],
                    product(&[a], &[i]),
                    &format!("q_{i}_{a}"),
                ));
            }
        }
    }
    for i in occ.clone() {
        for j in i + 1..n_electrons {
            for a in virt.clone() {
                for b in a + 1..n_qubits {
                    if (i % 2) + (j % 2) != (a % 2) + (b % 2) {
                        continue;
                    }
                    gens.push(generator(
                        ExcitationKind::QubitDouble,
                        vec![a, b, i, j],
                        product(&[a, b], &[i, j]),
                        &format!("q_{i}_{j}_{a}_{b}"),
                    ));
                }
            }
        }
    }
    fixed_build("QUCC", gens, n_qubits, n_electrons, InitPolicy::Zeros, 1)
}
