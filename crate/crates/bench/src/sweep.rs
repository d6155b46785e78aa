//! Molecule × ansatz × bond-length sweeps.

use std::fmt;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use vqe_core::ansatz::{
    adapt_vqe, build_brc_spin_adapted, build_fermionic_pool, build_kupccgsd, build_ldca,
    build_qubit_pool, build_qucc, build_uccsd0, build_uccsd_singlet, qcc_optimize,
    qubit_adapt_vqe, AdaptOptions, AdaptiveTrace, QccOptions,
};
use vqe_core::driver::{derive_seed, label_hash, run_hea_layer_growth, run_vqe, Clock, LayerGrowthOptions};
use vqe_core::exact::{exact_ground_energy, Sector};
use vqe_core::hamiltonian::{build_qubit_hamiltonian, hf_energy, hf_state_index};
use vqe_core::optimize::OptimizerConfig;
use vqe_core::QubitOperator;

use crate::fcidump::load_fcidump;
use crate::molecule::{bond_key, MoleculeSpec};
use crate::record::{BenchRecord, TraceEntry};
use crate::BenchError;

/// Wall-clock seconds since construction.
#[derive(Clone, Copy, Debug)]
pub struct StdClock(Instant);

impl StdClock {
    pub fn new() -> Self {
        StdClock(Instant::now())
    }
}

impl Default for StdClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for StdClock {
    fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// LDCA cycles used by the harness.
pub const LDCA_CYCLES: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzKind {
    Uccsd,
    Uccsd0,
    KUpCCGSD(usize),
    Qucc,
    Hea,
    Ldca,
    Brc,
    Adapt,
    QubitAdapt,
    Qcc,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 10] = [
        AnsatzKind::Uccsd,
        AnsatzKind::Uccsd0,
        AnsatzKind::KUpCCGSD(1),
        AnsatzKind::Qucc,
        AnsatzKind::Hea,
        AnsatzKind::Ldca,
        AnsatzKind::Brc,
        AnsatzKind::Adapt,
        AnsatzKind::QubitAdapt,
        AnsatzKind::Qcc,
    ];

    pub fn is_adaptive(self) -> bool {
        matches!(self, AnsatzKind::Adapt | AnsatzKind::QubitAdapt | AnsatzKind::Qcc)
    }

    /// Fixed-structure families whose parameter count depends only on the
    /// molecule, not on the geometry.
    pub fn is_fixed_circuit(self) -> bool {
        matches!(
            self,
            AnsatzKind::Uccsd
                | AnsatzKind::Uccsd0
                | AnsatzKind::KUpCCGSD(_)
                | AnsatzKind::Qucc
                | AnsatzKind::Ldca
                | AnsatzKind::Brc
        )
    }
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnsatzKind::Uccsd => f.write_str("UCCSD"),
            AnsatzKind::Uccsd0 => f.write_str("UCCSD0"),
            AnsatzKind::KUpCCGSD(k) => write!(f, "{k}-UpCCGSD"),
            AnsatzKind::Qucc => f.write_str("QUCC"),
            AnsatzKind::Hea => f.write_str("HEA"),
            AnsatzKind::Ldca => f.write_str("LDCA"),
            AnsatzKind::Brc => f.write_str("BRC"),
            AnsatzKind::Adapt => f.write_str("ADAPT"),
            AnsatzKind::QubitAdapt => f.write_str("qubit-ADAPT"),
            AnsatzKind::Qcc => f.write_str("QCC"),
        }
    }
}

impl FromStr for AnsatzKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let upper = s.trim().to_ascii_uppercase();
        let kind = match upper.as_str() {
            "UCCSD" => AnsatzKind::Uccsd,
            "UCCSD0" => AnsatzKind::Uccsd0,
            "QUCC" => AnsatzKind::Qucc,
            "HEA" => AnsatzKind::Hea,
            "LDCA" => AnsatzKind::Ldca,
            "BRC" => AnsatzKind::Brc,
            "ADAPT" => AnsatzKind::Adapt,
            "QUBIT-ADAPT" => AnsatzKind::QubitAdapt,
            "QCC" => AnsatzKind::Qcc,
            other => match other.strip_suffix("-UPCCGSD").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => AnsatzKind::KUpCCGSD(k),
                _ => return Err(BenchError::UnknownAnsatz(s.to_string())),
            },
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub optimizer: OptimizerConfig,
    pub threads: usize,
    pub adapt: AdaptOptions,
    /// `reference` is filled per point with the FCI energy.
    pub qcc: QccOptions,
    pub hea: LayerGrowthOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            optimizer: OptimizerConfig::default(),
            threads: 4,
            adapt: AdaptOptions::default(),
            qcc: QccOptions::default(),
            hea: LayerGrowthOptions::default(),
        }
    }
}

/// Hamiltonian and reference energies at one geometry.
#[derive(Clone, Debug)]
pub struct PointSystem {
    pub bond: f64,
    pub hamiltonian: QubitOperator,
    pub n_qubits: usize,
    pub n_electrons: usize,
    pub fci: f64,
    pub hf: f64,
}

pub fn load_point(spec: &MoleculeSpec, bond: f64) -> Result<PointSystem, BenchError> {
    let path = spec.path(bond).ok_or(BenchError::UnknownBondLength(bond))?;
    let data = load_fcidump(path)?;
    let n_qubits = data.n_qubits();
    let h = build_qubit_hamiltonian(&data)?;
    let sector = Sector {
        n_electrons: data.n_electrons,
        ms2: None,
    };
    let fci = exact_ground_energy(&h, n_qubits, Some(sector))?;
    let hf = hf_energy(&h, n_qubits, data.n_electrons)?;
    Ok(PointSystem {
        bond,
        hamiltonian: h,
        n_qubits,
        n_electrons: data.n_electrons,
        fci,
        hf,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub energy: f64,
    pub runtime: f64,
    pub n_params: usize,
    pub n_evaluations: usize,
    pub converged: bool,
    pub trace: Option<Vec<TraceEntry>>,
}

fn trace_entries(t: &AdaptiveTrace) -> Vec<TraceEntry> {
    t.steps
        .iter()
        .map(|s| TraceEntry {
            chosen_label: s.chosen_label.clone(),
            gradient_norm: s.gradient_norm,
            energy: s.energy,
            n_params: s.n_params,
            wall_time: s.wall_time,
        })
        .collect()
}

/// Builds and optimizes one ansatz on one geometry.
pub fn run_ansatz(kind: AnsatzKind, sys: &PointSystem, cfg: &SweepConfig, seed: u64) -> Result<PointResult, BenchError> {
    let clock = StdClock::new();
    let (n, ne, h) = (sys.n_qubits, sys.n_electrons, &sys.hamiltonian);
    let hf_index = hf_state_index(n, ne);
    let fixed = |build: vqe_core::ansatz::AnsatzBuild| -> Result<PointResult, BenchError> {
        let r = run_vqe(&build, h, &cfg.optimizer, seed, &clock)?;
        Ok(PointResult {
            energy: r.energy,
            runtime: clock.seconds(),
            n_params: build.n_params(),
            n_evaluations: r.n_evaluations,
            converged: r.converged,
            trace: None,
        })
    };
    let adaptive = |(build, t): (vqe_core::ansatz::AnsatzBuild, AdaptiveTrace)| PointResult {
        energy: t.energy,
        runtime: clock.seconds(),
        n_params: build.n_params(),
        n_evaluations: t.n_evaluations,
        converged: t.converged,
        trace: Some(trace_entries(&t)),
    };
    match kind {
        AnsatzKind::Uccsd => fixed(build_uccsd_singlet(n, ne)?),
        AnsatzKind::Uccsd0 => fixed(build_uccsd0(n, ne)?),
        AnsatzKind::KUpCCGSD(k) => fixed(build_kupccgsd(n, ne, k)?),
        AnsatzKind::Qucc => fixed(build_qucc(n, ne)?),
        AnsatzKind::Brc => fixed(build_brc_spin_adapted(n, ne)?),
        AnsatzKind::Ldca => {
            let mut b = build_ldca(n, LDCA_CYCLES)?;
            b.initial_state = hf_index;
            fixed(b)
        }
        AnsatzKind::Hea => {
            let g = run_hea_layer_growth(h, n, hf_index, sys.fci, &cfg.hea, &cfg.optimizer, seed, &clock)?;
            Ok(PointResult {
                energy: g.result.energy,
                runtime: clock.seconds(),
                n_params: g.n_params,
                n_evaluations: g.result.n_evaluations,
                converged: g.result.converged,
                trace: None,
            })
        }
        AnsatzKind::Adapt => {
            let pool = build_fermionic_pool(n, ne)?;
            Ok(adaptive(adapt_vqe(h, n, &pool, hf_index, &cfg.adapt, &clock)?))
        }
        AnsatzKind::QubitAdapt => {
            let pool = build_qubit_pool(&build_fermionic_pool(n, ne)?, n)?;
            Ok(adaptive(qubit_adapt_vqe(h, n, &pool, hf_index, &cfg.adapt, &clock)?))
        }
        AnsatzKind::Qcc => {
            let pool = build_qubit_pool(&build_fermionic_pool(n, ne)?, n)?.as_entanglers();
            let mut opts = cfg.qcc.clone();
            opts.reference = Some(sys.fci);
            Ok(adaptive(qcc_optimize(h, n, ne, &pool, &opts, &clock)?))
        }
    }
}

/// Seed of one table cell: split from the master seed by ansatz name and
/// bond length, so adding points or ansatzes leaves other cells unchanged.
pub fn point_seed(master: u64, kind: AnsatzKind, bond: f64) -> u64 {
    derive_seed(master, &[label_hash(&kind.to_string()), bond.to_bits()])
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub record: BenchRecord,
    /// One line per failed point.
    pub diagnostics: Vec<String>,
}

pub fn parse_ansatz_list(names: &[String]) -> Result<Vec<AnsatzKind>, BenchError> {
    names.iter().map(|n| n.parse()).collect()
}

/// Runs every (bond, ansatz) cell on a pool of `cfg.threads` workers.
/// Failed cells become nulls and a diagnostic line.
pub fn run_sweep(spec: &MoleculeSpec, ansatzes: &[AnsatzKind], cfg: &SweepConfig, seed: u64) -> Result<SweepOutcome, BenchError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(|e| BenchError::Usage(e.to_string()))?;
    let mut record = BenchRecord::new(&spec.name, &spec.bond_lengths);
    let mut diagnostics = Vec::new();

    let systems: Vec<Result<PointSystem, BenchError>> =
        pool.install(|| spec.bond_lengths.par_iter().map(|&b| load_point(spec, b)).collect());
    let mut jobs = Vec::new();
    for (b, sys) in spec.bond_lengths.iter().zip(&systems) {
        match sys {
            Ok(s) => {
                record.set_references(*b, Some(s.fci), Some(s.hf))?;
                for &k in ansatzes {
                    jobs.push((s, k));
                }
            }
            Err(e) => {
                diagnostics.push(format!("{} @ {}: {e}", spec.name, bond_key(*b)));
                for &k in ansatzes {
                    record.set_point(&k.to_string(), *b, None, None, None)?;
                }
            }
        }
    }
    let results: Vec<Result<PointResult, BenchError>> = pool.install(|| {
        jobs.par_iter()
            .map(|(s, k)| run_ansatz(*k, s, cfg, point_seed(seed, *k, s.bond)))
            .collect()
    });
    for ((s, k), res) in jobs.iter().zip(results) {
        let name = k.to_string();
        match res {
            Ok(p) => {
                record.set_point(&name, s.bond, Some(p.energy), Some(p.runtime), Some(p.n_params))?;
                if let Some(t) = p.trace {
                    record.traces.entry(name).or_default().insert(bond_key(s.bond), t);
                }
            }
            Err(e) => {
                diagnostics.push(format!("{} @ {} / {name}: {e}", spec.name, bond_key(s.bond)));
                record.set_point(&name, s.bond, None, None, None)?;
            }
        }
    }
    record.metadata.seed = Some(seed);
    record.metadata.threads = Some(cfg.threads.max(1));
    record.metadata.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    Ok(SweepOutcome { record, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_names_round_trip() {
        for k in AnsatzKind::ALL {
            assert_eq!(k.to_string().parse::<AnsatzKind>().unwrap(), k);
        }
        assert_eq!("3-UpCCGSD".parse::<AnsatzKind>().unwrap(), AnsatzKind::KUpCCGSD(3));
        assert_eq!("uccsd".parse::<AnsatzKind>().unwrap(), AnsatzKind::Uccsd);
        assert!("0-UpCCGSD".parse::<AnsatzKind>().is_err());
        assert!("CCSD".parse::<AnsatzKind>().is_err());
    }

    #[test]
    fn seeds_are_per_cell() {
        let a = point_seed(1, AnsatzKind::Hea, 0.9);
        assert_eq!(a, point_seed(1, AnsatzKind::Hea, 0.9));
        assert_ne!(a, point_seed(1, AnsatzKind::Hea, 1.2));
        assert_ne!(a, point_seed(1, AnsatzKind::Ldca, 0.9));
        assert_ne!(a, point_seed(2, AnsatzKind::Hea, 0.9));
    }
}
