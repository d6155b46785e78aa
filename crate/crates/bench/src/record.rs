//! Per-molecule result files (`<data_dir>/<molecule>.json`).
//!
//! Every per-ansatz list is aligned with `bond_lengths`; points that have not
//! been computed (or failed) are `null`. Files are written with sorted keys
//! and two-space indentation so that equal records serialize to equal bytes.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::molecule::bond_key;
use crate::BenchError;

pub const SCHEMA_VERSION: u32 = 1;

/// Name under which externally supplied CCSD energies are recorded.
pub const CCSD_KEY: &str = "CCSD";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub version: String,
    /// Seconds since the Unix epoch of the last write by a sweep.
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub chosen_label: String,
    pub gradient_norm: f64,
    pub energy: f64,
    pub n_params: usize,
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub schema_version: u32,
    pub molecule: String,
    pub bond_lengths: Vec<f64>,
    pub energies: BTreeMap<String, Vec<Option<f64>>>,
    pub fci: Vec<Option<f64>>,
    pub hf: Vec<Option<f64>>,
    pub ccsd: Option<Vec<Option<f64>>>,
    pub runtimes: BTreeMap<String, Vec<Option<f64>>>,
    pub n_params: BTreeMap<String, Vec<Option<usize>>>,
    /// Adaptive families only: ansatz → bond key → iteration log.
    #[serde(default)]
    pub traces: BTreeMap<String, BTreeMap<String, Vec<TraceEntry>>>,
    pub metadata: Metadata,
}

impl BenchRecord {
    pub fn new(molecule: &str, bond_lengths: &[f64]) -> Self {
        let n = bond_lengths.len();
        BenchRecord {
            schema_version: SCHEMA_VERSION,
            molecule: molecule.to_string(),
            bond_lengths: bond_lengths.to_vec(),
            energies: BTreeMap::new(),
            fci: vec![None; n],
            hf: vec![None; n],
            ccsd: None,
            runtimes: BTreeMap::new(),
            n_params: BTreeMap::new(),
            traces: BTreeMap::new(),
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION").to_string(),
                ..Default::default()
            },
        }
    }

    pub fn point_index(&self, bond: f64) -> Result<usize, BenchError> {
        let key = bond_key(bond);
        self.bond_lengths
            .iter()
            .position(|b| bond_key(*b) == key)
            .ok_or(BenchError::UnknownBondLength(bond))
    }

    /// Stores one ansatz result; other slots are left as they are.
    pub fn set_point(
        &mut self,
        ansatz: &str,
        bond: f64,
        energy: Option<f64>,
        runtime: Option<f64>,
        n_params: Option<usize>,
    ) -> Result<(), BenchError> {
        let i = self.point_index(bond)?;
        let n = self.bond_lengths.len();
        if ansatz == CCSD_KEY {
            self.ccsd.get_or_insert_with(|| vec![None; n])[i] = energy;
            return Ok(());
        }
        self.energies.entry(ansatz.to_string()).or_insert_with(|| vec![None; n])[i] = energy;
        self.runtimes.entry(ansatz.to_string()).or_insert_with(|| vec![None; n])[i] = runtime;
        self.n_params.entry(ansatz.to_string()).or_insert_with(|| vec![None; n])[i] = n_params;
        Ok(())
    }

    pub fn set_references(&mut self, bond: f64, fci: Option<f64>, hf: Option<f64>) -> Result<(), BenchError> {
        let i = self.point_index(bond)?;
        self.fci[i] = fci;
        self.hf[i] = hf;
        Ok(())
    }

    /// Copies every non-null value of `other` into `self`.
    pub fn merge_from(&mut self, other: &BenchRecord) -> Result<(), BenchError> {
        if other.molecule != self.molecule {
            return Err(BenchError::Usage(format!(
                "cannot merge {} results into {}",
                other.molecule, self.molecule
            )));
        }
        for (j, &b) in other.bond_lengths.iter().enumerate() {
            let i = self.point_index(b)?;
            if other.fci[j].is_some() {
                self.fci[i] = other.fci[j];
            }
            if other.hf[j].is_some() {
                self.hf[i] = other.hf[j];
            }
            for name in other.energies.keys() {
                let e = other.energies[name][j];
                let t = other.runtimes.get(name).and_then(|v| v[j]);
                let k = other.n_params.get(name).and_then(|v| v[j]);
                if e.is_some() || t.is_some() || k.is_some() {
                    self.set_point(name, b, e, t, k)?;
                } else {
                    let n = self.bond_lengths.len();
                    self.energies.entry(name.clone()).or_insert_with(|| vec![None; n]);
                    self.runtimes.entry(name.clone()).or_insert_with(|| vec![None; n]);
                    self.n_params.entry(name.clone()).or_insert_with(|| vec![None; n]);
                }
            }
            if let Some(c) = other.ccsd.as_ref().and_then(|v| v[j]) {
                self.set_point(CCSD_KEY, b, Some(c), None, None)?;
            }
        }
        for (name, per_bond) in &other.traces {
            let slot = self.traces.entry(name.clone()).or_default();
            for (k, t) in per_bond {
                slot.insert(k.clone(), t.clone());
            }
        }
        self.metadata = other.metadata.clone();
        Ok(())
    }

    /// Checks list alignment.
    pub fn validate(&self) -> Result<(), BenchError> {
        let n = self.bond_lengths.len();
        let bad = |what: &str| Err(BenchError::Malformed(format!("`{what}` is not aligned with bond_lengths")));
        if self.fci.len() != n {
            return bad("fci");
        }
        if self.hf.len() != n {
            return bad("hf");
        }
        if self.ccsd.as_ref().is_some_and(|v| v.len() != n) {
            return bad("ccsd");
        }
        for (k, v) in &self.energies {
            if v.len() != n {
                return bad(&format!("energies.{k}"));
            }
        }
        for (k, v) in &self.runtimes {
            if v.len() != n {
                return bad(&format!("runtimes.{k}"));
            }
        }
        for (k, v) in &self.n_params {
            if v.len() != n {
                return bad(&format!("n_params.{k}"));
            }
        }
        Ok(())
    }

    /// Sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("record is always serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let r: BenchRecord = serde_json::from_str(text).map_err(|e| BenchError::Malformed(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }
}

fn round_half_even(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).round_ties_even() / scale
}

/// Rounds every stored energy (ansatz, FCI, HF, CCSD) half-to-even.
/// Runtimes and traces are untouched.
pub fn rounddata(record: &BenchRecord, decimals: u32) -> BenchRecord {
    let mut out = record.clone();
    let round_all = |v: &mut Vec<Option<f64>>| {
        for x in v.iter_mut().flatten() {
            *x = round_half_even(*x, decimals);
        }
    };
    for v in out.energies.values_mut() {
        round_all(v);
    }
    round_all(&mut out.fci);
    round_all(&mut out.hf);
    if let Some(v) = out.ccsd.as_mut() {
        round_all(v);
    }
    out
}

pub fn data_path(data_dir: &Path, molecule: &str) -> PathBuf {
    data_dir.join(format!("{molecule}.json"))
}

/// Advisory lock: `<file>.lock` exists while a writer owns the data file.
#[derive(Debug)]
pub struct FileLock {
    path: PathBuf,
    _file: File,
}

impl FileLock {
    pub fn acquire(data_file: &Path) -> Result<Self, BenchError> {
        let mut name = data_file.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(FileLock { path, _file: f })
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(BenchError::Locked(path)),
            Err(e) => Err(BenchError::io(&path, e)),
        }
    }
}

impl Drop for FileLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), BenchError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| BenchError::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| BenchError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| BenchError::io(path, e))?;
    tmp.persist(path).map_err(|e| BenchError::io(path, e.error))?;
    Ok(())
}

pub fn load_record(path: &Path) -> Result<BenchRecord, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    BenchRecord::from_json(&text)
}

pub fn store_record(path: &Path, record: &BenchRecord) -> Result<(), BenchError> {
    write_atomic(path, &record.to_json())
}

/// Creates the skeleton file. Refuses to replace an existing file unless
/// `force` is set.
pub fn initdata(data_dir: &Path, molecule: &str, bond_lengths: &[f64], force: bool) -> Result<PathBuf, BenchError> {
    let path = data_path(data_dir, molecule);
    if path.exists() && !force {
        return Err(BenchError::FileExists(path));
    }
    let _lock = FileLock::acquire(&path)?;
    store_record(&path, &BenchRecord::new(molecule, bond_lengths))?;
    Ok(path)
}

/// Read-modify-write of a single point under the lock.
pub fn savedata(
    path: &Path,
    ansatz: &str,
    bond: f64,
    energy: Option<f64>,
    runtime: Option<f64>,
    n_params: Option<usize>,
) -> Result<BenchRecord, BenchError> {
    let _lock = FileLock::acquire(path)?;
    let mut record = load_record(path)?;
    record.set_point(ansatz, bond, energy, runtime, n_params)?;
    store_record(path, &record)?;
    Ok(record)
}
