//! Molecules and their fixture files, laid out as
//! `<fixtures>/<molecule>/<bond_length>.fcidump`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::fcidump::load_fcidump;
use crate::BenchError;

/// File-name form of a bond length: the shortest round-trip decimal with
/// at least one fractional digit (`1.0`, `0.7414`).
pub fn bond_key(bond: f64) -> String {
    format!("{bond:?}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeSpec {
    pub name: String,
    /// Ångström, ascending.
    pub bond_lengths: Vec<f64>,
    pub fcidump_paths: BTreeMap<String, PathBuf>,
    pub n_electrons: usize,
    pub n_qubits: usize,
}

impl MoleculeSpec {
    /// Scans `<fixtures>/<name>/` for FCIDUMP files.
    pub fn from_fixtures(fixtures: &Path, name: &str) -> Result<Self, BenchError> {
        let dir = fixtures.join(name);
        if !dir.is_dir() {
            return Err(BenchError::UnknownMolecule(name.to_string()));
        }
        let entries = std::fs::read_dir(&dir).map_err(|e| BenchError::io(&dir, e))?;
        let mut found = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| BenchError::io(&dir, e))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("fcidump") {
                continue;
            }
            let Some(bond) = path
                .file_stem()
                .and_then(|s| s.to_str())
                .and_then(|s| s.parse::<f64>().ok())
            else {
                continue;
            };
            found.push((bond, path));
        }
        if found.is_empty() {
            return Err(BenchError::UnknownMolecule(name.to_string()));
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        let first = load_fcidump(&found[0].1)?;
        Ok(MoleculeSpec {
            name: name.to_string(),
            bond_lengths: found.iter().map(|(b, _)| *b).collect(),
            fcidump_paths: found.into_iter().map(|(b, p)| (bond_key(b), p)).collect(),
            n_electrons: first.n_electrons,
            n_qubits: first.n_qubits(),
        })
    }

    /// Keeps only `bonds`, in the given order.
    pub fn select(&self, bonds: &[f64]) -> Result<Self, BenchError> {
        let mut out = self.clone();
        out.bond_lengths = Vec::with_capacity(bonds.len());
        out.fcidump_paths.clear();
        for &b in bonds {
            let key = bond_key(b);
            let path = self
                .fcidump_paths
                .get(&key)
                .ok_or(BenchError::UnknownBondLength(b))?;
            out.bond_lengths.push(b);
            out.fcidump_paths.insert(key, path.clone());
        }
        Ok(out)
    }

    pub fn path(&self, bond: f64) -> Option<&Path> {
        self.fcidump_paths.get(&bond_key(bond)).map(PathBuf::as_path)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.n_qubits % 2 != 0 {
            return Err(BenchError::Usage(format!("{}: odd qubit count {}", self.name, self.n_qubits)));
        }
        for b in &self.bond_lengths {
            match self.path(*b) {
                Some(p) if p.exists() => {}
                _ => return Err(BenchError::UnknownBondLength(*b)),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bond_keys_match_file_names() {
        assert_eq!(bond_key(1.0), "1.0");
        assert_eq!(bond_key(0.7414), "0.7414");
        assert_eq!(bond_key(2.4), "2.4");
    }
}
