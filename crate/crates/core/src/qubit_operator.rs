//! Sparse linear combinations of Pauli strings.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::pauli::{parse_pauli_string, PauliString};
use crate::{Error, PRUNE_TOL};

#[derive(Clone, Default, PartialEq)]
pub struct QubitOperator {
    terms: BTreeMap<PauliString, Complex64>,
}

impl QubitOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_term(PauliString::IDENTITY, Complex64::new(1.0, 0.0))
    }

    pub fn from_term(p: PauliString, coeff: Complex64) -> Self {
        let mut op = Self::zero();
        op.add_term(p, coeff);
        op
    }

    pub fn from_real(p: PauliString, coeff: f64) -> Self {
        Self::from_term(p, Complex64::new(coeff, 0.0))
    }

    /// Adds `coeff · p`, merging with an existing term and dropping the
    /// result if it falls below the pruning tolerance.
    pub fn add_term(&mut self, p: PauliString, coeff: Complex64) {
        match self.terms.entry(p) {
            btree_map::Entry::Vacant(e) => {
                if coeff.norm() >= PRUNE_TOL {
                    e.insert(coeff);
                }
            }
            btree_map::Entry::Occupied(mut e) => {
                let c = *e.get() + coeff;
                if c.norm() < PRUNE_TOL {
                    e.remove();
                } else {
                    *e.get_mut() = c;
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    /// Terms in canonical string order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    /// Smallest qubit count that covers every term.
    pub fn min_qubits(&self) -> usize {
        self.terms.keys().map(|p| p.min_qubits()).max().unwrap_or(0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.add_term(*p, c * factor);
        }
        out
    }

    /// Hermitian conjugate (Pauli strings are Hermitian, so only the
    /// coefficients are conjugated).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.add_term(*p, c.conj());
        }
        out
    }

    /// Product with the Pauli group table resolved per string pair.
    pub fn multiply(&self, other: &QubitOperator) -> QubitOperator {
        let mut out = QubitOperator::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (phase, p) = pa.mul(pb);
                out.add_term(p, phase.apply(ca * cb));
            }
        }
        out
    }

    /// `ab − ba`. Commuting string pairs cancel exactly and are skipped.
    pub fn commutator(&self, other: &QubitOperator) -> QubitOperator {
        let mut out = QubitOperator::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                if pa.commutes_with(pb) {
                    continue;
                }
                let (phase, p) = pa.mul(pb);
                out.add_term(p, phase.apply(ca * cb) * 2.0);
            }
        }
        out
    }

    /// True iff every coefficient has `|Im| <= tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// True iff every coefficient has `|Re| <= tol`.
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.re.abs() <= tol)
    }

    /// Sum of absolute coefficient values.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Removes terms with magnitude below `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        QubitOperator {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() >= tol)
                .map(|(p, c)| (*p, *c))
                .collect(),
        }
    }

    /// Dense matrix in the computational basis (row-major, `2^n × 2^n`),
    /// with qubit 0 the least significant bit of the basis index.
    pub fn to_dense(&self, n_qubits: usize) -> Result<Vec<Complex64>, Error> {
        self.check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut m = alloc::vec![Complex64::default(); dim * dim];
        for (p, c) in &self.terms {
            for col in 0..dim {
                let (phase, row) = p.act_on_basis(col);
                m[row * dim + col] += phase.apply(*c);
            }
        }
        Ok(m)
    }

    pub fn check_qubits(&self, n_qubits: usize) -> Result<(), Error> {
        let needed = self.min_qubits();
        if needed > n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: needed - 1,
                n_qubits,
            });
        }
        Ok(())
    }

    /// Parses the line-oriented text form written by [`fmt::Display`]:
    /// `<re> <im> <pauli-string>` per line, identity spelled `I`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_text(text: &str) -> Result<Self, Error> {
        let mut op = QubitOperator::zero();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, char::is_whitespace);
            let re = parse_f64(parts.next(), line)?;
            let im = parse_f64(parts.next(), line)?;
            let rest = parts.next().map(str::trim).unwrap_or("");
            if rest.is_empty() {
                return Err(Error::MalformedLine(String::from(line)));
            }
            let p = parse_pauli_string(rest)?;
            op.add_term(p, Complex64::new(re, im));
        }
        Ok(op)
    }
}

fn parse_f64(tok: Option<&str>, line: &str) -> Result<f64, Error> {
    tok.and_then(|t| t.parse::<f64>().ok())
        .ok_or_else(|| Error::MalformedLine(String::from(line)))
}

impl fmt::Display for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in &self.terms {
            if p.is_identity() {
                writeln!(f, "{} {} I", c.re, c.im)?;
            } else {
                writeln!(f, "{} {} {}", c.re, c.im, p)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl FromIterator<(PauliString, Complex64)> for QubitOperator {
    fn from_iter<T: IntoIterator<Item = (PauliString, Complex64)>>(iter: T) -> Self {
        let mut op = QubitOperator::zero();
        for (p, c) in iter {
            op.add_term(p, c);
        }
        op
    }
}

impl Add for &QubitOperator {
    type Output = QubitOperator;
    fn add(self, rhs: &QubitOperator) -> QubitOperator {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, *c);
        }
        out
    }
}

impl Sub for &QubitOperator {
    type Output = QubitOperator;
    fn sub(self, rhs: &QubitOperator) -> QubitOperator {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, -*c);
        }
        out
    }
}

impl Mul for &QubitOperator {
    type Output = QubitOperator;
    fn mul(self, rhs: &QubitOperator) -> QubitOperator {
        self.multiply(rhs)
    }
}

impl Neg for &QubitOperator {
    type Output = QubitOperator;
    fn neg(self) -> QubitOperator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// `Σ_i (I − Z_i)/2`, the occupation-number operator under JW.
pub fn number_operator(n_qubits: usize) -> QubitOperator {
    let mut op = QubitOperator::zero();
    for q in 0..n_qubits {
        op.add_term(PauliString::IDENTITY, Complex64::new(0.5, 0.0));
        op.add_term(
            PauliString::single(q, crate::pauli::Pauli::Z).expect("qubit < 64"),
            Complex64::new(-0.5, 0.0),
        );
    }
    op
}
