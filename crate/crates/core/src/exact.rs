//! Exact ground-state energies by diagonalizing a qubit Hamiltonian,
//! optionally restricted to a particle-number / spin-projection sector.
//!
//! Small problems use a dense Hermitian eigensolver. Larger ones use a
//! Lanczos iteration with full reorthogonalization and thick restarts from
//! the current Ritz vector.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qubit_operator::QubitOperator;
use crate::Error;

/// Largest register accepted by [`exact_ground_energy`].
pub const MAX_EXACT_QUBITS: usize = 20;

/// Sector dimension up to which the dense solver is used.
pub const DENSE_LIMIT: usize = 600;

/// Residual tolerance for the Lanczos solver.
pub const LANCZOS_TOL: f64 = 1e-9;

/// Imaginary-part tolerance for the hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-10;

const KRYLOV_DIM: usize = 120;
const MAX_RESTARTS: usize = 200;

/// Particle-number and optional spin-projection constraint, with spin
/// orbitals interleaved (even qubits spin up, odd qubits spin down).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sector {
    pub n_electrons: usize,
    /// `N_up − N_down`; `None` leaves the spin projection free.
    pub ms2: Option<i32>,
}

impl Sector {
    pub fn new(n_electrons: usize, ms2: i32) -> Self {
        Sector {
            n_electrons,
            ms2: Some(ms2),
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        if index.count_ones() as usize != self.n_electrons {
            return false;
        }
        match self.ms2 {
            None => true,
            Some(m) => {
                let up = (index & EVEN_BITS).count_ones() as i32;
                let down = (index & !EVEN_BITS).count_ones() as i32;
                up - down == m
            }
        }
    }
}

const EVEN_BITS: usize = 0x5555_5555_5555_5555u64 as usize;

/// Lowest eigenvalue of `h` on `n_qubits` qubits, restricted to `sector`
/// when given.
pub fn exact_ground_energy(
    h: &QubitOperator,
    n_qubits: usize,
    sector: Option<Sector>,
) -> Result<f64, Error> {
    let m = SectorMatrix::build(h, n_qubits, sector)?;
    if m.dim() == 0 {
        return Err(Error::InvalidArgument("sector is empty".into()));
    }
    if m.dim() <= DENSE_LIMIT {
        Ok(m.dense_ground())
    } else {
        m.lanczos_ground()
    }
}

/// Sparse Hermitian matrix in compressed-column form over a list of basis
/// states.
struct SectorMatrix {
    col_start: Vec<usize>,
    rows: Vec<u32>,
    vals: Vec<Complex64>,
}

impl SectorMatrix {
    fn build(h: &QubitOperator, n_qubits: usize, sector: Option<Sector>) -> Result<Self, Error> {
        h.check_qubits(n_qubits)?;
        if n_qubits > MAX_EXACT_QUBITS {
            return Err(Error::DimensionOverflow { n_qubits });
        }
        let imag = h.max_imag();
        if imag > HERMITIAN_TOL {
            return Err(Error::NonHermitian { imag });
        }
        let full = 1usize << n_qubits;
        let basis: Vec<usize> = (0..full)
            .filter(|&i| sector.map_or(true, |s| s.contains(i)))
            .collect();
        let mut position = alloc::vec![u32::MAX; full];
        for (k, &b) in basis.iter().enumerate() {
            position[b] = k as u32;
        }
        let terms: Vec<_> = h.iter().map(|(p, c)| (*p, *c)).collect();
        let mut col_start = alloc::vec![0usize];
        let mut rows = Vec::new();
        let mut vals = Vec::new();
        let mut column: Vec<(u32, Complex64)> = Vec::new();
        for &b in &basis {
            column.clear();
            for (p, c) in &terms {
                let (phase, target) = p.act_on_basis(b);
                let r = position[target];
                // terms leaving the sector cancel in a symmetry-conserving H
                if r != u32::MAX {
                    column.push((r, phase.apply(*c)));
                }
            }
            column.sort_unstable_by_key(|e| e.0);
            let mut i = 0;
            while i < column.len() {
                let r = column[i].0;
                let mut v = Complex64::default();
                while i < column.len() && column[i].0 == r {
                    v += column[i].1;
                    i += 1;
                }
                if v.norm() > 1e-14 {
                    rows.push(r);
                    vals.push(v);
                }
            }
            col_start.push(rows.len());
        }
        Ok(SectorMatrix {
            col_start,
            rows,
            vals,
        })
    }

    fn dim(&self) -> usize {
        self.col_start.len() - 1
    }

    fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::default());
        for (c, xc) in x.iter().enumerate() {
            if *xc == Complex64::default() {
                continue;
            }
            for k in self.col_start[c]..self.col_start[c + 1] {
                y[self.rows[k] as usize] += self.vals[k] * xc;
            }
        }
    }

    fn dense_ground(&self) -> f64 {
        let n = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for c in 0..n {
            for k in self.col_start[c]..self.col_start[c + 1] {
                m[(self.rows[k] as usize, c)] = self.vals[k];
            }
        }
        // symmetrize away rounding noise
        let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(m);
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn lanczos_ground(&self) -> Result<f64, Error> {
        let n = self.dim();
        let kmax = KRYLOV_DIM.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut start: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        normalize(&mut start);
        let mut best = f64::INFINITY;
        let mut w = alloc::vec![Complex64::default(); n];
        for _ in 0..MAX_RESTARTS {
            let mut basis: Vec<Vec<Complex64>> = alloc::vec![start.clone()];
            let mut alpha: Vec<f64> = Vec::new();
            let mut beta: Vec<f64> = Vec::new();
            let converged;
            loop {
                let j = basis.len() - 1;
                self.matvec(&basis[j], &mut w);
                let a = dot(&basis[j], &w).re;
                alpha.push(a);
                // full reorthogonalization, done twice for stability
                for _ in 0..2 {
                    for v in &basis {
                        let proj = dot(v, &w);
                        for (wi, vi) in w.iter_mut().zip(v) {
                            *wi -= proj * vi;
                        }
                    }
                }
                let b = norm(&w);
                let (theta, s) = tridiagonal_ground(&alpha, &beta);
                let residual = b * s[s.len() - 1].abs();
                if residual < LANCZOS_TOL * theta.abs().max(1.0) || b < 1e-13 {
                    converged = Some((theta, s));
                    break;
                }
                if basis.len() == kmax {
                    converged = None;
                    best = theta;
                    start = ritz_vector(&basis, &s);
                    break;
                }
                beta.push(b);
                basis.push(w.iter().map(|v| v / b).collect());
            }
            if let Some((theta, _)) = converged {
                return Ok(theta);
            }
            normalize(&mut start);
        }
        if best.is_finite() {
            Ok(best)
        } else {
            Err(Error::NonFinite)
        }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut [Complex64]) {
    let n = norm(a);
    a.iter_mut().for_each(|x| *x /= n);
}

fn ritz_vector(basis: &[Vec<Complex64>], s: &[f64]) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::default(); basis[0].len()];
    for (v, &c) in basis.iter().zip(s) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * c;
        }
    }
    out
}

/// Lowest eigenpair of the real symmetric tridiagonal matrix.
fn tridiagonal_ground(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let col: DVector<f64> = eig.eigenvectors.column(imin).into_owned();
    (eig.eigenvalues[imin], col.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    fn op(terms: &[(&str, f64)]) -> QubitOperator {
        terms
            .iter()
            .map(|(s, c)| (s.parse::<PauliString>().unwrap(), Complex64::new(*c, 0.0)))
            .collect()
    }

    #[test]
    fn single_qubit() {
        assert!((exact_ground_energy(&op(&[("Z0", 1.0)]), 1, None).unwrap() + 1.0).abs() < 1e-12);
        let h = op(&[("Z0", 0.3), ("X0", 0.4)]);
        assert!((exact_ground_energy(&h, 1, None).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn sector_restriction() {
        // number operator: lowest in the 2-particle sector is 2
        let n = crate::qubit_operator::number_operator(4);
        let e = exact_ground_energy(&n, 4, Some(Sector::new(2, 0))).unwrap();
        assert!((e - 2.0).abs() < 1e-12);
        assert!(exact_ground_energy(&n, 4, None).unwrap().abs() < 1e-12);
    }

    #[test]
    fn sector_membership() {
        let s = Sector::new(2, 0);
        assert!(s.contains(0b0011));
        assert!(!s.contains(0b0101));
        assert!(Sector::new(2, 2).contains(0b0101));
        assert!(Sector { n_electrons: 2, ms2: None }.contains(0b0101));
    }

    #[test]
    fn rejects_non_hermitian_and_large() {
        let bad = QubitOperator::from_term("X0".parse().unwrap(), Complex64::new(0.0, 1.0));
        assert!(matches!(
            exact_ground_energy(&bad, 1, None),
            Err(Error::NonHermitian { .. })
        ));
        assert!(matches!(
            exact_ground_energy(&QubitOperator::identity(), 21, None),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        // transverse-field Ising chain on 10 qubits, 1024 states
        let mut h = QubitOperator::zero();
        for i in 0..10 {
            h.add_term(PauliString::single(i, crate::Pauli::X).unwrap(), Complex64::new(0.7, 0.0));
            if i + 1 < 10 {
                let zz = PauliString::from_masks(0, (1 << i) | (1 << (i + 1)));
                h.add_term(zz, Complex64::new(-1.0, 0.0));
            }
        }
        h.add_term("Y3 Y4".parse().unwrap(), Complex64::new(0.2, 0.0));
        let m = SectorMatrix::build(&h, 10, None).unwrap();
        let dense = m.dense_ground();
        let lanczos = m.lanczos_ground().unwrap();
        assert!((dense - lanczos).abs() < 1e-8, "{dense} vs {lanczos}");
    }
}
