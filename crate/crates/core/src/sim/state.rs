use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::pauli::{Pauli, PauliString};
use crate::Error;

/// Largest register the dense simulator will allocate.
pub const MAX_SIM_QUBITS: usize = 26;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Dense amplitude vector. Qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self, Error> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self, Error> {
        if n_qubits > MAX_SIM_QUBITS {
            return Err(Error::DimensionOverflow { n_qubits });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(alloc::format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = alloc::vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, Error> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(alloc::format!(
                "amplitude count {dim} is not a power of two"
            )));
        }
        Ok(StateVector {
            n_qubits: dim.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a 2×2 matrix `[[m00, m01], [m10, m11]]` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1usize << q;
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i0 in base..base + stride {
                let i1 = i0 + stride;
                let a = self.amps[i0];
                let b = self.amps[i1];
                self.amps[i0] = m[0][0] * a + m[0][1] * b;
                self.amps[i1] = m[1][0] * a + m[1][1] * b;
            }
            base += 2 * stride;
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let c = 1usize << control;
        let t = 1usize << target;
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    /// `P|ψ⟩` for a Pauli string, in place.
    pub fn apply_pauli(&mut self, p: &PauliString) {
        let x = p.x_mask() as usize;
        if x == 0 {
            for (i, a) in self.amps.iter_mut().enumerate() {
                let (phase, _) = p.act_on_basis(i);
                *a = phase.apply(*a);
            }
            return;
        }
        let high = 1usize << (63 - (x as u64).leading_zeros());
        for i in 0..self.amps.len() {
            if i & high != 0 {
                continue;
            }
            let j = i ^ x;
            let (pi, _) = p.act_on_basis(i);
            let (pj, _) = p.act_on_basis(j);
            let a = self.amps[i];
            let b = self.amps[j];
            // P|i⟩ = pi|j⟩ and P|j⟩ = pj|i⟩
            self.amps[i] = pj.apply(b);
            self.amps[j] = pi.apply(a);
        }
    }

    /// `exp(iθP)|ψ⟩ = cos θ |ψ⟩ + i sin θ P|ψ⟩`, valid because `P² = I`.
    pub fn apply_pauli_evolution(&mut self, p: &PauliString, theta: f64) {
        let (s, c) = theta.sin_cos();
        let is = Complex64::new(0.0, s);
        let x = p.x_mask() as usize;
        if x == 0 {
            let plus = Complex64::new(c, s);
            let minus = Complex64::new(c, -s);
            let z = p.z_mask() as usize;
            for (i, a) in self.amps.iter_mut().enumerate() {
                *a *= if (i & z).count_ones() % 2 == 0 { plus } else { minus };
            }
            return;
        }
        let high = 1usize << (63 - (x as u64).leading_zeros());
        for i in 0..self.amps.len() {
            if i & high != 0 {
                continue;
            }
            let j = i ^ x;
            let (pi, _) = p.act_on_basis(i);
            let (pj, _) = p.act_on_basis(j);
            let a = self.amps[i];
            let b = self.amps[j];
            self.amps[i] = a * c + is * pj.apply(b);
            self.amps[j] = b * c + is * pi.apply(a);
        }
    }

    /// Fermionic Givens rotation between modes `a` and `b`: the single
    /// occupation `|a⟩` maps to `cos θ |a⟩ + sin θ |b⟩` and `|b⟩` to
    /// `−sin θ |a⟩ + cos θ |b⟩`, with the Jordan–Wigner parity of the qubits
    /// strictly between `a` and `b` folded into the angle. `|00⟩` and `|11⟩`
    /// are left unchanged.
    pub fn apply_givens(&mut self, a: usize, b: usize, theta: f64) {
        let (s, c) = theta.sin_cos();
        let (ma, mb, between) = givens_masks(a, b);
        for i in 0..self.amps.len() {
            if i & ma == 0 || i & mb != 0 {
                continue;
            }
            let j = i ^ ma ^ mb;
            let sign = if (i & between).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            let va = self.amps[i];
            let vb = self.amps[j];
            self.amps[i] = va * c - vb * (sign * s);
            self.amps[j] = va * (sign * s) + vb * c;
        }
    }

    /// Generator of [`apply_givens`](Self::apply_givens): `d/dθ G(θ) = A G(θ)`.
    pub fn apply_givens_generator(&mut self, a: usize, b: usize) {
        let (ma, mb, between) = givens_masks(a, b);
        for i in 0..self.amps.len() {
            if i & ma == 0 || i & mb != 0 {
                let j_pair = i & ma == 0 && i & mb != 0;
                if !j_pair {
                    // |00⟩ and |11⟩ components are annihilated
                    self.amps[i] = ZERO;
                }
                continue;
            }
            let j = i ^ ma ^ mb;
            let sign = if (i & between).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            let va = self.amps[i];
            let vb = self.amps[j];
            self.amps[i] = vb * (-sign);
            self.amps[j] = va * sign;
        }
    }

    /// `√iSWAP` on `(a, b)`; `inverse` applies its adjoint.
    pub fn apply_sqrt_iswap(&mut self, a: usize, b: usize, inverse: bool) {
        let ma = 1usize << a;
        let mb = 1usize << b;
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let off = Complex64::new(0.0, if inverse { -r } else { r });
        for i in 0..self.amps.len() {
            if i & ma == 0 || i & mb != 0 {
                continue;
            }
            let j = i ^ ma ^ mb;
            let va = self.amps[i];
            let vb = self.amps[j];
            self.amps[i] = va * r + off * vb;
            self.amps[j] = off * va + vb * r;
        }
    }
}

fn givens_masks(a: usize, b: usize) -> (usize, usize, usize) {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let between = ((1usize << hi) - 1) & !((1usize << (lo + 1)) - 1);
    (1usize << a, 1usize << b, between)
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Rotation matrices `exp(−iθσ/2)` for σ ∈ {X, Y, Z}.
pub fn rotation_matrix(axis: Pauli, theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let cc = Complex64::new(c, 0.0);
    match axis {
        Pauli::X => [
            [cc, Complex64::new(0.0, -s)],
            [Complex64::new(0.0, -s), cc],
        ],
        Pauli::Y => [
            [cc, Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), cc],
        ],
        Pauli::Z => [
            [Complex64::new(c, -s), ZERO],
            [ZERO, Complex64::new(c, s)],
        ],
    }
}

pub fn hadamard_matrix() -> [[Complex64; 2]; 2] {
    let r = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[r, r], [r, -r]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn pauli_evolution_on_zero() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_pauli_evolution(&"X0".parse().unwrap(), 0.3);
        assert!(close(s.amplitudes()[0], Complex64::new(0.3f64.cos(), 0.0)));
        assert!(close(s.amplitudes()[1], Complex64::new(0.0, 0.3f64.sin())));
    }

    #[test]
    fn zz_eigenstate_phase() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_pauli_evolution(&"Z0 Z1".parse().unwrap(), 0.7);
        assert!(close(s.amplitudes()[0], Complex64::new(0.7f64.cos(), 0.7f64.sin())));
    }

    #[test]
    fn givens_rotates_single_occupation() {
        let mut s = StateVector::basis(2, 0b01).unwrap();
        s.apply_givens(0, 1, 0.4);
        assert!(close(s.amplitudes()[0b01], Complex64::new(0.4f64.cos(), 0.0)));
        assert!(close(s.amplitudes()[0b10], Complex64::new(0.4f64.sin(), 0.0)));
        let mut d = StateVector::basis(2, 0b11).unwrap();
        d.apply_givens(0, 1, 0.4);
        assert!(close(d.amplitudes()[0b11], Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn givens_parity_sign() {
        // qubit 1 occupied between modes 0 and 2 flips the rotation direction
        let mut s = StateVector::basis(3, 0b011).unwrap();
        s.apply_givens(0, 2, 0.4);
        assert!(close(s.amplitudes()[0b110], Complex64::new(-(0.4f64.sin()), 0.0)));
    }

    #[test]
    fn pauli_application_matches_basis_action() {
        let p: PauliString = "Y0 X2".parse().unwrap();
        let mut s = StateVector::basis(3, 0b010).unwrap();
        s.apply_pauli(&p);
        // Y|0⟩ = i|1⟩, X|0⟩ = |1⟩ on qubit 2
        assert!(close(s.amplitudes()[0b111], Complex64::new(0.0, 1.0)));
    }
}
