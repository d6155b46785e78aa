//! Fermionic ladder-operator algebra with canonical normal ordering.
//!
//! Every stored term is normal ordered: creation operators to the left of
//! annihilation operators, and within each group mode indices descend. The
//! reordering applies `{a_i, a†_j} = δ_ij` and `{a_i, a_j} = 0` with sign
//! bookkeeping, so two equal operators always share one map key.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::PRUNE_TOL;

/// A single creation (`dagger = true`) or annihilation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Ladder { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Ladder {
            mode,
            dagger: false,
        }
    }

    pub fn adjoint(self) -> Self {
        Ladder {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

/// A product of ladder operators with a coefficient. Not necessarily normal ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionTerm {
    pub factors: Vec<Ladder>,
    pub coeff: Complex64,
}

impl FermionTerm {
    pub fn new(factors: Vec<Ladder>, coeff: Complex64) -> Self {
        FermionTerm { factors, coeff }
    }

    /// Expands the term into normal-ordered pieces.
    pub fn normal_ordered(&self) -> Vec<(Vec<Ladder>, Complex64)> {
        normal_order(self.factors.clone(), self.coeff)
    }
}

#[derive(Clone, Default, PartialEq)]
pub struct FermionOperator {
    terms: BTreeMap<Vec<Ladder>, Complex64>,
}

impl FermionOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: Complex64) -> Self {
        let mut op = Self::zero();
        op.insert(Vec::new(), c);
        op
    }

    pub fn from_term(factors: &[Ladder], coeff: Complex64) -> Self {
        let mut op = Self::zero();
        op.add_term(factors, coeff);
        op
    }

    /// `a†_p`.
    pub fn creation(p: usize) -> Self {
        Self::from_term(&[Ladder::create(p)], Complex64::new(1.0, 0.0))
    }

    /// `a_p`.
    pub fn annihilation(p: usize) -> Self {
        Self::from_term(&[Ladder::annihilate(p)], Complex64::new(1.0, 0.0))
    }

    /// Adds `coeff · factors`, normal ordering on the way in.
    pub fn add_term(&mut self, factors: &[Ladder], coeff: Complex64) {
        for (ops, c) in normal_order(factors.to_vec(), coeff) {
            self.insert(ops, c);
        }
    }

    fn insert(&mut self, ops: Vec<Ladder>, coeff: Complex64) {
        match self.terms.entry(ops) {
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Ladder>, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, factors: &[Ladder]) -> Complex64 {
        self.terms.get(factors).copied().unwrap_or_default()
    }

    /// One past the largest mode index present (0 for scalars).
    pub fn n_modes(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|l| l.mode + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.insert(k.clone(), c * factor);
        }
        out
    }

    /// Normal-ordered product `self · other`.
    pub fn multiply(&self, other: &FermionOperator) -> FermionOperator {
        let mut out = FermionOperator::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut ops = ka.clone();
                ops.extend_from_slice(kb);
                out.add_term(&ops, ca * cb);
            }
        }
        out
    }

    pub fn adjoint(&self) -> FermionOperator {
        let mut out = FermionOperator::zero();
        for (k, c) in &self.terms {
            let ops: Vec<Ladder> = k.iter().rev().map(|l| l.adjoint()).collect();
            out.add_term(&ops, c.conj());
        }
        out
    }

    /// True when every term creates as many particles as it annihilates.
    pub fn is_particle_conserving(&self) -> bool {
        self.terms.keys().all(|k| {
            let created = k.iter().filter(|l| l.dagger).count();
            2 * created == k.len()
        })
    }

    /// `self − self†` is zero within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let diff = self - &self.adjoint();
        diff.terms.values().all(|c| c.norm() <= tol)
    }

    /// `self + self†` is zero within `tol`.
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        let sum = self + &self.adjoint();
        sum.terms.values().all(|c| c.norm() <= tol)
    }
}

/// Expands a product of ladder operators into normal-ordered terms.
pub fn normal_order(factors: Vec<Ladder>, coeff: Complex64) -> Vec<(Vec<Ladder>, Complex64)> {
    let mut out = Vec::new();
    let mut pending = alloc::vec![(factors, coeff)];
    'term: while let Some((mut ops, mut c)) = pending.pop() {
        // insertion sort with anticommutation signs
        for i in 1..ops.len() {
            let mut j = i;
            while j > 0 {
                let left = ops[j - 1];
                let right = ops[j];
                if right.dagger && !left.dagger {
                    if right.mode == left.mode {
                        // a_p a†_p = 1 − a†_p a_p
                        let mut contracted = ops.clone();
                        contracted.remove(j);
                        contracted.remove(j - 1);
                        pending.push((contracted, c));
                    }
                    ops.swap(j - 1, j);
                    c = -c;
                } else if right.dagger == left.dagger {
                    if right.mode == left.mode {
                        continue 'term;
                    }
                    if right.mode > left.mode {
                        ops.swap(j - 1, j);
                        c = -c;
                    } else {
                        break;
                    }
                } else {
                    break;
                }
                j -= 1;
            }
        }
        out.push((ops, c));
    }
    out
}

impl fmt::Debug for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for l in k {
                write!(f, " {}{}", l.mode, if l.dagger { "^" } else { "" })?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &FermionOperator {
    type Output = FermionOperator;
    fn add(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), *c);
        }
        out
    }
}

impl Sub for &FermionOperator {
    type Output = FermionOperator;
    fn sub(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), -*c);
        }
        out
    }
}

impl Mul for &FermionOperator {
    type Output = FermionOperator;
    fn mul(self, rhs: &FermionOperator) -> FermionOperator {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn anticommutator_with_adjoint() {
        let prod = &FermionOperator::annihilation(0) * &FermionOperator::creation(0);
        assert_eq!(prod.len(), 2);
        assert_eq!(prod.coefficient(&[]), one());
        assert_eq!(
            prod.coefficient(&[Ladder::create(0), Ladder::annihilate(0)]),
            -one()
        );
    }

    #[test]
    fn pauli_exclusion() {
        let prod = &FermionOperator::creation(1) * &FermionOperator::creation(1);
        assert!(prod.is_empty());
    }

    #[test]
    fn canonical_order_descending() {
        let op = FermionOperator::from_term(
            &[Ladder::create(0), Ladder::create(2), Ladder::annihilate(1), Ladder::annihilate(3)],
            one(),
        );
        let (k, c) = op.iter().next().unwrap();
        assert_eq!(
            k,
            &alloc::vec![
                Ladder::create(2),
                Ladder::create(0),
                Ladder::annihilate(3),
                Ladder::annihilate(1)
            ]
        );
        assert_eq!(*c, one());
    }

    #[test]
    fn normal_ordering_is_idempotent() {
        let op = FermionOperator::from_term(
            &[Ladder::annihilate(1), Ladder::create(3), Ladder::create(1), Ladder::annihilate(0)],
            Complex64::new(0.3, -0.2),
        );
        let mut again = FermionOperator::zero();
        for (k, c) in op.iter() {
            again.add_term(k, *c);
        }
        assert_eq!(again, op);
    }

    #[test]
    fn adjoint_of_excitation() {
        let t = FermionOperator::from_term(&[Ladder::create(2), Ladder::annihilate(0)], one());
        let td = t.adjoint();
        assert_eq!(td.coefficient(&[Ladder::create(0), Ladder::annihilate(2)]), one());
        let gen = &t - &td;
        assert!(gen.is_anti_hermitian(1e-14));
        assert!((&t + &td).is_hermitian(1e-14));
    }
}
