//! Single-qubit Pauli operators and Pauli strings over up to 64 qubits.
//!
//! A [`PauliString`] is stored as a pair of bit masks in the symplectic
//! representation: qubit `q` carries `X` when only the x bit is set, `Z` when
//! only the z bit is set and `Y` when both are set. Products keep their phase
//! as an exact power of `i`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::Error;

/// Largest number of qubits a [`PauliString`] can address.
pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// A power of `i`: `Phase(k)` stands for `i^k`, `k` in `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u32 {
        self.0 as u32
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Multiplies `z` by this phase without rounding.
    #[inline]
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self.0 {
            0 => z,
            1 => Complex64::new(-z.im, z.re),
            2 => -z,
            _ => Complex64::new(z.im, -z.re),
        }
    }
}

impl core::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis; identity on qubits not mentioned.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: u64,
    z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    /// Builds a string from raw symplectic masks.
    pub fn from_masks(x: u64, z: u64) -> Self {
        PauliString { x, z }
    }

    pub fn single(qubit: usize, op: Pauli) -> Result<Self, Error> {
        let mut p = PauliString::IDENTITY;
        p.set(qubit, Some(op))?;
        Ok(p)
    }

    /// Builds a string from `(qubit, op)` pairs. Repeated qubits are rejected.
    pub fn from_ops<I>(ops: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut p = PauliString::IDENTITY;
        for (q, op) in ops {
            if p.get(q).is_some() {
                return Err(Error::DuplicateQubit(q));
            }
            p.set(q, Some(op))?;
        }
        Ok(p)
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    /// Number of `Y` factors.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Number of `Z` factors.
    pub fn z_count(&self) -> u32 {
        (self.z & !self.x).count_ones()
    }

    /// One past the highest qubit index acted on (0 for the identity).
    pub fn min_qubits(&self) -> usize {
        (64 - self.support().leading_zeros()) as usize
    }

    pub fn get(&self, qubit: usize) -> Option<Pauli> {
        if qubit >= MAX_QUBITS {
            return None;
        }
        let bit = 1u64 << qubit;
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => None,
            (true, false) => Some(Pauli::X),
            (true, true) => Some(Pauli::Y),
            (false, true) => Some(Pauli::Z),
        }
    }

    pub fn set(&mut self, qubit: usize, op: Option<Pauli>) -> Result<(), Error> {
        if qubit >= MAX_QUBITS {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: MAX_QUBITS,
            });
        }
        let bit = 1u64 << qubit;
        self.x &= !bit;
        self.z &= !bit;
        if let Some(op) = op {
            let (x, z) = op.bits();
            if x {
                self.x |= bit;
            }
            if z {
                self.z |= bit;
            }
        }
        Ok(())
    }

    /// Non-identity factors in ascending qubit order.
    pub fn ops(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        let mut rest = self.support();
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.get(q).map(|op| (q, op))
        })
    }

    /// The same string with every `Z` factor removed.
    pub fn without_z(&self) -> PauliString {
        PauliString {
            x: self.x,
            z: self.z & self.x,
        }
    }

    /// Product `self · other = phase · result`.
    pub fn mul(&self, other: &PauliString) -> (Phase, PauliString) {
        // With Y = i X Z per qubit, each string is i^{#Y} X^x Z^z, and moving
        // Z^{z1} past X^{x2} costs (-1)^{|z1 & x2|}.
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let y_out = (x & z).count_ones();
        let swaps = (self.z & other.x).count_ones();
        let k = self.y_count() + other.y_count() + 2 * swaps + 4 * 64 - y_out;
        (Phase::from_exponent(k), PauliString { x, z })
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        anti % 2 == 0
    }

    /// Action on a computational basis state: `P|i> = phase · |i ^ x>`.
    #[inline]
    pub fn act_on_basis(&self, index: usize) -> (Phase, usize) {
        let sign = ((index as u64) & self.z).count_ones() * 2;
        (
            Phase::from_exponent(self.y_count() + sign),
            index ^ self.x as usize,
        )
    }
}

impl Ord for PauliString {
    /// Lexicographic order on the ascending `(qubit, op)` sequence, so that
    /// sorting strings agrees with sorting their serializations term by term.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = *self;
        let mut b = *other;
        loop {
            let (sa, sb) = (a.support(), b.support());
            match (sa == 0, sb == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let qa = sa.trailing_zeros() as usize;
            let qb = sb.trailing_zeros() as usize;
            if qa != qb {
                return qa.cmp(&qb);
            }
            let ord = a.get(qa).cmp(&b.get(qb));
            if ord != Ordering::Equal {
                return ord;
            }
            let clear = !(1u64 << qa);
            a.x &= clear;
            a.z &= clear;
            b.x &= clear;
            b.z &= clear;
        }
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    /// Space-separated `<axis><index>` tokens in ascending qubit order; the
    /// identity renders as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, op) in self.ops() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", op.symbol(), q)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("I")
        } else {
            write!(f, "{}", self)
        }
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_pauli_string(s)
    }
}

/// Parses `"X0 Z3"`-style text. The empty string (or a lone `I`) is the identity.
pub fn parse_pauli_string(text: &str) -> Result<PauliString, Error> {
    let mut p = PauliString::IDENTITY;
    let trimmed = text.trim();
    if trimmed == "I" {
        return Ok(p);
    }
    for token in trimmed.split_whitespace() {
        let mut chars = token.chars();
        let op = match chars.next() {
            Some('X') => Pauli::X,
            Some('Y') => Pauli::Y,
            Some('Z') => Pauli::Z,
            _ => return Err(Error::MalformedToken(String::from(token))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedToken(String::from(token)));
        }
        let q: usize = digits
            .parse()
            .map_err(|_| Error::MalformedToken(String::from(token)))?;
        if q >= MAX_QUBITS {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: MAX_QUBITS,
            });
        }
        if p.get(q).is_some() {
            return Err(Error::DuplicateQubit(q));
        }
        p.set(q, Some(op))?;
    }
    Ok(p)
}

pub fn serialize_pauli_string(p: &PauliString) -> String {
    alloc::format!("{}", p)
}

/// Collects the factors of a string as owned pairs.
pub fn pauli_ops(p: &PauliString) -> Vec<(usize, Pauli)> {
    p.ops().collect()
}
