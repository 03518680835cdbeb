//! Pauli operators and their binary images.
//!
//! A Pauli string `i^k σ_1 ⊗ … ⊗ σ_n` maps to the symplectic vector `(x|z)`
//! with `I → (0,0)`, `X → (1,0)`, `Y → (1,1)`, `Z → (0,1)` per qubit; the
//! phase is dropped. Multiplication of strings becomes addition of vectors,
//! and two strings commute exactly when their images have zero symplectic
//! product.

mod code;

pub use code::{
    is_degenerate, min_distance, normalizer_min_gw, profile, same_correction_effect,
    validate_check_matrix, CheckMatrix, CodeProfile,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{low_mask, BitVec, MAX_BITS};

/// Largest supported number of qubits.
pub const MAX_QUBITS: usize = MAX_BITS / 2;

/// Single-qubit Pauli letter, encoded as `x | (z << 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Pauli {
    I = 0b00,
    X = 0b01,
    Z = 0b10,
    Y = 0b11,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    #[inline]
    pub fn x(self) -> bool {
        self as u8 & 1 == 1
    }

    #[inline]
    pub fn z(self) -> bool {
        self as u8 & 2 == 2
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A symplectic vector `(x|z)` of length `2n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SympVec {
    bits: BitVec,
}

impl SympVec {
    pub fn new(bits: BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::OddLength(bits.len()));
        }
        Ok(Self { bits })
    }

    pub fn zeros(n: usize) -> Self {
        Self { bits: BitVec::zeros(2 * n) }
    }

    pub fn from_halves(x: &BitVec, z: &BitVec) -> Result<Self> {
        x.check_len(z)?;
        Ok(Self { bits: x.concat(z)? })
    }

    pub(crate) fn from_raw(raw: u128, n: usize) -> Self {
        Self { bits: BitVec::from_raw(raw, 2 * n) }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.bits.len() / 2
    }

    #[inline]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn x(&self) -> BitVec {
        self.bits.slice(0, self.n())
    }

    pub fn z(&self) -> BitVec {
        self.bits.slice(self.n(), 2 * self.n())
    }

    /// Letter at qubit `j`.
    pub fn letter(&self, j: usize) -> Pauli {
        Pauli::from_bits(self.bits.get(j), self.bits.get(self.n() + j))
    }

    pub fn gw(&self) -> usize {
        gw_raw(self.bits.raw(), self.n())
    }

    pub fn symplectic(&self, other: &SympVec) -> Result<bool> {
        crate::gf2::symplectic_product(&self.bits, &other.bits)
    }
}

impl From<SympVec> for BitVec {
    fn from(v: SympVec) -> BitVec {
        v.bits
    }
}

impl TryFrom<BitVec> for SympVec {
    type Error = Error;

    fn try_from(bits: BitVec) -> Result<Self> {
        Self::new(bits)
    }
}

impl std::ops::BitXor for SympVec {
    type Output = SympVec;

    fn bitxor(self, rhs: SympVec) -> SympVec {
        SympVec { bits: self.bits ^ rhs.bits }
    }
}

impl fmt::Display for SympVec {
    /// `x-bits|z-bits`, e.g. `1010|0011`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.x(), self.z())
    }
}

impl fmt::Debug for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for SympVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, z) = s.split_once('|').ok_or_else(|| Error::Syntax {
            line: 0,
            msg: format!("expected `xbits|zbits`, got {s:?}"),
        })?;
        if x.len() != z.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: z.len() });
        }
        Self::from_halves(&x.parse()?, &z.parse()?)
    }
}

#[inline]
pub(crate) fn gw_raw(raw: u128, n: usize) -> usize {
    ((raw & low_mask(n)) | (raw >> n)).count_ones() as usize
}

/// Generalized weight `w_H(x) + w_H(z) − w_H(x AND z)`: the number of qubits
/// on which `(x_j, z_j) ≠ (0, 0)`.
pub fn gw(v: &SympVec) -> usize {
    v.gw()
}

/// `i^phase_exp` times a tensor product of Pauli letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    phase_exp: u8,
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(phase_exp: u8, letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::PauliSyntax("a Pauli string needs at least one qubit".into()));
        }
        if letters.len() > MAX_QUBITS {
            return Err(Error::CapacityExceeded(2 * letters.len()));
        }
        Ok(Self { phase_exp: phase_exp % 4, letters })
    }

    pub fn identity(n: usize) -> Self {
        Self { phase_exp: 0, letters: vec![Pauli::I; n] }
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % 4;
        self
    }
}

/// Binary image `(x|z)` of a Pauli string; the phase is discarded.
pub fn phi(p: &PauliString) -> SympVec {
    let n = p.n();
    let mut bits = BitVec::zeros(2 * n);
    for (j, letter) in p.letters.iter().enumerate() {
        bits.set(j, letter.x());
        bits.set(n + j, letter.z());
    }
    SympVec { bits }
}

/// Phase-free preimage of `v`.
pub fn phi_inv(v: &SympVec) -> PauliString {
    PauliString { phase_exp: 0, letters: (0..v.n()).map(|j| v.letter(j)).collect() }
}

/// Exact product `p · q` including the phase.
///
/// Writing each letter as `i^{xz} X^x Z^z`, the product of two letters is
/// `i^{x1 z1 + x2 z2 + 2 z1 x2 − x3 z3}` times the letter for
/// `(x3, z3) = (x1 + x2, z1 + z2)`.
pub fn mul(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    if p.n() != q.n() {
        return Err(Error::LengthMismatch { left: p.n(), right: q.n() });
    }
    let mut exp = u32::from(p.phase_exp) + u32::from(q.phase_exp);
    let letters = p
        .letters
        .iter()
        .zip(&q.letters)
        .map(|(&a, &b)| {
            let (x1, z1) = (a.x() as u32, a.z() as u32);
            let (x2, z2) = (b.x() as u32, b.z() as u32);
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            exp += x1 * z1 + x2 * z2 + 2 * z1 * x2 + 3 * x3 * z3;
            Pauli::from_bits(x3 == 1, z3 == 1)
        })
        .collect();
    Ok(PauliString { phase_exp: (exp % 4) as u8, letters })
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase_exp {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Grammar: an optional prefix among `i`, `-`, `-i`, then one or more of
    /// `I`, `X`, `Y`, `Z`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        let letters = body
            .chars()
            .map(|c| {
                Pauli::from_symbol(c)
                    .ok_or_else(|| Error::PauliSyntax(format!("unexpected character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(phase, letters)
    }
}
