use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported vector length: two 64-bit words.
pub const MAX_BITS: usize = 128;

/// A vector over GF(2) of at most [`MAX_BITS`] entries, packed into a `u128`.
///
/// Bit `i` of the vector is bit `i` of the packed word. Values are `Copy`, so
/// the enumeration loops in the decoders never allocate.
///
/// Ordering is lexicographic on the written bit string (entry 0 first, `0 < 1`),
/// which is the tie-break order used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    bits: u128,
    len: u8,
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl BitVec {
    /// Zero vector of length `len`.
    ///
    /// # Panics
    /// Panics if `len > MAX_BITS`.
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit vector length {len} exceeds {MAX_BITS}");
        Self { bits: 0, len: len as u8 }
    }

    /// Checked constructor for lengths coming from untrusted input.
    pub fn try_zeros(len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::CapacityExceeded(len));
        }
        Ok(Self::zeros(len))
    }

    /// Builds a vector from a packed word; bits at positions `>= len` are dropped.
    pub fn from_raw(bits: u128, len: usize) -> Self {
        let mut v = Self::zeros(len);
        v.bits = bits & low_mask(len);
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    #[inline]
    pub fn raw(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// # Panics
    /// Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len(), "bit index {i} out of range (len={})", self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn try_get(&self, i: usize) -> Result<bool> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(self.get(i))
    }

    /// # Panics
    /// Panics if `i >= len`.
    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len(), "bit index {i} out of range (len={})", self.len);
        if value {
            self.bits |= 1u128 << i;
        } else {
            self.bits &= !(1u128 << i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len(), "bit index {i} out of range (len={})", self.len);
        self.bits ^= 1u128 << i;
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Index of the first set entry.
    #[inline]
    pub fn first_one(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Standard (non-symplectic) inner product.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let len = self.len() + other.len();
        if len > MAX_BITS {
            return Err(Error::CapacityExceeded(len));
        }
        Ok(Self::from_raw(self.bits | (other.bits << self.len()), len))
    }

    /// Entries `range.start..range.end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len(), "slice {start}..{end} out of range");
        Self::from_raw(self.bits >> start, end - start)
    }

    /// For an even-length vector `(a|b)` returns `(b|a)`.
    ///
    /// # Panics
    /// Panics on odd length.
    pub fn swap_halves(&self) -> Self {
        assert!(self.len().is_multiple_of(2), "swap_halves needs an even length");
        let n = self.len() / 2;
        let mask = low_mask(n);
        let a = self.bits & mask;
        let b = (self.bits >> n) & mask;
        Self::from_raw(b | (a << n), self.len())
    }

    /// Key whose integer order is the lexicographic order of the bit string.
    #[inline]
    pub fn lex_key(&self) -> u128 {
        self.bits.reverse_bits()
    }

    pub(crate) fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXor for BitVec {
    type Output = BitVec;

    /// # Panics
    /// Panics if the lengths differ.
    fn bitxor(self, rhs: Self) -> BitVec {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        BitVec { bits: self.bits ^ rhs.bits, len: self.len }
    }
}

impl BitXorAssign for BitVec {
    fn bitxor_assign(&mut self, rhs: Self) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        self.bits ^= rhs.bits;
    }
}

impl BitAnd for BitVec {
    type Output = BitVec;

    fn bitand(self, rhs: Self) -> BitVec {
        assert_eq!(self.len, rhs.len, "and of vectors with different lengths");
        BitVec { bits: self.bits & rhs.bits, len: self.len }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, entry 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = Self::try_zeros(s.len())?;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Syntax {
                        line: 0,
                        msg: format!("unexpected character {other:?} in bit string"),
                    })
                }
            }
        }
        Ok(v)
    }
}
