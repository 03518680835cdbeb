use std::fmt;

use super::bitvec::{BitVec, MAX_BITS};
use crate::error::{Error, Result};

/// Dense binary matrix stored as a list of packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: (0..n).map(|i| BitVec::unit(n, i)).collect(), cols: n }
    }

    /// Builds a matrix from rows; all rows must share the length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if cols > MAX_BITS {
            return Err(Error::CapacityExceeded(cols));
        }
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
        }
        Ok(Self { rows, cols })
    }

    /// Parses rows of `0`/`1` characters. Convenient in tests and fixtures.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.replace(['|', ' '], "").parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(cols, parsed)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self { rows: indices.iter().map(|&i| self.rows[i]).collect(), cols: self.cols }
    }

    /// Columns `start..end` of every row.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        Self {
            rows: self.rows.iter().map(|r| r.slice(start, end)).collect(),
            cols: end - start,
        }
    }

    pub fn transpose(&self) -> Result<Self> {
        if self.nrows() > MAX_BITS {
            return Err(Error::CapacityExceeded(self.nrows()));
        }
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        Ok(t)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BitMat) -> Result<BitMat> {
        if self.cols != rhs.nrows() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.nrows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.ones().fold(BitVec::zeros(rhs.cols), |acc, j| acc ^ rhs.rows[j]))
            .collect();
        Ok(BitMat { rows, cols: rhs.cols })
    }

    /// Matrix-vector product `self · v^T` as a vector of length `nrows`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = BitVec::try_zeros(self.nrows())?;
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, (r.raw() & v.raw()).count_ones() & 1 == 1);
        }
        Ok(out)
    }

    /// Horizontal block `[self | rhs]`.
    pub fn hconcat(&self, rhs: &BitMat) -> Result<BitMat> {
        if self.nrows() != rhs.nrows() {
            return Err(Error::DimensionMismatch { expected: self.nrows(), found: rhs.nrows() });
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.concat(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMat { rows, cols: self.cols + rhs.cols })
    }

    /// For a `m × 2n` matrix `[A|B]` returns `[B|A]`.
    pub fn swap_halves(&self) -> Result<BitMat> {
        if !self.cols.is_multiple_of(2) {
            return Err(Error::OddLength(self.cols));
        }
        Ok(BitMat { rows: self.rows.iter().map(BitVec::swap_halves).collect(), cols: self.cols })
    }
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat {}x{} [", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
