//! Sparse integer matrices with arbitrary-precision coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

/// Row-major sparse matrix over Z. No zero entries are stored; at most one
/// entry per `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triplets {
            m.add(r, c, v.into())?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Accumulate into the `(r, c)` entry, dropping it if it cancels to 0.
    pub fn add(&mut self, r: usize, c: usize, v: BigInt) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "entry ({r}, {c}) out of range for {}x{}",
                self.rows, self.cols
            )));
        }
        if v.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    /// Integer matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = SparseIntMatrix::zero(self.rows, rhs.cols);
        let rhs_rows = rhs.rows_vec();
        for (r, k, v) in self.entries() {
            for (c, w) in &rhs_rows[k] {
                out.add(r, *c, v * w)?;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over Z.
    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, c, v) in self.entries() {
            out[r] += v * &x[c];
        }
        Ok(out)
    }

    /// Rows as sorted `(col, value)` lists.
    pub fn rows_vec(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].push((c, v.clone()));
        }
        rows
    }
}
