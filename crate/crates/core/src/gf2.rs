// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra over GF(2).
//!
//! [`BooleanMatrix`] stores rows as bit-packed [`BitVec`]s so that row
//! additions are word-wise XORs. Elimination records every row operation in
//! a [`RowOpTrace`]; callers that synthesize CNOT networks replay the trace
//! as gates.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("index ({row}, {col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is empty")]
    Empty,
}

const WORD: usize = 64;

/// Fixed-length bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics when `index >= len`.
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One elementary row operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    /// `target ← target ⊕ source`
    Add { source: usize, target: usize },
    Swap(usize, usize),
}

/// Ordered record of the row operations performed by an elimination.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowOpTrace {
    pub ops: Vec<RowOp>,
}

impl RowOpTrace {
    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn additions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ops.iter().filter_map(|op| match *op {
            RowOp::Add { source, target } => Some((source, target)),
            RowOp::Swap(..) => None,
        })
    }

    pub fn swaps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ops.iter().filter_map(|op| match *op {
            RowOp::Swap(a, b) => Some((a, b)),
            RowOp::Add { .. } => None,
        })
    }

    pub fn replay(&self, m: &mut BooleanMatrix) {
        for op in &self.ops {
            match *op {
                RowOp::Add { source, target } => m.add_row(source, target),
                RowOp::Swap(a, b) => m.swap_rows(a, b),
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BooleanMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. Rows must share a length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            let bools: Vec<bool> = r.iter().map(|&b| b & 1 == 1).collect();
            out.push(BitVec::from_bools(&bools));
        }
        Ok(BooleanMatrix { cols, rows: out })
    }

    pub fn from_bitvecs(cols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: cols,
                got: r.len(),
            });
        }
        Ok(BooleanMatrix { cols, rows })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::DimensionMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    fn check(&self, row: usize, col: usize) -> Result<(), Gf2Error> {
        if row >= self.rows.len() || col >= self.cols {
            return Err(Gf2Error::IndexOutOfRange {
                row,
                col,
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> Result<bool, Gf2Error> {
        self.check(row, col)?;
        Ok(self.rows[row].get(col))
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) -> Result<(), Gf2Error> {
        self.check(row, col)?;
        self.rows[row].set(col, value);
        Ok(())
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(c) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), Gf2Error> {
        if row.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// `target ← target ⊕ source`
    pub fn add_row(&mut self, source: usize, target: usize) {
        assert_ne!(source, target);
        let src = self.rows[source].clone();
        self.rows[target].xor_assign(&src);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn transpose(&self) -> BooleanMatrix {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BooleanMatrix) -> Result<BooleanMatrix, Gf2Error> {
        if self.cols != other.num_rows() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                got: other.num_rows(),
            });
        }
        let mut out = Self::zeros(self.rows.len(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.iter_ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Row echelon form (reduced when `full`), plus the operations that
    /// produced it. Pivot rows are chosen as the lowest-index candidate.
    pub fn gaussian_elimination(&self, full: bool) -> Result<(BooleanMatrix, RowOpTrace), Gf2Error> {
        if self.rows.is_empty() || self.cols == 0 {
            return Err(Gf2Error::Empty);
        }
        let mut m = self.clone();
        let mut trace = RowOpTrace::default();
        m.eliminate_in_place(full, &mut trace);
        Ok((m, trace))
    }

    /// Returns the pivot columns, one per nonzero row of the result.
    fn eliminate_in_place(&mut self, full: bool, trace: &mut RowOpTrace) -> Vec<usize> {
        let nrows = self.rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                trace.ops.push(RowOp::Swap(p, r));
            }
            let start = if full { 0 } else { r + 1 };
            for i in start..nrows {
                if i != r && self.rows[i].get(c) {
                    self.add_row(r, i);
                    trace.ops.push(RowOp::Add { source: r, target: i });
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate_in_place(false, &mut RowOpTrace::default()).len()
    }

    /// One solution of `self · x = b`, or `None` when `b` lies outside the
    /// column span. Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, Gf2Error> {
        if b.len() != self.rows.len() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows.len(),
                got: b.len(),
            });
        }
        let mut aug = BooleanMatrix::zeros(self.rows.len(), self.cols + 1);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                aug.rows[i].set(j, true);
            }
            if b.get(i) {
                aug.rows[i].set(self.cols, true);
            }
        }
        let pivots = aug.eliminate_in_place(true, &mut RowOpTrace::default());
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &c) in pivots.iter().enumerate() {
            if aug.rows[row].get(self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of `{ v : self · v = 0 }`, one vector per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.eliminate_in_place(true, &mut RowOpTrace::default());
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &c) in pivots.iter().enumerate() {
                    if m.rows[row].get(f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BooleanMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
