//! Dense GF(2) linear algebra on bit-packed rows.
//!
//! `Gf2Matrix` stores each row as machine words (one `u64` per 64 columns),
//! which is plenty for the few-hundred-column matrices that show up in
//! check matrices and adjacency matrices here. All arithmetic is mod 2.

use crate::error::{Error, Result};

/// A packed bit row; shared representation for matrix rows and Pauli exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parse a string of '0'/'1' characters, index-ascending.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the overlap `self · other` mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_bitstring(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Concatenate two bit vectors.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> BitVec {
        let mut v = BitVec::zeros(range.len());
        for (j, i) in range.enumerate() {
            v.set(j, self.get(i));
        }
        v
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

/// An elementary row operation, recorded by [`Gf2Matrix::rref`] so callers can
/// replay the reduction on a different object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// Add row `src` into row `dst` (mod 2).
    AddInto { src: usize, dst: usize },
}

/// A dense rectangular matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Gf2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Build from 0/1 entries given row-major; handy in tests and fixtures.
    pub fn from_entries(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, entries[r * cols + c] == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.data[r].set(c, b);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVec> {
        self.data.iter()
    }

    pub fn col(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            v.set(r, self.get(r, c));
        }
        v
    }

    pub fn apply_rowop(&mut self, op: RowOp) {
        match op {
            RowOp::Swap(i, j) => self.data.swap(i, j),
            RowOp::AddInto { src, dst } => {
                let row = self.data[src].clone();
                self.data[dst].xor_assign(&row);
            }
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v` mod 2.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len());
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            out.set(r, self.data[r].dot(v));
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows);
        let ot = other.transpose();
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.set(r, c, self.data[r].dot(&ot.data[c]));
            }
        }
        out
    }

    /// Row-reduced echelon form. Returns the reduced matrix, the pivot
    /// columns in ascending order, and the row operations performed; replaying
    /// the operations on the input reproduces the output.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>, Vec<RowOp>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut ops = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            if r != pivot_row {
                m.apply_rowop(RowOp::Swap(r, pivot_row));
                ops.push(RowOp::Swap(r, pivot_row));
            }
            for other in 0..m.rows {
                if other != pivot_row && m.get(other, col) {
                    let op = RowOp::AddInto {
                        src: pivot_row,
                        dst: other,
                    };
                    m.apply_rowop(op);
                    ops.push(op);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots, ops)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis for the right kernel `{w : self·w = 0}`, one row per basis
    /// vector; the row count is `cols - rank`.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let (r, pivots, _) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut w = BitVec::zeros(self.cols);
            w.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, free) {
                    w.set(p, true);
                }
            }
            basis.push(w);
        }
        let mut out = Gf2Matrix::from_rows(basis);
        out.cols = self.cols;
        out
    }

    /// One solution `w` of `self·w = b`, if any.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows);
        // Reduce the augmented system [self | b].
        let mut aug = Gf2Matrix::from_rows(
            self.data
                .iter()
                .zip(b.iter())
                .map(|(row, bit)| {
                    let mut r = row.clone();
                    let mut e = BitVec::zeros(1);
                    e.set(0, bit);
                    r = r.concat(&e);
                    r
                })
                .collect(),
        );
        aug.cols = self.cols + 1;
        let (r, pivots, _) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut w = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            w.set(p, r.get(i, self.cols));
        }
        Some(w)
    }

    /// True when `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let (r, pivots, _) = self.rref();
        let mut rem = v.clone();
        for (i, &p) in pivots.iter().enumerate() {
            if rem.get(p) {
                rem.xor_assign(r.row(i));
            }
        }
        rem.is_zero()
    }

    /// Row spaces compared as sets.
    pub fn same_row_space(&self, other: &Gf2Matrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        self.rank() == other.rank() && other.row_iter().all(|r| self.row_space_contains(r))
    }
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {}", r.to_bitstring())?;
        }
        write!(f, "]")
    }
}
