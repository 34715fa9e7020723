use num_traits::Zero;

use super::rational::Rational;
use crate::error::{Error, Result};

/// A sparse vector with sorted, distinct, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVector {
    len: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero(len: usize) -> Self {
        Self { len, entries: Vec::new() }
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(len: usize, entries: Vec<(usize, Rational)>) -> Self {
        let entries = normalize_entries(entries);
        debug_assert!(entries.iter().all(|(i, _)| *i < len));
        Self { len, entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        Self { len: v.len(), entries }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }
}

pub(crate) fn normalize_entries(mut entries: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Sparse rational matrix stored by columns.
///
/// Every column keeps its entries sorted by row with no explicit zeros, so
/// iteration order (column-major, then row) is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Rational::from_integer(1.into()))]).collect();
        Self { rows: n, cols: n, columns }
    }

    /// Builds from raw columns; entries are sorted, merged and zero-filtered.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        let cols = columns.len();
        let columns: Vec<_> = columns.into_iter().map(normalize_entries).collect();
        for (c, col) in columns.iter().enumerate() {
            if let Some((r, _)) = col.iter().find(|(r, _)| *r >= rows) {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {rows} rows")));
            }
        }
        Ok(Self { rows, cols, columns })
    }

    pub(crate) fn from_columns_unchecked(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols = columns.len();
        let columns = columns.into_iter().map(normalize_entries).collect();
        Self { rows, cols, columns }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, x) in triplets {
            if c >= cols {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {cols} columns")));
            }
            columns[c].push((r, x));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!("row {r} has length {}, expected {ncols}", row.len())));
            }
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    columns[c].push((r, x.clone()));
                }
            }
        }
        Ok(Self { rows: nrows, cols: ncols, columns })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, Rational)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, Rational)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Iterates `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, x) in self.entries() {
            columns[r].push((c, x.clone()));
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, x) in self.entries() {
            out[r][c] = x.clone();
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for (k, y) in col {
                    for (r, x) in &self.columns[*k] {
                        acc.push((*r, x * y));
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_columns_unchecked(self.rows, columns))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Length { expected: self.cols, actual: v.len() });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (c, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (r, x) in &self.columns[c] {
                out[r.to_owned()] += x * y;
            }
        }
        Ok(out)
    }

    pub fn mul_sparse(&self, v: &SparseVector) -> Result<SparseVector> {
        if v.len() != self.cols {
            return Err(Error::Length { expected: self.cols, actual: v.len() });
        }
        let mut acc = Vec::new();
        for (c, y) in v.entries() {
            for (r, x) in &self.columns[*c] {
                acc.push((*r, x * y));
            }
        }
        Ok(SparseVector::from_entries(self.rows, acc))
    }

    /// Reorders rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::Shape("permutation length mismatch".into()));
        }
        let triplets = self.entries().map(|(r, c, x)| (row_perm[r], col_perm[c], x.clone()));
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    /// Assembles a block matrix from `(block_row, block_col, matrix)` pieces;
    /// missing blocks are zero.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: Vec<(usize, usize, RatMatrix)>) -> Result<Self> {
        let offsets = |sizes: &[usize]| -> Vec<usize> {
            sizes.iter().scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            }).collect()
        };
        let row_off = offsets(row_sizes);
        let col_off = offsets(col_sizes);
        let rows: usize = row_sizes.iter().sum();
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); col_sizes.iter().sum()];
        for (bi, bj, m) in blocks {
            if m.rows != row_sizes[bi] || m.cols != col_sizes[bj] {
                return Err(Error::Shape(format!(
                    "block ({bi}, {bj}) is {}x{}, expected {}x{}",
                    m.rows, m.cols, row_sizes[bi], col_sizes[bj]
                )));
            }
            for (c, col) in m.columns.into_iter().enumerate() {
                columns[col_off[bj] + c].extend(col.into_iter().map(|(r, x)| (row_off[bi] + r, x)));
            }
        }
        Ok(Self::from_columns_unchecked(rows, columns))
    }

    /// Kronecker product; rows and columns of `self` are the major index.
    pub fn kron(&self, other: &RatMatrix) -> Self {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (ra, x) in a {
                    for (rb, y) in b {
                        col.push((ra * other.rows + rb, x * y));
                    }
                }
                columns.push(col);
            }
        }
        Self { rows: self.rows * other.rows, cols: self.cols * other.cols, columns }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &RatMatrix, s: &Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("cannot add matrices of different shapes".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(r, x)| (*r, x * s))).collect())
            .collect();
        Ok(Self::from_columns_unchecked(self.rows, columns))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let columns = self.columns.iter().map(|c| c.iter().map(|(r, x)| (*r, x * s)).collect()).collect();
        Self::from_columns_unchecked(self.rows, columns)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &RatMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("row counts differ in concatenation".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Self { rows: self.rows, cols: self.cols + other.cols, columns })
    }
}
