//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are split into connected components of their row/column
//! incidence graph before any elimination: the rank of a block-diagonal
//! matrix is the sum of the block ranks, and boundary matrices of tensor
//! complexes fall apart into many small blocks. Inside a block, rows and
//! columns holding a single nonzero are peeled off first, then the rest goes
//! through fraction-free elimination.

pub mod complex;
pub(crate) mod elim;
pub mod matrix;
pub mod rational;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

pub use complex::ChainComplex;
pub use matrix::{RatMatrix, SparseVector};
pub use rational::Rational;

use crate::error::{Error, Result};
use elim::{integerize, rank_of_vectors, Echelon, IntVec};

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A connected block of a sparse matrix: global row and column ids, ascending.
#[derive(Debug, Clone, Default)]
pub(crate) struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Blocks of nonzero columns; columns without entries are not listed.
pub(crate) fn blocks(m: &RatMatrix) -> Vec<Block> {
    let rows = m.row_count();
    let mut dsu = Dsu::new(rows + m.col_count());
    for (c, col) in m.columns().iter().enumerate() {
        for (r, _) in col {
            dsu.union(*r, rows + c);
        }
    }
    let mut slot = vec![usize::MAX; rows + m.col_count()];
    let mut out: Vec<Block> = Vec::new();
    for (c, col) in m.columns().iter().enumerate() {
        if col.is_empty() {
            continue;
        }
        let root = dsu.find(rows + c);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Block::default());
        }
        out[slot[root]].cols.push(c);
    }
    for r in 0..rows {
        let root = dsu.find(r);
        if slot[root] != usize::MAX {
            out[slot[root]].rows.push(r);
        }
    }
    out
}

/// Restricts `m` to a block, relabelling rows to local indices.
fn local_columns(m: &RatMatrix, block: &Block) -> Vec<Vec<(usize, Rational)>> {
    block
        .cols
        .iter()
        .map(|&c| {
            m.column(c)
                .iter()
                .map(|(r, x)| (block.rows.binary_search(r).expect("row outside block"), x.clone()))
                .collect()
        })
        .collect()
}

fn block_rank(nrows: usize, columns: &[Vec<(usize, Rational)>]) -> usize {
    let ncols = columns.len();
    if ncols == 1 {
        return 1;
    }
    let mut row_adj: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    for (c, col) in columns.iter().enumerate() {
        for (r, _) in col {
            row_adj[*r].push(c);
        }
    }
    let mut col_active = vec![true; ncols];
    let mut row_active = vec![true; nrows];
    let mut col_count: Vec<usize> = columns.iter().map(Vec::len).collect();
    let mut row_count: Vec<usize> = row_adj.iter().map(Vec::len).collect();
    let mut rank = 0;

    // Singleton peeling: a column (row) with one live entry contributes one to
    // the rank, and its row (column) can be dropped from the rest.
    let mut col_queue: Vec<usize> = (0..ncols).filter(|&c| col_count[c] == 1).collect();
    let mut row_queue: Vec<usize> = (0..nrows).filter(|&r| row_count[r] == 1).collect();
    loop {
        if let Some(c) = col_queue.pop() {
            if !col_active[c] || col_count[c] != 1 {
                continue;
            }
            let r = columns[c].iter().map(|(r, _)| *r).find(|&r| row_active[r]).unwrap();
            rank += 1;
            col_active[c] = false;
            row_active[r] = false;
            for &c2 in &row_adj[r] {
                if col_active[c2] {
                    col_count[c2] -= 1;
                    match col_count[c2] {
                        0 => col_active[c2] = false,
                        1 => col_queue.push(c2),
                        _ => {}
                    }
                }
            }
        } else if let Some(r) = row_queue.pop() {
            if !row_active[r] || row_count[r] != 1 {
                continue;
            }
            let c = row_adj[r].iter().copied().find(|&c| col_active[c]).unwrap();
            rank += 1;
            row_active[r] = false;
            col_active[c] = false;
            for (r2, _) in &columns[c] {
                if row_active[*r2] {
                    row_count[*r2] -= 1;
                    match row_count[*r2] {
                        0 => row_active[*r2] = false,
                        1 => row_queue.push(*r2),
                        _ => {}
                    }
                }
            }
        } else {
            break;
        }
    }

    let live_cols: Vec<usize> = (0..ncols).filter(|&c| col_active[c]).collect();
    let live_rows: Vec<usize> = (0..nrows).filter(|&r| row_active[r]).collect();
    if live_cols.is_empty() || live_rows.is_empty() {
        return rank;
    }
    // Feed the shorter side as vectors; order indices sparse-first.
    let vectors: Vec<Vec<(usize, Rational)>> = if live_cols.len() <= live_rows.len() {
        live_cols
            .iter()
            .map(|&c| columns[c].iter().filter(|(r, _)| row_active[*r]).cloned().collect())
            .collect()
    } else {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for &c in &live_cols {
            for (r, x) in &columns[c] {
                if row_active[*r] {
                    rows[*r].push((c, x.clone()));
                }
            }
        }
        live_rows.iter().map(|&r| std::mem::take(&mut rows[r])).collect()
    };
    rank + rank_sparse_vectors(vectors)
}

fn rank_sparse_vectors(vectors: Vec<Vec<(usize, Rational)>>) -> usize {
    let mut counts: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for v in &vectors {
        for (i, _) in v {
            *counts.entry(*i).or_default() += 1;
        }
    }
    let mut order: Vec<usize> = counts.keys().copied().collect();
    order.sort_by_key(|i| (counts[i], *i));
    let relabel: std::collections::HashMap<usize, usize> =
        order.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let mut ints: Vec<IntVec<BigInt>> = vectors
        .iter()
        .map(|v| {
            let mut w: Vec<(usize, Rational)> = v.iter().map(|(i, x)| (relabel[i], x.clone())).collect();
            w.sort_by_key(|(i, _)| *i);
            integerize(&w)
        })
        .collect();
    ints.sort_by_key(|v| v.len());
    rank_of_vectors(&ints)
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    blocks(m)
        .par_iter()
        .map(|b| block_rank(b.rows.len(), &local_columns(m, b)))
        .sum()
}

/// Basis of the right null space, as sparse vectors with integer entries.
pub fn kernel_sparse(m: &RatMatrix) -> Vec<SparseVector> {
    let n = m.col_count();
    // Each basis vector is keyed by its free column so the order is canonical.
    let mut out: Vec<(usize, SparseVector)> = (0..n)
        .filter(|&c| m.column(c).is_empty())
        .map(|c| (c, SparseVector::from_entries(n, vec![(c, rational::one())])))
        .collect();
    let per_block: Vec<Vec<(usize, SparseVector)>> = blocks(m)
        .par_iter()
        .map(|b| {
            let cols = local_columns(m, b);
            block_kernel(b.rows.len(), &cols)
                .into_iter()
                .map(|(f, v)| {
                    let entries = v.into_iter().map(|(i, x)| (b.cols[i], x)).collect();
                    (b.cols[f], SparseVector::from_entries(n, entries))
                })
                .collect()
        })
        .collect();
    out.extend(per_block.into_iter().flatten());
    out.sort_by_key(|(f, _)| *f);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Basis of the right null space as dense coordinate vectors.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    kernel_sparse(m).iter().map(SparseVector::to_dense).collect()
}

/// Kernel vectors of one block, each paired with its free column.
fn block_kernel(nrows: usize, columns: &[Vec<(usize, Rational)>]) -> Vec<(usize, Vec<(usize, Rational)>)> {
    let ncols = columns.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
    for (c, col) in columns.iter().enumerate() {
        for (r, x) in col {
            rows[*r].push((c, x.clone()));
        }
    }
    let mut ech = Echelon::<BigInt>::default();
    for r in &rows {
        ech.insert(integerize(r)).expect("BigInt elimination cannot overflow");
    }
    let mut piv = ech.into_pivots();
    // Back-substitute to reduced row echelon form.
    let leads: Vec<usize> = piv.iter().map(|p| p[0].0).collect();
    for i in (0..piv.len()).rev() {
        for j in i + 1..piv.len() {
            let col = leads[j];
            if let Ok(k) = piv[i].binary_search_by_key(&col, |(c, _)| *c) {
                let x = piv[i][k].1.clone();
                let p = piv[j][0].1.clone();
                piv[i] = combine(&piv[i], &p, &piv[j], &x);
            }
        }
    }
    let mut is_lead = vec![false; ncols];
    for &l in &leads {
        is_lead[l] = true;
    }
    let mut by_col: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); ncols];
    for (i, p) in piv.iter().enumerate() {
        for (c, x) in p.iter().skip(1) {
            by_col[*c].push((i, x.clone()));
        }
    }
    (0..ncols)
        .filter(|&f| !is_lead[f])
        .map(|f| {
            let mut v: Vec<(usize, Rational)> = vec![(f, rational::one())];
            for (i, x) in &by_col[f] {
                v.push((leads[*i], -Rational::new(x.clone(), piv[*i][0].1.clone())));
            }
            let ints = integerize(&matrix::normalize_entries(v));
            (f, ints.into_iter().map(|(i, x)| (i, Rational::from_integer(x))).collect())
        })
        .collect()
}

/// `p*v - x*w`, reduced to a primitive vector.
fn combine(v: &IntVec<BigInt>, p: &BigInt, w: &IntVec<BigInt>, x: &BigInt) -> IntVec<BigInt> {
    let mut acc: Vec<(usize, Rational)> = Vec::with_capacity(v.len() + w.len());
    acc.extend(v.iter().map(|(i, a)| (*i, Rational::from_integer(a * p))));
    acc.extend(w.iter().map(|(i, a)| (*i, Rational::from_integer(-(a * x)))));
    let merged = matrix::normalize_entries(acc);
    integerize(&merged)
}

/// Whether `v` lies in the rational span of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool> {
    for b in basis {
        if b.len() != v.len() {
            return Err(Error::Length { expected: v.len(), actual: b.len() });
        }
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let vecs: Vec<IntVec<BigInt>> = basis
        .iter()
        .map(|b| integerize(SparseVector::from_dense(b).entries()))
        .collect();
    let base_rank = rank_of_vectors(&vecs);
    let mut with_v = vecs;
    with_v.push(integerize(SparseVector::from_dense(v).entries()));
    Ok(rank_of_vectors(&with_v) == base_rank)
}

/// Sparse-vector variant of [`in_span`].
pub fn in_span_sparse(v: &SparseVector, basis: &[SparseVector]) -> Result<bool> {
    for b in basis {
        if b.len() != v.len() {
            return Err(Error::Length { expected: v.len(), actual: b.len() });
        }
    }
    if v.is_zero() {
        return Ok(true);
    }
    let vecs: Vec<IntVec<BigInt>> = basis.iter().map(|b| integerize(b.entries())).collect();
    let base_rank = rank_of_vectors(&vecs);
    let mut with_v = vecs;
    with_v.push(integerize(v.entries()));
    Ok(rank_of_vectors(&with_v) == base_rank)
}

/// Reduced row echelon form of dense rows; returns the nonzero rows and
/// their pivot columns. Meant for small systems.
pub fn row_reduce(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// `nullity(d_out) - rank(d_in)` for a composable pair with `d_out * d_in = 0`.
pub fn homology_dim(d_out: &RatMatrix, d_in: &RatMatrix) -> Result<usize> {
    if d_out.col_count() != d_in.row_count() {
        return Err(Error::Shape(format!(
            "outgoing map has {} columns but incoming map has {} rows",
            d_out.col_count(),
            d_in.row_count()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex("composite of the two maps is nonzero".into()));
    }
    let nullity = d_out.col_count() - rank(d_out);
    Ok(nullity - rank(d_in))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational::rat;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
        let k = kernel_basis(&m(&[vec![1, -1]]));
        assert_eq!(k, vec![vec![rat(1), rat(1)]]);
        let k = kernel_basis(&RatMatrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&RatMatrix::from_dense(&k).unwrap()), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 4 - rank(&a));
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn homology_dim_examples() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(homology_dim(&z, &z).unwrap(), 1);
        assert_eq!(homology_dim(&RatMatrix::identity(2), &RatMatrix::zeros(2, 1)).unwrap(), 0);
        let d_out = m(&[vec![1, -1]]);
        let d_in = m(&[vec![1], vec![1]]);
        assert_eq!(homology_dim(&d_out, &d_in).unwrap(), 0);
    }

    #[test]
    fn homology_dim_rejects_bad_pairs() {
        let d_out = m(&[vec![1, 0]]);
        let d_in = m(&[vec![1], vec![1]]);
        assert!(matches!(homology_dim(&d_out, &d_in), Err(Error::NotAComplex(_))));
        assert!(matches!(homology_dim(&d_out, &RatMatrix::zeros(3, 1)), Err(Error::Shape(_))));
    }

    #[test]
    fn span_examples() {
        assert!(in_span(&[rat(0), rat(0)], &[vec![rat(1), rat(1)]]).unwrap());
        assert!(!in_span(&[rat(1), rat(0)], &[vec![rat(0), rat(1)]]).unwrap());
        assert!(in_span(&[rat(2), rat(2)], &[vec![rat(1), rat(1)]]).unwrap());
        assert!(in_span(&[rat(1)], &[vec![rat(1), rat(1)]]).is_err());
    }

    #[test]
    fn fractional_entries() {
        let a = RatMatrix::from_dense(&[
            vec![rational::ratio(1, 2), rational::ratio(1, 3)],
            vec![rational::ratio(3, 2), rat(1)],
        ])
        .unwrap();
        assert_eq!(rank(&a), 1);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }
}
