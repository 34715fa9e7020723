//! Unshuffle coproduct on the Chevalley-Eilenberg complex and primitive
//! parts of Lie homology.
//!
//! `Lambda g (x) Lambda g` carries `D(x (x) y) = dx (x) y + (-1)^p x (x) dy`
//! for `x` of degree `p`, which makes the coproduct a chain map.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::exterior::{binomial, ce_boundary, ce_complex, ExteriorBasis};
use super::FinDimLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::rational::rat;
use crate::linalg::{rank, ChainComplex, RatMatrix, Rational, SparseVector};
use crate::report::{HomologyReport, Limits};

/// Coordinates on `T_n = sum_{p+q=n} Lambda^p (x) Lambda^q`, blocks ordered by
/// `p`, each block row-major in `(Lambda^p index, Lambda^q index)`.
#[derive(Clone, Debug)]
pub struct TensorSquareLayout {
    d: usize,
    n: usize,
    offsets: Vec<usize>,
    len: usize,
}

impl TensorSquareLayout {
    pub fn new(d: usize, n: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        let mut len = 0;
        for p in 0..=n {
            offsets.push(len);
            len += binomial(d, p) * binomial(d, n - p);
        }
        Self { d, n, offsets, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        (0..=self.n).map(|p| binomial(self.d, p) * binomial(self.d, self.n - p)).collect()
    }

    pub fn index(&self, p: usize, left: usize, right: usize) -> usize {
        self.offsets[p] + left * binomial(self.d, self.n - p) + right
    }

    /// Bidegree `p` of a coordinate.
    pub fn bidegree(&self, idx: usize) -> usize {
        self.offsets.partition_point(|&o| o <= idx) - 1
    }
}

/// `Delta(x_1 ^ ... ^ x_n) = sum_S sign(S) x_S (x) x_{S^c}` on one basis
/// tuple; the sign is that of the unshuffle moving `S` to the front.
pub fn coproduct_terms(x: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let n = x.len();
    (0u64..1 << n)
        .map(|mask| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut inversions = 0;
            for (pos, &v) in x.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    inversions += pos - left.len();
                    left.push(v);
                } else {
                    right.push(v);
                }
            }
            (left, right, inversions % 2 == 1)
        })
        .collect()
}

fn coproduct_sparse(d: usize, n: usize, chain: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let basis = ExteriorBasis::new(d, n);
    let layout = TensorSquareLayout::new(d, n);
    let bases: Vec<ExteriorBasis> = (0..=n).map(|p| ExteriorBasis::new(d, p)).collect();
    let mut out = Vec::new();
    for (i, c) in chain {
        for (left, right, negative) in coproduct_terms(basis.subset(*i)) {
            let p = left.len();
            let idx = layout.index(p, bases[p].rank(&left), bases[n - p].rank(&right));
            out.push((idx, if negative { -c } else { c.clone() }));
        }
    }
    SparseVector::from_entries(layout.len(), out).entries().to_vec()
}

/// Coproduct of a chain in `Lambda^n g`, as coordinates on `T_n`.
pub fn shuffle_coproduct(g: &FinDimLieAlgebra, n: usize, chain: &[Rational]) -> Result<Vec<Rational>> {
    let expected = binomial(g.dim(), n);
    if chain.len() != expected {
        return Err(Error::Length { expected, actual: chain.len() });
    }
    let sparse = SparseVector::from_dense(chain);
    let out = coproduct_sparse(g.dim(), n, sparse.entries());
    Ok(SparseVector::from_entries(TensorSquareLayout::new(g.dim(), n).len(), out).to_dense())
}

/// `Delta z - z (x) 1 - 1 (x) z`, i.e. the bidegrees `0 < p < n` of `Delta z`.
pub fn reduced_coproduct(g: &FinDimLieAlgebra, n: usize, chain: &SparseVector) -> Result<SparseVector> {
    let expected = binomial(g.dim(), n);
    if chain.len() != expected {
        return Err(Error::Length { expected, actual: chain.len() });
    }
    let layout = TensorSquareLayout::new(g.dim(), n);
    let entries = coproduct_sparse(g.dim(), n, chain.entries())
        .into_iter()
        .filter(|(i, _)| {
            let p = layout.bidegree(*i);
            p > 0 && p < n
        })
        .collect();
    Ok(SparseVector::from_entries(layout.len(), entries))
}

pub(crate) fn tensor_square_boundary(
    d: usize,
    m: usize,
    boundaries: &[RatMatrix],
    koszul: bool,
) -> Result<RatMatrix> {
    let source = TensorSquareLayout::new(d, m);
    let target = TensorSquareLayout::new(d, m - 1);
    let mut blocks = Vec::new();
    for p in 0..=m {
        let q = m - p;
        if p >= 1 {
            let id = RatMatrix::identity(binomial(d, q));
            blocks.push((p - 1, p, boundaries[p].kron(&id)));
        }
        if q >= 1 {
            let id = RatMatrix::identity(binomial(d, p));
            let mut piece = id.kron(&boundaries[q]);
            if koszul && p % 2 == 1 {
                piece = piece.scale(&rat(-1));
            }
            blocks.push((p, p, piece));
        }
    }
    RatMatrix::from_blocks(&target.block_sizes(), &source.block_sizes(), blocks)
}

fn ce_boundaries(g: &FinDimLieAlgebra, top: usize) -> Vec<RatMatrix> {
    // Index 0 is a placeholder so that `v[n]` is `d_n`.
    let mut v = vec![RatMatrix::zeros(0, 1)];
    v.extend((1..=top).map(|n| ce_boundary(g, n)));
    v
}

/// `T_0 <- T_1 <- ... <- T_top` with the Koszul-signed differential.
pub fn tensor_square_complex(g: &FinDimLieAlgebra, top: usize) -> Result<ChainComplex> {
    let d = g.dim();
    let ce = ce_boundaries(g, top);
    let dims = (0..=top).map(|m| TensorSquareLayout::new(d, m).len()).collect();
    let boundaries = (1..=top).map(|m| tensor_square_boundary(d, m, &ce, true)).collect::<Result<_>>()?;
    ChainComplex::new(dims, boundaries)
}

fn check_primitive_budget(g: &FinDimLieAlgebra, limits: &Limits) -> Result<()> {
    for n in 0..=limits.cap + 1 {
        limits.check(n, binomial(g.dim(), n) as u128)?;
        limits.check(n, binomial(2 * g.dim(), n) as u128)?;
    }
    Ok(())
}

/// Dimensions of the primitive parts `Prim H_n` for `1 <= n <= cap`.
///
/// A class `[z]` is primitive iff its reduced coproduct is a boundary in the
/// tensor square; over a basis of representatives this is one rank computation.
pub fn primitive_dims(g: &FinDimLieAlgebra, limits: &Limits) -> Result<BTreeMap<usize, usize>> {
    Ok(lie_homology_primitive(g, limits)?.prim_dims.unwrap_or_default())
}

/// `dim Prim H_n(g)`; needs `1 <= n <= cap`.
pub fn primitive_dim(g: &FinDimLieAlgebra, n: usize, limits: &Limits) -> Result<usize> {
    if n == 0 || n > limits.cap {
        return Err(Error::Shape(format!("primitive degree {n} outside 1..={}", limits.cap)));
    }
    let dims = primitive_dims(g, &Limits { cap: n, ..*limits })?;
    Ok(dims[&n])
}

/// Homology dimensions together with primitive dimensions.
pub fn lie_homology_primitive(g: &FinDimLieAlgebra, limits: &Limits) -> Result<HomologyReport> {
    check_primitive_budget(g, limits)?;
    let reps_limits = Limits { representatives: true, ..*limits };
    let h = ce_complex(g, &reps_limits)?.homology(limits.cap, true)?;
    let d = g.dim();
    let ce = ce_boundaries(g, limits.cap + 1);
    let prims: Vec<(usize, usize)> = (1..=limits.cap)
        .into_par_iter()
        .map(|n| {
            let reps = &h.representatives[&n];
            if reps.is_empty() {
                return Ok((n, 0));
            }
            let d_in = tensor_square_boundary(d, n + 1, &ce, true)?;
            let base = rank(&d_in);
            let mut columns: Vec<Vec<(usize, Rational)>> = d_in.columns().to_vec();
            for z in reps {
                columns.push(reduced_coproduct(g, n, z)?.entries().to_vec());
            }
            let joint = RatMatrix::from_columns(d_in.row_count(), columns)?;
            Ok((n, reps.len() - (rank(&joint) - base)))
        })
        .collect::<Result<_>>()?;
    let mut report = HomologyReport::from_homology(format!("H({})", g.label()), h);
    if !limits.representatives {
        report.representatives.clear();
    }
    report.prim_dims = Some(prims.into_iter().collect());
    Ok(report)
}
