use rayon::prelude::*;

use super::FinDimLieAlgebra;
use crate::error::Result;
use crate::linalg::{ChainComplex, RatMatrix, Rational};
use crate::report::{HomologyReport, Limits};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Basis of `Lambda^n` of a `d`-dimensional space: strictly increasing index
/// tuples in lexicographic order.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    d: usize,
    n: usize,
    subsets: Vec<Vec<usize>>,
}

impl ExteriorBasis {
    pub fn new(d: usize, n: usize) -> Self {
        let mut subsets = Vec::with_capacity(binomial(d, n));
        let mut cur: Vec<usize> = (0..n).collect();
        if n <= d {
            loop {
                subsets.push(cur.clone());
                // Advance the rightmost position that can still move.
                let Some(i) = (0..n).rev().find(|&i| cur[i] < d - n + i) else { break };
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = cur[j - 1] + 1;
                }
            }
        }
        Self { d, n, subsets }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Lexicographic rank of a strictly increasing tuple of length `n`.
    pub fn rank(&self, subset: &[usize]) -> usize {
        debug_assert_eq!(subset.len(), self.n);
        let mut r = 0;
        let mut prev = 0;
        for (i, &c) in subset.iter().enumerate() {
            for j in prev..c {
                r += binomial(self.d - 1 - j, self.n - 1 - i);
            }
            prev = c + 1;
        }
        r
    }
}

/// `d(x_1 ^ ... ^ x_n) = sum_{i<j} (-1)^(i+j) [x_i, x_j] ^ x_1 ^ ..^x_i^..^x_j^.. ^ x_n`
/// with 1-based positions.
pub fn ce_boundary(g: &FinDimLieAlgebra, n: usize) -> RatMatrix {
    let d = g.dim();
    let source = ExteriorBasis::new(d, n);
    if n == 0 {
        return RatMatrix::zeros(0, source.len());
    }
    let target = ExteriorBasis::new(d, n - 1);
    let columns = source
        .subsets()
        .par_iter()
        .map(|x| {
            let mut col: Vec<(usize, Rational)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let bracket = g.bracket_basis(x[i], x[j]);
                    if bracket.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> = x.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, v)| *v).collect();
                    // 0-based i + j has the same parity as 1-based (i+1) + (j+1).
                    let outer_negative = (i + j) % 2 == 1;
                    for (k, c) in bracket {
                        let Err(pos) = rest.binary_search(k) else { continue };
                        let mut wedge = rest.clone();
                        wedge.insert(pos, *k);
                        let negative = outer_negative ^ (pos % 2 == 1);
                        col.push((target.rank(&wedge), if negative { -c } else { c.clone() }));
                    }
                }
            }
            col
        })
        .collect();
    RatMatrix::from_columns_unchecked(target.len(), columns)
}

/// `Lambda^0 <- Lambda^1 <- ... <- Lambda^{cap+1}`.
pub fn ce_complex(g: &FinDimLieAlgebra, limits: &Limits) -> Result<ChainComplex> {
    let top = limits.cap + 1;
    for n in 0..=top {
        limits.check(n, binomial(g.dim(), n) as u128)?;
    }
    let dims = (0..=top).map(|n| binomial(g.dim(), n)).collect();
    let boundaries = (1..=top).map(|n| ce_boundary(g, n)).collect();
    ChainComplex::new(dims, boundaries)
}

/// `H_n(g, k)` for `0 <= n <= cap`.
pub fn lie_homology(g: &FinDimLieAlgebra, limits: &Limits) -> Result<HomologyReport> {
    let h = ce_complex(g, limits)?.homology(limits.cap, limits.representatives)?;
    Ok(HomologyReport::from_homology(format!("H({})", g.label()), h))
}
