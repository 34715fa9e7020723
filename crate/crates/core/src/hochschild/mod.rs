//! Hochschild and cyclic homology of finite-dimensional algebras.
//!
//! `C_n(A) = A^{(n+1)}` with the non-normalized standard complex. A basis
//! tensor `e_{a_0} (x) ... (x) e_{a_n}` has index `sum_k a_k d^(n-k)`
//! (big-endian base `d = dim A`).

mod cyclic;

pub use cyclic::{
    cyclic_bicomplex, cyclic_homology, lambda_complex, lambda_descends, lambda_projection, LambdaBasis,
};

use rayon::prelude::*;

use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::rational::{one, rat};
use crate::linalg::{ChainComplex, RatMatrix, Rational};
use crate::report::{power, HomologyReport, Limits};

fn pow(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

fn signed(x: &Rational, negative: bool) -> Rational {
    if negative {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Pushes the nonzero terms of `sum_{i<n} (-1)^i d_i` applied to the basis
/// tensor `idx` of degree `n`, plus the wrap-around face `(-1)^n d_n` if `wrap`.
pub(crate) fn bar_terms(a: &FinDimAlgebra, n: usize, idx: usize, wrap: bool, out: &mut Vec<(usize, Rational)>) {
    let d = a.dim();
    for i in 0..n {
        let w = pow(d, n - i - 1);
        let ai = (idx / (w * d)) % d;
        let aj = (idx / w) % d;
        let prefix = idx / (w * d * d);
        let suffix = idx % w;
        for (k, c) in a.basis_product(ai, aj) {
            out.push(((prefix * d + k) * w + suffix, signed(c, i % 2 == 1)));
        }
    }
    if wrap && n >= 1 {
        let top = pow(d, n);
        let a0 = idx / top;
        let an = idx % d;
        let middle = (idx % top) / d;
        for (k, c) in a.basis_product(an, a0) {
            out.push((k * pow(d, n - 1) + middle, signed(c, n % 2 == 1)));
        }
    }
}

fn bar_matrix(a: &FinDimAlgebra, n: usize, wrap: bool) -> RatMatrix {
    let d = a.dim();
    let columns = (0..pow(d, n + 1))
        .into_par_iter()
        .map(|idx| {
            let mut col = Vec::new();
            bar_terms(a, n, idx, wrap, &mut col);
            col
        })
        .collect();
    RatMatrix::from_columns_unchecked(pow(d, n), columns)
}

/// Hochschild boundary `b: C_n -> C_{n-1}`, `b = sum_{i=0}^{n} (-1)^i d_i`.
pub fn hochschild_boundary(a: &FinDimAlgebra, n: usize) -> Result<RatMatrix> {
    if n == 0 {
        return Err(Error::Shape("the Hochschild boundary starts in degree 1".into()));
    }
    Ok(bar_matrix(a, n, true))
}

/// Bar boundary `b': C_n -> C_{n-1}`, the faces `0..n-1` only.
pub fn bar_boundary(a: &FinDimAlgebra, n: usize) -> Result<RatMatrix> {
    if n == 0 {
        return Err(Error::Shape("the bar boundary starts in degree 1".into()));
    }
    Ok(bar_matrix(a, n, false))
}

/// Rotation `r(a_0, ..., a_n) = (a_n, a_0, ..., a_{n-1})` on indices.
pub(crate) fn rotate(d: usize, n: usize, idx: usize) -> usize {
    (idx % d) * pow(d, n) + idx / d
}

/// Signed cyclic operator `t = (-1)^n r` on `C_n`.
pub fn cyclic_operator(a: &FinDimAlgebra, n: usize) -> RatMatrix {
    let d = a.dim();
    let sign = if n % 2 == 1 { -one() } else { one() };
    let columns = (0..pow(d, n + 1)).map(|idx| vec![(rotate(d, n, idx), sign.clone())]).collect();
    RatMatrix::from_columns_unchecked(pow(d, n + 1), columns)
}

/// Norm operator `N = 1 + t + ... + t^n` on `C_n`.
pub fn norm_operator(a: &FinDimAlgebra, n: usize) -> RatMatrix {
    let d = a.dim();
    let columns = (0..pow(d, n + 1))
        .into_par_iter()
        .map(|idx| {
            let mut col = Vec::with_capacity(n + 1);
            let mut cur = idx;
            for i in 0..=n {
                let x = if (n * i) % 2 == 1 { -1 } else { 1 };
                col.push((cur, rat(x)));
                cur = rotate(d, n, cur);
            }
            col
        })
        .collect();
    RatMatrix::from_columns_unchecked(pow(d, n + 1), columns)
}

/// `1 - t` on `C_n`.
pub fn one_minus_t(a: &FinDimAlgebra, n: usize) -> RatMatrix {
    let size = pow(a.dim(), n + 1);
    RatMatrix::identity(size)
        .add_scaled(&cyclic_operator(a, n), &rat(-1))
        .expect("shapes agree")
}

fn check_tensor_spaces(a: &FinDimAlgebra, limits: &Limits) -> Result<()> {
    for n in 0..=limits.cap + 1 {
        limits.check(n, power(a.dim(), n + 1))?;
    }
    Ok(())
}

/// The standard complex `C_0 <- ... <- C_{cap+1}`.
pub fn hochschild_complex(a: &FinDimAlgebra, limits: &Limits) -> Result<ChainComplex> {
    check_tensor_spaces(a, limits)?;
    let top = limits.cap + 1;
    let dims = (0..=top).map(|n| pow(a.dim(), n + 1)).collect();
    let boundaries = (1..=top).map(|n| bar_matrix(a, n, true)).collect();
    ChainComplex::new(dims, boundaries)
}

/// `HH_n(A)` for `0 <= n <= cap`.
pub fn hochschild_homology(a: &FinDimAlgebra, limits: &Limits) -> Result<HomologyReport> {
    let c = hochschild_complex(a, limits)?;
    let h = c.homology(limits.cap, limits.representatives)?;
    Ok(HomologyReport::from_homology(format!("HH({})", a.label()), h))
}

/// Total complex of the two-column bicomplex `(b | -b')` joined by `1 - t`.
///
/// The `b'` column is contractible for unital `A`, so this computes `HH`
/// by a second, independent construction. `Tot_n = C_n (+) C_{n-1}`.
pub fn hochschild_bicomplex(a: &FinDimAlgebra, limits: &Limits) -> Result<ChainComplex> {
    let d = a.dim();
    let top = limits.cap + 1;
    for n in 0..=top {
        let size = power(d, n + 1) + if n > 0 { power(d, n) } else { 0 };
        limits.check(n, size)?;
    }
    let c = |n: usize| pow(d, n + 1);
    let minus_one = rat(-1);
    let mut dims = vec![c(0)];
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        dims.push(c(n) + c(n - 1));
        let row_sizes: Vec<usize> = if n == 1 { vec![c(0)] } else { vec![c(n - 1), c(n - 2)] };
        let mut blocks = vec![(0, 0, bar_matrix(a, n, true)), (0, 1, one_minus_t(a, n - 1))];
        if n >= 2 {
            blocks.push((1, 1, bar_matrix(a, n - 1, false).scale(&minus_one)));
        }
        boundaries.push(RatMatrix::from_blocks(&row_sizes, &[c(n), c(n - 1)], blocks)?);
    }
    ChainComplex::new(dims, boundaries)
}

/// `HH` by both constructions; any disagreement is an error.
pub fn hochschild_homology_checked(a: &FinDimAlgebra, limits: &Limits) -> Result<HomologyReport> {
    let report = hochschild_homology(a, limits)?;
    let other = hochschild_bicomplex(a, limits)?.homology(limits.cap, false)?;
    for (n, dim) in &report.dims {
        if other.dims[n] != *dim {
            return Err(Error::RouteDisagreement {
                what: report.label.clone(),
                degree: *n,
                primary: *dim,
                secondary: other.dims[n],
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
