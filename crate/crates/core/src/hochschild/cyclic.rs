//! Cyclic homology by Connes' quotient complex and by the `(b, b')` cyclic
//! bicomplex. The two must agree degree by degree.

use rayon::prelude::*;

use super::{bar_matrix, bar_terms, norm_operator, one_minus_t, pow, rotate};
use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::rational::{one, rat};
use crate::linalg::{ChainComplex, RatMatrix, Rational};
use crate::report::{power, HomologyReport, Limits};

/// Basis of `C^lambda_n = C_n / (1 - t)`: one element per rotation orbit
/// whose class survives, represented by its minimal rotation.
///
/// A tensor `x` with `r^k x = c` (`c` the minimal rotation) has class
/// `(-1)^(n k) [c]`; an orbit of size `s` dies when `n s` is odd.
#[derive(Clone, Debug)]
pub struct LambdaBasis {
    degree: usize,
    reps: Vec<usize>,
    lookup: Vec<Option<(u32, bool)>>,
}

impl LambdaBasis {
    pub fn new(d: usize, n: usize) -> Self {
        let size = pow(d, n + 1);
        let info: Vec<(usize, usize, bool)> = (0..size)
            .into_par_iter()
            .map(|idx| {
                let (mut min, mut kmin, mut period) = (idx, 0, n + 1);
                let mut cur = idx;
                for k in 1..=n {
                    cur = rotate(d, n, cur);
                    if cur == idx {
                        period = k;
                        break;
                    }
                    if cur < min {
                        min = cur;
                        kmin = k;
                    }
                }
                (min, kmin, (n * period).is_multiple_of(2))
            })
            .collect();
        let reps: Vec<usize> = info
            .iter()
            .enumerate()
            .filter(|(idx, (min, _, alive))| *alive && min == idx)
            .map(|(idx, _)| idx)
            .collect();
        let lookup = info
            .into_par_iter()
            .map(|(min, k, alive)| {
                alive.then(|| {
                    let id = reps.binary_search(&min).expect("canonical representative is listed");
                    (id as u32, (n * k) % 2 == 1)
                })
            })
            .collect();
        Self { degree: n, reps, lookup }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Tensor indices of the canonical representatives, ascending.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// `Some((orbit, negated))` for the class of a basis tensor, `None` if it is zero.
    pub fn class_of(&self, idx: usize) -> Option<(usize, bool)> {
        self.lookup[idx].map(|(id, neg)| (id as usize, neg))
    }

    fn project(&self, terms: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
        terms
            .into_iter()
            .filter_map(|(i, x)| self.class_of(i).map(|(id, neg)| (id, if neg { -x } else { x })))
            .collect()
    }
}

/// Quotient map `pi: C_n -> C^lambda_n`.
pub fn lambda_projection(a: &FinDimAlgebra, n: usize) -> RatMatrix {
    let basis = LambdaBasis::new(a.dim(), n);
    let columns = (0..pow(a.dim(), n + 1)).map(|idx| basis.project(vec![(idx, one())])).collect();
    RatMatrix::from_columns_unchecked(basis.dim(), columns)
}

fn lambda_boundary(a: &FinDimAlgebra, source: &LambdaBasis, target: &LambdaBasis) -> RatMatrix {
    let n = source.degree();
    let columns = source
        .representatives()
        .par_iter()
        .map(|&idx| {
            let mut terms = Vec::new();
            bar_terms(a, n, idx, true, &mut terms);
            target.project(terms)
        })
        .collect();
    RatMatrix::from_columns_unchecked(target.dim(), columns)
}

/// Checks that `b` descends to the quotient in degree `n`: `pi b (1 - t) = 0`.
pub fn lambda_descends(a: &FinDimAlgebra, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Shape("the boundary starts in degree 1".into()));
    }
    let composite = lambda_projection(a, n - 1).mul(&bar_matrix(a, n, true))?.mul(&one_minus_t(a, n))?;
    Ok(composite.is_zero())
}

fn check_lambda_spaces(a: &FinDimAlgebra, limits: &Limits) -> Result<()> {
    for n in 0..=limits.cap + 1 {
        limits.check(n, power(a.dim(), n + 1))?;
    }
    Ok(())
}

/// Connes' complex `C^lambda_0 <- ... <- C^lambda_{cap+1}`.
pub fn lambda_complex(a: &FinDimAlgebra, limits: &Limits) -> Result<ChainComplex> {
    check_lambda_spaces(a, limits)?;
    let top = limits.cap + 1;
    let bases: Vec<LambdaBasis> = (0..=top).map(|n| LambdaBasis::new(a.dim(), n)).collect();
    let dims = bases.iter().map(LambdaBasis::dim).collect();
    let boundaries = (1..=top).map(|n| lambda_boundary(a, &bases[n], &bases[n - 1])).collect();
    ChainComplex::new(dims, boundaries)
}

fn total_size(d: usize, n: usize) -> u128 {
    (0..=n).map(|q| power(d, q + 1)).fold(0u128, u128::saturating_add)
}

fn check_bicomplex_spaces(a: &FinDimAlgebra, limits: &Limits) -> Result<()> {
    for n in 0..=limits.cap + 1 {
        limits.check(n, total_size(a.dim(), n))?;
    }
    Ok(())
}

/// Total complex of the cyclic bicomplex, truncated at `cap + 1`.
///
/// Column `p` holds `C_{n-p}` in total degree `n`. Even columns carry `b`
/// vertically and `N` horizontally (`p >= 2`); odd columns carry `-b'`
/// vertically and `1 - t` horizontally.
pub fn cyclic_bicomplex(a: &FinDimAlgebra, limits: &Limits) -> Result<ChainComplex> {
    check_bicomplex_spaces(a, limits)?;
    let d = a.dim();
    let top = limits.cap + 1;
    let c = |q: usize| pow(d, q + 1);
    let minus_one = rat(-1);
    let b: Vec<Option<RatMatrix>> = (0..=top).map(|q| (q > 0).then(|| bar_matrix(a, q, true))).collect();
    let b_prime: Vec<Option<RatMatrix>> =
        (0..=top).map(|q| (q > 0).then(|| bar_matrix(a, q, false).scale(&minus_one))).collect();
    let one_t: Vec<RatMatrix> = (0..top).map(|q| one_minus_t(a, q)).collect();
    let norm: Vec<RatMatrix> = (0..top.saturating_sub(1)).map(|q| norm_operator(a, q)).collect();

    let mut dims = vec![c(0)];
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let col_sizes: Vec<usize> = (0..=n).map(|p| c(n - p)).collect();
        let row_sizes: Vec<usize> = (0..n).map(|p| c(n - 1 - p)).collect();
        dims.push(col_sizes.iter().sum());
        let mut blocks = Vec::new();
        for p in 0..=n {
            let q = n - p;
            if q >= 1 {
                let vertical = if p % 2 == 0 { &b[q] } else { &b_prime[q] };
                blocks.push((p, p, vertical.clone().expect("degree is positive")));
            }
            if p >= 1 {
                let horizontal = if p % 2 == 1 { one_t[q].clone() } else { norm[q].clone() };
                blocks.push((p - 1, p, horizontal));
            }
        }
        boundaries.push(RatMatrix::from_blocks(&row_sizes, &col_sizes, blocks)?);
    }
    ChainComplex::new(dims, boundaries)
}

/// `HC_n(A)` for `0 <= n <= cap` from the quotient complex, cross-checked
/// against the bicomplex. Disagreement is reported as an error.
pub fn cyclic_homology(a: &FinDimAlgebra, limits: &Limits) -> Result<HomologyReport> {
    check_lambda_spaces(a, limits)?;
    check_bicomplex_spaces(a, limits)?;
    let lambda = lambda_complex(a, limits)?.homology(limits.cap, limits.representatives)?;
    let bicomplex = cyclic_bicomplex(a, limits)?.homology(limits.cap, false)?;
    let label = format!("HC({})", a.label());
    for (n, dim) in &lambda.dims {
        let other = bicomplex.dims[n];
        if other != *dim {
            return Err(Error::RouteDisagreement { what: label, degree: *n, primary: *dim, secondary: other });
        }
    }
    Ok(HomologyReport::from_homology(label, lambda))
}
