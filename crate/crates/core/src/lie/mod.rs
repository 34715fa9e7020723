//! Finite-dimensional Lie algebras and their Chevalley-Eilenberg homology
//! with trivial coefficients.

mod coproduct;
mod exterior;

pub use coproduct::{
    coproduct_terms, lie_homology_primitive, primitive_dim, primitive_dims, reduced_coproduct, shuffle_coproduct, tensor_square_complex,
    TensorSquareLayout,
};
pub use exterior::{binomial, ce_boundary, ce_complex, lie_homology, ExteriorBasis};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{matrix_algebra, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::linalg::rational::{rat, zero};
use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct FinDimLieAlgebra {
    dim: usize,
    /// `[e_i, e_j]` at `i * dim + j`.
    table: Vec<Vec<(usize, Rational)>>,
    label: String,
}

impl fmt::Debug for FinDimLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinDimLieAlgebra").field("label", &self.label).field("dim", &self.dim).finish()
    }
}

impl FinDimLieAlgebra {
    /// Validates antisymmetry and the Jacobi identity on all basis triples.
    pub fn new(label: impl Into<String>, dim: usize, table: Vec<Vec<BTreeMap<usize, Rational>>>) -> Result<Self> {
        let label = label.into();
        if dim == 0 {
            return Err(Error::InvalidLieAlgebra("dimension must be positive".into()));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidLieAlgebra(format!("bracket table must be {dim}x{dim}")));
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            for (j, cell) in row.into_iter().enumerate() {
                if let Some(k) = cell.keys().find(|&&k| k >= dim) {
                    return Err(Error::InvalidLieAlgebra(format!("[e_{i}, e_{j}] refers to basis index {k}")));
                }
                flat.push(cell.into_iter().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        let g = Self { dim, table: flat, label };
        g.check_antisymmetric()?;
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_antisymmetric(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let ij = self.bracket_basis(i, j);
                let ji: Vec<(usize, Rational)> = self.bracket_basis(j, i).iter().map(|(k, x)| (*k, -x)).collect();
                if ij != ji.as_slice() {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "{}: antisymmetry fails on ({i}, {j})",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![zero(); n];
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, c) in self.bracket_basis(y, z) {
                            for (m, e) in self.bracket_basis(x, *l) {
                                acc[*m] += c * e;
                            }
                        }
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(Error::InvalidLieAlgebra(format!(
                            "{}: Jacobi identity fails on ({i}, {j}, {k})",
                            self.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::Length { expected: self.dim, actual: v.len() });
            }
        }
        let mut out = vec![zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }
}

/// The `d`-dimensional abelian Lie algebra.
pub fn abelian(d: usize) -> Result<FinDimLieAlgebra> {
    FinDimLieAlgebra::new(format!("ab_{d}"), d, vec![vec![BTreeMap::new(); d]; d])
}

/// `sl_2` with basis `(e, f, h)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2() -> FinDimLieAlgebra {
    let mut table = vec![vec![BTreeMap::new(); 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        table[i][j].insert(k, rat(v));
        table[j][i].insert(k, rat(-v));
    };
    set(0, 1, 2, 1);
    set(2, 0, 0, 2);
    set(2, 1, 1, -2);
    FinDimLieAlgebra::new("sl_2", 3, table).expect("sl_2 is a Lie algebra")
}

/// Underlying Lie algebra of an associative algebra, `[a, b] = ab - ba`.
pub fn lie_of(a: &FinDimAlgebra) -> FinDimLieAlgebra {
    let d = a.dim();
    let table = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut cell: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (k, x) in a.basis_product(i, j) {
                        *cell.entry(*k).or_insert_with(zero) += x;
                    }
                    for (k, x) in a.basis_product(j, i) {
                        *cell.entry(*k).or_insert_with(zero) -= x;
                    }
                    cell
                })
                .collect()
        })
        .collect();
    let label = match a.label().strip_prefix("M_") {
        Some(rest) => format!("gl_{rest}"),
        None => format!("Lie({})", a.label()),
    };
    FinDimLieAlgebra::new(label, d, table).expect("commutator bracket of an associative algebra is a Lie bracket")
}

/// `gl_n(A) = Lie(M_n(A))`.
pub fn gl(n: usize, a: &FinDimAlgebra) -> Result<FinDimLieAlgebra> {
    Ok(lie_of(&matrix_algebra(a, n)?))
}
