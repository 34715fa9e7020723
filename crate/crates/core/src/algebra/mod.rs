//! Finite-dimensional unital associative algebras over the rationals, given
//! by structure constants `e_i e_j = sum_k c_{ijk} e_k`.

pub mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::{one, rat, zero};
use crate::linalg::{self, Rational};

#[derive(Clone)]
pub struct FinDimAlgebra {
    dim: usize,
    /// Row-major `dim x dim` table of sparse products.
    table: Vec<Vec<(usize, Rational)>>,
    unit: Vec<Rational>,
    label: String,
    commutator_rref: OnceLock<(Vec<Vec<Rational>>, Vec<usize>)>,
}

impl fmt::Debug for FinDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinDimAlgebra").field("label", &self.label).field("dim", &self.dim).finish()
    }
}

impl PartialEq for FinDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table && self.unit == other.unit && self.label == other.label
    }
}

impl Eq for FinDimAlgebra {}

impl FinDimAlgebra {
    /// Validates shape, associativity on all basis triples and the unit law.
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        table: Vec<Vec<BTreeMap<usize, Rational>>>,
        unit: Vec<Rational>,
    ) -> Result<Self> {
        let label = label.into();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidAlgebra(format!("multiplication table must be {dim}x{dim}")));
        }
        if unit.len() != dim {
            return Err(Error::Length { expected: dim, actual: unit.len() });
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            for (j, cell) in row.into_iter().enumerate() {
                if let Some(k) = cell.keys().find(|&&k| k >= dim) {
                    return Err(Error::InvalidAlgebra(format!("e_{i} e_{j} refers to basis index {k}")));
                }
                flat.push(cell.into_iter().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        let alg = Self { dim, table: flat, unit, label, commutator_rref: OnceLock::new() };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let mut lhs = vec![zero(); self.dim];
                    for (l, x) in ij {
                        for (m, y) in self.basis_product(*l, k) {
                            lhs[*m] += x * y;
                        }
                    }
                    let mut rhs = vec![zero(); self.dim];
                    for (l, x) in self.basis_product(j, k) {
                        for (m, y) in self.basis_product(i, *l) {
                            rhs[*m] += x * y;
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "{}: associativity fails on basis triple ({i}, {j}, {k})",
                            self.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.mul_coords(&self.unit, &e) != e || self.mul_coords(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("{}: unit law fails on e_{i}", self.label)));
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

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![zero(); self.dim];
        v[i] = one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Rational> {
        vec![zero(); self.dim]
    }

    /// Bilinear product on coordinate vectors; lengths are assumed correct.
    pub fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// Sparse product table as nested maps, the inverse of [`FinDimAlgebra::new`].
    pub fn table(&self) -> Vec<Vec<BTreeMap<usize, Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j).iter().cloned().collect()).collect())
            .collect()
    }

    fn commutator_rref(&self) -> &(Vec<Vec<Rational>>, Vec<usize>) {
        self.commutator_rref.get_or_init(|| {
            let mut rows = Vec::new();
            for i in 0..self.dim {
                for j in i + 1..self.dim {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let c: Vec<Rational> = self
                        .mul_coords(&ei, &ej)
                        .into_iter()
                        .zip(self.mul_coords(&ej, &ei))
                        .map(|(x, y)| x - y)
                        .collect();
                    if c.iter().any(|x| !x.is_zero()) {
                        rows.push(c);
                    }
                }
            }
            linalg::row_reduce(rows)
        })
    }

    /// Dimension of `[A, A]`, the span of all commutators.
    pub fn commutator_rank(&self) -> usize {
        self.commutator_rref().0.len()
    }

    /// `dim A/[A,A]`, which is both `HH_0` and `HC_0`.
    pub fn cocenter_dim(&self) -> usize {
        self.dim - self.commutator_rank()
    }

    /// Canonical representative of the class of `v` in `A/[A,A]`: the unique
    /// element of `v + [A,A]` vanishing on the pivot coordinates of `[A,A]`.
    pub fn cocenter_normal_form(&self, v: &[Rational]) -> Vec<Rational> {
        let (rows, pivots) = self.commutator_rref();
        let mut v = v.to_vec();
        for (row, &p) in rows.iter().zip(pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
        v
    }

    pub fn is_commutative(&self) -> bool {
        self.commutator_rank() == 0
    }
}

/// An element of a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    coords: Vec<Rational>,
    parent: Arc<FinDimAlgebra>,
}

impl AlgebraElement {
    pub fn new(parent: Arc<FinDimAlgebra>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != parent.dim() {
            return Err(Error::Length { expected: parent.dim(), actual: coords.len() });
        }
        Ok(Self { coords, parent })
    }

    pub fn zero(parent: Arc<FinDimAlgebra>) -> Self {
        let coords = parent.zero_vector();
        Self { coords, parent }
    }

    pub fn one(parent: Arc<FinDimAlgebra>) -> Self {
        let coords = parent.unit().to_vec();
        Self { coords, parent }
    }

    pub fn basis(parent: Arc<FinDimAlgebra>, i: usize) -> Self {
        let coords = parent.basis_vector(i);
        Self { coords, parent }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn parent(&self) -> &Arc<FinDimAlgebra> {
        &self.parent
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch {
                left: self.parent.label().to_string(),
                right: other.parent.label().to_string(),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let coords = self.parent.mul_coords(&self.coords, &other.coords);
        Ok(Self { coords, parent: self.parent.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { coords, parent: self.parent.clone() })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let coords = self.coords.iter().map(|a| a * s).collect();
        Self { coords, parent: self.parent.clone() }
    }
}

/// Algebra multiplication `a * b`.
pub fn alg_mul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.mul(b)
}

fn table_from(dim: usize, f: impl Fn(usize, usize) -> Vec<(usize, Rational)>) -> Vec<Vec<BTreeMap<usize, Rational>>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut cell = BTreeMap::new();
                    for (k, x) in f(i, j) {
                        *cell.entry(k).or_insert_with(zero) += x;
                    }
                    cell
                })
                .collect()
        })
        .collect()
}

fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![zero(); dim];
    v[i] = one();
    v
}

/// The ground field `k = Q`.
pub fn base_field() -> FinDimAlgebra {
    truncated_poly_labeled(1, "k".into())
}

/// `k[e]/(e^2)`, basis `{1, e}`.
pub fn dual_numbers() -> FinDimAlgebra {
    truncated_poly_labeled(2, "k[e]/(e^2)".into())
}

/// `k[x]/(x^n)`, basis `{1, x, ..., x^(n-1)}`.
pub fn truncated_poly(n: usize) -> Result<FinDimAlgebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("truncated_poly needs n >= 1".into()));
    }
    Ok(truncated_poly_labeled(n, format!("k[x]/(x^{n})")))
}

fn truncated_poly_labeled(n: usize, label: String) -> FinDimAlgebra {
    let table = table_from(n, |i, j| if i + j < n { vec![(i + j, one())] } else { vec![] });
    FinDimAlgebra::new(label, n, table, unit_vector(n, 0)).expect("truncated polynomial algebra is valid")
}

/// Group algebra `k[Z/m]`, basis `{1, g, ..., g^(m-1)}`.
pub fn group_algebra_cyclic(m: usize) -> Result<FinDimAlgebra> {
    if m == 0 {
        return Err(Error::InvalidAlgebra("group_algebra_cyclic needs m >= 1".into()));
    }
    let table = table_from(m, |i, j| vec![((i + j) % m, one())]);
    FinDimAlgebra::new(format!("k[Z/{m}]"), m, table, unit_vector(m, 0))
}

/// Basis index of `E_{row,col} (x) e_a` in `M_n(A)`.
pub fn matrix_basis_index(n: usize, dim_a: usize, row: usize, col: usize, a: usize) -> usize {
    (row * n + col) * dim_a + a
}

/// `M_n(A)` with basis `E_{rc} (x) e_a` ordered by `(r, c, a)`.
pub fn matrix_algebra(a: &FinDimAlgebra, n: usize) -> Result<FinDimAlgebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix_algebra needs n >= 1".into()));
    }
    let d = a.dim();
    let dim = n * n * d;
    let decode = |i: usize| (i / (n * d), (i / d) % n, i % d);
    let table = table_from(dim, |i, j| {
        let (r1, c1, x) = decode(i);
        let (r2, c2, y) = decode(j);
        if c1 != r2 {
            return vec![];
        }
        a.basis_product(x, y)
            .iter()
            .map(|(k, v)| (matrix_basis_index(n, d, r1, c2, *k), v.clone()))
            .collect()
    });
    let mut unit = vec![zero(); dim];
    for r in 0..n {
        for (k, u) in a.unit().iter().enumerate() {
            unit[matrix_basis_index(n, d, r, r, k)] = u.clone();
        }
    }
    let label = if n == 1 { a.label().to_string() } else { format!("M_{n}({})", a.label()) };
    FinDimAlgebra::new(label, dim, table, unit)
}

/// Looks up an algebra by the label its constructor assigns, plus a few
/// aliases (`Q`, `base_field`, `dual_numbers`).
pub fn from_label(label: &str) -> Result<FinDimAlgebra> {
    let s = label.trim();
    match s {
        "k" | "Q" | "base_field" => return Ok(base_field()),
        "k[e]/(e^2)" | "dual_numbers" => return Ok(dual_numbers()),
        _ => {}
    }
    let bad = || Error::Parse(format!("unknown algebra label {label:?}"));
    if let Some(rest) = s.strip_prefix("k[x]/(x^").and_then(|r| r.strip_suffix(')')) {
        return truncated_poly(rest.parse().map_err(|_| bad())?);
    }
    if let Some(rest) = s.strip_prefix("k[Z/").and_then(|r| r.strip_suffix(']')) {
        return group_algebra_cyclic(rest.parse().map_err(|_| bad())?);
    }
    if let Some(rest) = s.strip_prefix("M_") {
        let (n, inner) = rest.split_once('(').ok_or_else(bad)?;
        let inner = inner.strip_suffix(')').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        return matrix_algebra(&from_label(inner)?, n);
    }
    Err(bad())
}

/// Small integer helper for building tables in tests and fixtures.
pub fn integer_table(rows: &[Vec<Vec<(usize, i64)>>]) -> Vec<Vec<BTreeMap<usize, Rational>>> {
    rows.iter()
        .map(|row| row.iter().map(|cell| cell.iter().map(|(k, v)| (*k, rat(*v))).collect()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn el(a: &Arc<FinDimAlgebra>, v: &[i64]) -> AlgebraElement {
        AlgebraElement::new(a.clone(), v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn fixtures_have_expected_shape() {
        assert_eq!(base_field().dim(), 1);
        let d = Arc::new(dual_numbers());
        assert_eq!(d.dim(), 2);
        let e = AlgebraElement::basis(d.clone(), 1);
        assert!(alg_mul(&e, &e).unwrap().is_zero());
        let g2 = Arc::new(group_algebra_cyclic(2).unwrap());
        let g = AlgebraElement::basis(g2.clone(), 1);
        assert_eq!(alg_mul(&g, &g).unwrap(), AlgebraElement::one(g2));
        assert_eq!(truncated_poly(4).unwrap().dim(), 4);
        assert!(truncated_poly(0).is_err());
    }

    #[test]
    fn matrix_units_multiply() {
        let m2 = Arc::new(matrix_algebra(&base_field(), 2).unwrap());
        assert_eq!(m2.dim(), 4);
        let e12 = AlgebraElement::basis(m2.clone(), matrix_basis_index(2, 1, 0, 1, 0));
        let e21 = AlgebraElement::basis(m2.clone(), matrix_basis_index(2, 1, 1, 0, 0));
        let e11 = AlgebraElement::basis(m2.clone(), matrix_basis_index(2, 1, 0, 0, 0));
        assert_eq!(alg_mul(&e12, &e21).unwrap(), e11);
    }

    #[test]
    fn matrix_over_dual_numbers() {
        let a = dual_numbers();
        let m = Arc::new(matrix_algebra(&a, 2).unwrap());
        let x = AlgebraElement::basis(m.clone(), matrix_basis_index(2, 2, 0, 1, 1));
        let y = AlgebraElement::basis(m.clone(), matrix_basis_index(2, 2, 1, 0, 1));
        assert!(alg_mul(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn matrix_of_size_one_is_identity_construction() {
        for a in [base_field(), dual_numbers(), group_algebra_cyclic(3).unwrap()] {
            let m = matrix_algebra(&a, 1).unwrap();
            assert_eq!(m.table(), a.table());
            assert_eq!(m.unit(), a.unit());
        }
    }

    #[test]
    fn nested_matrix_algebras_agree() {
        let a = dual_numbers();
        let (m, n) = (2, 2);
        let inner = matrix_algebra(&a, m).unwrap();
        let nested = matrix_algebra(&inner, n).unwrap();
        let flat = matrix_algebra(&a, m * n).unwrap();
        let d = a.dim();
        // (R, C, (r, c, x)) <-> (R*m + r, C*m + c, x)
        let map = |i: usize| {
            let (big_r, big_c, inner_i) = (i / (n * inner.dim()), (i / inner.dim()) % n, i % inner.dim());
            let (r, c, x) = (inner_i / (m * d), (inner_i / d) % m, inner_i % d);
            matrix_basis_index(m * n, d, big_r * m + r, big_c * m + c, x)
        };
        for i in 0..nested.dim() {
            for j in 0..nested.dim() {
                let lhs: Vec<(usize, Rational)> = {
                    let mut v: Vec<_> = nested.basis_product(i, j).iter().map(|(k, x)| (map(*k), x.clone())).collect();
                    v.sort_by_key(|(k, _)| *k);
                    v
                };
                assert_eq!(lhs, flat.basis_product(map(i), map(j)).to_vec());
            }
        }
        let unit_mapped: Vec<usize> =
            (0..nested.dim()).filter(|&i| !nested.unit()[i].is_zero()).map(map).collect();
        let mut flat_unit: Vec<usize> = (0..flat.dim()).filter(|&i| !flat.unit()[i].is_zero()).collect();
        flat_unit.sort();
        let mut unit_mapped = unit_mapped;
        unit_mapped.sort();
        assert_eq!(unit_mapped, flat_unit);
    }

    #[test]
    fn construction_rejects_non_associative() {
        // e_1 e_1 = e_0 + e_1 with the wrong unit behaviour.
        let table = integer_table(&[
            vec![vec![(0, 1)], vec![(1, 1)]],
            vec![vec![(1, 1)], vec![(0, 1), (1, 1)]],
        ]);
        assert!(FinDimAlgebra::new("ok", 2, table, vec![rat(1), rat(0)]).is_ok());
        // x*x = y, x*y = 0, y*x = x: (x x) x = y x = x but x (x x) = x y = 0.
        let table = integer_table(&[
            vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]],
            vec![vec![(1, 1)], vec![(2, 1)], vec![]],
            vec![vec![(2, 1)], vec![(1, 1)], vec![]],
        ]);
        let err = FinDimAlgebra::new("bad", 3, table, vec![rat(1), rat(0), rat(0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn construction_rejects_bad_unit() {
        let table = integer_table(&[vec![vec![(0, 1)]]]);
        assert!(FinDimAlgebra::new("two", 1, table, vec![rat(2)]).is_err());
    }

    #[test]
    fn unit_times_random_elements() {
        let m = Arc::new(matrix_algebra(&dual_numbers(), 2).unwrap());
        let one = AlgebraElement::one(m.clone());
        for seed in 0..5i64 {
            let v: Vec<i64> = (0..m.dim() as i64).map(|i| (i * 7 + seed * 3) % 5 - 2).collect();
            let x = el(&m, &v);
            assert_eq!(alg_mul(&one, &x).unwrap(), x);
            assert_eq!(alg_mul(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn parent_mismatch_is_an_error() {
        let a = Arc::new(dual_numbers());
        let b = Arc::new(group_algebra_cyclic(2).unwrap());
        let x = AlgebraElement::one(a);
        let y = AlgebraElement::one(b);
        assert!(matches!(alg_mul(&x, &y), Err(Error::ParentMismatch { .. })));
    }

    #[test]
    fn cocenter() {
        assert_eq!(base_field().cocenter_dim(), 1);
        assert_eq!(dual_numbers().cocenter_dim(), 2);
        let m2 = matrix_algebra(&base_field(), 2).unwrap();
        assert_eq!(m2.cocenter_dim(), 1);
        // E_11 and E_22 have the same class; E_12 is a commutator.
        let e11 = m2.basis_vector(matrix_basis_index(2, 1, 0, 0, 0));
        let e22 = m2.basis_vector(matrix_basis_index(2, 1, 1, 1, 0));
        let e12 = m2.basis_vector(matrix_basis_index(2, 1, 0, 1, 0));
        assert_eq!(m2.cocenter_normal_form(&e11), m2.cocenter_normal_form(&e22));
        assert!(m2.cocenter_normal_form(&e12).iter().all(Zero::is_zero));
    }

    #[test]
    fn labels_round_trip() {
        for a in [
            base_field(),
            dual_numbers(),
            truncated_poly(3).unwrap(),
            group_algebra_cyclic(2).unwrap(),
            matrix_algebra(&dual_numbers(), 2).unwrap(),
            matrix_algebra(&matrix_algebra(&base_field(), 2).unwrap(), 2).unwrap(),
        ] {
            assert_eq!(from_label(a.label()).unwrap(), a);
        }
        assert!(from_label("k[y]").is_err());
    }

    #[test]
    fn one_is_unit() {
        let a = group_algebra_cyclic(3).unwrap();
        assert!(a.unit()[0].is_one());
    }
}
