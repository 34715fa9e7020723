//! Banded Z x Z matrices over a finite-dimensional algebra `R`, each given
//! as a finite sum of (eventually-constant diagonal) x (shift power).
//!
//! Entry convention: `a_{i,j} = d_{i-j}(i)`. The shift `T` has `d_1 = 1`,
//! so it sends the basis vector `t^j` to `t^{j+1}`. `P` projects onto the
//! indices `>= 0`.

mod json;
mod lattice;
pub mod random;
mod tail;

pub use json::{operator_from_json, operator_to_json, OperatorJson, RingSpec, TermJson};
pub use lattice::{lattice_witness_backward, lattice_witness_forward, validate_lattice_witnesses, LatticeIndex};
pub use tail::TailSequence;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{AlgebraElement, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::linalg::rational::zero;
use crate::linalg::Rational;

/// Finitely supported vector `sum_i f_i t^i` with coefficients in `R`.
pub type LaurentVector = BTreeMap<i64, Vec<Rational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiOperator {
    ring: Arc<FinDimAlgebra>,
    /// Offset `m = i - j` to the diagonal `d_m`; never holds a zero sequence.
    terms: BTreeMap<i64, TailSequence>,
}

fn add_coords(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_coords(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl JacobiOperator {
    /// Builds from raw terms; zero sequences are dropped and equal offsets summed.
    pub fn new(ring: Arc<FinDimAlgebra>, terms: impl IntoIterator<Item = (i64, TailSequence)>) -> Result<Self> {
        let dim = ring.dim();
        let mut map: BTreeMap<i64, TailSequence> = BTreeMap::new();
        for (m, s) in terms {
            if s.dim() != dim || s.window().iter().any(|v| v.len() != dim) || s.right().len() != dim {
                return Err(Error::Length { expected: dim, actual: s.dim() });
            }
            let merged = match map.remove(&m) {
                Some(prev) => prev.zip_with(&s, add_coords),
                None => s,
            };
            map.insert(m, merged);
        }
        map.retain(|_, s| !s.is_zero());
        Ok(Self { ring, terms: map })
    }

    pub fn zero(ring: Arc<FinDimAlgebra>) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn identity(ring: Arc<FinDimAlgebra>) -> Self {
        shift_power(ring, 0)
    }

    pub fn ring(&self) -> &Arc<FinDimAlgebra> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i64, TailSequence> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `max |m|` over the offsets present (0 for the zero operator).
    pub fn band_width(&self) -> i64 {
        self.terms.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    /// Entry `a_{i,j}`.
    pub fn entry(&self, i: i64, j: i64) -> Vec<Rational> {
        match self.terms.get(&(i - j)) {
            Some(s) => s.get(i).to_vec(),
            None => self.ring.zero_vector(),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ParentMismatch { left: self.ring.label().into(), right: other.ring.label().into() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, add_coords)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, sub_coords)
    }

    fn combine(&self, other: &Self, f: fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Result<Self> {
        self.same_ring(other)?;
        let zero_seq = TailSequence::zero(self.ring.dim());
        let offsets: std::collections::BTreeSet<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        let terms = offsets.into_iter().map(|m| {
            let a = self.terms.get(&m).unwrap_or(&zero_seq);
            let b = other.terms.get(&m).unwrap_or(&zero_seq);
            (m, a.zip_with(b, f))
        });
        Self::new(self.ring.clone(), terms.collect::<Vec<_>>())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self.terms.iter().map(|(m, s)| (*m, s.map(|v| v.iter().map(|x| x * c).collect())));
        Self::new(self.ring.clone(), terms.collect::<Vec<_>>()).expect("scaling keeps shapes")
    }

    /// Matrix product: `(d, m) * (e, n)` contributes `(i -> d(i) e(i - m), m + n)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let mut terms = Vec::new();
        for (m, d) in &self.terms {
            for (n, e) in &other.terms {
                let shifted = e.shifted(*m);
                terms.push((m + n, d.zip_with(&shifted, |x, y| ring.mul_coords(x, y))));
            }
        }
        Self::new(ring.clone(), terms)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `(a f)_i = sum_m d_m(i) f_{i-m}`.
    pub fn apply(&self, f: &LaurentVector) -> Result<LaurentVector> {
        let dim = self.ring.dim();
        let mut out: LaurentVector = BTreeMap::new();
        for (j, fj) in f {
            if fj.len() != dim {
                return Err(Error::Length { expected: dim, actual: fj.len() });
            }
            for (m, d) in &self.terms {
                let i = j + m;
                let prod = self.ring.mul_coords(d.get(i), fj);
                let slot = out.entry(i).or_insert_with(|| vec![zero(); dim]);
                for (s, p) in slot.iter_mut().zip(prod) {
                    *s += p;
                }
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Ok(out)
    }

    /// Row support bounded below: every left tail vanishes.
    pub fn in_iplus(&self) -> bool {
        self.terms.values().all(TailSequence::left_is_zero)
    }

    /// Column support bounded above: every right tail vanishes.
    pub fn in_iminus(&self) -> bool {
        self.terms.values().all(TailSequence::right_is_zero)
    }

    /// Finite support (trace-class).
    pub fn in_i0(&self) -> bool {
        self.in_iplus() && self.in_iminus()
    }

    /// `(P a, (1 - P) a)`.
    pub fn split(&self) -> (Self, Self) {
        let p = projection_p(self.ring.clone());
        let q = Self::identity(self.ring.clone()).sub(&p).expect("same ring");
        (p.mul(self).expect("same ring"), q.mul(self).expect("same ring"))
    }

    /// `sum_i d_0(i)`; only defined on finite-support operators.
    pub fn trace(&self) -> Result<AlgebraElement> {
        if !self.in_i0() {
            return Err(Error::NotTraceClass);
        }
        let mut acc = self.ring.zero_vector();
        if let Some(d0) = self.terms.get(&0) {
            for v in d0.window() {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
            }
        }
        AlgebraElement::new(self.ring.clone(), acc)
    }

    /// `(2N+1) x (2N+1)` block of entries `a_{i,j}`, `-N <= i, j <= N`.
    pub fn truncate(&self, n: i64) -> Vec<Vec<Vec<Rational>>> {
        (-n..=n).map(|i| (-n..=n).map(|j| self.entry(i, j)).collect()).collect()
    }
}

/// `T^k`: the single diagonal `d_k = 1`.
pub fn shift_power(ring: Arc<FinDimAlgebra>, k: i64) -> JacobiOperator {
    let unit = ring.unit().to_vec();
    JacobiOperator::new(ring, [(k, TailSequence::constant(unit))]).expect("unit has ring dimension")
}

/// Projection onto indices `>= 0`.
pub fn projection_p(ring: Arc<FinDimAlgebra>) -> JacobiOperator {
    let seq = TailSequence::new(ring.zero_vector(), 0, Vec::new(), ring.unit().to_vec());
    JacobiOperator::new(ring, [(0, seq)]).expect("unit has ring dimension")
}

/// Finite matrix from `((i, j), a_{i,j})` entries; all tails vanish.
pub fn from_finite_matrix(
    ring: Arc<FinDimAlgebra>,
    entries: impl IntoIterator<Item = ((i64, i64), Vec<Rational>)>,
) -> Result<JacobiOperator> {
    let dim = ring.dim();
    let mut terms = Vec::new();
    for ((i, j), v) in entries {
        if v.len() != dim {
            return Err(Error::Length { expected: dim, actual: v.len() });
        }
        terms.push((i - j, TailSequence::single(dim, i, v)));
    }
    JacobiOperator::new(ring, terms)
}

/// Multiplies two dense ring-valued matrices; the truncation oracle.
pub fn ring_matmul(ring: &FinDimAlgebra, a: &[Vec<Vec<Rational>>], b: &[Vec<Vec<Rational>>]) -> Vec<Vec<Vec<Rational>>> {
    let n = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![ring.zero_vector(); cols]; n];
    for i in 0..n {
        for k in 0..inner {
            if a[i][k].iter().all(Zero::is_zero) {
                continue;
            }
            for j in 0..cols {
                let p = ring.mul_coords(&a[i][k], &b[k][j]);
                for (o, x) in out[i][j].iter_mut().zip(p) {
                    *o += x;
                }
            }
        }
    }
    out
}

/// Interior `[-n, n]` block of `a b`, computed densely from truncations
/// wide enough that no product term is cut off.
pub fn windowed_product(a: &JacobiOperator, b: &JacobiOperator, n: i64) -> Vec<Vec<Vec<Rational>>> {
    let w = a.band_width() + b.band_width();
    let big = ring_matmul(a.ring(), &a.truncate(n + w), &b.truncate(n + w));
    let (lo, hi) = (w as usize, (w + 2 * n) as usize);
    big[lo..=hi].iter().map(|row| row[lo..=hi].to_vec()).collect()
}

/// `c(a, b) = tr(P b (1-P) a P) - tr(P a (1-P) b P)`, as the canonical
/// representative of its class in `R/[R,R]`.
pub fn cocycle(a: &JacobiOperator, b: &JacobiOperator) -> Result<Vec<Rational>> {
    a.same_ring(b)?;
    let ring = a.ring().clone();
    let p = projection_p(ring.clone());
    let q = JacobiOperator::identity(ring.clone()).sub(&p)?;
    let sandwich = |x: &JacobiOperator, y: &JacobiOperator| -> Result<Vec<Rational>> {
        let op = p.mul(y)?.mul(&q)?.mul(x)?.mul(&p)?;
        Ok(op.trace()?.coords().to_vec())
    };
    let value = sub_coords(&sandwich(a, b)?, &sandwich(b, a)?);
    Ok(ring.cocenter_normal_form(&value))
}

/// Cocycle identity `c([a,b], z) + c([b,z], a) + c([z,a], b) = 0` in `R/[R,R]`.
pub fn cocycle_identity_check(a: &JacobiOperator, b: &JacobiOperator, z: &JacobiOperator) -> Result<bool> {
    let t1 = cocycle(&a.commutator(b)?, z)?;
    let t2 = cocycle(&b.commutator(z)?, a)?;
    let t3 = cocycle(&z.commutator(a)?, b)?;
    let total = add_coords(&add_coords(&t1, &t2), &t3);
    Ok(total.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests;
