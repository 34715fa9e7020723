//! Fraction-free sparse elimination over the integers.
//!
//! Rational inputs are scaled to primitive integer vectors first (row or
//! column scaling does not change rank or span membership). Elimination
//! runs on `i64` with overflow detection and restarts on `BigInt` when an
//! intermediate value leaves the safe range.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Integer-like coefficient used by the elimination kernels.
pub(crate) trait Coeff: Clone + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn negate(&self) -> Self;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Nonnegative gcd.
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    /// `a*x`, or `None` on overflow.
    fn mul(a: &Self, x: &Self) -> Option<Self>;
    /// `a*x - b*y`, or `None` on overflow.
    fn lin_comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

const I64_LIMIT: i128 = 1 << 62;

impl Coeff for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        *self / *d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        let v = (*a as i128) * (*x as i128);
        (v.abs() < I64_LIMIT).then_some(v as i64)
    }
    fn lin_comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        let v = (*a as i128) * (*x as i128) - (*b as i128) * (*y as i128);
        (v.abs() < I64_LIMIT).then_some(v as i64)
    }
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        Some(a * x)
    }
    fn lin_comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

pub(crate) type IntVec<C> = Vec<(usize, C)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

/// Scales a rational vector to a primitive integer vector with the same span.
pub(crate) fn integerize(entries: &[(usize, Rational)]) -> IntVec<BigInt> {
    let mut lcm = BigInt::one();
    for (_, x) in entries {
        if !x.is_integer() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut out: IntVec<BigInt> = entries
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn to_i64(v: &IntVec<BigInt>) -> Option<IntVec<i64>> {
    v.iter().map(|(i, x)| x.to_i64().filter(|y| y.unsigned_abs() < (1 << 62)).map(|y| (*i, y))).collect()
}

fn make_primitive<C: Coeff>(v: &mut IntVec<C>) {
    let Some((_, first)) = v.first() else { return };
    let mut g = first.gcd_with(first);
    for (_, x) in v.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.gcd_with(x);
    }
    let flip = v[0].1.is_negative();
    if !g.is_unit() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
    if flip {
        for (_, x) in v.iter_mut() {
            *x = x.negate();
        }
    }
}

/// `pl*v - vl*p` scaled by their gcd, which cancels the shared leading entry.
fn eliminate<C: Coeff>(v: &IntVec<C>, p: &IntVec<C>) -> Result<IntVec<C>, Overflow> {
    let vl = &v[0].1;
    let pl = &p[0].1;
    let g = vl.gcd_with(pl);
    let a = pl.div_exact(&g);
    let b = vl.div_exact(&g);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let order = match (v.get(i), p.get(j)) {
            (Some((vi, _)), Some((pj, _))) => vi.cmp(pj),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                let (idx, x) = &v[i];
                out.push((*idx, C::mul(&a, x).ok_or(Overflow)?));
                i += 1;
            }
            Ordering::Greater => {
                let (idx, y) = &p[j];
                out.push((*idx, C::mul(&b, y).ok_or(Overflow)?.negate()));
                j += 1;
            }
            Ordering::Equal => {
                let (idx, x) = &v[i];
                let (_, y) = &p[j];
                let r = C::lin_comb(&a, x, &b, y).ok_or(Overflow)?;
                if !r.is_zero() {
                    out.push((*idx, r));
                }
                i += 1;
                j += 1;
            }
        }
    }
    make_primitive(&mut out);
    Ok(out)
}

/// Incremental row-echelon form keyed by leading index.
///
/// On insertion, if the incoming vector's leading entry is smaller in
/// magnitude than the stored pivot's, the two swap roles so pivots stay small.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<C> {
    pivots: HashMap<usize, IntVec<C>>,
}

impl<C: Coeff> Default for Echelon<C> {
    fn default() -> Self {
        Self { pivots: HashMap::new() }
    }
}

impl<C: Coeff> Echelon<C> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns `true` if `v` increased the rank.
    pub fn insert(&mut self, mut v: IntVec<C>) -> Result<bool, Overflow> {
        make_primitive(&mut v);
        loop {
            let Some((lead, _)) = v.first() else { return Ok(false) };
            let lead = *lead;
            match self.pivots.get_mut(&lead) {
                None => {
                    self.pivots.insert(lead, v);
                    return Ok(true);
                }
                Some(p) => {
                    if v[0].1.cmp_abs(&p[0].1) == Ordering::Less {
                        std::mem::swap(p, &mut v);
                    }
                    v = eliminate(&v, p)?;
                }
            }
        }
    }

    /// Reduces `v` against the stored pivots without modifying them.
    #[cfg(test)]
    pub fn reduce(&self, mut v: IntVec<C>) -> Result<IntVec<C>, Overflow> {
        make_primitive(&mut v);
        while let Some((lead, _)) = v.first() {
            match self.pivots.get(lead) {
                None => break,
                Some(p) => v = eliminate(&v, p)?,
            }
        }
        Ok(v)
    }

    pub fn into_pivots(self) -> Vec<IntVec<C>> {
        let mut rows: Vec<_> = self.pivots.into_values().collect();
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}

/// Rank of a list of integer vectors, trying `i64` first.
pub(crate) fn rank_of_vectors(vectors: &[IntVec<BigInt>]) -> usize {
    let small: Option<Vec<IntVec<i64>>> = vectors.iter().map(to_i64).collect();
    if let Some(small) = small {
        let mut ech = Echelon::<i64>::default();
        let mut ok = true;
        for v in small {
            if ech.insert(v).is_err() {
                ok = false;
                break;
            }
        }
        if ok {
            return ech.rank();
        }
    }
    let mut ech = Echelon::<BigInt>::default();
    for v in vectors {
        ech.insert(v.clone()).expect("BigInt elimination cannot overflow");
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[(usize, i64)]) -> IntVec<BigInt> {
        v.iter().map(|(i, x)| (*i, BigInt::from(*x))).collect()
    }

    #[test]
    fn echelon_detects_dependence() {
        let vs = vec![bv(&[(0, 2), (1, 4)]), bv(&[(0, 1), (1, 2)]), bv(&[(1, 3)])];
        assert_eq!(rank_of_vectors(&vs), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        let vs = vec![
            bv(&[(0, big), (1, 1)]),
            bv(&[(0, big - 1), (1, big)]),
            bv(&[(0, 3), (1, big + 7)]),
        ];
        assert_eq!(rank_of_vectors(&vs), 2);
    }

    #[test]
    fn reduce_does_not_mutate() {
        let mut e = Echelon::<i64>::default();
        assert!(e.insert(vec![(0, 2), (2, 2)]).unwrap());
        assert!(e.reduce(vec![(0, 5), (2, 5)]).unwrap().is_empty());
        assert_eq!(e.reduce(vec![(0, 1), (1, 1)]).unwrap(), vec![(1, 1), (2, -1)]);
        assert_eq!(e.rank(), 1);
    }
}
