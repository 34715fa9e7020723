use num_traits::Zero;

use crate::linalg::Rational;

/// An eventually-constant bi-infinite sequence of ring coordinates:
/// `left` for `i < start`, `window[i - start]` inside, `right` after.
///
/// Kept canonical: the window never begins with `left` or ends with
/// `right`, and an empty window with equal tails has `start = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailSequence {
    left: Vec<Rational>,
    start: i64,
    window: Vec<Vec<Rational>>,
    right: Vec<Rational>,
}

impl TailSequence {
    pub fn new(left: Vec<Rational>, start: i64, window: Vec<Vec<Rational>>, right: Vec<Rational>) -> Self {
        let mut s = Self { left, start, window, right };
        s.canonicalize();
        s
    }

    pub fn constant(c: Vec<Rational>) -> Self {
        Self::new(c.clone(), 0, Vec::new(), c)
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(vec![Rational::zero(); dim])
    }

    /// `c` at index `i`, zero elsewhere.
    pub fn single(dim: usize, i: i64, c: Vec<Rational>) -> Self {
        let z = vec![Rational::zero(); dim];
        Self::new(z.clone(), i, vec![c], z)
    }

    fn canonicalize(&mut self) {
        let lead = self.window.iter().take_while(|v| **v == self.left).count();
        self.window.drain(..lead);
        self.start += lead as i64;
        while self.window.last() == Some(&self.right) {
            self.window.pop();
        }
        if self.window.is_empty() && self.left == self.right {
            self.start = 0;
        }
    }

    pub fn left(&self) -> &[Rational] {
        &self.left
    }

    pub fn right(&self) -> &[Rational] {
        &self.right
    }

    pub fn window_start(&self) -> i64 {
        self.start
    }

    pub fn window(&self) -> &[Vec<Rational>] {
        &self.window
    }

    /// First index of the right tail.
    pub fn window_end(&self) -> i64 {
        self.start + self.window.len() as i64
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    pub fn get(&self, i: i64) -> &[Rational] {
        if i < self.start {
            &self.left
        } else if i >= self.window_end() {
            &self.right
        } else {
            &self.window[(i - self.start) as usize]
        }
    }

    pub fn left_is_zero(&self) -> bool {
        self.left.iter().all(Zero::is_zero)
    }

    pub fn right_is_zero(&self) -> bool {
        self.right.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.left_is_zero() && self.right_is_zero() && self.window.is_empty()
    }

    /// `i -> self(i - k)`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut s = self.clone();
        if !(s.window.is_empty() && s.left == s.right) {
            s.start += k;
        }
        s
    }

    /// Pointwise combination over the union of both windows.
    pub fn zip_with(&self, other: &Self, f: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let lo = self.start.min(other.start);
        let hi = self.window_end().max(other.window_end());
        let window = (lo..hi).map(|i| f(self.get(i), other.get(i))).collect();
        Self::new(f(&self.left, &other.left), lo, window, f(&self.right, &other.right))
    }

    pub fn map(&self, f: impl Fn(&[Rational]) -> Vec<Rational>) -> Self {
        Self::new(f(&self.left), self.start, self.window.iter().map(|v| f(v)).collect(), f(&self.right))
    }

    /// Indices where the value is nonzero, if finitely many.
    pub fn finite_support(&self) -> Option<Vec<i64>> {
        if !self.left_is_zero() || !self.right_is_zero() {
            return None;
        }
        Some(
            self.window
                .iter()
                .enumerate()
                .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
                .map(|(k, _)| self.start + k as i64)
                .collect(),
        )
    }

    /// Smallest `i >= from` with a nonzero value, if any.
    pub fn first_nonzero_from(&self, from: i64) -> Option<i64> {
        let nz = |v: &[Rational]| v.iter().any(|x| !x.is_zero());
        if from < self.start && nz(&self.left) {
            return Some(from);
        }
        let begin = from.max(self.start);
        for i in begin..self.window_end() {
            if nz(self.get(i)) {
                return Some(i);
            }
        }
        nz(&self.right).then(|| from.max(self.window_end()))
    }

    /// Largest `i < before` with a nonzero value, if any.
    pub fn last_nonzero_before(&self, before: i64) -> Option<i64> {
        let nz = |v: &[Rational]| v.iter().any(|x| !x.is_zero());
        if before > self.window_end() && nz(&self.right) {
            return Some(before - 1);
        }
        let end = before.min(self.window_end());
        for i in (self.start..end).rev() {
            if nz(self.get(i)) {
                return Some(i);
            }
        }
        nz(&self.left).then(|| before.min(self.start) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    fn v(x: i64) -> Vec<Rational> {
        vec![rat(x)]
    }

    #[test]
    fn canonical_form_trims_window() {
        let s = TailSequence::new(v(0), -2, vec![v(0), v(3), v(1), v(1)], v(1));
        assert_eq!(s.window_start(), -1);
        assert_eq!(s.window(), &[v(3)]);
        assert_eq!(s.get(-5), v(0).as_slice());
        assert_eq!(s.get(-1), v(3).as_slice());
        assert_eq!(s.get(7), v(1).as_slice());
        let c = TailSequence::new(v(2), 9, vec![v(2), v(2)], v(2));
        assert_eq!(c, TailSequence::constant(v(2)));
    }

    #[test]
    fn shift_and_zip() {
        let step = TailSequence::new(v(0), 0, vec![], v(1));
        let moved = step.shifted(3);
        assert_eq!(moved.get(2), v(0).as_slice());
        assert_eq!(moved.get(3), v(1).as_slice());
        let sum = step.zip_with(&moved, |a, b| vec![&a[0] + &b[0]]);
        assert_eq!(sum.window(), &[v(1), v(1), v(1)]);
        assert_eq!(sum.right(), v(2).as_slice());
    }

    #[test]
    fn nonzero_searches() {
        let s = TailSequence::new(v(1), 0, vec![v(0), v(5)], v(0));
        assert_eq!(s.first_nonzero_from(-3), Some(-3));
        assert_eq!(s.first_nonzero_from(0), Some(1));
        assert_eq!(s.first_nonzero_from(2), None);
        assert_eq!(s.last_nonzero_before(10), Some(1));
        assert_eq!(s.last_nonzero_before(1), Some(-1));
        assert_eq!(s.finite_support(), None);
        let f = TailSequence::single(1, 4, v(2));
        assert_eq!(f.finite_support(), Some(vec![4]));
    }
}
