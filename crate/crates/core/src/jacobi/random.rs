//! Seeded random operators for the property suites.

use std::sync::Arc;

use rand::Rng;

use super::{JacobiOperator, TailSequence};
use crate::algebra::FinDimAlgebra;
use crate::linalg::rational::{ratio, zero};
use crate::linalg::Rational;

/// Which tails a generated operator may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Any,
    /// Left tails zero.
    Plus,
    /// Right tails zero.
    Minus,
    /// Finite support.
    Finite,
}

#[derive(Clone, Copy, Debug)]
pub struct OperatorParams {
    pub max_band: i64,
    /// Windows lie in `[-window_radius, window_radius]`.
    pub window_radius: i64,
    pub max_terms: usize,
    pub shape: Shape,
}

impl Default for OperatorParams {
    fn default() -> Self {
        Self { max_band: 3, window_radius: 4, max_terms: 3, shape: Shape::Any }
    }
}

fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    match rng.gen_range(0..8) {
        0 => ratio(rng.gen_range(-3..=3), 2),
        1 | 2 => zero(),
        _ => ratio(rng.gen_range(-2..=2), 1),
    }
}

pub fn element<R: Rng>(rng: &mut R, ring: &FinDimAlgebra) -> Vec<Rational> {
    (0..ring.dim()).map(|_| coefficient(rng)).collect()
}

fn tail<R: Rng>(rng: &mut R, ring: &FinDimAlgebra, allowed: bool) -> Vec<Rational> {
    if allowed && rng.gen_bool(0.5) {
        if rng.gen_bool(0.5) {
            ring.unit().to_vec()
        } else {
            element(rng, ring)
        }
    } else {
        ring.zero_vector()
    }
}

pub fn operator<R: Rng>(rng: &mut R, ring: &Arc<FinDimAlgebra>, params: &OperatorParams) -> JacobiOperator {
    let (left_ok, right_ok) = match params.shape {
        Shape::Any => (true, true),
        Shape::Plus => (false, true),
        Shape::Minus => (true, false),
        Shape::Finite => (false, false),
    };
    let count = rng.gen_range(1..=params.max_terms.max(1));
    let r = params.window_radius;
    let terms: Vec<(i64, TailSequence)> = (0..count)
        .map(|_| {
            let offset = rng.gen_range(-params.max_band..=params.max_band);
            let start = rng.gen_range(-r..=r);
            let len = rng.gen_range(0..=(r - start + 1)) as usize;
            let window = (0..len).map(|_| element(rng, ring)).collect();
            let seq = TailSequence::new(tail(rng, ring, left_ok), start, window, tail(rng, ring, right_ok));
            (offset, seq)
        })
        .collect();
    JacobiOperator::new(ring.clone(), terms).expect("generated coordinates have ring dimension")
}
