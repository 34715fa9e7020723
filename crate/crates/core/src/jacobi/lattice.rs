//! Boundedness of operators with respect to the lattices `t^n R[[t]]`.

use std::collections::BTreeMap;
use std::fmt;

use super::JacobiOperator;

/// A lattice `t^n R[[t]]`, or `Everything` when any lattice index works.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeIndex {
    Index(i64),
    Everything,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Index(n) => write!(f, "{n}"),
            LatticeIndex::Everything => write!(f, "everything"),
        }
    }
}

/// Largest `n'` with `a(t^n R[[t]]) ⊆ t^{n'} R[[t]]`: the smallest row
/// reached from a column `j >= n`. `Everything` if `a` kills the lattice.
pub fn lattice_witness_forward(a: &JacobiOperator, n: i64) -> LatticeIndex {
    a.terms()
        .iter()
        .filter_map(|(m, d)| d.first_nonzero_from(n + m))
        .min()
        .map_or(LatticeIndex::Everything, LatticeIndex::Index)
}

/// Smallest `m'` with `a(t^{m'} R[[t]]) ⊆ t^m R[[t]]`: one past the largest
/// column with an entry in a row `< m`. `Everything` if no row `< m` is hit.
pub fn lattice_witness_backward(a: &JacobiOperator, m: i64) -> LatticeIndex {
    a.terms()
        .iter()
        .filter_map(|(o, d)| d.last_nonzero_before(m).map(|i| i - o + 1))
        .max()
        .map_or(LatticeIndex::Everything, LatticeIndex::Index)
}

fn basis_vector(a: &JacobiOperator, j: i64) -> BTreeMap<i64, Vec<crate::linalg::Rational>> {
    [(j, a.ring().unit().to_vec())].into_iter().collect()
}

/// Checks both witnesses by applying `a` to basis vectors: containment on
/// a window of columns reaching past every tail boundary, plus sharpness.
pub fn validate_lattice_witnesses(a: &JacobiOperator, n: i64, m: i64) -> bool {
    let reach = a
        .terms()
        .values()
        .flat_map(|d| [d.window_start(), d.window_end()])
        .chain([n, m])
        .map(i64::abs)
        .max()
        .unwrap_or(0)
        + a.band_width()
        + 2;
    let rows = |j: i64| -> Vec<i64> { a.apply(&basis_vector(a, j)).expect("unit has ring dimension").into_keys().collect() };

    let forward_ok = match lattice_witness_forward(a, n) {
        LatticeIndex::Index(bound) => {
            let mut hit = false;
            for j in n..=n + 2 * reach {
                let r = rows(j);
                if r.iter().any(|&i| i < bound) {
                    return false;
                }
                hit |= r.contains(&bound);
            }
            hit
        }
        LatticeIndex::Everything => (n..=n + 2 * reach).all(|j| rows(j).is_empty()),
    };
    let backward_ok = match lattice_witness_backward(a, m) {
        LatticeIndex::Index(bound) => {
            let contained = (bound..=bound + 2 * reach).all(|j| rows(j).iter().all(|&i| i >= m));
            let sharp = rows(bound - 1).iter().any(|&i| i < m);
            contained && sharp
        }
        LatticeIndex::Everything => (m - 2 * reach..=m + 2 * reach).all(|j| rows(j).iter().all(|&i| i >= m)),
    };
    forward_ok && backward_ok
}
