use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::elim::{integerize, Echelon};
use super::matrix::{RatMatrix, SparseVector};
use super::{kernel_sparse, rank, Dsu};
use crate::error::{Error, Result};

/// A finite chain complex `C_0 <- C_1 <- ... <- C_top` of rational vector
/// spaces with explicit bases.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}: C_{k+1} -> C_k`.
    boundaries: Vec<RatMatrix>,
}

/// Homology dimensions plus optional cycle representatives, per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homology {
    pub dims: BTreeMap<usize, usize>,
    pub representatives: BTreeMap<usize, Vec<SparseVector>>,
}

impl ChainComplex {
    /// `boundaries[k]` must map `C_{k+1}` to `C_k`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<RatMatrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} chain spaces need {} boundaries, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.row_count() != dims[k] || d.col_count() != dims[k + 1] {
                return Err(Error::Shape(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.row_count(),
                    d.col_count(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        Ok(Self { dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_n: C_n -> C_{n-1}` for `1 <= n <= top`.
    pub fn boundary(&self, n: usize) -> Option<&RatMatrix> {
        if n == 0 {
            None
        } else {
            self.boundaries.get(n - 1)
        }
    }

    /// Checks `d_n d_{n+1} = 0` for every consecutive pair.
    pub fn verify_chain_condition(&self) -> Result<()> {
        for n in 1..self.boundaries.len() {
            let prod = self.boundaries[n - 1].mul(&self.boundaries[n])?;
            if !prod.is_zero() {
                return Err(Error::NotAComplex(format!("d_{} d_{} != 0", n, n + 1)));
            }
        }
        Ok(())
    }

    /// Homology in degrees `0..=cap`; needs `top_degree() > cap`.
    pub fn homology(&self, cap: usize, with_representatives: bool) -> Result<Homology> {
        if self.top_degree() <= cap {
            return Err(Error::Shape(format!(
                "homology through degree {cap} needs chain spaces through degree {}, complex stops at {}",
                cap + 1,
                self.top_degree()
            )));
        }
        let ranks: Vec<usize> = self.boundaries[..=cap].par_iter().map(rank).collect();
        let rank_of = |n: usize| if n == 0 { 0 } else { ranks[n - 1] };
        let mut out = Homology::default();
        for n in 0..=cap {
            let h = self.dims[n] - rank_of(n) - rank_of(n + 1);
            out.dims.insert(n, h);
        }
        if with_representatives {
            let reps: Vec<(usize, Vec<SparseVector>)> = (0..=cap)
                .into_par_iter()
                .map(|n| (n, self.representatives(n, out.dims[&n])))
                .collect();
            out.representatives.extend(reps);
        }
        Ok(out)
    }

    /// Cycles in degree `n` whose classes form a basis of `H_n`.
    ///
    /// The three-term piece `C_{n+1} -> C_n -> C_{n-1}` is split into
    /// connected subcomplexes; only pieces with nonzero homology are solved.
    fn representatives(&self, n: usize, expected: usize) -> Vec<SparseVector> {
        if expected == 0 {
            return Vec::new();
        }
        let len = self.dims[n];
        let below = if n == 0 { 0 } else { self.dims[n - 1] };
        let above = self.dims[n + 1];
        let d_out = self.boundary(n);
        let d_in = &self.boundaries[n];
        // Nodes: C_{n-1} | C_n | C_{n+1}.
        let mut dsu = Dsu::new(below + len + above);
        if let Some(d) = d_out {
            for (r, c, _) in d.entries() {
                dsu.union(r, below + c);
            }
        }
        for (r, c, _) in d_in.entries() {
            dsu.union(below + r, below + len + c);
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for i in 0..below {
            let root = dsu.find(i);
            groups.entry(root).or_default().0.push(i);
        }
        for i in 0..len {
            let root = dsu.find(below + i);
            groups.entry(root).or_default().1.push(i);
        }
        for i in 0..above {
            let root = dsu.find(below + len + i);
            groups.entry(root).or_default().2.push(i);
        }
        let pieces: Vec<_> = groups.into_values().filter(|g| !g.1.is_empty()).collect();
        let mut reps: Vec<SparseVector> = pieces
            .par_iter()
            .flat_map_iter(|(lo, mid, hi)| {
                let local_out = d_out.map(|d| restrict(d, lo, mid));
                let local_in = restrict(d_in, mid, hi);
                let r_out = local_out.as_ref().map_or(0, rank);
                let h = mid.len() - r_out - rank(&local_in);
                if h == 0 {
                    return Vec::new();
                }
                let kernel = match &local_out {
                    Some(d) => kernel_sparse(d),
                    None => (0..mid.len())
                        .map(|i| SparseVector::from_entries(mid.len(), vec![(i, super::rational::one())]))
                        .collect(),
                };
                let mut ech = Echelon::<BigInt>::default();
                for col in local_in.columns() {
                    ech.insert(integerize(col)).expect("BigInt elimination cannot overflow");
                }
                let mut found = Vec::with_capacity(h);
                for k in kernel {
                    if found.len() == h {
                        break;
                    }
                    if ech.insert(integerize(k.entries())).expect("BigInt elimination cannot overflow") {
                        let entries = k.entries().iter().map(|(i, x)| (mid[*i], x.clone())).collect();
                        found.push(SparseVector::from_entries(len, entries));
                    }
                }
                debug_assert_eq!(found.len(), h);
                found
            })
            .collect();
        reps.sort_by(|a, b| a.entries().first().map(|e| e.0).cmp(&b.entries().first().map(|e| e.0)));
        debug_assert_eq!(reps.len(), expected);
        reps
    }
}

/// Submatrix on the given (ascending) row and column ids.
fn restrict(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> RatMatrix {
    let columns = cols
        .iter()
        .map(|&c| {
            m.column(c)
                .iter()
                .map(|(r, x)| (rows.binary_search(r).expect("row outside piece"), x.clone()))
                .collect()
        })
        .collect();
    RatMatrix::from_columns_unchecked(rows.len(), columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::in_span_sparse;

    /// Simplicial chain complex of the boundary of a triangle (a circle).
    fn circle() -> ChainComplex {
        let d1 = RatMatrix::from_integer_rows(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]).unwrap();
        let d2 = RatMatrix::zeros(3, 0);
        ChainComplex::new(vec![3, 3, 0], vec![d1, d2]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        c.verify_chain_condition().unwrap();
        let h = c.homology(1, true).unwrap();
        assert_eq!(h.dims.values().copied().collect::<Vec<_>>(), vec![1, 1]);
        let z = &h.representatives[&1][0];
        let d1 = c.boundary(1).unwrap();
        assert!(d1.mul_sparse(z).unwrap().is_zero());
    }

    #[test]
    fn representatives_are_not_boundaries() {
        // C_0 <- C_1 <- C_2 with C_1 = Q^3, d_2 hitting one direction.
        let d1 = RatMatrix::zeros(1, 3);
        let d2 = RatMatrix::from_integer_rows(&[vec![1], vec![1], vec![0]]).unwrap();
        let c = ChainComplex::new(vec![1, 3, 1], vec![d1, d2.clone()]).unwrap();
        let h = c.homology(1, true).unwrap();
        assert_eq!(h.dims[&1], 2);
        let image = vec![SparseVector::from_dense(&d2.to_dense().iter().map(|r| r[0].clone()).collect::<Vec<_>>())];
        let mut acc = image.clone();
        for z in &h.representatives[&1] {
            assert!(!in_span_sparse(z, &acc).unwrap());
            acc.push(z.clone());
        }
    }

    #[test]
    fn shape_checks() {
        assert!(ChainComplex::new(vec![2, 2], vec![RatMatrix::zeros(2, 3)]).is_err());
        assert!(circle().homology(1, false).is_ok());
        assert!(circle().homology(2, false).is_err());
    }
}
