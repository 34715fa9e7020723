use super::*;
use crate::algebra::{base_field, dual_numbers, group_algebra_cyclic, matrix_algebra, truncated_poly};
use crate::linalg::row_reduce;
use crate::linalg::rational::zero;

/// Dense brute-force oracle: explicit digit tuples and dense elimination,
/// sharing no indexing or rank code with the implementation.
mod oracle {
    use super::*;

    pub fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn position(all: &[Vec<usize>], t: &[usize]) -> usize {
        all.iter().position(|u| u == t).unwrap()
    }

    fn product(a: &FinDimAlgebra, x: usize, y: usize) -> Vec<Rational> {
        a.mul_coords(&a.basis_vector(x), &a.basis_vector(y))
    }

    pub type Dense = Vec<Vec<Rational>>;

    pub fn faces(a: &FinDimAlgebra, n: usize, wrap: bool) -> Dense {
        let d = a.dim();
        let src = tuples(d, n + 1);
        let dst = tuples(d, n);
        let mut m = vec![vec![zero(); src.len()]; dst.len()];
        for (c, t) in src.iter().enumerate() {
            for i in 0..n {
                let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
                for (k, x) in product(a, t[i], t[i + 1]).into_iter().enumerate() {
                    let mut u = t[..i].to_vec();
                    u.push(k);
                    u.extend_from_slice(&t[i + 2..]);
                    m[position(&dst, &u)][c] += &sign * x;
                }
            }
            if wrap {
                let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
                for (k, x) in product(a, t[n], t[0]).into_iter().enumerate() {
                    let mut u = vec![k];
                    u.extend_from_slice(&t[1..n]);
                    m[position(&dst, &u)][c] += &sign * x;
                }
            }
        }
        m
    }

    /// `1 - t` with `t(x_0..x_n) = (-1)^n (x_n, x_0, ..., x_{n-1})`.
    pub fn one_minus_t(d: usize, n: usize) -> Dense {
        let all = tuples(d, n + 1);
        let mut m = vec![vec![zero(); all.len()]; all.len()];
        for (c, t) in all.iter().enumerate() {
            m[c][c] += rat(1);
            let mut u = vec![t[n]];
            u.extend_from_slice(&t[..n]);
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            m[position(&all, &u)][c] -= sign;
        }
        m
    }

    pub fn rank(m: &Dense) -> usize {
        row_reduce(m.clone()).0.len()
    }

    pub fn hconcat(a: &Dense, b: &Dense) -> Dense {
        a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect()
    }

    pub fn hh(a: &FinDimAlgebra, cap: usize) -> Vec<usize> {
        let d = a.dim();
        (0..=cap)
            .map(|n| {
                let r_out = if n == 0 { 0 } else { rank(&faces(a, n, true)) };
                d.pow(n as u32 + 1) - r_out - rank(&faces(a, n + 1, true))
            })
            .collect()
    }

    /// Homology of `C / (1 - t)`: cycles are chains whose boundary lies in
    /// `im(1 - t)`, boundaries are `im(1 - t) + im(b)`.
    pub fn hc(a: &FinDimAlgebra, cap: usize) -> Vec<usize> {
        let d = a.dim();
        (0..=cap)
            .map(|n| {
                let size = d.pow(n as u32 + 1);
                let cycles = if n == 0 {
                    size
                } else {
                    let w = one_minus_t(d, n - 1);
                    size - (rank(&hconcat(&faces(a, n, true), &w)) - rank(&w))
                };
                let boundaries = rank(&hconcat(&one_minus_t(d, n), &faces(a, n + 1, true)));
                cycles - boundaries
            })
            .collect()
    }

    pub fn lambda_dim(d: usize, n: usize) -> usize {
        d.pow(n as u32 + 1) - rank(&one_minus_t(d, n))
    }
}

fn dims(r: &HomologyReport) -> Vec<usize> {
    r.dims_vec()
}

fn test_algebras() -> Vec<(FinDimAlgebra, usize)> {
    vec![
        (base_field(), 3),
        (dual_numbers(), 3),
        (matrix_algebra(&base_field(), 2).unwrap(), 2),
        (group_algebra_cyclic(2).unwrap(), 3),
        (truncated_poly(3).unwrap(), 2),
    ]
}

#[test]
fn oracle_values_are_frozen() {
    assert_eq!(oracle::hh(&base_field(), 3), vec![1, 0, 0, 0]);
    assert_eq!(oracle::hc(&base_field(), 3), vec![1, 0, 1, 0]);
    assert_eq!(oracle::hh(&dual_numbers(), 3), vec![2, 1, 1, 1]);
    assert_eq!(oracle::hc(&dual_numbers(), 3), vec![2, 0, 2, 0]);
    let m2 = matrix_algebra(&base_field(), 2).unwrap();
    assert_eq!(oracle::hh(&m2, 2), vec![1, 0, 0]);
    assert_eq!(oracle::hc(&m2, 2), vec![1, 0, 1]);
    assert_eq!(oracle::lambda_dim(2, 2), 4);
}

#[test]
fn boundaries_match_oracle() {
    for (a, cap) in test_algebras() {
        for n in 1..=cap + 1 {
            let b = hochschild_boundary(&a, n).unwrap();
            assert_eq!(b.to_dense(), oracle::faces(&a, n, true), "{} b_{n}", a.label());
            let bp = bar_boundary(&a, n).unwrap();
            assert_eq!(bp.to_dense(), oracle::faces(&a, n, false), "{} b'_{n}", a.label());
        }
    }
}

#[test]
fn homology_matches_oracle() {
    for (a, cap) in test_algebras() {
        let limits = Limits::with_cap(cap);
        assert_eq!(dims(&hochschild_homology_checked(&a, &limits).unwrap()), oracle::hh(&a, cap), "{}", a.label());
        assert_eq!(dims(&cyclic_homology(&a, &limits).unwrap()), oracle::hc(&a, cap), "{}", a.label());
    }
}

#[test]
fn base_field_boundary_alternates() {
    // n + 1 faces of 1 (x) ... (x) 1 with alternating signs: they cancel for
    // odd n and leave the identity for even n.
    for n in 1..=5 {
        let b = hochschild_boundary(&base_field(), n).unwrap();
        if n % 2 == 1 {
            assert!(b.is_zero());
        } else {
            assert_eq!(b, RatMatrix::identity(1));
        }
    }
}

#[test]
fn rank_of_first_boundary_for_m2() {
    let m2 = matrix_algebra(&base_field(), 2).unwrap();
    assert_eq!(crate::linalg::rank(&hochschild_boundary(&m2, 1).unwrap()), 3);
}

#[test]
fn b_squares_to_zero() {
    for (a, cap) in test_algebras() {
        let limits = Limits::with_cap(cap);
        hochschild_complex(&a, &limits).unwrap().verify_chain_condition().unwrap();
        hochschild_bicomplex(&a, &limits).unwrap().verify_chain_condition().unwrap();
        lambda_complex(&a, &limits).unwrap().verify_chain_condition().unwrap();
        cyclic_bicomplex(&a, &limits).unwrap().verify_chain_condition().unwrap();
    }
    let dual = dual_numbers();
    for n in 2..=4 {
        let b = hochschild_boundary(&dual, n).unwrap();
        let b_prev = hochschild_boundary(&dual, n - 1).unwrap();
        assert!(b_prev.mul(&b).unwrap().is_zero());
    }
}

#[test]
fn lambda_spaces() {
    for n in 0..5 {
        let expected = if n % 2 == 0 { 1 } else { 0 };
        assert_eq!(LambdaBasis::new(1, n).dim(), expected);
    }
    assert_eq!(LambdaBasis::new(2, 2).dim(), 4);
    for n in 0..4 {
        assert_eq!(LambdaBasis::new(2, n).dim(), oracle::lambda_dim(2, n));
        assert_eq!(LambdaBasis::new(3, n).dim(), oracle::lambda_dim(3, n));
    }
}

#[test]
fn boundary_descends_to_lambda() {
    for (a, _) in test_algebras() {
        let top = if a.dim() > 2 { 3 } else { 4 };
        for n in 1..=top {
            assert!(lambda_descends(&a, n).unwrap(), "{} n={n}", a.label());
        }
    }
}

#[test]
fn projection_kills_one_minus_t() {
    let a = dual_numbers();
    for n in 0..4 {
        assert!(lambda_projection(&a, n).mul(&one_minus_t(&a, n)).unwrap().is_zero());
    }
}

#[test]
fn degree_zero_is_cocenter() {
    for (a, _) in test_algebras() {
        let limits = Limits::with_cap(0);
        assert_eq!(hochschild_homology(&a, &limits).unwrap().dims[&0], a.cocenter_dim());
        assert_eq!(cyclic_homology(&a, &limits).unwrap().dims[&0], a.cocenter_dim());
    }
}

#[test]
fn representatives_are_cycles() {
    let a = dual_numbers();
    let limits = Limits::with_cap(3);
    let c = hochschild_complex(&a, &limits).unwrap();
    let r = hochschild_homology(&a, &limits).unwrap();
    for (n, reps) in &r.representatives {
        assert_eq!(reps.len(), r.dims[n]);
        if *n > 0 {
            for z in reps {
                assert!(c.boundary(*n).unwrap().mul_sparse(z).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn budget_names_the_degree() {
    let m2 = matrix_algebra(&base_field(), 2).unwrap();
    let limits = Limits { cap: 3, budget: 100, representatives: false };
    match hochschild_homology(&m2, &limits) {
        Err(Error::Budget { degree, size, budget }) => {
            assert_eq!((degree, size, budget), (3, 256, 100));
        }
        other => panic!("expected budget error, got {other:?}"),
    }
    assert!(matches!(cyclic_homology(&m2, &limits), Err(Error::Budget { .. })));
}

#[test]
fn morita_small_cases() {
    for a in [base_field(), dual_numbers(), group_algebra_cyclic(2).unwrap()] {
        let m = matrix_algebra(&a, 2).unwrap();
        let limits = Limits::with_cap(2).dims_only();
        assert_eq!(
            dims(&hochschild_homology(&m, &limits).unwrap()),
            dims(&hochschild_homology(&a, &limits).unwrap())
        );
        assert_eq!(dims(&cyclic_homology(&m, &limits).unwrap()), dims(&cyclic_homology(&a, &limits).unwrap()));
    }
}
