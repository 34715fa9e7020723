//! Seeded randomized suites over banded operators. Each suite draws from its
//! own ChaCha stream, so suites are independent of evaluation order.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{base_field, dual_numbers, matrix_algebra, FinDimAlgebra};
use crate::error::Result;
use crate::jacobi::random::{operator, OperatorParams, Shape};
use crate::jacobi::{
    cocycle, cocycle_identity_check, lattice_witness_backward, lattice_witness_forward, shift_power,
    validate_lattice_witnesses, windowed_product, JacobiOperator, LatticeIndex,
};
use crate::linalg::Rational;

const MAX_REPORTED: usize = 5;

/// Count of checks run and a sample of the failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: usize,
    pub failed: usize,
    pub samples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.samples.len() < MAX_REPORTED {
                self.samples.push(what());
            }
        }
    }

    fn absorb(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        match ok {
            Ok(b) => self.check(b, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        format!("{} failures in {} checks", self.failed, self.checks)
    }
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Coefficient rings the suites cycle through.
pub fn suite_rings() -> Vec<Arc<FinDimAlgebra>> {
    let k = base_field();
    let m2 = matrix_algebra(&k, 2).expect("M_2(k) is a valid algebra");
    vec![Arc::new(k), Arc::new(dual_numbers()), Arc::new(m2)]
}

fn shaped<R: Rng>(rng: &mut R, ring: &Arc<FinDimAlgebra>, shape: Shape) -> JacobiOperator {
    operator(rng, ring, &OperatorParams { shape, ..OperatorParams::default() })
}

fn any_shape<R: Rng>(rng: &mut R, ring: &Arc<FinDimAlgebra>) -> JacobiOperator {
    let shape = [Shape::Any, Shape::Plus, Shape::Minus, Shape::Finite][rng.gen_range(0..4)];
    shaped(rng, ring, shape)
}

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Clone, Debug)]
pub struct CocycleSuite {
    /// `(j, c(T^j, T^-j))` over `k`.
    pub shift_values: Vec<(i64, Vec<Rational>)>,
    pub shifts: Tally,
    pub antisymmetry: Tally,
    pub identity: Tally,
}

impl CocycleSuite {
    pub fn passed(&self) -> bool {
        self.shifts.passed() && self.antisymmetry.passed() && self.identity.passed()
    }
}

/// `c(T^j, T^-j) = -j` with vanishing commutators over `ring`.
pub fn shift_cocycles(ring: &Arc<FinDimAlgebra>, tally: &mut Tally) -> Result<Vec<(i64, Vec<Rational>)>> {
    let mut values = Vec::new();
    for j in 1..=4 {
        let a = shift_power(ring.clone(), j);
        let b = shift_power(ring.clone(), -j);
        let c = cocycle(&a, &b)?;
        let minus_j: Vec<Rational> = ring.unit().iter().map(|x| x * Rational::from_integer((-j).into())).collect();
        let expected = ring.cocenter_normal_form(&minus_j);
        tally.check(c == expected, || format!("c(T^{j}, T^-{j}) is not -{j}"));
        tally.check(a.commutator(&b)?.is_zero(), || format!("[T^{j}, T^-{j}] is nonzero"));
        values.push((j, c));
    }
    Ok(values)
}

pub fn cocycle_suite(seed: u64, triples: usize) -> Result<CocycleSuite> {
    let mut shifts = Tally::default();
    let shift_values = shift_cocycles(&Arc::new(base_field()), &mut shifts)?;
    let rings = suite_rings();
    let mut r = rng(seed, 5);
    let mut antisymmetry = Tally::default();
    let mut identity = Tally::default();
    for t in 0..triples {
        let ring = &rings[t % rings.len()];
        let [a, b, z] = [0; 3].map(|_| any_shape(&mut r, ring));
        antisymmetry.absorb(cocycle(&a, &a).map(|c| is_zero(&c)), || format!("c(a, a) != 0 in triple {t}"));
        let anti = cocycle(&a, &b).and_then(|ab| {
            let ba = cocycle(&b, &a)?;
            Ok(ab.iter().zip(&ba).all(|(x, y)| (x + y).is_zero()))
        });
        antisymmetry.absorb(anti, || format!("c(a, b) != -c(b, a) in triple {t}"));
        identity.absorb(cocycle_identity_check(&a, &b, &z), || format!("cocycle identity fails in triple {t}"));
    }
    Ok(CocycleSuite { shift_values, shifts, antisymmetry, identity })
}

#[derive(Clone, Debug, Default)]
pub struct IdealSuite {
    pub split: Tally,
    pub closure: Tally,
    pub membership: Tally,
    pub trace: Tally,
}

impl IdealSuite {
    pub fn passed(&self) -> bool {
        self.split.passed() && self.closure.passed() && self.membership.passed() && self.trace.passed()
    }
}

/// Finite support read directly off the diagonals.
fn finitely_supported(a: &JacobiOperator) -> bool {
    a.terms().values().all(|d| d.finite_support().is_some())
}

pub fn ideal_suite(seed: u64, ops: usize, sandwiches: usize) -> Result<IdealSuite> {
    let rings = suite_rings();
    let mut r = rng(seed, 6);
    let mut out = IdealSuite::default();
    for t in 0..ops {
        let ring = &rings[t % rings.len()];
        let a = any_shape(&mut r, ring);
        let (u, v) = a.split();
        out.split.check(u.in_iplus(), || format!("P a not in I+ for operator {t}"));
        out.split.check(v.in_iminus(), || format!("(1-P) a not in I- for operator {t}"));
        out.split.absorb(u.add(&v).map(|s| s == a), || format!("split does not sum back for operator {t}"));
        out.membership.check(a.in_i0() == (a.in_iplus() && a.in_iminus()), || format!("I0 test inconsistent for {t}"));
        out.membership.check(a.in_i0() == finitely_supported(&a), || format!("I0 test disagrees with support for {t}"));
        let f = shaped(&mut r, ring, Shape::Finite);
        // Over a noncommutative ring the trace of a commutator lies in [R, R].
        let vanishes = f.commutator(&a).and_then(|c| c.trace()).map(|tr| is_zero(&ring.cocenter_normal_form(tr.coords())));
        out.trace.absorb(vanishes, || format!("tr [f, a] != 0 for operator {t}"));
    }
    for s in 0..sandwiches {
        let ring = &rings[s % rings.len()];
        let x = shaped(&mut r, ring, Shape::Any);
        let y = shaped(&mut r, ring, Shape::Any);
        let cases: [(Shape, fn(&JacobiOperator) -> bool, &str); 3] = [
            (Shape::Plus, JacobiOperator::in_iplus, "I+"),
            (Shape::Minus, JacobiOperator::in_iminus, "I-"),
            (Shape::Finite, JacobiOperator::in_i0, "I0"),
        ];
        for (shape, member, name) in cases {
            let i = shaped(&mut r, ring, shape);
            let prod = x.mul(&i).and_then(|xi| xi.mul(&y));
            out.closure.absorb(prod.map(|p| member(&p)), || format!("x i y leaves {name} in sandwich {s}"));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct ProductSuite {
    pub oracle: Tally,
    pub associativity: Tally,
}

impl ProductSuite {
    pub fn passed(&self) -> bool {
        self.oracle.passed() && self.associativity.passed()
    }
}

/// Interior radius compared against the dense oracle.
const INTERIOR: i64 = 6;

pub fn product_suite(seed: u64, pairs: usize, triples: usize) -> Result<ProductSuite> {
    let rings = suite_rings();
    let mut r = rng(seed, 7);
    let mut out = ProductSuite::default();
    for t in 0..pairs {
        let ring = &rings[t % rings.len()];
        let a = any_shape(&mut r, ring);
        let b = any_shape(&mut r, ring);
        let ok = a.mul(&b).map(|p| p.truncate(INTERIOR) == windowed_product(&a, &b, INTERIOR));
        out.oracle.absorb(ok, || format!("product disagrees with truncation oracle for pair {t}"));
    }
    for t in 0..triples {
        let ring = &rings[t % rings.len()];
        let [a, b, c] = [0; 3].map(|_| any_shape(&mut r, ring));
        let ok = (|| Ok(a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?))();
        out.associativity.absorb(ok, || format!("(ab)c != a(bc) for triple {t}"));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct LatticeSuite {
    pub random: Tally,
    pub shifts: Tally,
}

impl LatticeSuite {
    pub fn passed(&self) -> bool {
        self.random.passed() && self.shifts.passed()
    }
}

pub fn lattice_suite(seed: u64, ops: usize) -> LatticeSuite {
    let rings = suite_rings();
    let mut r = rng(seed, 8);
    let mut out = LatticeSuite::default();
    for t in 0..ops {
        let ring = &rings[t % rings.len()];
        let a = any_shape(&mut r, ring);
        let n = r.gen_range(-6..=6);
        let m = r.gen_range(-6..=6);
        out.random.check(validate_lattice_witnesses(&a, n, m), || format!("witnesses fail for operator {t} (n={n}, m={m})"));
    }
    for ring in &rings {
        for k in -3..=3 {
            let tk = shift_power(ring.clone(), k);
            for n in -3..=3 {
                let fwd = lattice_witness_forward(&tk, n);
                let bwd = lattice_witness_backward(&tk, n);
                out.shifts.check(fwd == LatticeIndex::Index(n + k), || format!("forward(T^{k}, {n}) = {fwd}"));
                out.shifts.check(bwd == LatticeIndex::Index(n - k), || format!("backward(T^{k}, {n}) = {bwd}"));
            }
        }
    }
    out
}
