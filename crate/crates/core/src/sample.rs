//! Seeded random instances for sweeps and self-tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cyclotomic::factor_xm1;
use crate::error::Result;
use crate::galois::Field;
use crate::linear::LinearCode;
use crate::poly::Poly;
use crate::qc::QcCode;

/// Uniform polynomial of degree `< len`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, field: &Field, len: usize) -> Poly {
    let q = field.order();
    Poly::from_coeffs(field, (0..len).map(|_| rng.gen_range(0..q)).collect()).expect("coefficients in range")
}

/// A QC code with `rows` generators, each `g(x) · (r_0, ..., r_{ℓ-1})` where `g` is a
/// random product of irreducible factors of `x^m - 1` and the `r_j` are uniform.
pub fn random_qc<R: Rng + ?Sized>(rng: &mut R, field: &Field, m: usize, ell: usize, rows: usize) -> Result<QcCode> {
    let fact = factor_xm1(field.order(), m)?;
    let mut gens = Vec::with_capacity(rows);
    for _ in 0..rows {
        let g = fact.factors().iter().filter(|_| rng.gen_bool(0.5)).fold(Poly::one(field), |acc, f| &acc * &f.poly);
        gens.push((0..ell).map(|_| g.mul_cyclic(&random_poly(rng, field, m), m)).collect());
    }
    QcCode::new(field, m, ell, gens)
}

/// A random linear code of length `n` spanned by `k` uniform vectors (dimension may drop).
pub fn random_linear<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, k: usize) -> LinearCode {
    let q = field.order();
    let rows: Vec<Vec<u64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
    LinearCode::new(field, n, &rows).expect("rows have length n")
}

/// Picks one element of a nonempty slice.
pub fn pick<'a, T, R: Rng + ?Sized>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty choice")
}
