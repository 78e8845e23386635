//! Brute-force oracles shared by the integration tests. They use only raw field
//! arithmetic, never the library's own distance or duality code.

#![allow(dead_code)]

use qccodes::{Field, LinearCode, QcCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every codeword of the row space of `rows`, by enumerating all coefficient vectors.
pub fn all_words(f: &Field, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let q = f.order();
    let k = rows.len();
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut w = vec![0u64; n];
            for row in rows {
                let c = idx % q;
                idx /= q;
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
            w
        })
        .collect()
}

/// Minimum nonzero weight, or `None` for the zero code.
pub fn brute_distance(code: &LinearCode) -> Option<u64> {
    all_words(code.field(), &code.basis_rows(), code.len())
        .iter()
        .map(|w| w.iter().filter(|&&x| x != 0).count() as u64)
        .filter(|&w| w > 0)
        .min()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random QC code over GF(q) with coprime `m`, index 1..=3 and one or two generators.
pub fn small_qc(seed: u64, q: u64, ms: &[usize], max_ell: usize) -> QcCode {
    let mut r = rng(seed);
    let m = ms[r.gen_range(0..ms.len())];
    let ell = r.gen_range(1..=max_ell);
    let rows = r.gen_range(1..=2);
    let f = Field::of_order(q).unwrap();
    qccodes::sample::random_qc(&mut r, &f, m, ell, rows).unwrap()
}
