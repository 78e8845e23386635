//! Counting self-dual codes, entropy arithmetic, and the finite existence distances for
//! binary self-dual and Type II QC codes of length `3ℓ` built from a binary and a
//! quaternary constituent.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn big_pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// `Π_{i=lo}^{hi} (2^{a i + b} + 1)`, empty when `hi < lo`.
fn product(lo: i64, hi: i64, a: u64, b: u64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, i| acc * (big_pow2(a * i as u64 + b) + 1u32))
}

fn require_even(ell: u64) -> Result<()> {
    if ell == 0 || ell % 2 != 0 {
        return Err(Error::InvalidArgument(format!("length must be a positive even integer, got {ell}")));
    }
    Ok(())
}

fn require_mult8(ell: u64) -> Result<()> {
    if ell == 0 || ell % 8 != 0 {
        return Err(Error::InvalidArgument(format!("length must be a positive multiple of 8, got {ell}")));
    }
    Ok(())
}

/// Number of binary self-dual codes of length `ell`.
pub fn n2(ell: u64) -> Result<BigUint> {
    require_even(ell)?;
    Ok(product(1, ell as i64 / 2 - 1, 1, 0))
}

/// Number of binary self-dual codes of length `ell` through a fixed even-weight vector
/// other than `0` and `1`.
pub fn m2(ell: u64) -> Result<BigUint> {
    require_even(ell)?;
    Ok(product(1, ell as i64 / 2 - 2, 1, 0))
}

/// Number of Hermitian self-dual codes over GF(4) of length `ell`.
pub fn n4(ell: u64) -> Result<BigUint> {
    require_even(ell)?;
    Ok(product(0, ell as i64 / 2 - 1, 2, 1))
}

/// Number of Hermitian self-dual codes over GF(4) of length `ell` through a fixed nonzero
/// even-weight vector.
pub fn m4(ell: u64) -> Result<BigUint> {
    require_even(ell)?;
    Ok(product(0, ell as i64 / 2 - 2, 2, 1))
}

/// Number of Type II binary self-dual codes of length `ell`.
pub fn t2(ell: u64) -> Result<BigUint> {
    require_mult8(ell)?;
    Ok(product(1, ell as i64 / 2 - 2, 1, 0) * 2u32)
}

/// Number of Type II codes of length `ell` through a fixed doubly-even vector other than
/// `0` and `1`.
pub fn s2(ell: u64) -> Result<BigUint> {
    require_mult8(ell)?;
    Ok(product(1, ell as i64 / 2 - 3, 1, 0) * 2u32)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Which weights enter the sums of the existence inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRange {
    /// Nonzero weights `e >= 2` only: the counting argument concerns nonzero words.
    Nonzero,
    /// Also `e = 0`, as the summation range reads when taken literally.
    WithZero,
}

impl WeightRange {
    fn first(self) -> u64 {
        match self {
            WeightRange::Nonzero => 2,
            WeightRange::WithZero => 0,
        }
    }
}

/// Left and right sides of the self-dual existence inequality at distance `d`.
pub fn selfdual_inequality(ell: u64, d: u64, range: WeightRange) -> Result<(BigUint, BigUint)> {
    require_even(ell)?;
    let c2 = big_pow2(ell / 2 - 1) + 1u32;
    let c4 = big_pow2(ell - 1) + 1u32;
    let mut lhs = BigUint::zero();
    for e in (range.first()..d).step_by(2) {
        lhs += binomial(3 * ell, e);
        if e % 4 == 0 {
            lhs += &c2 * binomial(ell, e / 2) * BigUint::from(3u32).pow((e / 2) as u32);
        }
        if e % 6 == 0 {
            lhs += &c4 * binomial(ell, e / 3);
        }
    }
    Ok((lhs, c2 * c4))
}

/// Left and right sides of the Type II existence inequality at distance `d`.
pub fn type2_inequality(ell: u64, d: u64, range: WeightRange) -> Result<(BigUint, BigUint)> {
    require_mult8(ell)?;
    let c2 = big_pow2(ell / 2 - 2) + 1u32;
    let c4 = big_pow2(ell - 1) + 1u32;
    let mut lhs = BigUint::zero();
    let first = range.first().div_ceil(4) * 4;
    for e in (first..d).step_by(4) {
        lhs += binomial(3 * ell, e);
        lhs += &c2 * binomial(ell, e / 2) * BigUint::from(3u32).pow((e / 2) as u32);
        if e % 12 == 0 {
            lhs += &c4 * binomial(ell, e / 3);
        }
    }
    Ok((lhs, c2 * c4))
}

/// Largest multiple of `step` satisfying the inequality; the left side grows with `d`.
fn largest(step: u64, limit: u64, holds: impl Fn(u64) -> Result<bool>) -> Result<u64> {
    let mut best = 0;
    let mut d = step;
    while d <= limit && holds(d)? {
        best = d;
        d += step;
    }
    Ok(best)
}

/// Largest even `d` for which a self-dual binary QC code of length `3ℓ` and index `ℓ`
/// with distance at least `d` is guaranteed.
pub fn selfdual_existence_distance(ell: u64, range: WeightRange) -> Result<u64> {
    require_even(ell)?;
    largest(2, 3 * ell + 2, |d| {
        let (l, r) = selfdual_inequality(ell, d, range)?;
        Ok(l < r)
    })
}

/// Largest multiple of 4 for which a Type II binary QC code of length `3ℓ` and index `ℓ`
/// with distance at least `d` is guaranteed.
pub fn type2_existence_distance(ell: u64, range: WeightRange) -> Result<u64> {
    require_mult8(ell)?;
    largest(4, 3 * ell + 4, |d| {
        let (l, r) = type2_inequality(ell, d, range)?;
        Ok(l < r)
    })
}

/// `H_q(y)` for `0 <= y <= (q-1)/q`.
pub fn entropy(y: f64, q: u64) -> Result<f64> {
    let top = (q as f64 - 1.0) / q as f64;
    if q < 2 || !(0.0..=top).contains(&y) {
        return Err(Error::InvalidArgument(format!("entropy needs q >= 2 and 0 <= y <= {top}, got q = {q}, y = {y}")));
    }
    let qf = q as f64;
    let term = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.log(qf) };
    Ok(y * (qf - 1.0).log(qf) + term(y) + term(1.0 - y))
}

/// The `y` in `[0, (q-1)/q]` with `H_q(y) = r`, by bisection to `1e-12`.
pub fn entropy_inverse(r: f64, q: u64) -> Result<f64> {
    if q < 2 || !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("entropy_inverse needs q >= 2 and 0 <= r <= 1, got q = {q}, r = {r}")));
    }
    let top = (q as f64 - 1.0) / q as f64;
    bisect(|y| entropy(y, q).expect("inside the domain") - r, 0.0, top, 1e-12)
}

/// A root of an increasing function on `[lo, hi]` by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    if f(lo) > 0.0 || f(hi) < 0.0 {
        return Err(Error::InvalidArgument(format!("no sign change on [{lo}, {hi}]")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Growth exponent of `2^{ℓ/2} binom(ℓ, tℓ) 3^{tℓ}` per unit `ℓ`: `0.5 + t log2(3) + H_2(t)`.
pub fn middle_term_exponent(t: f64) -> f64 {
    0.5 + t * 3f64.log2() + entropy(t, 2).expect("t in [0, 1/2]")
}

/// The relative distance `δ` at which the middle summand of the self-dual inequality,
/// of order `2^{ℓ f(3δ/2)}`, meets the right side of order `2^{3ℓ/2}`: solves
/// `f(3δ/2) = 3/2`.
pub fn crossing_constant() -> Result<f64> {
    let t = bisect(|t| middle_term_exponent(t) - 1.5, 0.0, 0.5, 1e-13)?;
    Ok(2.0 * t / 3.0)
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn as_decimal_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

/// Counts and existence distances for one even `ℓ`; Type II entries are present only
/// when requested, which needs `8 | ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub ell: u64,
    #[serde(serialize_with = "as_decimal")]
    pub n2: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub m2: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub n4: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub m4: BigUint,
    #[serde(serialize_with = "as_decimal_opt")]
    pub t2: Option<BigUint>,
    #[serde(serialize_with = "as_decimal_opt")]
    pub s2: Option<BigUint>,
    pub d_selfdual: u64,
    pub d_selfdual_with_zero: u64,
    pub d_type2: Option<u64>,
    pub d_type2_with_zero: Option<u64>,
    pub weight_range: WeightRange,
}

pub fn count_report(ell: u64, type2: bool) -> Result<CountReport> {
    require_even(ell)?;
    if type2 {
        require_mult8(ell)?;
    }
    Ok(CountReport {
        ell,
        n2: n2(ell)?,
        m2: m2(ell)?,
        n4: n4(ell)?,
        m4: m4(ell)?,
        t2: if type2 { Some(t2(ell)?) } else { None },
        s2: if type2 { Some(s2(ell)?) } else { None },
        d_selfdual: selfdual_existence_distance(ell, WeightRange::Nonzero)?,
        d_selfdual_with_zero: selfdual_existence_distance(ell, WeightRange::WithZero)?,
        d_type2: if type2 { Some(type2_existence_distance(ell, WeightRange::Nonzero)?) } else { None },
        d_type2_with_zero: if type2 { Some(type2_existence_distance(ell, WeightRange::WithZero)?) } else { None },
        weight_range: WeightRange::Nonzero,
    })
}
