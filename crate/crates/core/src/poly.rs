//! Univariate polynomials over a finite field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::galois::{Embedding, Field, FieldElem};

/// Coefficients are ascending and never carry trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u64) -> Poly {
        Poly::from_raw(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn monomial(field: &Field, c: u64, k: usize) -> Poly {
        let mut v = vec![0u64; k + 1];
        v[k] = c;
        Poly::from_raw(field, v)
    }

    /// `x^m - 1`.
    pub fn xm_minus_one(field: &Field, m: usize) -> Poly {
        let mut v = vec![0u64; m + 1];
        v[0] = field.neg(1);
        v[m] = 1;
        Poly::from_raw(field, v)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<u64>) -> Result<Poly> {
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element of {field}")));
        }
        Ok(Poly::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u64; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, lead_inv);
            q[i - dd] = t;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(t, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_raw(f, q), Poly::from_raw(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_field(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let c = f.inv(r0.lead());
        Ok((r0.scale(c), s0.scale(c), t0.scale(c)))
    }

    /// Evaluation at a raw element of the coefficient field.
    pub fn eval_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluation at a point of the coefficient field or of an extension of it.
    pub fn eval(&self, point: &FieldElem) -> Result<FieldElem> {
        if point.field() == &self.field {
            return Ok(self.field.elem(self.eval_raw(point.value())));
        }
        let lifted = self.embed(&*Embedding::new(&self.field, point.field())?);
        Ok(point.field().elem(lifted.eval_raw(point.value())))
    }

    /// Maps the coefficients through an embedding.
    pub fn embed(&self, emb: &Embedding) -> Poly {
        debug_assert!(emb.sub() == &self.field);
        Poly::from_raw(emb.target(), self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    /// `f(0)^{-1} x^deg f(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::InvalidArgument("reciprocal needs a nonzero constant term".into()));
        }
        let rev: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        Ok(Poly::from_raw(&self.field, rev).scale(self.field.inv(c0)))
    }

    /// Reduction modulo `x^m - 1`.
    pub fn reduce_cyclic(&self, m: usize) -> Poly {
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let f = &self.field;
        let mut v = vec![0u64; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i % m] = f.add(v[i % m], c);
        }
        Poly::from_raw(f, v)
    }

    /// Product modulo `x^m - 1`.
    pub fn mul_cyclic(&self, other: &Poly, m: usize) -> Poly {
        (self * other).reduce_cyclic(m)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(&self.field), |acc, _| &acc * self)
    }

    /// Coefficient vector padded (or cut) to length `len`.
    pub fn to_vec(&self, len: usize) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(len, 0);
        v
    }

    /// Parses comma-separated ascending coefficients, e.g. `1,1,0,1` for `1 + x + x^3`.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Poly::zero(field));
        }
        let coeffs = s.split(',').map(|t| field.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_raw(field, coeffs))
    }
}

impl fmt::Display for Poly {
    /// Comma-separated raw coefficients, ascending; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]@{}", self.field)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomials over different fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_raw(f, v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomials over different fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_raw(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomials over different fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_raw(f, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = gf(2);
        let p = Poly::parse(&f, "1,1,0,1").unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "1,1,0,1");
        assert_eq!(p.reciprocal().unwrap().to_string(), "1,0,1,1");
    }

    #[test]
    fn gcd_example() {
        let f = gf(2);
        let a = Poly::xm_minus_one(&f, 3);
        let b = Poly::parse(&f, "1,1").unwrap();
        assert_eq!(a.gcd(&b).unwrap(), b);
    }

    #[test]
    fn errors() {
        let a = Poly::one(&gf(2));
        let b = Poly::one(&gf(3));
        assert_eq!(a.checked_add(&b), Err(Error::MixedFields));
        assert_eq!(a.divmod(&Poly::zero(&gf(2))), Err(Error::DivisionByZero));
    }

    fn poly_strategy(q: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0..q, 0..max_len)
    }

    proptest! {
        #[test]
        fn division_identity(a in poly_strategy(4, 9), b in poly_strategy(4, 6)) {
            let f = gf(4);
            let a = Poly::from_raw(&f, a);
            let b = Poly::from_raw(&f, b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn xgcd_bezout(a in poly_strategy(3, 8), b in poly_strategy(3, 8)) {
            let f = gf(3);
            let a = Poly::from_raw(&f, a);
            let b = Poly::from_raw(&f, b);
            let (g, s, t) = a.xgcd(&b).unwrap();
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert_eq!(g, a.gcd(&b).unwrap());
        }

        #[test]
        fn cyclic_reduction_is_a_ring_map(a in poly_strategy(5, 14), b in poly_strategy(5, 14), m in 1usize..8) {
            let f = gf(5);
            let a = Poly::from_raw(&f, a);
            let b = Poly::from_raw(&f, b);
            let xm = Poly::xm_minus_one(&f, m);
            prop_assert_eq!(a.reduce_cyclic(m), a.rem(&xm).unwrap());
            prop_assert_eq!(a.mul_cyclic(&b, m), (&a * &b).rem(&xm).unwrap());
        }
    }
}
