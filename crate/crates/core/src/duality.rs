//! Duals of QC codes at the constituent level.
//!
//! Writing `-u_i ≡ u_j q^s (mod m)` with `j` the index of the reciprocal factor of `f_i`,
//! the i-th constituent of `C^⊥` is `(σ^s C_j)^{⊥e}` where `σ(x) = x^q`. For a
//! self-reciprocal factor of degree `e > 1` this is the Hermitian dual (`s = e/2`);
//! for `x - 1`, and `x + 1` when it divides, it is the Euclidean dual.

use serde::Serialize;

use crate::crt::CrtContext;
use crate::error::{Error, Result};
use crate::linear::{DualKind, LinearCode};
use crate::qc::QcCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

#[derive(Clone, Debug)]
pub struct DualityProfile {
    partner: Vec<usize>,
    twist: Vec<u32>,
    mode: Vec<InnerProduct>,
    base_degree: u32,
    degree: Vec<u32>,
}

impl DualityProfile {
    pub fn new(ctx: &CrtContext) -> DualityProfile {
        let m = ctx.m();
        let q = ctx.base().order();
        let fact = ctx.factorization();
        let mut partner = Vec::new();
        let mut twist = Vec::new();
        let mut mode = Vec::new();
        let mut degree = Vec::new();
        for i in 0..ctx.len() {
            let neg = (m - ctx.leader(i)) % m;
            let j = fact.factor_of_exponent(neg);
            let uj = ctx.leader(j) as u128;
            let e = ctx.degree(i) as u32;
            let s = (0..e)
                .find(|&s| uj * crate::arith::mod_pow(q, s as u64, m as u64) as u128 % m as u128 == neg as u128)
                .expect("-u_i lies in the coset of u_j");
            partner.push(j);
            twist.push(s);
            mode.push(if j == i && s != 0 { InnerProduct::Hermitian } else { InnerProduct::Euclidean });
            degree.push(e);
        }
        DualityProfile { partner, twist, mode, base_degree: ctx.base().degree(), degree }
    }

    /// The index `j` with `f_j` the reciprocal of `f_i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn is_self_reciprocal(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    /// The exponent `s` with `-u_i ≡ u_j q^s (mod m)`.
    pub fn twist(&self, i: usize) -> u32 {
        self.twist[i]
    }

    pub fn mode(&self, i: usize) -> InnerProduct {
        self.mode[i]
    }

    /// Applies `σ^s` (with `σ(x) = x^q`) to a constituent code over `E_i`.
    fn frobenius(&self, code: &LinearCode, i: usize, s: i64) -> LinearCode {
        let steps = s.rem_euclid(self.degree[i] as i64) as u32 * self.base_degree;
        code.frobenius(steps)
    }

    /// Constituents of `C^⊥` from those of `C`.
    pub fn dual_parts(&self, parts: &[LinearCode]) -> Vec<LinearCode> {
        (0..parts.len())
            .map(|i| {
                let j = self.partner[i];
                self.frobenius(&parts[j], j, self.twist[i] as i64).dual(DualKind::Euclidean).expect("euclidean dual")
            })
            .collect()
    }
}

/// The failing constituent and a vector demonstrating the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub vector: Vec<u64>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn yes() -> Verdict {
        Verdict { holds: true, witness: None }
    }

    fn no(index: usize, vector: Vec<u64>, reason: impl Into<String>) -> Verdict {
        Verdict { holds: false, witness: Some(Witness { index, vector, reason: reason.into() }) }
    }
}

/// Constituents of the Euclidean dual of `code`.
pub fn dual_constituents(ctx: &CrtContext, code: &QcCode) -> Result<Vec<LinearCode>> {
    let parts = ctx.decompose(code)?;
    Ok(DualityProfile::new(ctx).dual_parts(&parts))
}

/// The Euclidean dual of `code` as a QC code, assembled from its dual constituents.
pub fn dual_code(ctx: &CrtContext, code: &QcCode) -> Result<QcCode> {
    let duals = dual_constituents(ctx, code)?;
    ctx.jensen_concatenate(code.ell(), &duals)
}

pub fn is_self_dual(ctx: &CrtContext, code: &QcCode) -> Result<Verdict> {
    let parts = ctx.decompose(code)?;
    let duals = DualityProfile::new(ctx).dual_parts(&parts);
    for (i, (c, d)) in parts.iter().zip(&duals).enumerate() {
        if c == d {
            continue;
        }
        if let Some(v) = c.basis_rows().into_iter().find(|v| !d.contains(v)) {
            return Ok(Verdict::no(i, v, "constituent word outside the dual constituent"));
        }
        let v = d.basis_rows().into_iter().find(|v| !c.contains(v)).expect("codes differ");
        return Ok(Verdict::no(i, v, "dual constituent word outside the constituent"));
    }
    Ok(Verdict::yes())
}

pub fn is_lcd(ctx: &CrtContext, code: &QcCode) -> Result<Verdict> {
    let parts = ctx.decompose(code)?;
    let duals = DualityProfile::new(ctx).dual_parts(&parts);
    for (i, (c, d)) in parts.iter().zip(&duals).enumerate() {
        let hull = c.intersection(d)?;
        if let Some(v) = hull.basis_rows().into_iter().next() {
            return Ok(Verdict::no(i, v, "nonzero word in the constituent hull"));
        }
    }
    Ok(Verdict::yes())
}

/// Builds an LCD QC code from constituent parts.
///
/// Each `(i, D)` either names a self-reciprocal index, where `D` must be LCD for the
/// inner product of that index, or one member of a reciprocal pair, where `D` must be
/// Euclidean LCD; the partner then receives the matching twist of `D`. Unlisted
/// indices get the zero code.
pub fn build_qccd(ctx: &CrtContext, ell: usize, parts: &[(usize, LinearCode)]) -> Result<QcCode> {
    let profile = DualityProfile::new(ctx);
    let mut slots: Vec<Option<LinearCode>> = vec![None; ctx.len()];
    for (i, d) in parts {
        let i = *i;
        if i >= ctx.len() {
            return Err(Error::Constituent { index: i, reason: "no such constituent".into() });
        }
        if d.field() != ctx.field(i) || d.len() != ell {
            return Err(Error::Constituent { index: i, reason: format!("expected a length-{ell} code over {}", ctx.field(i)) });
        }
        let j = profile.partner(i);
        if slots[i].is_some() || slots[j].is_some() {
            return Err(Error::Constituent { index: i, reason: "constituent supplied twice".into() });
        }
        let kind = match profile.mode(i) {
            InnerProduct::Euclidean => DualKind::Euclidean,
            InnerProduct::Hermitian => DualKind::Hermitian,
        };
        let hull = d.hull(kind)?;
        if let Some(v) = hull.basis_rows().into_iter().next() {
            return Err(Error::Constituent { index: i, reason: format!("part is not {kind:?} LCD: {v:?} lies in its hull") });
        }
        if j != i {
            slots[j] = Some(profile.frobenius(d, i, -(profile.twist(i) as i64)));
        }
        slots[i] = Some(d.clone());
    }
    let full: Vec<LinearCode> =
        slots.into_iter().enumerate().map(|(i, s)| s.unwrap_or_else(|| LinearCode::zero(ctx.field(i), ell))).collect();
    ctx.jensen_concatenate(ell, &full)
}
