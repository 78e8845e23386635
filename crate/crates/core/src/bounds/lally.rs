//! Distance bound from viewing the code as a cyclic code over `GF(q^ℓ)`.

use serde_json::json;

use super::cyclic::{cyclic_bound, CyclicMethod, ZeroSet};
use super::spectral::Certified;
use crate::error::Result;
use crate::extnat::ExtNat;
use crate::galois::{root_of_unity, Embedding, Field, DEFAULT_FIELD_BUDGET};
use crate::linear::LinearCode;
use crate::poly::Poly;
use crate::qc::QcCode;

/// `d(C) >= d(Ĉ) · d(B)`, where each generator row `(f_0, ..., f_{ℓ-1})` becomes
/// `Σ_j f_j(x) α^j` over `GF(q^ℓ)` with `α` the canonical generator, `Ĉ` is the cyclic code
/// generated by the gcd of these and `x^m - 1`, and `B` is the span of all coefficient
/// vectors `(f_0[k], ..., f_{ℓ-1}[k])`.
pub fn lally_bound(code: &QcCode, budget: u64) -> Result<Certified> {
    let base = code.field();
    let (m, ell) = (code.m(), code.ell());
    if code.expand().is_zero() {
        return Ok(Certified { value: ExtNat::Infinite, witness: json!({"note": "zero code: the gcd is x^m - 1"}) });
    }
    let big = Field::with_budget(base.characteristic(), base.degree() * ell as u32, DEFAULT_FIELD_BUDGET)?;
    let emb = Embedding::new(base, &big)?;
    let alpha = big.generator();
    let mut g = Poly::xm_minus_one(&big, m);
    let mut rows = Vec::new();
    for row in code.generators() {
        let mut lifted = Poly::zero(&big);
        let mut power = 1u64;
        for f in row {
            lifted = &lifted + &f.embed(&emb).scale(power);
            power = big.mul(power, alpha);
        }
        g = g.gcd(&lifted)?;
        for k in 0..m {
            rows.push(row.iter().map(|f| f.coeff(k)).collect::<Vec<u64>>());
        }
    }
    let b = LinearCode::new(base, ell, &rows)?;
    let d_b = b.min_distance(budget)?;
    let (d_hat, method) = cyclic_distance(&big, m, &g, budget)?;
    let value = match (d_hat, d_b) {
        (ExtNat::Finite(x), ExtNat::Finite(y)) => ExtNat::Finite(x * y),
        _ => ExtNat::Infinite,
    };
    Ok(Certified {
        value,
        witness: json!({
            "basis": format!("powers of the generator {} of {big}", big.format(alpha)),
            "gcd": g.to_string(),
            "cyclic_distance": d_hat,
            "cyclic_method": method,
            "row_code_dim": b.dim(),
            "row_code_distance": d_b,
        }),
    })
}

/// Distance of `<g>` of length `m` over `field`: exact within budget, else the better of the
/// BCH and HT bounds of its zeros in a splitting field.
fn cyclic_distance(field: &Field, m: usize, g: &Poly, budget: u64) -> Result<(ExtNat, &'static str)> {
    let cyclic = QcCode::new(field, m, 1, vec![vec![g.clone()]])?;
    if let Ok(d) = cyclic.expand().min_distance(budget) {
        return Ok((d, "exact"));
    }
    let (split, xi) = root_of_unity(field.order(), m)?;
    let lifted = g.embed(&*Embedding::new(field, &split)?);
    let zeros = (0..m).filter(|&k| lifted.eval_raw(split.pow(xi, k as u64)) == 0);
    let Ok(z) = ZeroSet::new(m, zeros) else {
        return Ok((ExtNat::Finite(1), "trivial"));
    };
    if z.is_empty() {
        return Ok((ExtNat::Finite(1), "no zeros"));
    }
    let best = [CyclicMethod::Bch, CyclicMethod::Ht]
        .into_iter()
        .map(|k| cyclic_bound(z, k).map(|b| b.value))
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    Ok((ExtNat::Finite(best), "zero-set"))
}
