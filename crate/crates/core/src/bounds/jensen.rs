//! Distance bound from the concatenated structure `C = ⊕ <θ_i> □ C_i`.

use serde_json::{json, Value};

use super::cyclic::{cyclic_bound, CyclicMethod, ZeroSet};
use super::spectral::Certified;
use crate::crt::CrtContext;
use crate::error::Result;
use crate::extnat::ExtNat;
use crate::poly::Poly;
use crate::qc::QcCode;

/// With nonzero constituents sorted so that `d(C_1) <= ... <= d(C_s)` (ties by factor
/// index), `d(C) >= min_e d(C_e) · d(<θ_1> ⊕ ... ⊕ <θ_e>)`.
pub fn jensen_bound(code: &QcCode, budget: u64) -> Result<Certified> {
    let ctx = CrtContext::for_code(code)?;
    let parts = ctx.decompose(code)?;
    let mut outer: Vec<(ExtNat, usize, bool)> = Vec::new();
    for (i, c) in parts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        match c.min_distance(budget) {
            Ok(d) => outer.push((d, i, false)),
            Err(_) => outer.push((ExtNat::Finite(1), i, true)),
        }
    }
    if outer.is_empty() {
        return Ok(Certified { value: ExtNat::Infinite, witness: json!({"note": "zero code: no constituents"}) });
    }
    outer.sort();
    let m = ctx.m();
    let mut value = ExtNat::Infinite;
    let mut terms: Vec<Value> = Vec::new();
    let mut generator = Poly::xm_minus_one(ctx.base(), m);
    for (e, &(d, i, fallback)) in outer.iter().enumerate() {
        generator = generator.divmod(ctx.factor(i))?.0;
        let inner = inner_distance(&ctx, &generator, &outer[..=e], budget)?;
        let term = match (d, inner.0) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a * b),
            _ => ExtNat::Infinite,
        };
        value = value.min(term);
        terms.push(json!({"index": i, "outer": d, "outer_fallback": fallback, "inner": inner.0, "inner_method": inner.1}));
    }
    let order: Vec<usize> = outer.iter().map(|t| t.1).collect();
    Ok(Certified { value, witness: json!({"order": order, "terms": terms}) })
}

/// Distance of the cyclic code generated by `generator`, exactly when affordable and
/// otherwise from the BCH bound of its zeros.
fn inner_distance(
    ctx: &CrtContext,
    generator: &Poly,
    used: &[(ExtNat, usize, bool)],
    budget: u64,
) -> Result<(ExtNat, &'static str)> {
    let m = ctx.m();
    let cyclic = QcCode::new(ctx.base(), m, 1, vec![vec![generator.clone()]])?;
    if let Ok(d) = cyclic.expand().min_distance(budget) {
        return Ok((d, "exact"));
    }
    let nonzeros: Vec<usize> = used.iter().flat_map(|t| ctx.factorization().factors()[t.1].coset.clone()).collect();
    let zeros = (0..m).filter(|k| !nonzeros.contains(k));
    match ZeroSet::new(m, zeros).and_then(|z| cyclic_bound(z, CyclicMethod::Bch)) {
        Ok(b) => Ok((ExtNat::Finite(b.value), "bch")),
        Err(_) => Ok((ExtNat::Finite(1), "trivial")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crt::cubic_construction;
    use crate::galois::Field;
    use crate::linear::LinearCode;

    #[test]
    fn cubic_example() {
        let f2 = Field::of_order(2).unwrap();
        let ctx = CrtContext::new(2, 3).unwrap();
        let c1 = LinearCode::new(&f2, 2, &[vec![1, 1]]).unwrap();
        let c2 = LinearCode::new(ctx.splitting_field(), 2, &[vec![1, ctx.xi()]]).unwrap();
        let code = cubic_construction(&c1, &c2).unwrap();
        let b = jensen_bound(&code, 1 << 20).unwrap();
        assert_eq!(b.value, ExtNat::Finite(2));
        assert_eq!(b.witness["order"], json!([0, 1]));
        assert_eq!(b.witness["terms"][0]["inner"], json!(3));
        assert_eq!(code.expand().min_distance(1 << 20).unwrap(), ExtNat::Finite(2));
    }

    #[test]
    fn single_constituent_and_zero_code() {
        let f2 = Field::of_order(2).unwrap();
        // <θ_0> □ <(1,1)> for x - 1 at m = 3: repetition inner code, outer distance 2
        let g = vec![vec![Poly::parse(&f2, "1,1,1").unwrap(), Poly::parse(&f2, "1,1,1").unwrap()]];
        let code = QcCode::new(&f2, 3, 2, g).unwrap();
        assert_eq!(jensen_bound(&code, 1 << 20).unwrap().value, ExtNat::Finite(6));
        let z = QcCode::zero(&f2, 3, 2).unwrap();
        assert_eq!(jensen_bound(&z, 1 << 20).unwrap().value, ExtNat::Infinite);
    }
}
