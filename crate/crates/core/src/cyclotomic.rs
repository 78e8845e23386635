//! Factorization of `x^m - 1` over GF(q) through q-cyclotomic cosets.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::galois::{root_of_unity_with_budget, Embedding, Field, SPLITTING_FIELD_BUDGET};
use crate::poly::Poly;

/// Cosets `{u, uq, uq^2, ...} mod m`, ordered by their smallest element (the leader);
/// each coset is listed in multiplication order starting at its leader.
pub fn cyclotomic_cosets(q: u64, m: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for u in 0..m {
        if seen[u] {
            continue;
        }
        let mut coset = Vec::new();
        let mut k = u;
        while !seen[k] {
            seen[k] = true;
            coset.push(k);
            k = (k as u128 * q as u128 % m as u128) as usize;
        }
        out.push(coset);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CyclotomicFactor {
    /// Monic irreducible factor `∏_{k in coset} (x - ξ^k)`.
    pub poly: Poly,
    pub leader: usize,
    pub coset: Vec<usize>,
}

impl CyclotomicFactor {
    pub fn degree(&self) -> usize {
        self.coset.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reciprocity {
    /// The factor equals its own reciprocal.
    SelfReciprocal,
    /// The reciprocal is the factor at this index.
    Paired(usize),
}

/// `x^m - 1 = ∏ f_i` over GF(q), together with the splitting data used to build it.
#[derive(Debug)]
pub struct Factorization {
    q: u64,
    m: usize,
    base: Field,
    splitting: Field,
    xi: u64,
    base_embedding: Arc<Embedding>,
    factors: Vec<CyclotomicFactor>,
    reciprocity: Vec<Reciprocity>,
    coset_index: Vec<usize>,
}

fn cache() -> &'static Mutex<HashMap<(u64, usize), Arc<Factorization>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<Factorization>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Factors `x^m - 1` over GF(q). Factors are ordered by coset leader.
pub fn factor_xm1(q: u64, m: usize) -> Result<Arc<Factorization>> {
    if let Some(f) = cache().lock().unwrap().get(&(q, m)) {
        return Ok(f.clone());
    }
    let built = Arc::new(build(q, m)?);
    cache().lock().unwrap().insert((q, m), built.clone());
    Ok(built)
}

fn build(q: u64, m: usize) -> Result<Factorization> {
    let base = Field::of_order(q)?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if arith::gcd(m as u64, q) != 1 {
        return Err(Error::NotCoprime { m, q });
    }
    let (splitting, xi) = root_of_unity_with_budget(q, m, SPLITTING_FIELD_BUDGET)?;
    let base_embedding = Embedding::new(&base, &splitting)?;
    let cosets = cyclotomic_cosets(q, m);
    let mut coset_index = vec![0usize; m];
    for (i, c) in cosets.iter().enumerate() {
        for &k in c {
            coset_index[k] = i;
        }
    }
    let mut factors = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let mut acc = Poly::one(&splitting);
        for &k in coset {
            let root = splitting.pow(xi, k as u64);
            acc = &acc * &Poly::from_raw(&splitting, vec![splitting.neg(root), 1]);
        }
        let coeffs =
            acc.coeffs().iter().map(|&c| base_embedding.preimage(c).ok_or(Error::NotInSubfield)).collect::<Result<Vec<_>>>()?;
        factors.push(CyclotomicFactor { poly: Poly::from_raw(&base, coeffs), leader: coset[0], coset: coset.clone() });
    }
    let reciprocity = cosets
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let j = coset_index[(m - c[0]) % m];
            if i == j {
                Reciprocity::SelfReciprocal
            } else {
                Reciprocity::Paired(j)
            }
        })
        .collect();
    let product = factors.iter().fold(Poly::one(&base), |acc, f| &acc * &f.poly);
    assert_eq!(product, Poly::xm_minus_one(&base, m), "factor product must equal x^m - 1");
    Ok(Factorization { q, m, base, splitting, xi, base_embedding, factors, reciprocity, coset_index })
}

impl Factorization {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The smallest extension of the base field containing a primitive m-th root of unity.
    pub fn splitting_field(&self) -> &Field {
        &self.splitting
    }

    /// The primitive m-th root of unity `ξ` (raw, in the splitting field).
    pub fn xi(&self) -> u64 {
        self.xi
    }

    pub fn base_embedding(&self) -> &Arc<Embedding> {
        &self.base_embedding
    }

    pub fn factors(&self) -> &[CyclotomicFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn reciprocity(&self, i: usize) -> Reciprocity {
        self.reciprocity[i]
    }

    /// Index of the factor vanishing at `ξ^k`.
    pub fn factor_of_exponent(&self, k: usize) -> usize {
        self.coset_index[k % self.m]
    }

    pub fn self_reciprocal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.reciprocity[i] == Reciprocity::SelfReciprocal).collect()
    }

    /// Reciprocal pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|i| match self.reciprocity[i] {
                Reciprocity::Paired(j) if i < j => Some((i, j)),
                _ => None,
            })
            .collect()
    }
}
