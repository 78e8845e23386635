//! Eigenvalues, eigenspaces and eigencodes of a QC code, and the spectral bound
//! `d(C) >= min(d_P, d(eigencode of P))`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use super::cyclic::{cyclic_bound, CyclicMethod, ZeroSet, MAX_ZERO_SET_LEN};
use crate::cyclotomic::{factor_xm1, Factorization};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::galois::{Embedding, Field};
use crate::linear::LinearCode;
use crate::matrix::Matrix;
use crate::qc::QcCode;

/// Cap on the number of distinct common eigenspaces visited by the spectral search.
pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 12;

#[derive(Clone, Debug)]
pub struct Eigenvalue {
    /// `k` with eigenvalue `ξ^k`.
    pub exponent: usize,
    /// Number of diagonal entries of the reduced generating matrix vanishing at `ξ^k`.
    pub multiplicity: usize,
    /// Basis of the null space of `G̃(ξ^k)` over the splitting field.
    pub space: Vec<Vec<u64>>,
    /// `G̃(ξ^k)`, rows over the splitting field.
    matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct EigenStructure {
    fact: Arc<Factorization>,
    ell: usize,
    eigenvalues: Vec<Eigenvalue>,
}

/// Eigenvalues of `code`: the `ξ^k` at which `det G̃ = Π g_jj` vanishes.
pub fn eigenstructure(code: &QcCode) -> Result<EigenStructure> {
    let fact = factor_xm1(code.field().order(), code.m())?;
    let big = fact.splitting_field().clone();
    let emb = fact.base_embedding().clone();
    let g = code.groebner();
    let ell = code.ell();
    let mut eigenvalues = Vec::new();
    for k in 0..code.m() {
        let beta = big.pow(fact.xi(), k as u64);
        let eval =
            |p: &crate::poly::Poly| p.coeffs().iter().rev().fold(0u64, |acc, &c| big.add(big.mul(acc, beta), emb.apply(c)));
        let multiplicity = g.diagonal().iter().filter(|d| eval(d) == 0).count();
        if multiplicity == 0 {
            continue;
        }
        let matrix: Vec<Vec<u64>> = (0..ell).map(|i| (0..ell).map(|j| eval(g.entry(i, j))).collect()).collect();
        let space = Matrix::from_rows(&big, ell, &matrix)?.kernel();
        assert_eq!(space.len(), multiplicity, "algebraic and geometric multiplicities agree");
        eigenvalues.push(Eigenvalue { exponent: k, multiplicity, space, matrix });
    }
    Ok(EigenStructure { fact, ell, eigenvalues })
}

impl EigenStructure {
    pub fn splitting_field(&self) -> &Field {
        self.fact.splitting_field()
    }

    pub fn base(&self) -> &Field {
        self.fact.base()
    }

    pub fn m(&self) -> usize {
        self.fact.m()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn eigenvalues(&self) -> &[Eigenvalue] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, k: usize) -> Option<&Eigenvalue> {
        self.eigenvalues.iter().find(|e| e.exponent == k)
    }

    /// The exponents of all eigenvalues.
    pub fn exponents(&self) -> Vec<usize> {
        self.eigenvalues.iter().map(|e| e.exponent).collect()
    }

    pub fn is_full_spectrum(&self) -> bool {
        self.eigenvalues.len() == self.m()
    }

    /// The common eigenspace of the listed exponents; every one must be an eigenvalue.
    pub fn common_space(&self, exponents: &[usize]) -> Result<Vec<Vec<u64>>> {
        let mut rows = Vec::new();
        for &k in exponents {
            let e = self.eigenvalue(k).ok_or_else(|| Error::InvalidArgument(format!("ξ^{k} is not an eigenvalue")))?;
            rows.extend(e.matrix.iter().cloned());
        }
        if rows.is_empty() {
            return Err(Error::InvalidArgument("empty set of eigenvalues".into()));
        }
        Ok(Matrix::from_rows(self.splitting_field(), self.ell, &rows)?.kernel())
    }

    /// Rows `(1, β, ..., β^{m-1}) ⊗ v` for every eigenvalue `β` and eigenspace basis
    /// vector `v`, columns ordered as in the expanded code (position `r·ℓ + j`).
    pub fn parity_check(&self) -> Matrix {
        let big = self.splitting_field();
        let (m, ell) = (self.m(), self.ell);
        let mut h = Matrix::zeros(big, 0, m * ell);
        for e in &self.eigenvalues {
            let beta = big.pow(self.fact.xi(), e.exponent as u64);
            for v in &e.space {
                let mut row = vec![0u64; m * ell];
                let mut power = 1u64;
                for r in 0..m {
                    for (j, &vj) in v.iter().enumerate() {
                        row[r * ell + j] = big.mul(power, vj);
                    }
                    power = big.mul(power, beta);
                }
                h.push_row(&row);
            }
        }
        h
    }

    pub fn eigencode(&self, space: &[Vec<u64>]) -> Result<LinearCode> {
        eigencode(space, self.splitting_field(), self.base(), self.ell)
    }
}

/// `{u ∈ GF(q)^ℓ : Σ v_j u_j = 0 for every v in the span of `space`}`, where `space`
/// lives over an extension `big` of `base`.
pub fn eigencode(space: &[Vec<u64>], big: &Field, base: &Field, ell: usize) -> Result<LinearCode> {
    if space.is_empty() {
        return Ok(LinearCode::full(base, ell));
    }
    if space.iter().any(|v| v.len() != ell) {
        return Err(Error::Shape(format!("eigenspace vectors must have length {ell}")));
    }
    let emb = Embedding::new(base, big)?;
    let prime = Field::new(base.characteristic(), 1)?;
    let a = base.degree() as usize;
    let e = big.degree() as usize;
    // unknowns: GF(p)-coordinates of each u_j over the power basis of GF(q)
    let mut rows = Vec::with_capacity(space.len() * e);
    for v in space {
        let mut block = vec![vec![0u64; ell * a]; e];
        for (j, &vj) in v.iter().enumerate() {
            for (t, &img) in emb.basis_images().iter().enumerate().take(a) {
                let coords = big.coords(big.mul(vj, img));
                for (c, &x) in coords.iter().enumerate() {
                    block[c][j * a + t] = x;
                }
            }
        }
        rows.extend(block);
    }
    let kernel = Matrix::from_rows(&prime, ell * a, &rows)?.kernel();
    let words: Vec<Vec<u64>> = kernel
        .iter()
        .map(|w| (0..ell).map(|j| base.from_coords(&w[j * a..(j + 1) * a])).collect::<Result<Vec<u64>>>())
        .collect::<Result<_>>()?;
    LinearCode::new(base, ell, &words)
}

/// `min(d_P, d(eigencode of P))` for one nonempty `P` inside the eigenvalue set.
pub fn spectral_bound(es: &EigenStructure, p: ZeroSet, method: CyclicMethod, budget: u64) -> Result<ExtNat> {
    if p.is_empty() || p.m() != es.m() {
        return Err(Error::InvalidArgument(format!("{p:?} is not a nonempty subset of the length-{} exponents", es.m())));
    }
    if es.is_full_spectrum() {
        return Err(Error::InvalidArgument("every m-th root of unity is an eigenvalue".into()));
    }
    let space = es.common_space(&p.to_vec())?;
    let dc = es.eigencode(&space)?.min_distance(budget)?;
    let dp = cyclic_bound(p, method)?.value;
    Ok(ExtNat::Finite(dp).min(dc))
}

/// A bound value with the data certifying it.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Certified {
    pub value: ExtNat,
    pub witness: Value,
}

/// Maximizes the spectral bound over eigenvalue subsets `P`.
///
/// `d_P` only grows with `P` for the bch, ht and roos searches, and `P` and its closure
/// `{β : V_β ⊇ V_P}` share the same common eigenspace, so only closed sets are visited.
/// Each closed set is scored with every method at once.
pub fn spectral_search(
    code: &QcCode,
    es: &EigenStructure,
    methods: &[CyclicMethod],
    budget: u64,
    subset_budget: usize,
) -> Result<BTreeMap<CyclicMethod, Result<Certified>>> {
    let m = es.m();
    let constant = |value: ExtNat, witness: Value| -> BTreeMap<CyclicMethod, Result<Certified>> {
        methods.iter().map(|&k| (k, Ok(Certified { value, witness: witness.clone() }))).collect()
    };
    if es.eigenvalues().is_empty() {
        return Ok(constant(ExtNat::Finite(1), json!({"note": "no eigenvalues: the code is the full space"})));
    }
    if es.is_full_spectrum() {
        let expanded = code.expand();
        if expanded.is_zero() {
            return Ok(constant(ExtNat::Infinite, json!({"note": "zero code"})));
        }
        return Ok(match expanded.min_distance(budget) {
            Ok(d) => {
                constant(d, json!({"note": "every root of unity is an eigenvalue; exact distance used", "fallback": "exact"}))
            }
            Err(_) => constant(
                ExtNat::Finite(1),
                json!({"note": "every root of unity is an eigenvalue; exact distance over budget", "fallback": "trivial"}),
            ),
        });
    }
    if m > MAX_ZERO_SET_LEN {
        return Err(Error::InvalidArgument(format!("spectral search supports m <= {MAX_ZERO_SET_LEN}")));
    }
    let (closed, truncated) = closed_sets(es, subset_budget)?;
    let mut best: BTreeMap<CyclicMethod, Result<Certified>> = BTreeMap::new();
    for (mask, space) in &closed {
        let p = ZeroSet::from_mask(m, *mask)?;
        let dc = es.eigencode(space)?.min_distance(budget)?;
        for &method in methods {
            if let Some(Ok(b)) = best.get(&method) {
                if b.value >= dc {
                    continue;
                }
            }
            if matches!(best.get(&method), Some(Err(_))) {
                continue;
            }
            match cyclic_bound(p, method) {
                Ok(dp) => {
                    let value = ExtNat::Finite(dp.value).min(dc);
                    if best.get(&method).is_none_or(|b| b.as_ref().is_ok_and(|b| value > b.value)) {
                        let witness = json!({
                            "P": p.to_vec(),
                            "d_P": dp.value,
                            "eigencode_distance": dc,
                            "pattern": dp.witness,
                            "closed_sets": closed.len(),
                            "truncated": truncated,
                        });
                        best.insert(method, Ok(Certified { value, witness }));
                    }
                }
                Err(e) => {
                    best.insert(method, Err(e));
                }
            }
        }
    }
    Ok(best)
}

/// Closed eigenvalue sets with their common eigenspaces, in ascending mask order.
fn closed_sets(es: &EigenStructure, cap: usize) -> Result<(BTreeMap<u64, Vec<Vec<u64>>>, bool)> {
    let big = es.splitting_field();
    let ell = es.ell();
    let closure = |space: &[Vec<u64>]| -> u64 {
        es.eigenvalues()
            .iter()
            .filter(|e| space.iter().all(|v| e.matrix.iter().all(|row| crate::matrix::dot(big, row, v) == 0)))
            .fold(0u64, |acc, e| acc | 1 << e.exponent)
    };
    let mut found: BTreeMap<u64, Vec<Vec<u64>>> = BTreeMap::new();
    let mut queue: BTreeSet<u64> = BTreeSet::new();
    for e in es.eigenvalues() {
        let mask = closure(&e.space);
        if let std::collections::btree_map::Entry::Vacant(slot) = found.entry(mask) {
            slot.insert(e.space.clone());
            queue.insert(mask);
        }
    }
    let mut truncated = false;
    while let Some(mask) = queue.pop_first() {
        let stacked: Vec<usize> = (0..es.m()).filter(|k| mask >> k & 1 == 1).collect();
        for e in es.eigenvalues().iter().filter(|e| mask >> e.exponent & 1 == 0) {
            if found.len() >= cap {
                truncated = true;
                break;
            }
            let mut exps = stacked.clone();
            exps.push(e.exponent);
            let space = es.common_space(&exps)?;
            let next = closure(&space);
            if let std::collections::btree_map::Entry::Vacant(slot) = found.entry(next) {
                slot.insert(space);
                queue.insert(next);
            }
        }
    }
    debug_assert!(found.values().all(|s| s.iter().all(|v| v.len() == ell)));
    Ok((found, truncated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::DEFAULT_ENUM_BUDGET;
    use crate::poly::Poly;

    fn f2() -> Field {
        Field::of_order(2).unwrap()
    }

    fn hamming() -> QcCode {
        let f = f2();
        QcCode::new(&f, 7, 1, vec![vec![Poly::parse(&f, "1,1,0,1").unwrap()]]).unwrap()
    }

    fn diag_example() -> QcCode {
        let f = f2();
        let g = vec![vec![Poly::parse(&f, "1,1").unwrap(), Poly::zero(&f)], vec![Poly::zero(&f), Poly::one(&f)]];
        QcCode::new(&f, 3, 2, g).unwrap()
    }

    #[test]
    fn cyclic_code_eigenvalues_are_its_zeros() {
        let es = eigenstructure(&hamming()).unwrap();
        assert_eq!(es.exponents().len(), 3);
        let p = ZeroSet::new(7, es.exponents()).unwrap();
        assert_eq!(cyclic_bound(p, CyclicMethod::Bch).unwrap().value, 3);
        assert!(es.eigenvalues().iter().all(|e| e.space.len() == 1));
    }

    #[test]
    fn hamming_spectral_equals_distance() {
        let code = hamming();
        let es = eigenstructure(&code).unwrap();
        let out = spectral_search(&code, &es, &CyclicMethod::ALL, DEFAULT_ENUM_BUDGET, DEFAULT_SUBSET_BUDGET).unwrap();
        for m in CyclicMethod::ALL {
            assert_eq!(out[&m].as_ref().unwrap().value, ExtNat::Finite(3), "{m:?}");
        }
    }

    #[test]
    fn small_eigenstructure() {
        let code = diag_example();
        let es = eigenstructure(&code).unwrap();
        assert_eq!(es.exponents(), vec![0]);
        let e = &es.eigenvalues()[0];
        assert_eq!(e.space, vec![vec![1, 0]]);
        let p = ZeroSet::new(3, [0]).unwrap();
        assert_eq!(spectral_bound(&es, p, CyclicMethod::Bch, 1 << 10).unwrap(), ExtNat::Finite(1));
        assert_eq!(code.expand().min_distance(1 << 10).unwrap(), ExtNat::Finite(1));
    }

    #[test]
    fn zero_code_has_full_spectrum() {
        let f = f2();
        let code = QcCode::zero(&f, 3, 2).unwrap();
        let es = eigenstructure(&code).unwrap();
        assert!(es.is_full_spectrum());
        assert!(es.eigenvalues().iter().all(|e| e.space.len() == 2));
        let h = es.parity_check();
        assert_eq!((h.nrows(), h.rank()), (6, 6));
        let out = spectral_search(&code, &es, &[CyclicMethod::Bch], 1 << 10, 16).unwrap();
        assert_eq!(out[&CyclicMethod::Bch].as_ref().unwrap().value, ExtNat::Infinite);
    }

    #[test]
    fn eigencode_edge_cases() {
        let f2 = f2();
        let f4 = Field::of_order(4).unwrap();
        let full = eigencode(&[], &f4, &f2, 2).unwrap();
        assert_eq!(full.min_distance(16).unwrap(), ExtNat::Finite(1));
        let zero = eigencode(&[vec![1, 0], vec![0, 1]], &f4, &f2, 2).unwrap();
        assert_eq!(zero.min_distance(16).unwrap(), ExtNat::Infinite);
        let c = eigencode(&[vec![1, 0]], &f4, &f2, 2).unwrap();
        assert_eq!(c.codewords(16).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        // a constraint with coefficients outside the base field splits into several
        let beta = f4.generator();
        let c = eigencode(&[vec![1, beta]], &f4, &f2, 2).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn parity_check_annihilates_and_has_right_rank() {
        let f = Field::of_order(3).unwrap();
        let g = vec![vec![Poly::parse(&f, "2,1").unwrap(), Poly::parse(&f, "1,0,1").unwrap()]];
        let code = QcCode::new(&f, 4, 2, g).unwrap();
        let es = eigenstructure(&code).unwrap();
        let h = es.parity_check();
        let big = es.splitting_field().clone();
        let emb = Embedding::new(&f, &big).unwrap();
        for w in code.expand().basis_rows() {
            let lifted: Vec<u64> = w.iter().map(|&c| emb.apply(c)).collect();
            assert!(h.mul_vec(&lifted).iter().all(|&x| x == 0));
        }
        assert_eq!(h.rank(), code.len() - code.dimension());
    }

    /// Block-diagonal sum of the [7,4,3] Hamming code and the [7,3,4] even-weight
    /// subcode: every ξ^k with k in {1,2,4} has the full plane as eigenspace.
    fn hamming_pair() -> QcCode {
        let f = f2();
        let g1 = Poly::parse(&f, "1,0,1,1").unwrap();
        let g2 = (&g1 * &Poly::parse(&f, "1,1").unwrap()).reduce_cyclic(7);
        QcCode::new(&f, 7, 2, vec![vec![g1, Poly::zero(&f)], vec![Poly::zero(&f), g2]]).unwrap()
    }

    #[test]
    fn independent_sets_must_be_taken_relative_to_the_chosen_subset() {
        let code = hamming_pair();
        let exact = code.expand().min_distance(1 << 20).unwrap();
        assert_eq!(exact, ExtNat::Finite(3));
        let es = eigenstructure(&code).unwrap();
        assert_eq!(es.exponents(), vec![0, 1, 2, 4]);
        // {1,2,4,5} is independent with respect to all eigenvalues {0,1,2,4} and meets them
        // in {1,2,4}, whose common eigenspace is everything: pairing the set size with that
        // eigencode would claim 4 > 3.
        let t = es.common_space(&[1, 2, 4]).unwrap();
        assert!(es.eigencode(&t).unwrap().is_zero());
        let omega_bar = ZeroSet::new(7, [0, 1, 2, 4]).unwrap();
        assert_eq!(cyclic_bound(omega_bar, CyclicMethod::Shift).unwrap().value, 4);
        let out = spectral_search(&code, &es, &CyclicMethod::ALL, 1 << 20, DEFAULT_SUBSET_BUDGET).unwrap();
        for m in CyclicMethod::ALL {
            assert_eq!(out[&m].as_ref().unwrap().value, ExtNat::Finite(3), "{m:?}");
        }
    }

    #[test]
    fn monotone_eigenspaces() {
        let code = hamming_pair();
        let es = eigenstructure(&code).unwrap();
        let small = es.common_space(&[1]).unwrap();
        let large = es.common_space(&[0, 1]).unwrap();
        assert!(large.len() <= small.len());
        let d_small = es.eigencode(&small).unwrap().min_distance(64).unwrap();
        let d_large = es.eigencode(&large).unwrap().min_distance(64).unwrap();
        assert!(d_large <= d_small);
    }
}
