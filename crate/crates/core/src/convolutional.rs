//! Convolutional codes given by polynomial encoders, and the free-distance bound obtained
//! by reducing the encoder modulo `x^m - 1`.

use std::fmt;

use serde_json::json;

use crate::bounds::{best_bounds, BoundOptions, Certified};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::galois::Field;
use crate::linear::LinearCode;
use crate::poly::Poly;
use crate::qc::{hermite_form, QcCode};

/// Largest number of encoder rows for which maximal minors are expanded.
const MAX_MINOR_ROWS: usize = 6;

/// An `(ℓ, k)` convolutional code `{u(x) G : u ∈ F_q[x]^k}` with `G` of rank `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvolutionalCode {
    field: Field,
    ell: usize,
    rows: Vec<Vec<Poly>>,
}

impl ConvolutionalCode {
    pub fn new(field: &Field, ell: usize, rows: Vec<Vec<Poly>>) -> Result<ConvolutionalCode> {
        if rows.is_empty() || ell == 0 {
            return Err(Error::Shape("an encoder needs at least one row and one column".into()));
        }
        for r in &rows {
            if r.len() != ell {
                return Err(Error::Shape(format!("encoder rows must have {ell} entries, got {}", r.len())));
            }
            if r.iter().any(|p| p.field() != field) {
                return Err(Error::MixedFields);
            }
        }
        let rank = hermite_form(rows.clone(), ell).len();
        if rank != rows.len() {
            return Err(Error::InvalidArgument(format!("encoder has {} rows but rank {rank}", rows.len())));
        }
        Ok(ConvolutionalCode { field: field.clone(), ell, rows })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    /// Largest entry degree of the encoder.
    pub fn memory(&self) -> usize {
        self.rows.iter().flatten().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// The QC code generated by the encoder rows reduced modulo `x^m - 1`.
    pub fn project(&self, m: usize) -> Result<QcCode> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("projection needs m > 1, got {m}")));
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|p| p.reduce_cyclic(m)).collect()).collect();
        QcCode::new(&self.field, m, self.ell, rows)
    }

    /// Monic gcd of all `k x k` minors; a unit exactly when the encoder is basic.
    pub fn minors_gcd(&self) -> Result<Poly> {
        let k = self.k();
        if k > MAX_MINOR_ROWS {
            return Err(Error::InvalidArgument(format!("minor expansion supports at most {MAX_MINOR_ROWS} rows")));
        }
        let mut g = Poly::zero(&self.field);
        for cols in combinations(self.ell, k) {
            let sub: Vec<Vec<Poly>> = self.rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            g = g.gcd(&determinant(&sub))?;
        }
        Ok(g)
    }

    /// `d_free >= d(C')` for the projection `C'`.
    ///
    /// The argument divides a codeword whose projection vanishes by a power of `x^m - 1`
    /// and needs the quotient back in the code; that holds when the minors' gcd is coprime
    /// to `x^m - 1`. A one-row encoder is first divided by the gcd of its entries, which only
    /// enlarges the code. Otherwise the trivial bound 1 is returned, flagged.
    pub fn dfree_lower_bound(&self, m: usize, budget: u64) -> Result<Certified> {
        let xm1 = Poly::xm_minus_one(&self.field, m);
        let delta = self.minors_gcd().ok();
        let coprime = delta.as_ref().is_some_and(|d| d.gcd(&xm1).map(|g| g.degree() == Some(0)).unwrap_or(false));
        let (code, note) = if coprime {
            (self.clone(), "encoder minors coprime to x^m - 1")
        } else if self.k() == 1 {
            let g = self.rows[0].iter().try_fold(Poly::zero(&self.field), |acc, p| acc.gcd(p))?;
            let row = self.rows[0].iter().map(|p| p.divmod(&g).map(|(q, _)| q)).collect::<Result<Vec<Poly>>>()?;
            (ConvolutionalCode::new(&self.field, self.ell, vec![row])?, "row divided by the gcd of its entries")
        } else {
            return Ok(Certified {
                value: ExtNat::Finite(1),
                witness: json!({"fallback": "trivial", "note": "encoder minors share a factor with x^m - 1"}),
            });
        };
        let projected = code.project(m)?;
        let expanded = projected.expand();
        match expanded.min_distance(budget) {
            Ok(d) => Ok(Certified {
                value: d,
                witness: json!({"m": m, "projection_dim": expanded.dim(), "method": "exact", "note": note}),
            }),
            Err(Error::BudgetExceeded { .. }) => {
                let report = best_bounds(&projected, &BoundOptions { budget, ..Default::default() })?;
                let (name, best) = report
                    .bounds
                    .iter()
                    .max_by_key(|(_, b)| b.value)
                    .map(|(n, b)| (n.clone(), b.value))
                    .expect("report has entries");
                Ok(Certified {
                    value: best,
                    witness: json!({"m": m, "projection_dim": expanded.dim(), "method": name, "note": note}),
                })
            }
            Err(e) => Err(e),
        }
    }

    /// Minimum weight of `u(x) G` over nonzero messages with every `deg u_i <= cap`: an
    /// upper bound on `d_free`.
    pub fn dfree_search(&self, cap: usize, budget: u64) -> Result<u64> {
        let span = cap + self.memory() + 1;
        let n = span * self.ell;
        let mut gens = Vec::with_capacity(self.k() * (cap + 1));
        for row in &self.rows {
            for shift in 0..=cap {
                let mut v = vec![0u64; n];
                for (j, p) in row.iter().enumerate() {
                    for (t, &c) in p.coeffs().iter().enumerate() {
                        v[(t + shift) * self.ell + j] = c;
                    }
                }
                gens.push(v);
            }
        }
        let block = LinearCode::new(&self.field, n, &gens)?;
        debug_assert_eq!(block.dim(), gens.len());
        match block.min_distance(budget)? {
            ExtNat::Finite(d) => Ok(d),
            ExtNat::Infinite => unreachable!("a rank-k encoder has nonzero codewords"),
        }
    }
}

impl fmt::Debug for ConvolutionalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvolutionalCode(q={}, ell={}, rows={:?})", self.field.order(), self.ell, self.rows)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(m[0][0].field());
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &determinant(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::DEFAULT_ENUM_BUDGET;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::of_order(2).unwrap()
    }

    fn classic() -> ConvolutionalCode {
        let f = f2();
        let g = vec![vec![Poly::parse(&f, "1,0,1").unwrap(), Poly::parse(&f, "1,1,1").unwrap()]];
        ConvolutionalCode::new(&f, 2, g).unwrap()
    }

    #[test]
    fn classic_encoder() {
        let c = classic();
        assert_eq!(c.dfree_search(4, DEFAULT_ENUM_BUDGET).unwrap(), 5);
        assert_eq!(c.dfree_search(6, DEFAULT_ENUM_BUDGET).unwrap(), 5);
        let b = c.dfree_lower_bound(3, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(b.value, ExtNat::Finite(2));
        let f = f2();
        let projected = c.project(3).unwrap();
        let word = vec![Poly::parse(&f, "0,1,1").unwrap(), Poly::zero(&f)];
        assert!(projected.expand().contains(&crate::qc::polys_to_vector(&word, 3)));
    }

    #[test]
    fn repetition_encoder() {
        let f = f2();
        let c = ConvolutionalCode::new(&f, 2, vec![vec![Poly::one(&f), Poly::one(&f)]]).unwrap();
        assert_eq!(c.dfree_search(0, 16).unwrap(), 2);
        for m in [3, 5, 7] {
            assert_eq!(c.dfree_lower_bound(m, 1 << 16).unwrap().value, ExtNat::Finite(2));
        }
    }

    #[test]
    fn unit_row_gives_one() {
        let f = f2();
        let rows = vec![vec![Poly::one(&f), Poly::zero(&f)], vec![Poly::zero(&f), Poly::one(&f)]];
        let c = ConvolutionalCode::new(&f, 2, rows).unwrap();
        assert_eq!(c.dfree_lower_bound(3, 1 << 16).unwrap().value, ExtNat::Finite(1));
        assert_eq!(c.minors_gcd().unwrap(), Poly::one(&f));
    }

    #[test]
    fn short_entries_project_unchanged() {
        let c = classic();
        let p = c.project(5).unwrap();
        assert_eq!(p.generators(), c.rows());
    }

    #[test]
    fn non_basic_encoder_is_saturated_first() {
        // (1+x+x^2)(1,1): the codeword (1+x^3)(1,1) of weight 4 projects to zero at m = 3,
        // while the projection itself has distance 6
        let f = f2();
        let g = Poly::parse(&f, "1,1,1").unwrap();
        let c = ConvolutionalCode::new(&f, 2, vec![vec![g.clone(), g]]).unwrap();
        assert_eq!(c.project(3).unwrap().expand().min_distance(1 << 16).unwrap(), ExtNat::Finite(6));
        let search = c.dfree_search(3, 1 << 16).unwrap();
        assert_eq!(search, 4);
        let b = c.dfree_lower_bound(3, 1 << 16).unwrap();
        assert!(b.value <= ExtNat::Finite(search));
    }

    #[test]
    fn rank_deficient_encoder_is_rejected() {
        let f = f2();
        let r = vec![Poly::one(&f), Poly::x(&f)];
        let shifted: Vec<Poly> = r.iter().map(|p| p.shift(1)).collect();
        assert!(ConvolutionalCode::new(&f, 2, vec![r, shifted]).is_err());
    }

    #[test]
    fn minors_of_two_rows() {
        let f = f2();
        let rows = vec![vec![Poly::one(&f), Poly::x(&f), Poly::one(&f)], vec![Poly::zero(&f), Poly::one(&f), Poly::x(&f)]];
        let c = ConvolutionalCode::new(&f, 3, rows).unwrap();
        // minors: 1, x, x^2 + 1
        assert_eq!(c.minors_gcd().unwrap(), Poly::one(&f));
    }

    proptest! {
        #[test]
        fn projection_is_a_module_map(a in proptest::collection::vec(0u64..2, 1..6), b in proptest::collection::vec(0u64..2, 1..6), m in 2usize..8) {
            let f = f2();
            let a = Poly::from_coeffs(&f, a).unwrap();
            let b = Poly::from_coeffs(&f, b).unwrap();
            let lhs = (&a * &b).reduce_cyclic(m);
            let rhs = a.mul_cyclic(&b.reduce_cyclic(m), m);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
