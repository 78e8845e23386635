//! Linear block codes over finite fields.

use rayon::prelude::*;

use crate::error::{budget_err, Error, Result};
use crate::extnat::ExtNat;
use crate::galois::Field;
use crate::matrix::{dot, Matrix};

/// Default cap on the number of messages `q^k` walked by exact distance computations.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualKind {
    Euclidean,
    /// `<a, b> = Σ a_j b_j^r` over a field of order `r^2`.
    Hermitian,
}

/// A linear code stored through the reduced row echelon form of a generator matrix,
/// so that equal codes compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    pub fn new(field: &Field, n: usize, generators: &[Vec<u64>]) -> Result<LinearCode> {
        let m = Matrix::from_rows(field, n, generators)?;
        Ok(LinearCode::from_matrix(m))
    }

    pub fn from_matrix(mut m: Matrix) -> LinearCode {
        let pivots = m.rref();
        let keep: Vec<Vec<u64>> = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        let basis = Matrix::from_rows(m.field(), m.ncols(), &keep).expect("rows come from a matrix");
        LinearCode { basis, pivots }
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode { basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        LinearCode::new(field, n, &rows).expect("identity rows")
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn len(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Rows of the reduced echelon generator matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u64>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.len() {
            return false;
        }
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                if b != 0 {
                    w[j] = f.sub(w[j], f.mul(c, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `Σ msg_r · row_r` over the echelon basis.
    pub fn encode(&self, msg: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut out = vec![0u64; self.len()];
        for (r, &c) in msg.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                out[j] = f.add(out[j], f.mul(c, b));
            }
        }
        out
    }

    /// All codewords, in message order; requires `q^k <= budget`.
    pub fn codewords(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        let q = self.field().order();
        let total = (q as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if total > budget as u128 {
            return Err(budget_err("codeword listing", total, budget));
        }
        let k = self.dim();
        let mut out = Vec::with_capacity(total as usize);
        let mut msg = vec![0u64; k];
        for _ in 0..total {
            out.push(self.encode(&msg));
            for d in msg.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        if self.len() != other.len() {
            return Err(Error::Shape(format!("lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        LinearCode::new(self.field(), self.len(), &rows)
    }

    /// `A ∩ B = (A^⊥ + B^⊥)^⊥`.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let a = self.dual(DualKind::Euclidean)?;
        let b = other.dual(DualKind::Euclidean)?;
        a.sum(&b)?.dual(DualKind::Euclidean)
    }

    /// Applies `x -> x^(p^k)` to every coordinate.
    pub fn frobenius(&self, k: u32) -> LinearCode {
        let f = self.field();
        let rows: Vec<Vec<u64>> =
            self.basis_rows().into_iter().map(|r| r.into_iter().map(|x| f.frobenius(x, k)).collect()).collect();
        LinearCode::new(f, self.len(), &rows).expect("same shape")
    }

    pub fn dual(&self, kind: DualKind) -> Result<LinearCode> {
        let f = self.field();
        match kind {
            DualKind::Euclidean => {
                let ker = self.basis.kernel();
                LinearCode::new(f, self.len(), &ker)
            }
            DualKind::Hermitian => {
                if f.degree() % 2 != 0 {
                    return Err(Error::InvalidArgument(format!("Hermitian dual needs a square order, got {f}")));
                }
                self.frobenius(f.degree() / 2).dual(DualKind::Euclidean)
            }
        }
    }

    /// A parity-check matrix: a basis of the Euclidean dual.
    pub fn parity_check(&self) -> Matrix {
        self.dual(DualKind::Euclidean).expect("euclidean dual").basis
    }

    pub fn hull(&self, kind: DualKind) -> Result<LinearCode> {
        self.intersection(&self.dual(kind)?)
    }

    pub fn is_self_dual(&self, kind: DualKind) -> Result<bool> {
        Ok(self.dual(kind)? == *self)
    }

    pub fn is_self_orthogonal(&self, kind: DualKind) -> Result<bool> {
        let d = self.dual(kind)?;
        Ok(self.basis_rows().iter().all(|r| d.contains(r)))
    }

    pub fn is_lcd(&self, kind: DualKind) -> Result<bool> {
        Ok(self.hull(kind)?.is_zero())
    }

    /// Exact minimum distance by enumerating `q^k` messages; `Infinite` for the zero code.
    pub fn min_distance(&self, budget: u64) -> Result<ExtNat> {
        if self.is_zero() {
            return Ok(ExtNat::Infinite);
        }
        let q = self.field().order();
        let total = (q as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if total > budget as u128 {
            return Err(budget_err(
                format!("minimum distance of a [{}, {}] code over {}", self.len(), self.dim(), self.field()),
                total,
                budget,
            ));
        }
        let d = if q == 2 { self.min_distance_binary() } else { self.min_distance_qary() };
        Ok(ExtNat::Finite(d as u64))
    }

    fn min_distance_binary(&self) -> usize {
        let n = self.len();
        let words = n.div_ceil(64);
        let k = self.dim();
        let packed: Vec<Vec<u64>> = (0..k)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (j, &b) in self.basis.row(r).iter().enumerate() {
                    if b == 1 {
                        w[j / 64] |= 1 << (j % 64);
                    }
                }
                w
            })
            .collect();
        let split = k.min(8);
        let low = k - split;
        (0u64..1 << split)
            .into_par_iter()
            .map(|hi| {
                let mut cur = vec![0u64; words];
                for b in 0..split {
                    if hi >> b & 1 == 1 {
                        xor_into(&mut cur, &packed[low + b]);
                    }
                }
                let weight = |c: &[u64]| c.iter().map(|w| w.count_ones() as usize).sum::<usize>();
                let mut best = if hi == 0 { usize::MAX } else { weight(&cur) };
                for step in 1u64..1 << low {
                    xor_into(&mut cur, &packed[step.trailing_zeros() as usize]);
                    best = best.min(weight(&cur));
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX)
    }

    fn min_distance_qary(&self) -> usize {
        let f = self.field();
        let q = f.order() as usize;
        let k = self.dim();
        let rows = self.basis_rows();
        // messages whose first nonzero digit is 1, split by the position of that digit
        // and by the top free digits so the work spreads over threads
        let mut jobs: Vec<(usize, Vec<u64>)> = Vec::new();
        for lead in 0..k {
            let free = k - lead - 1;
            let split = free.min(3);
            let chunks = q.pow(split as u32);
            for c in 0..chunks {
                let mut prefix = vec![0u64; split];
                let mut t = c;
                for d in prefix.iter_mut() {
                    *d = (t % q) as u64;
                    t /= q;
                }
                jobs.push((lead, prefix));
            }
        }
        jobs.into_par_iter()
            .map(|(lead, prefix)| {
                let free = k - lead - 1;
                let split = prefix.len();
                let mut cur = rows[lead].clone();
                for (i, &d) in prefix.iter().enumerate() {
                    let r = &rows[k - 1 - i];
                    for (x, &y) in cur.iter_mut().zip(r) {
                        *x = f.add(*x, f.mul(d, y));
                    }
                }
                let gray_rows: Vec<&Vec<u64>> = (lead + 1..k - split).map(|r| &rows[r]).collect();
                debug_assert_eq!(gray_rows.len(), free - split);
                let mut weight = cur.iter().filter(|&&x| x != 0).count();
                let mut best = weight;
                let mut digits = vec![0usize; gray_rows.len()];
                let steps = q.pow(gray_rows.len() as u32);
                for _ in 1..steps {
                    let mut j = 0;
                    while digits[j] == q - 1 {
                        digits[j] = 0;
                        j += 1;
                    }
                    digits[j] += 1;
                    for (x, &y) in cur.iter_mut().zip(gray_rows[j].iter()) {
                        if y != 0 {
                            let old = *x;
                            *x = f.add(old, y);
                            weight = weight + (*x != 0) as usize - (old != 0) as usize;
                        }
                    }
                    best = best.min(weight);
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX)
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Minimum distance by scanning all of `F_q^n` through the parity-check matrix.
/// Independent of the message enumeration in [`LinearCode::min_distance`].
pub fn min_distance_full_scan(code: &LinearCode, budget: u64) -> Result<ExtNat> {
    let f = code.field();
    let q = f.order();
    let n = code.len();
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(budget_err("full space scan", total, budget));
    }
    let h = code.parity_check();
    let mut best = ExtNat::Infinite;
    let mut v = vec![0u64; n];
    for _ in 1..total {
        for d in v.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
        let w = v.iter().filter(|&&x| x != 0).count() as u64;
        if ExtNat::Finite(w) >= best {
            continue;
        }
        if (0..h.nrows()).all(|r| dot(f, h.row(r), &v) == 0) {
            best = ExtNat::Finite(w);
        }
    }
    Ok(best)
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] code over {}\n{}", self.len(), self.dim(), self.field(), self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hamming() -> LinearCode {
        // cyclic shifts of 1 + x + x^3 at length 7
        let f = Field::of_order(2).unwrap();
        let g = [1u64, 1, 0, 1, 0, 0, 0];
        let rows: Vec<Vec<u64>> = (0..4).map(|s| (0..7).map(|j| g[(j + 7 - s) % 7]).collect()).collect();
        LinearCode::new(&f, 7, &rows).unwrap()
    }

    #[test]
    fn hamming_code() {
        let c = hamming();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.min_distance(DEFAULT_ENUM_BUDGET).unwrap(), ExtNat::Finite(3));
        assert_eq!(c.dual(DualKind::Euclidean).unwrap().min_distance(DEFAULT_ENUM_BUDGET).unwrap(), ExtNat::Finite(4));
    }

    #[test]
    fn zero_code_and_budget() {
        let f = Field::of_order(3).unwrap();
        assert_eq!(LinearCode::zero(&f, 4).min_distance(10).unwrap(), ExtNat::Infinite);
        let full = LinearCode::full(&f, 20);
        assert!(matches!(full.min_distance(1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn hermitian_dual_over_gf4() {
        let f = Field::of_order(4).unwrap();
        // <(1,1)> is Hermitian self-dual over GF(4): 1 + 1 = 0
        let c = LinearCode::new(&f, 2, &[vec![1, 1]]).unwrap();
        assert!(c.is_self_dual(DualKind::Hermitian).unwrap());
        // <(1, β)>: 1 + β·β^2 = 1 + 1 = 0, so also self-dual
        let c = LinearCode::new(&f, 2, &[vec![1, 2]]).unwrap();
        assert!(c.is_self_dual(DualKind::Hermitian).unwrap());
        assert!(!c.is_self_dual(DualKind::Euclidean).unwrap());
    }

    fn code_strategy(q: u64, n: usize, kmax: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(0..q, n), 0..=kmax)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dual_dimensions_and_biduality(rows in code_strategy(4, 6, 5)) {
            let f = Field::of_order(4).unwrap();
            let c = LinearCode::new(&f, 6, &rows).unwrap();
            for kind in [DualKind::Euclidean, DualKind::Hermitian] {
                let d = c.dual(kind).unwrap();
                prop_assert_eq!(d.dim() + c.dim(), 6);
                prop_assert_eq!(d.dual(kind).unwrap(), c.clone());
            }
        }

        #[test]
        fn distance_matches_full_scan(rows in code_strategy(3, 6, 4)) {
            let f = Field::of_order(3).unwrap();
            let c = LinearCode::new(&f, 6, &rows).unwrap();
            prop_assert_eq!(c.min_distance(DEFAULT_ENUM_BUDGET).unwrap(), min_distance_full_scan(&c, 1 << 20).unwrap());
        }

        #[test]
        fn binary_distance_matches_full_scan(rows in code_strategy(2, 13, 9)) {
            let f = Field::of_order(2).unwrap();
            let c = LinearCode::new(&f, 13, &rows).unwrap();
            prop_assert_eq!(c.min_distance(DEFAULT_ENUM_BUDGET).unwrap(), min_distance_full_scan(&c, 1 << 20).unwrap());
        }

        #[test]
        fn intersection_is_contained_in_both(a in code_strategy(2, 7, 4), b in code_strategy(2, 7, 4)) {
            let f = Field::of_order(2).unwrap();
            let a = LinearCode::new(&f, 7, &a).unwrap();
            let b = LinearCode::new(&f, 7, &b).unwrap();
            let i = a.intersection(&b).unwrap();
            let s = a.sum(&b).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
            for r in i.basis_rows() {
                prop_assert!(a.contains(&r) && b.contains(&r));
            }
        }
    }
}
