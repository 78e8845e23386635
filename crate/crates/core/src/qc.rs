//! Quasi-cyclic codes as submodules of `R^ℓ`, `R = F_q[x]/(x^m - 1)`.
//!
//! A codeword is an `m x ℓ` array; column `j` is the polynomial `c_j(x)` and the expanded
//! vector puts the coefficient of `x^r` in column `j` at position `r·ℓ + j`.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::linear::LinearCode;
use crate::poly::Poly;

#[derive(Clone)]
pub struct QcCode {
    field: Field,
    m: usize,
    ell: usize,
    generators: Vec<Vec<Poly>>,
}

impl QcCode {
    /// The R-submodule generated by the given rows, each reduced modulo `x^m - 1`.
    pub fn new(field: &Field, m: usize, ell: usize, generators: Vec<Vec<Poly>>) -> Result<QcCode> {
        if m == 0 || ell == 0 {
            return Err(Error::InvalidArgument("m and ell must be positive".into()));
        }
        if arith::gcd(m as u64, field.order()) != 1 {
            return Err(Error::NotCoprime { m, q: field.order() });
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (i, row) in generators.into_iter().enumerate() {
            if row.len() != ell {
                return Err(Error::Shape(format!("generator {i} has {} entries, expected {ell}", row.len())));
            }
            if row.iter().any(|p| p.field() != field) {
                return Err(Error::MixedFields);
            }
            gens.push(row.iter().map(|p| p.reduce_cyclic(m)).collect());
        }
        Ok(QcCode { field: field.clone(), m, ell, generators: gens })
    }

    /// Generators given as `m x ℓ` arrays of raw coefficients (`array[r][j]` = coefficient of `x^r` in column `j`).
    pub fn from_arrays(field: &Field, m: usize, ell: usize, arrays: &[Vec<Vec<u64>>]) -> Result<QcCode> {
        let gens = arrays.iter().map(|a| array_to_polys(field, a, m, ell)).collect::<Result<Vec<_>>>()?;
        QcCode::new(field, m, ell, gens)
    }

    pub fn zero(field: &Field, m: usize, ell: usize) -> Result<QcCode> {
        QcCode::new(field, m, ell, Vec::new())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.m * self.ell
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.generators
    }

    /// The reduced upper-triangular generating matrix.
    pub fn groebner(&self) -> GroebnerMatrix {
        let f = &self.field;
        let mut rows: Vec<Vec<Poly>> = self.generators.clone();
        for j in 0..self.ell {
            let mut r = vec![Poly::zero(f); self.ell];
            r[j] = Poly::xm_minus_one(f, self.m);
            rows.push(r);
        }
        let echelon = hermite_form(rows, self.ell);
        debug_assert_eq!(echelon.len(), self.ell);
        GroebnerMatrix { field: f.clone(), m: self.m, ell: self.ell, rows: echelon.into_iter().map(|(_, r)| r).collect() }
    }

    pub fn dimension(&self) -> usize {
        self.groebner().dimension()
    }

    /// The `[mℓ, k]` linear code spanned by all cyclic shifts of the generators.
    pub fn expand(&self) -> LinearCode {
        let n = self.len();
        let mut rows = Vec::with_capacity(self.generators.len() * self.m);
        for g in &self.generators {
            for s in 0..self.m {
                let shifted: Vec<Poly> = g.iter().map(|p| p.shift(s).reduce_cyclic(self.m)).collect();
                rows.push(polys_to_vector(&shifted, self.m));
            }
        }
        LinearCode::new(&self.field, n, &rows).expect("expanded rows have length m·ell")
    }

    /// Codewords of `self` and `other` agree as sets.
    pub fn same_code(&self, other: &QcCode) -> bool {
        self.field == other.field && self.m == other.m && self.ell == other.ell && self.groebner() == other.groebner()
    }

    /// The smallest divisor `ℓ'` of `ℓ` such that shifting positions by `ℓ'` preserves the code.
    pub fn true_index(&self) -> usize {
        let code = self.expand();
        let n = self.len();
        (1..=self.ell)
            .filter(|d| self.ell % d == 0)
            .find(|&d| {
                code.basis_rows().iter().all(|r| {
                    let shifted: Vec<u64> = (0..n).map(|i| r[(i + n - d) % n]).collect();
                    code.contains(&shifted)
                })
            })
            .unwrap_or(self.ell)
    }
}

impl fmt::Debug for QcCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QcCode(q={}, m={}, ell={}, gens={:?})", self.field.order(), self.m, self.ell, self.generators)
    }
}

pub fn polys_to_vector(row: &[Poly], m: usize) -> Vec<u64> {
    let ell = row.len();
    let mut v = vec![0u64; m * ell];
    for (j, p) in row.iter().enumerate() {
        for (r, &c) in p.coeffs().iter().enumerate().take(m) {
            v[r * ell + j] = c;
        }
    }
    v
}

pub fn vector_to_polys(field: &Field, v: &[u64], m: usize, ell: usize) -> Vec<Poly> {
    (0..ell).map(|j| Poly::from_raw(field, (0..m).map(|r| v[r * ell + j]).collect())).collect()
}

/// `array[r][j]` is the coefficient of `x^r` in column `j`.
pub fn array_to_polys(field: &Field, a: &[Vec<u64>], m: usize, ell: usize) -> Result<Vec<Poly>> {
    if a.len() != m || a.iter().any(|r| r.len() != ell) {
        return Err(Error::Shape(format!("codeword array must be {m} x {ell}")));
    }
    (0..ell).map(|j| Poly::from_coeffs(field, (0..m).map(|r| a[r][j]).collect())).collect()
}

pub fn polys_to_array(row: &[Poly], m: usize) -> Vec<Vec<u64>> {
    (0..m).map(|r| row.iter().map(|p| p.coeff(r)).collect()).collect()
}

/// Row echelon form of a polynomial matrix over `F[x]` with `ell` columns by column-wise
/// Euclidean elimination. Returns `(pivot column, row)` pairs in increasing pivot order;
/// pivots are monic and entries above a pivot are reduced modulo it.
pub fn hermite_form(rows: Vec<Vec<Poly>>, ell: usize) -> Vec<(usize, Vec<Poly>)> {
    let mut pool: Vec<Vec<Poly>> = rows.into_iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect();
    let mut done: Vec<(usize, Vec<Poly>)> = Vec::new();
    for col in 0..ell {
        loop {
            let live: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][col].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let best = *live.iter().min_by_key(|&&i| pool[i][col].degree()).unwrap();
            let pivot_row = pool[best].clone();
            for &i in &live {
                if i == best {
                    continue;
                }
                let (q, _) = pool[i][col].divmod(&pivot_row[col]).expect("nonzero pivot");
                for c in col..ell {
                    let t = &pool[i][c] - &(&q * &pivot_row[c]);
                    pool[i][c] = t;
                }
            }
            pool.retain(|r| r.iter().any(|p| !p.is_zero()));
        }
        if let Some(i) = (0..pool.len()).find(|&i| !pool[i][col].is_zero()) {
            let row = pool.swap_remove(i);
            let inv = row[col].field().inv(row[col].lead());
            done.push((col, row.iter().map(|p| p.scale(inv)).collect()));
        }
    }
    // reduce entries above each pivot
    for k in 0..done.len() {
        let (col, pivot) = done[k].clone();
        for upper in done.iter_mut().take(k) {
            let (q, _) = upper.1[col].divmod(&pivot[col]).expect("nonzero pivot");
            if q.is_zero() {
                continue;
            }
            for c in col..ell {
                let t = &upper.1[c] - &(&q * &pivot[c]);
                upper.1[c] = t;
            }
        }
    }
    done
}

/// Upper-triangular `ℓ x ℓ` generating matrix with monic diagonal entries dividing
/// `x^m - 1` and off-diagonal entries reduced modulo the diagonal entry of their column.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerMatrix {
    field: Field,
    m: usize,
    ell: usize,
    rows: Vec<Vec<Poly>>,
}

impl GroebnerMatrix {
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.ell).map(|j| self.rows[j][j].clone()).collect()
    }

    /// `mℓ - Σ deg g_jj`.
    pub fn dimension(&self) -> usize {
        let lost: usize = (0..self.ell).map(|j| self.rows[j][j].degree().unwrap_or(0)).sum();
        self.m * self.ell - lost
    }

    /// Rows of the generating matrix reduced modulo `x^m - 1`; rows with `g_jj = x^m - 1`
    /// vanish in `R^ℓ` and are dropped.
    pub fn module_generators(&self) -> Vec<Vec<Poly>> {
        let xm1 = Poly::xm_minus_one(&self.field, self.m);
        self.rows
            .iter()
            .enumerate()
            .filter(|(j, _)| self.rows[*j][*j] != xm1)
            .map(|(_, r)| r.iter().map(|p| p.reduce_cyclic(self.m)).collect())
            .collect()
    }

    /// Checks the structural conditions; returns a description of the first violation.
    ///
    /// The matrix must be upper triangular, with `deg g_ij < deg g_jj` above the diagonal,
    /// each `g_jj` monic and dividing `x^m - 1`, and every row whose diagonal entry is
    /// `x^m - 1` zero elsewhere.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let xm1 = Poly::xm_minus_one(&self.field, self.m);
        for i in 0..self.ell {
            for j in 0..i {
                if !self.rows[i][j].is_zero() {
                    return Err(format!("entry ({i},{j}) below the diagonal is nonzero"));
                }
            }
            let d = &self.rows[i][i];
            if !d.is_monic() {
                return Err(format!("diagonal entry {i} is not monic"));
            }
            if !d.divides(&xm1).unwrap_or(false) {
                return Err(format!("diagonal entry {i} does not divide x^m - 1"));
            }
            for j in i + 1..self.ell {
                if self.rows[i][j].degree() >= self.rows[j][j].degree() && !self.rows[i][j].is_zero() {
                    return Err(format!("entry ({i},{j}) is not reduced modulo the diagonal"));
                }
            }
            if *d == xm1 && (0..self.ell).any(|j| j != i && !self.rows[i][j].is_zero()) {
                return Err(format!("row {i} has diagonal x^m - 1 but nonzero off-diagonal entries"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroebnerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let parts: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", parts.join(" ; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroebnerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::of_order(2).unwrap()
    }

    #[test]
    fn small_binary_example() {
        let f = gf2();
        let g = Poly::parse(&f, "1,1").unwrap();
        let c = QcCode::new(&f, 3, 2, vec![vec![g.clone(), g.clone()]]).unwrap();
        let gb = c.groebner();
        assert_eq!(gb.entry(0, 0), &g);
        assert_eq!(gb.entry(0, 1), &g);
        assert!(gb.entry(1, 0).is_zero());
        assert_eq!(gb.entry(1, 1), &Poly::xm_minus_one(&f, 3));
        assert_eq!(gb.dimension(), 2);
        assert!(gb.validate().is_ok());
        assert_eq!(c.expand().dim(), 2);
        assert_eq!(c.true_index(), 2);
        let all = Poly::parse(&f, "1,1,1").unwrap();
        let rep = QcCode::new(&f, 3, 2, vec![vec![all.clone(), all]]).unwrap();
        assert_eq!(rep.true_index(), 1);
        assert_eq!(QcCode::zero(&f, 3, 2).unwrap().true_index(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let f = gf2();
        assert!(matches!(QcCode::zero(&f, 4, 2), Err(Error::NotCoprime { .. })));
        let row = vec![Poly::one(&f)];
        assert!(matches!(QcCode::new(&f, 3, 2, vec![row]), Err(Error::Shape(_))));
    }

    #[test]
    fn full_and_zero_codes() {
        let f = Field::of_order(3).unwrap();
        let z = QcCode::zero(&f, 5, 2).unwrap();
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.groebner().diagonal(), vec![Poly::xm_minus_one(&f, 5); 2]);
        let one = Poly::one(&f);
        let zero = Poly::zero(&f);
        let full = QcCode::new(&f, 5, 2, vec![vec![one.clone(), zero.clone()], vec![zero, one]]).unwrap();
        assert_eq!(full.dimension(), 10);
    }

    #[test]
    fn array_round_trip() {
        let f = Field::of_order(4).unwrap();
        let a = vec![vec![1, 2], vec![0, 3], vec![2, 0]];
        let polys = array_to_polys(&f, &a, 3, 2).unwrap();
        assert_eq!(polys_to_array(&polys, 3), a);
        let v = polys_to_vector(&polys, 3);
        assert_eq!(vector_to_polys(&f, &v, 3, 2), polys);
    }
}
