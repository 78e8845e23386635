//! CRT decomposition of QC codes into constituents and the inverse concatenation.
//!
//! With `x^m - 1 = ∏ f_i` and `u_i` the leader of the coset of `f_i`,
//! `R ≅ ⊕ E_i` where `E_i = GF(q^{e_i})` and the i-th map evaluates at `ξ^{u_i}`.
//! Every `E_i` is realized inside the splitting field `F` through its canonical
//! embedding, so all evaluations and traces happen in `F`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclotomic::{factor_xm1, Factorization};
use crate::error::{Error, Result};
use crate::galois::{Embedding, Field};
use crate::linear::LinearCode;
use crate::poly::Poly;
use crate::qc::QcCode;

pub struct CrtContext {
    fact: Arc<Factorization>,
    fields: Vec<Field>,
    embeddings: Vec<Arc<Embedding>>,
    inv_m: u64,
    /// `Tr_{F/E_i}(k_i) = 1`, raw in `F`.
    unified: Vec<u64>,
}

fn cache() -> &'static Mutex<HashMap<(u64, usize), Arc<CrtContext>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<CrtContext>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CrtContext {
    pub fn new(q: u64, m: usize) -> Result<Arc<CrtContext>> {
        if let Some(c) = cache().lock().unwrap().get(&(q, m)) {
            return Ok(c.clone());
        }
        let fact = factor_xm1(q, m)?;
        let base = fact.base().clone();
        let big = fact.splitting_field().clone();
        let mut fields = Vec::new();
        let mut embeddings = Vec::new();
        let mut unified = Vec::new();
        for f in fact.factors() {
            let e = base.degree() * f.degree() as u32;
            let field = Field::with_budget(base.characteristic(), e, big.order())?;
            embeddings.push(Embedding::new(&field, &big)?);
            let sub_order = field.order();
            let k = (1..big.order()).find(|&k| big.relative_trace(k, sub_order) == 1).expect("the trace map is onto");
            unified.push(k);
            fields.push(field);
        }
        let inv_m = base.inv(m as u64 % base.characteristic());
        let ctx = Arc::new(CrtContext { fact, fields, embeddings, inv_m, unified });
        cache().lock().unwrap().insert((q, m), ctx.clone());
        Ok(ctx)
    }

    pub fn for_code(code: &QcCode) -> Result<Arc<CrtContext>> {
        CrtContext::new(code.field().order(), code.m())
    }

    pub fn factorization(&self) -> &Factorization {
        &self.fact
    }

    pub fn base(&self) -> &Field {
        self.fact.base()
    }

    pub fn m(&self) -> usize {
        self.fact.m()
    }

    pub fn splitting_field(&self) -> &Field {
        self.fact.splitting_field()
    }

    pub fn xi(&self) -> u64 {
        self.fact.xi()
    }

    /// Number of constituents.
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn field(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    pub fn embedding(&self, i: usize) -> &Embedding {
        &self.embeddings[i]
    }

    pub fn leader(&self, i: usize) -> usize {
        self.fact.factors()[i].leader
    }

    pub fn degree(&self, i: usize) -> usize {
        self.fact.factors()[i].degree()
    }

    pub fn factor(&self, i: usize) -> &Poly {
        &self.fact.factors()[i].poly
    }

    /// `ξ^{u_i}`, raw in `F`.
    pub fn root(&self, i: usize) -> u64 {
        self.splitting_field().pow(self.xi(), self.leader(i) as u64)
    }

    /// `a(ξ^k)` in `F` for a polynomial over the base field.
    pub fn eval_power(&self, a: &Poly, k: usize) -> u64 {
        let big = self.splitting_field();
        let emb = self.fact.base_embedding();
        let x = big.pow(self.xi(), (k % self.m()) as u64);
        a.coeffs().iter().rev().fold(0u64, |acc, &c| big.add(big.mul(acc, x), emb.apply(c)))
    }

    /// `φ_i(a) = a(ξ^{u_i})` as an element of `E_i`.
    pub fn phi(&self, i: usize, a: &Poly) -> u64 {
        let v = self.eval_power(a, self.leader(i));
        self.embeddings[i].preimage(v).expect("a(ξ^u) lies in E_i")
    }

    /// `Tr_{E_i/F_q}` of an element of `F` lying in `E_i`, left in `F`.
    fn trace_to_base(&self, i: usize, z: u64) -> u64 {
        let big = self.splitting_field();
        let a = self.base().degree();
        let mut acc = 0u64;
        let mut cur = z;
        for _ in 0..self.degree(i) {
            acc = big.add(acc, cur);
            cur = big.frobenius(cur, a);
        }
        acc
    }

    fn to_base(&self, z: u64) -> u64 {
        self.fact.base_embedding().preimage(z).expect("trace lands in the base field")
    }

    /// `ψ_i(δ) = Σ_k a_k x^k` with `a_k = (1/m) Tr_{E_i/F_q}(δ ξ^{-k u_i})`.
    pub fn psi(&self, i: usize, delta: u64) -> Poly {
        let base = self.base();
        let big = self.splitting_field();
        let m = self.m();
        let d = self.embeddings[i].apply(delta);
        let step = big.inv(self.root(i));
        let mut cur = d;
        let mut coeffs = Vec::with_capacity(m);
        for _ in 0..m {
            coeffs.push(base.mul(self.inv_m, self.to_base(self.trace_to_base(i, cur))));
            cur = big.mul(cur, step);
        }
        Poly::from_raw(base, coeffs)
    }

    /// The primitive idempotent `θ_i = ψ_i(1)` generating the minimal cyclic code of `f_i`.
    pub fn idempotent(&self, i: usize) -> Poly {
        self.psi(i, 1)
    }

    /// The length-m cyclic code `<θ_i>`, whose check polynomial is `f_i`.
    pub fn minimal_cyclic_code(&self, i: usize) -> QcCode {
        QcCode::new(self.base(), self.m(), 1, vec![vec![self.idempotent(i)]]).expect("valid cyclic code")
    }

    /// Constituents `C_i = span_{E_i}{(b_0(ξ^{u_i}), ..., b_{ℓ-1}(ξ^{u_i})) : b a generator}`.
    pub fn decompose(&self, code: &QcCode) -> Result<Vec<LinearCode>> {
        self.check_code(code)?;
        Ok((0..self.len())
            .map(|i| {
                let rows: Vec<Vec<u64>> = code.generators().iter().map(|g| g.iter().map(|a| self.phi(i, a)).collect()).collect();
                LinearCode::new(&self.fields[i], code.ell(), &rows).expect("constituent rows")
            })
            .collect())
    }

    /// `⊕_i <θ_i> □ C_i`: applies `ψ_i` coordinate-wise to each basis word of each part.
    pub fn jensen_concatenate(&self, ell: usize, parts: &[LinearCode]) -> Result<QcCode> {
        self.check_parts(ell, parts)?;
        let mut gens = Vec::new();
        for (i, c) in parts.iter().enumerate() {
            for row in c.basis_rows() {
                gens.push(row.iter().map(|&d| self.psi(i, d)).collect());
            }
        }
        QcCode::new(self.base(), self.m(), ell, gens)
    }

    pub(crate) fn check_code(&self, code: &QcCode) -> Result<()> {
        if code.field() != self.base() || code.m() != self.m() {
            return Err(Error::InvalidArgument(format!(
                "code over {} with m = {} does not match context over {} with m = {}",
                code.field(),
                code.m(),
                self.base(),
                self.m()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_parts(&self, ell: usize, parts: &[LinearCode]) -> Result<()> {
        if parts.len() != self.len() {
            return Err(Error::Shape(format!("expected {} constituents, got {}", self.len(), parts.len())));
        }
        for (i, c) in parts.iter().enumerate() {
            if c.field() != &self.fields[i] {
                return Err(Error::Constituent {
                    index: i,
                    reason: format!("expected a code over {}, got {}", self.fields[i], c.field()),
                });
            }
            if c.len() != ell {
                return Err(Error::Constituent { index: i, reason: format!("expected length {ell}, got {}", c.len()) });
            }
        }
        Ok(())
    }

    fn check_lambdas(&self, parts: &[LinearCode], lambdas: &[Vec<u64>]) -> Result<usize> {
        let ell = parts.first().map(|c| c.len()).unwrap_or(0);
        self.check_parts(ell, parts)?;
        if lambdas.len() != parts.len() {
            return Err(Error::Shape(format!("expected {} constituent words, got {}", parts.len(), lambdas.len())));
        }
        for (i, (c, l)) in parts.iter().zip(lambdas).enumerate() {
            if !c.contains(l) {
                return Err(Error::Constituent { index: i, reason: "word is not in the constituent".into() });
            }
        }
        Ok(ell)
    }

    /// `c_{j,t} = Σ_i Tr_{E_i/F_q}(λ_{i,t} ξ^{-j u_i})` as an `m x ℓ` array.
    pub fn trace_codeword(&self, parts: &[LinearCode], lambdas: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let ell = self.check_lambdas(parts, lambdas)?;
        let big = self.splitting_field();
        let base = self.base();
        let mut out = vec![vec![0u64; ell]; self.m()];
        for (i, lam) in lambdas.iter().enumerate() {
            let step = big.inv(self.root(i));
            for (t, &l) in lam.iter().enumerate() {
                let mut cur = self.embeddings[i].apply(l);
                for row in out.iter_mut() {
                    row[t] = base.add(row[t], self.to_base(self.trace_to_base(i, cur)));
                    cur = big.mul(cur, step);
                }
            }
        }
        Ok(out)
    }

    /// The same array through one trace: `c_{j,t} = Tr_{F/F_q}(Σ_i k_i λ_{i,t} ξ^{-j u_i})`.
    pub fn trace_codeword_unified(&self, parts: &[LinearCode], lambdas: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let ell = self.check_lambdas(parts, lambdas)?;
        let big = self.splitting_field();
        let base_order = self.base().order();
        let mut out = vec![vec![0u64; ell]; self.m()];
        for (j, row) in out.iter_mut().enumerate() {
            for (t, slot) in row.iter_mut().enumerate() {
                let mut s = 0u64;
                for (i, lam) in lambdas.iter().enumerate() {
                    let root_pow = big.pow(big.inv(self.root(i)), j as u64);
                    let term = big.mul(big.mul(self.unified[i], self.embeddings[i].apply(lam[t])), root_pow);
                    s = big.add(s, term);
                }
                *slot = self.to_base(big.relative_trace(s, base_order));
            }
        }
        Ok(out)
    }

    /// Cyclic code `D = <∏_{i : C_i = 0} f_i>` of length `m`: the zeros of `D^⊥` are
    /// `ξ^{-u_i}` for the nonzero constituents. Every column of every codeword lies in `D`.
    pub fn column_cyclic_code(&self, code: &QcCode) -> Result<QcCode> {
        let parts = self.decompose(code)?;
        let g = parts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .fold(Poly::one(self.base()), |acc, (i, _)| &acc * self.factor(i));
        QcCode::new(self.base(), self.m(), 1, vec![vec![g]])
    }
}

/// Decomposes a QC code over its own CRT context.
pub fn decompose(code: &QcCode) -> Result<Vec<LinearCode>> {
    CrtContext::for_code(code)?.decompose(code)
}

/// The QC code with rows `(z + b, z + a, z + a + b)` for `z ∈ C1` and `a + βb ∈ C2`,
/// where `β` is the primitive cube root of unity of `GF(q^2)` and `a, b ∈ GF(q)^ℓ`.
/// Requires characteristic 2 and `q ≡ 2 (mod 3)`.
pub fn cubic_construction(c1: &LinearCode, c2: &LinearCode) -> Result<QcCode> {
    let base = c1.field().clone();
    let q = base.order();
    if base.characteristic() != 2 || q % 3 != 2 {
        return Err(Error::InvalidArgument(format!("cubic construction needs characteristic 2 and q ≡ 2 mod 3, got q = {q}")));
    }
    if c1.len() != c2.len() {
        return Err(Error::Shape(format!("lengths {} and {}", c1.len(), c2.len())));
    }
    let ctx = CrtContext::new(q, 3)?;
    let ext = ctx.splitting_field().clone();
    if c2.field() != &ext {
        return Err(Error::InvalidArgument(format!("second code must be over {ext}, got {}", c2.field())));
    }
    let ell = c1.len();
    let beta = ctx.xi();
    let emb = ctx.factorization().base_embedding().clone();
    // solve c = a + βb over GF(p) coordinates of (a, b)
    let a_deg = base.degree() as usize;
    let mut cols: Vec<Vec<u64>> = emb.basis_images().iter().map(|&v| ext.coords(v)).collect();
    cols.extend(emb.basis_images().iter().map(|&v| ext.coords(ext.mul(beta, v))));
    let solver = crate::galois::PrimeSolver::new(2, ext.degree() as usize, &cols).expect("{1, β} is a basis");
    let split = |c: u64| -> (u64, u64) {
        let w = solver.solve(&ext.coords(c)).expect("solvable");
        let a = base.from_coords(&w[..a_deg]).expect("coords");
        let b = base.from_coords(&w[a_deg..]).expect("coords");
        (a, b)
    };
    let mut gens = Vec::new();
    for z in c1.basis_rows() {
        gens.push(z.iter().map(|&zt| Poly::from_raw(&base, vec![zt, zt, zt])).collect());
    }
    for v in c2.basis_rows() {
        for w in [v.clone(), v.iter().map(|&x| ext.mul(beta, x)).collect::<Vec<_>>()] {
            let row: Vec<Poly> = w
                .iter()
                .map(|&c| {
                    let (a, b) = split(c);
                    Poly::from_raw(&base, vec![b, a, base.add(a, b)])
                })
                .collect();
            gens.push(row);
        }
    }
    QcCode::new(&base, 3, ell, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binary_decomposition() {
        let f = Field::of_order(2).unwrap();
        let g = Poly::parse(&f, "1,1").unwrap();
        let c = QcCode::new(&f, 3, 2, vec![vec![g.clone(), g]]).unwrap();
        let ctx = CrtContext::for_code(&c).unwrap();
        let parts = ctx.decompose(&c).unwrap();
        assert!(parts[0].is_zero());
        // 1 + ξ = ξ^2 for the cube root ξ = β of GF(4)
        let e2 = ctx.field(1);
        let v = e2.add(1, ctx.xi());
        assert_eq!(parts[1], LinearCode::new(e2, 2, &[vec![v, v]]).unwrap());
        let back = ctx.jensen_concatenate(2, &parts).unwrap();
        assert!(back.same_code(&c));
    }

    #[test]
    fn psi_and_phi_are_inverse() {
        for (q, m) in [(2u64, 7usize), (3, 4), (4, 5), (2, 5), (3, 7)] {
            let ctx = CrtContext::new(q, m).unwrap();
            for i in 0..ctx.len() {
                for d in ctx.field(i).elements() {
                    let p = ctx.psi(i, d);
                    assert_eq!(ctx.phi(i, &p), d);
                    for j in 0..ctx.len() {
                        if j != i {
                            assert_eq!(ctx.phi(j, &p), 0);
                        }
                    }
                }
                let theta = ctx.idempotent(i);
                assert_eq!(theta.mul_cyclic(&theta, m), theta);
                assert_eq!(ctx.minimal_cyclic_code(i).dimension(), ctx.degree(i));
            }
        }
    }

    #[test]
    fn cubic_example_rows() {
        let f2 = Field::of_order(2).unwrap();
        let f4 = Field::of_order(4).unwrap();
        let beta = 2;
        let c1 = LinearCode::new(&f2, 2, &[vec![1, 1]]).unwrap();
        let c2 = LinearCode::new(&f4, 2, &[vec![1, beta]]).unwrap();
        let code = cubic_construction(&c1, &c2).unwrap();
        assert_eq!(code.ell(), 2);
        assert_eq!(code.dimension(), 1 + 2);
        // z = (1,1); 1 = a0 + βb0 gives (a0,b0) = (1,0); β gives (a1,b1) = (0,1)
        let word = [1u64, 0, 0, 1, 0, 0];
        assert!(code.expand().contains(&word));
        let parts = decompose(&code).unwrap();
        assert_eq!(parts[0], c1);
        assert_eq!(parts[1], c2);
    }
}
