//! Finite fields GF(p^e).
//!
//! An element is stored as its raw index `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, where
//! `(c_0, ..., c_{e-1})` are its coordinates on the basis `1, y, ..., y^{e-1}` and `y` is a
//! root of the field modulus. The prime subfield is therefore `0..p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{budget_err, Error, Result};

/// Largest field order built by [`Field::new`].
pub const DEFAULT_FIELD_BUDGET: u64 = 1 << 20;
/// Largest field order accepted for splitting fields of `x^m - 1`.
pub const SPLITTING_FIELD_BUDGET: u64 = 1 << 56;
const TABLE_LIMIT: u64 = 1 << 20;

/// Arithmetic in GF(p)[y] / (modulus) on raw indices.
#[derive(Clone)]
struct Ring {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
    mod_bits: u64,
}

impl Ring {
    fn new(p: u64, modulus: &[u64]) -> Ring {
        let e = modulus.len() - 1;
        let mod_bits = if p == 2 { modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c << i)) } else { 0 };
        Ring { p, e, modulus: modulus.to_vec(), mod_bits }
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.e];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0u64, 1u64);
        while a != 0 || b != 0 {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let (mut out, mut scale) = (0u64, 1u64);
        while a != 0 {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        if self.p == 2 {
            let mut acc: u128 = 0;
            let (mut bb, mut sh) = (b, 0u32);
            while bb != 0 {
                if bb & 1 == 1 {
                    acc ^= (a as u128) << sh;
                }
                bb >>= 1;
                sh += 1;
            }
            let e = self.e;
            for i in (e..2 * e - 1).rev() {
                if (acc >> i) & 1 == 1 {
                    acc ^= (self.mod_bits as u128) << (i - e);
                }
            }
            return acc as u64;
        }
        let p = self.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c != 0 {
                for j in 0..e {
                    prod[i - e + j] = (prod[i - e + j] + (p - c) * self.modulus[j]) % p;
                }
                prod[i] = 0;
            }
        }
        self.encode(&prod[..e])
    }

    fn pow(&self, a: u64, mut n: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

/// Dense polynomial helpers over GF(p) on coefficient vectors (ascending).
mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        crate::arith::mod_pow(a, p - 2, p)
    }

    pub fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        a = trim(a);
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        while a.len() > db {
            let shift = a.len() - 1 - db;
            let c = a[a.len() - 1] * lead_inv % p;
            for (j, &bj) in b.iter().enumerate() {
                let idx = shift + j;
                a[idx] = (a[idx] + (p - c) * bj % p) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    let ring = Ring::new(p, f);
    let x = p;
    let mut frob = vec![x];
    for _ in 0..e {
        let last = *frob.last().unwrap();
        frob.push(ring.pow(last, p));
    }
    if frob[e] != x {
        return false;
    }
    for r in arith::prime_factors(e as u64) {
        let h = ring.add(frob[e / r as usize], ring.neg(x));
        let g = fp::gcd(ring.digits(h), f.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Coordinates listed `c_0` first for the lexicographic rank `r` over `e` digits.
fn lex_digits(mut r: u64, p: u64, e: usize) -> Vec<u64> {
    let mut d = vec![0u64; e];
    for i in (0..e).rev() {
        d[i] = r % p;
        r /= p;
    }
    d
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldData {
    order: u64,
    ring: Ring,
    generator: u64,
    tables: Option<Tables>,
}

/// A finite field handle. Cheap to clone; equality is by `(p, e)`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// GF(p^e) with the default size budget.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        Field::with_budget(p, e, DEFAULT_FIELD_BUDGET)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, e) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, e)
    }

    pub fn with_budget(p: u64, e: u32, budget: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let order = match arith::checked_pow(p, e) {
            Some(o) if o <= (1u64 << 62) => o,
            _ => return Err(budget_err(format!("GF({p}^{e})"), format!("{p}^{e}"), budget)),
        };
        if order > budget {
            return Err(budget_err(format!("GF({p}^{e})"), order, budget));
        }
        let mut cache = field_cache().lock().unwrap();
        if let Some(f) = cache.get(&(p, e)) {
            return Ok(f.clone());
        }
        let field = Field(Arc::new(build_field(p, e as usize, order)));
        cache.insert((p, e), field.clone());
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.ring.p
    }

    pub fn degree(&self) -> u32 {
        self.0.ring.e as u32
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Monic modulus, ascending coefficients; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        (self.0.ring.e > 1).then_some(self.0.ring.modulus.as_slice())
    }

    /// The canonical generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        self.0.generator
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.0.ring.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.0.ring.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.0.ring.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.0.ring.mul(a, b),
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.order - 1) as u32;
                t.exp[((n - t.log[a as usize]) % n) as usize] as u64
            }
            None => self.0.ring.pow(a, self.0.order - 2),
        }
    }

    pub fn checked_div(&self, a: u64, b: u64) -> Result<u64> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(a, self.inv(b)))
    }

    pub fn pow(&self, a: u64, n: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => {
                let ord = self.0.order - 1;
                let k = (t.log[a as usize] as u128 * (n % ord) as u128 % ord as u128) as usize;
                t.exp[k] as u64
            }
            None => self.0.ring.pow(a, n),
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: u64, k: u32) -> u64 {
        let mut out = a;
        for _ in 0..k % self.degree() {
            out = self.pow(out, self.characteristic());
        }
        out
    }

    /// Discrete logarithm to the canonical generator (tabled fields only).
    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        self.0.tables.as_ref().map(|t| t.log[a as usize] as u64)
    }

    /// Coordinates `(c_0, ..., c_{e-1})`.
    pub fn coords(&self, a: u64) -> Vec<u64> {
        self.0.ring.digits(a)
    }

    pub fn from_coords(&self, c: &[u64]) -> Result<u64> {
        let p = self.characteristic();
        if c.len() > self.0.ring.e || c.iter().any(|&x| x >= p) {
            return Err(Error::InvalidArgument(format!("coordinates {c:?} do not describe an element of {self}")));
        }
        Ok(self.0.ring.encode(c))
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.0.order
    }

    pub fn elem(&self, raw: u64) -> FieldElem {
        debug_assert!(self.contains(raw));
        FieldElem { field: self.clone(), value: raw }
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.0.order
    }

    /// Renders an element as `(c0,c1,...)`.
    pub fn format(&self, a: u64) -> String {
        let parts: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Parses `(c0,c1,...)`; a bare integer is read as a raw index.
    pub fn parse_elem(&self, s: &str) -> Result<u64> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coords = inner
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad element '{t}'")))?;
            return self.from_coords(&coords);
        }
        let v: u64 = t.parse().map_err(|_| Error::InvalidArgument(format!("bad element '{t}'")))?;
        if !self.contains(v) {
            return Err(Error::InvalidArgument(format!("{v} is not an element of {self}")));
        }
        Ok(v)
    }

    /// `Σ_{j<k} a^(r^j)`: the trace from this field down to its subfield of order `r`,
    /// where `k` is the relative degree. The result is left in this field.
    pub fn relative_trace(&self, a: u64, sub_order: u64) -> u64 {
        let (p, _) = arith::prime_power(sub_order).expect("prime power");
        debug_assert_eq!(p, self.characteristic());
        let sub_deg = sub_order.ilog(p);
        let k = self.degree() / sub_deg;
        let mut acc = 0u64;
        let mut cur = a;
        for _ in 0..k {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur, sub_deg);
        }
        acc
    }

    /// The trace to `sub`, mapped back into `sub` through the canonical embedding.
    pub fn trace(&self, sub: &Field, a: u64) -> Result<u64> {
        let emb = Embedding::new(sub, self)?;
        let t = self.relative_trace(a, sub.order());
        emb.preimage(t).ok_or(Error::NotInSubfield)
    }
}

fn build_field(p: u64, e: usize, order: u64) -> FieldData {
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        // c_0 = 0 is divisible by x; those ranks come first
        for r in order / p..order {
            let mut f = lex_digits(r, p, e);
            f.push(1);
            if is_irreducible(p, &f) {
                found = Some(f);
                break;
            }
        }
        found.expect("an irreducible polynomial exists in every degree")
    };
    let ring = Ring::new(p, &modulus);
    let n = order - 1;
    let factors = arith::prime_factors(n);
    let mut generator = 0;
    for r in 1..order {
        let c = lex_digits(r, p, e);
        let g = ring.encode(&c);
        if factors.iter().all(|&f| ring.pow(g, n / f) != 1) {
            generator = g;
            break;
        }
    }
    let tables = (order <= TABLE_LIMIT).then(|| {
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u64;
        for i in 0..n as usize {
            exp[i] = cur as u32;
            log[cur as usize] = i as u32;
            cur = ring.mul(cur, generator);
        }
        for i in n as usize..2 * n as usize {
            exp[i] = exp[i - n as usize];
        }
        Tables { exp, log }
    });
    FieldData { order, ring, generator, tables }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.characteristic() == other.characteristic() && self.degree() == other.degree())
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.characteristic(), self.degree()).hash(state);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.characteristic(), self.degree())
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Solves `A w = t` over GF(p) for a fixed matrix `A` of full column rank.
#[derive(Clone)]
pub(crate) struct PrimeSolver {
    p: u64,
    n: usize,
    k: usize,
    /// `T` with `T A = [I_k; 0]`, row-major `n x n`.
    t: Vec<u64>,
}

impl PrimeSolver {
    /// `columns[j]` is column `j` of `A` (length `n`). Returns `None` if `A` is rank deficient.
    pub(crate) fn new(p: u64, n: usize, columns: &[Vec<u64>]) -> Option<PrimeSolver> {
        let k = columns.len();
        let w = k + n;
        let mut m = vec![0u64; n * w];
        for i in 0..n {
            for (j, col) in columns.iter().enumerate() {
                m[i * w + j] = col[i] % p;
            }
            m[i * w + k + i] = 1;
        }
        for c in 0..k {
            let piv = (c..n).find(|&r| m[r * w + c] != 0)?;
            if piv != c {
                for j in 0..w {
                    m.swap(piv * w + j, c * w + j);
                }
            }
            let inv = fp::inv(m[c * w + c], p);
            for j in 0..w {
                m[c * w + j] = m[c * w + j] * inv % p;
            }
            for r in 0..n {
                if r != c && m[r * w + c] != 0 {
                    let f = m[r * w + c];
                    for j in 0..w {
                        let v = m[c * w + j];
                        m[r * w + j] = (m[r * w + j] + (p - f) * v) % p;
                    }
                }
            }
        }
        let mut t = vec![0u64; n * n];
        for r in 0..n {
            t[r * n..(r + 1) * n].copy_from_slice(&m[r * w + k..(r + 1) * w]);
        }
        Some(PrimeSolver { p, n, k, t })
    }

    pub(crate) fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.n];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.t[r * self.n..(r + 1) * self.n];
            *slot = row.iter().zip(target).fold(0u64, |acc, (&a, &b)| (acc + a * b) % self.p);
        }
        if out[self.k..].iter().any(|&x| x != 0) {
            return None;
        }
        out.truncate(self.k);
        Some(out)
    }
}

/// The canonical embedding of a subfield into an extension of the same characteristic.
///
/// The sub generator maps to the first power `h^j` (with `gcd(j, |sub|-1) = 1`) of
/// `h = g_target^((|target|-1)/(|sub|-1))` that is a root of its minimal polynomial.
#[derive(Clone)]
pub struct Embedding {
    sub: Field,
    target: Field,
    images: Vec<u64>,
    solver: PrimeSolver,
}

fn embedding_cache() -> &'static Mutex<HashMap<(u64, u32, u32), Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(sub: &Field, target: &Field) -> Result<Arc<Embedding>> {
        let p = sub.characteristic();
        if p != target.characteristic() || target.degree() % sub.degree() != 0 {
            return Err(Error::InvalidArgument(format!("{sub} is not a subfield of {target}")));
        }
        let key = (p, sub.degree(), target.degree());
        if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let emb = Arc::new(build_embedding(sub, target));
        embedding_cache().lock().unwrap().insert(key, emb.clone());
        Ok(emb)
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Images of `1, y, y^2, ...` of the sub basis.
    pub fn basis_images(&self) -> &[u64] {
        &self.images
    }

    pub fn apply(&self, a: u64) -> u64 {
        if self.sub.degree() == 1 {
            return a;
        }
        let t = &self.target;
        self.sub
            .coords(a)
            .iter()
            .zip(&self.images)
            .fold(0u64, |acc, (&c, &img)| if c == 0 { acc } else { t.add(acc, t.mul(c, img)) })
    }

    pub fn preimage(&self, b: u64) -> Option<u64> {
        if self.sub.degree() == 1 {
            return (b < self.sub.characteristic()).then_some(b);
        }
        let w = self.solver.solve(&self.target.coords(b))?;
        Some(self.sub.0.ring.encode(&w))
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({} -> {})", self.sub, self.target)
    }
}

fn build_embedding(sub: &Field, target: &Field) -> Embedding {
    let p = sub.characteristic();
    let es = sub.degree() as usize;
    let et = target.degree() as usize;
    let images: Vec<u64> = if es == 1 {
        vec![1]
    } else {
        let n = sub.order() - 1;
        let big_n = target.order() - 1;
        let h0 = target.pow(target.generator(), big_n / n);
        // minimal polynomial of the sub generator over GF(p)
        let gs = sub.generator();
        let mut minpoly = vec![1u64];
        let mut conj = gs;
        for _ in 0..es {
            let mut next = vec![0u64; minpoly.len() + 1];
            for (i, &c) in minpoly.iter().enumerate() {
                next[i + 1] = sub.add(next[i + 1], c);
                next[i] = sub.sub(next[i], sub.mul(c, conj));
            }
            minpoly = next;
            conj = sub.pow(conj, p);
        }
        debug_assert!(minpoly.iter().all(|&c| c < p));
        let eval = |x: u64| minpoly.iter().rev().fold(0u64, |acc, &c| target.add(target.mul(acc, x), c));
        let h = (1..=n)
            .filter(|&j| arith::gcd(j, n) == 1)
            .map(|j| target.pow(h0, j))
            .find(|&h| eval(h) == 0)
            .expect("the image generator is a conjugate of h0");
        // y as a GF(p)-combination of powers of the sub generator
        let cols: Vec<Vec<u64>> = (0..es as u64).map(|k| sub.coords(sub.pow(gs, k))).collect();
        let solver = PrimeSolver::new(p, es, &cols).expect("powers of a generator form a basis");
        let d = solver.solve(&sub.coords(p)).expect("basis");
        let y_img = d.iter().enumerate().fold(0u64, |acc, (k, &c)| target.add(acc, target.mul(c, target.pow(h, k as u64))));
        (0..es as u64).map(|k| target.pow(y_img, k)).collect()
    };
    let cols: Vec<Vec<u64>> = images.iter().map(|&img| target.coords(img)).collect();
    let solver = PrimeSolver::new(p, et, &cols).expect("embedding is injective");
    Embedding { sub: sub.clone(), target: target.clone(), images, solver }
}

/// An element paired with its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Field,
    value: u64,
}

impl FieldElem {
    pub fn new(field: &Field, value: u64) -> Result<FieldElem> {
        if !field.contains(value) {
            return Err(Error::InvalidArgument(format!("{value} is not an element of {field}")));
        }
        Ok(FieldElem { field: field.clone(), value })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.checked_div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.elem(self.field.inv(self.value)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn pow(&self, n: u64) -> FieldElem {
        self.field.elem(self.field.pow(self.value, n))
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.value)
    }

    /// The image of this element in an extension field.
    pub fn embed(&self, target: &Field) -> Result<FieldElem> {
        let emb = Embedding::new(&self.field, target)?;
        Ok(target.elem(emb.apply(self.value)))
    }

    /// The trace of this element down to `sub`.
    pub fn trace(&self, sub: &Field) -> Result<FieldElem> {
        Ok(sub.elem(self.field.trace(sub, self.value)?))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.field.format(self.value), self.field)
    }
}

/// The smallest field `GF(q^t)` containing a primitive `m`-th root of unity, with
/// `ξ = g^((q^t - 1)/m)` for the canonical generator `g`.
pub fn root_of_unity(q: u64, m: usize) -> Result<(Field, u64)> {
    root_of_unity_with_budget(q, m, DEFAULT_FIELD_BUDGET)
}

pub fn root_of_unity_with_budget(q: u64, m: usize, budget: u64) -> Result<(Field, u64)> {
    let (p, a) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if arith::gcd(m as u64, q) != 1 {
        return Err(Error::NotCoprime { m, q });
    }
    let t = arith::mult_order(q, m as u64);
    let e = a as u64 * t;
    if e > 62 {
        return Err(budget_err(format!("splitting field GF({p}^{e})"), format!("{p}^{e}"), budget));
    }
    let field = Field::with_budget(p, e as u32, budget)?;
    let xi = field.pow(field.generator(), (field.order() - 1) / m as u64);
    Ok((field, xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(p: u64, f: &[u64]) -> bool {
        // no factor of degree <= deg/2: test against every monic polynomial of that degree
        let e = f.len() - 1;
        for d in 1..=e / 2 {
            for r in 0..p.pow(d as u32) {
                let mut g = lex_digits(r, p, d);
                g.push(1);
                if fp::rem(f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn small_moduli_are_lex_smallest() {
        assert_eq!(Field::new(2, 2).unwrap().modulus().unwrap(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus().unwrap(), &[1, 0, 1]);
        for (p, e) in [(2u64, 3usize), (2, 4), (3, 3), (5, 2), (2, 6), (7, 2)] {
            let f = Field::new(p, e as u32).unwrap();
            let m = f.modulus().unwrap().to_vec();
            assert!(brute_irreducible(p, &m));
            let rank_of = |c: &[u64]| c[..e].iter().fold(0u64, |acc, &d| acc * p + d);
            for r in 0..rank_of(&m) {
                let mut g = lex_digits(r, p, e);
                g.push(1);
                assert!(!brute_irreducible(p, &g), "{g:?} precedes modulus of GF({p}^{e})");
            }
        }
    }

    #[test]
    fn gf4_arithmetic() {
        let f = Field::new(2, 2).unwrap();
        let beta = 2;
        assert_eq!(f.mul(beta, beta), f.add(beta, 1));
        assert_eq!(f.generator(), beta);
        let sub = Field::new(2, 1).unwrap();
        assert_eq!(f.trace(&sub, beta).unwrap(), 1);
        assert_eq!(f.format(3), "(1,1)");
    }

    #[test]
    fn generator_is_smallest_primitive() {
        for (p, e) in [(2u64, 4u32), (3, 2), (5, 1), (3, 3), (2, 5)] {
            let f = Field::new(p, e).unwrap();
            let n = f.order() - 1;
            let order_of = |a: u64| (1..=n).find(|&k| f.pow(a, k) == 1).unwrap();
            let g = f.generator();
            assert_eq!(order_of(g), n);
            let rank = |a: u64| f.coords(a).iter().fold(0u64, |acc, &d| acc * p + d);
            for a in 1..f.order() {
                if rank(a) < rank(g) {
                    assert!(order_of(a) < n);
                }
            }
        }
    }

    #[test]
    fn table_and_generic_multiplication_agree() {
        let f = Field::new(3, 4).unwrap();
        for a in (0..81).step_by(7) {
            for b in 0..81 {
                assert_eq!(f.mul(a, b), f.0.ring.mul(a, b));
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for (p, es, et) in [(2u64, 2u32, 4u32), (2, 2, 6), (3, 2, 4), (2, 3, 6), (2, 1, 3)] {
            let s = Field::new(p, es).unwrap();
            let t = Field::new(p, et).unwrap();
            let emb = Embedding::new(&s, &t).unwrap();
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(emb.apply(s.mul(a, b)), t.mul(emb.apply(a), emb.apply(b)));
                    assert_eq!(emb.apply(s.add(a, b)), t.add(emb.apply(a), emb.apply(b)));
                }
                assert_eq!(emb.preimage(emb.apply(a)), Some(a));
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let (f, xi) = root_of_unity(2, 7).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(f.pow(xi, 7), 1);
        let (f, xi) = root_of_unity(2, 3).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(xi, 2);
        assert!(matches!(root_of_unity(2, 6), Err(Error::NotCoprime { .. })));
        let (f, xi) = root_of_unity_with_budget(2, 29, SPLITTING_FIELD_BUDGET).unwrap();
        assert_eq!(f.order(), 1 << 28);
        assert_eq!(f.pow(xi, 29), 1);
        assert_ne!(xi, 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(Field::new(4, 1), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(2, 30), Err(Error::BudgetExceeded { .. })));
        let f = Field::new(2, 2).unwrap();
        let g = Field::new(3, 1).unwrap();
        assert_eq!(f.elem(1).add(&g.elem(1)), Err(Error::MixedFields));
        assert_eq!(f.elem(0).inv(), Err(Error::DivisionByZero));
    }
}
