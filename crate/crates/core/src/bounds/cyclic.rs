//! Distance bounds for cyclic codes of length `m` from a set of known zeros.
//!
//! Zeros are exponents `k` of `ξ^k`, `ξ` a primitive m-th root of unity. Every bound
//! here holds for any cyclic code whose zero set contains the given set.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::gcd;
use crate::error::{budget_err, Error, Result};

/// Largest length the zero-set bitmask supports.
pub const MAX_ZERO_SET_LEN: usize = 64;
/// Largest length for the exhaustive independent-set search.
pub const SHIFT_MAX_LEN: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroSet {
    m: usize,
    mask: u64,
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

impl ZeroSet {
    /// Exponents are reduced mod `m`.
    pub fn new(m: usize, exponents: impl IntoIterator<Item = usize>) -> Result<ZeroSet> {
        if m == 0 || m > MAX_ZERO_SET_LEN {
            return Err(Error::InvalidArgument(format!("zero sets need 1 <= m <= {MAX_ZERO_SET_LEN}, got {m}")));
        }
        let mask = exponents.into_iter().fold(0u64, |acc, k| acc | 1 << (k % m));
        Ok(ZeroSet { m, mask })
    }

    pub fn from_mask(m: usize, mask: u64) -> Result<ZeroSet> {
        let z = ZeroSet::new(m, [])?;
        Ok(ZeroSet { mask: mask & full_mask(m), ..z })
    }

    /// The set `Ω` of all exponents.
    pub fn full(m: usize) -> Result<ZeroSet> {
        ZeroSet::from_mask(m, u64::MAX)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, k: usize) -> bool {
        self.mask >> (k % self.m) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.m)
    }

    pub fn is_subset(&self, other: &ZeroSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        (0..self.m).filter(|&k| self.contains(k)).collect()
    }

    /// `{k + r}`, i.e. the set multiplied by `ξ^r`.
    pub fn rotate(&self, r: usize) -> ZeroSet {
        ZeroSet { mask: rotate(self.mask, r % self.m, self.m), ..*self }
    }
}

impl fmt::Display for ZeroSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ZeroSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroSet(m={}, {self})", self.m)
    }
}

fn rotate(mask: u64, r: usize, m: usize) -> u64 {
    if r == 0 {
        return mask;
    }
    ((mask << r) | (mask >> (m - r))) & full_mask(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CyclicMethod {
    Bch,
    Ht,
    Roos,
    Shift,
}

impl CyclicMethod {
    pub const ALL: [CyclicMethod; 4] = [CyclicMethod::Bch, CyclicMethod::Ht, CyclicMethod::Roos, CyclicMethod::Shift];

    pub fn name(self) -> &'static str {
        match self {
            CyclicMethod::Bch => "bch",
            CyclicMethod::Ht => "ht",
            CyclicMethod::Roos => "roos",
            CyclicMethod::Shift => "shift",
        }
    }
}

/// A bound value with the pattern that certifies it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicBound {
    pub value: u64,
    pub witness: Value,
}

pub fn cyclic_bound(zeros: ZeroSet, method: CyclicMethod) -> Result<CyclicBound> {
    if zeros.is_empty() || zeros.is_full() {
        return Err(Error::InvalidArgument(format!("zero set {zeros} must be nonempty and proper")));
    }
    Ok(match method {
        CyclicMethod::Bch => bch(zeros),
        CyclicMethod::Ht => ht(zeros),
        CyclicMethod::Roos => roos(zeros),
        CyclicMethod::Shift => shift(zeros)?,
    })
}

fn units(m: usize) -> Vec<usize> {
    (1..m).filter(|&n| gcd(n as u64, m as u64) == 1).collect()
}

/// `out[a]` = length of the longest progression `a, a+n, a+2n, ...` inside `set`,
/// capped at the length of the progression's cycle.
fn runs(set: u64, m: usize, n: usize) -> Vec<usize> {
    let cycle = m / gcd(n as u64, m as u64) as usize;
    (0..m).map(|a| (0..cycle).take_while(|&z| set >> ((a + z * n) % m) & 1 == 1).count()).collect()
}

fn bch(p: ZeroSet) -> CyclicBound {
    let m = p.m;
    let mut best = (0, 1, 0);
    for n in units(m) {
        for (a, &r) in runs(p.mask, m, n).iter().enumerate() {
            if r > best.0 {
                best = (r, n, a);
            }
        }
    }
    let (len, n, a) = best;
    CyclicBound { value: len as u64 + 1, witness: json!({"stride": n, "start": a, "run": len}) }
}

/// Hartmann-Tzeng: `{a + z n1 + y n2 : z < δ-1, y <= s}` with `gcd(n1, m) = 1` and
/// `gcd(n2, m) < δ` gives `δ + s`.
fn ht(p: ZeroSet) -> CyclicBound {
    let m = p.m;
    let mut best = (0usize, json!(null));
    for n1 in units(m) {
        let r = runs(p.mask, m, n1);
        let longest = r.iter().copied().max().unwrap_or(0);
        for len in 1..=longest {
            let starts = r.iter().enumerate().filter(|(_, &x)| x >= len).fold(0u64, |acc, (a, _)| acc | 1 << a);
            for n2 in 1..m {
                if gcd(n2 as u64, m as u64) as usize > len {
                    continue;
                }
                for (a, &r2) in runs(starts, m, n2).iter().enumerate() {
                    if r2 > 0 && len + r2 > best.0 {
                        best = (len + r2, json!({"n1": n1, "n2": n2, "start": a, "delta": len + 1, "s": r2 - 1}));
                    }
                }
            }
        }
    }
    CyclicBound { value: best.0 as u64, witness: best.1 }
}

/// Best `(start, window, ones)` over cyclic windows of a 0/1 sequence of length at most
/// its period containing at most `max_zeros` zeros; windows begin and end on ones.
fn best_window(seq: &[bool], max_zeros: usize) -> Option<(usize, usize, usize)> {
    let m = seq.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for start in (0..m).filter(|&i| seq[i]) {
        let mut zeros = 0;
        let mut ones = 0;
        for w in 0..m {
            if seq[(start + w) % m] {
                ones += 1;
                if best.is_none_or(|b| ones > b.2) {
                    best = Some((start, w + 1, ones));
                }
            } else {
                zeros += 1;
                if zeros > max_zeros {
                    break;
                }
            }
        }
    }
    best
}

/// Roos with `N` consecutive: `M + N ⊆ P` and a consecutive `M' ⊇ M` with
/// `|M'| <= |M| + |N| - 1` give `|M| + |N|`.
fn roos(p: ZeroSet) -> CyclicBound {
    let m = p.m;
    let unit_strides = units(m);
    let mut best = (0usize, json!(null));
    for &n in &unit_strides {
        let r = runs(p.mask, m, n);
        let longest = r.iter().copied().max().unwrap_or(0);
        for len in 1..=longest {
            // any M inside `starts` may be enlarged by at most len - 1 gaps
            let starts: Vec<bool> = r.iter().map(|&x| x >= len).collect();
            for &n2 in &unit_strides {
                let seq: Vec<bool> = (0..m).map(|y| starts[y * n2 % m]).collect();
                if let Some((s, w, ones)) = best_window(&seq, len - 1) {
                    if ones + len > best.0 {
                        let members: Vec<usize> = (0..w).map(|z| (s + z) * n2 % m).filter(|&a| starts[a]).collect();
                        best = (ones + len, json!({"n_stride": n, "n_size": len, "m_stride": n2, "m_window": w, "m": members}));
                    }
                }
            }
        }
    }
    CyclicBound { value: best.0 as u64, witness: best.1 }
}

/// Roos with a prescribed `M`: searches consecutive `N` and a translate of `M` with
/// `M + N ⊆ P`. `None` when no admissible `N` exists.
pub fn roos_with(p: ZeroSet, multiplier: ZeroSet) -> Result<Option<CyclicBound>> {
    if p.is_empty() || p.is_full() || multiplier.is_empty() || multiplier.m != p.m {
        return Err(Error::InvalidArgument("roos_with needs a proper nonempty P and a nonempty M of the same length".into()));
    }
    let m = p.m;
    let elems = multiplier.to_vec();
    let strides = units(m);
    // smallest consecutive set containing M
    let hull = strides
        .iter()
        .map(|&n2| {
            let seq: Vec<bool> = (0..m).map(|y| multiplier.contains(y * n2)).collect();
            // the shortest window covering all ones is m minus the longest cyclic gap
            let mut gap = 0;
            let mut longest_gap = 0;
            for i in 0..2 * m {
                if seq[i % m] {
                    gap = 0;
                } else {
                    gap += 1;
                    longest_gap = longest_gap.max(gap.min(m));
                }
            }
            m - longest_gap
        })
        .min()
        .unwrap_or(1);
    let need = hull + 1 - elems.len();
    let mut best: Option<CyclicBound> = None;
    for &n in &strides {
        let r = runs(p.mask, m, n);
        for s in 0..m {
            let len = elems.iter().map(|&a| r[(a + s) % m]).min().unwrap_or(0);
            if len >= need.max(1) && best.as_ref().is_none_or(|b| (elems.len() + len) as u64 > b.value) {
                best = Some(CyclicBound {
                    value: (elems.len() + len) as u64,
                    witness: json!({"n_stride": n, "n_start": s, "n_size": len, "hull": hull}),
                });
            }
        }
    }
    Ok(best)
}

/// Largest set independent with respect to `s`, by exhaustive search over rotation
/// classes of the recursive construction. Returns a witness mask.
fn max_independent(s: u64, m: usize) -> u64 {
    let canon = |mask: u64| (0..m).map(|r| rotate(mask, r, m)).min().unwrap_or(0);
    let outside = full_mask(m) & !s;
    // an independent set is a rotated subset of `s` plus one outside point
    let target = s.count_ones() + 1;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack = vec![0u64];
    seen.insert(0);
    let mut best = 0u64;
    'search: while let Some(a) = stack.pop() {
        for r in 0..m {
            let ra = rotate(a, r, m);
            if ra & outside != 0 {
                continue;
            }
            for b in (0..m).filter(|&b| outside >> b & 1 == 1) {
                let next = canon(ra | 1 << b);
                if seen.insert(next) {
                    if next.count_ones() > best.count_ones() {
                        best = next;
                        if best.count_ones() == target {
                            break 'search;
                        }
                    }
                    stack.push(next);
                }
            }
            if a == 0 {
                break;
            }
        }
    }
    best
}

struct ShiftTable {
    /// Size of the largest independent set for each zero set.
    raw: Vec<u8>,
    /// Minimum of `raw` over proper supersets-or-equal.
    min: Vec<u8>,
}

fn shift_table(m: usize) -> Arc<ShiftTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ShiftTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&m) {
        return t.clone();
    }
    let size = 1usize << m;
    let full = full_mask(m) as usize;
    let canon = |mask: usize| (0..m).map(|r| rotate(mask as u64, r, m)).min().unwrap_or(0) as usize;
    let reps: Vec<usize> = (0..size).filter(|&s| s != full && canon(s) == s).collect();
    let values: HashMap<usize, u8> = reps.par_iter().map(|&s| (s, max_independent(s as u64, m).count_ones() as u8)).collect();
    let raw: Vec<u8> = (0..size).map(|s| if s == full { u8::MAX } else { values[&canon(s)] }).collect();
    let mut min = raw.clone();
    for bit in 0..m {
        for s in 0..size {
            if s >> bit & 1 == 0 {
                min[s] = min[s].min(min[s | 1 << bit]);
            }
        }
    }
    let t = Arc::new(ShiftTable { raw, min });
    cache.lock().unwrap().insert(m, t.clone());
    t
}

/// Shift bound: a codeword vanishing on `P` vanishes on some `S ⊇ P` with `S ≠ Ω`, and its
/// weight is at least the size of any set independent with respect to `S`. The bound is
/// the minimum over such `S` of the largest independent set.
fn shift(p: ZeroSet) -> Result<CyclicBound> {
    let m = p.m;
    if m > SHIFT_MAX_LEN {
        return Err(budget_err("independent-set search", format!("length {m}"), SHIFT_MAX_LEN as u64));
    }
    let table = shift_table(m);
    let value = table.min[p.mask as usize];
    let full = full_mask(m);
    let free = full & !p.mask;
    // first superset in mask order attaining the minimum
    let mut sub = 0u64;
    let tight = loop {
        let s = p.mask | sub;
        if s != full && table.raw[s as usize] == value {
            break s;
        }
        sub = sub.wrapping_sub(free) & free;
    };
    let witness = max_independent(tight, m);
    let list = |mask: u64| (0..m).filter(|&k| mask >> k & 1 == 1).collect::<Vec<usize>>();
    Ok(CyclicBound { value: value as u64, witness: json!({ "tight_zero_set": list(tight), "independent_set": list(witness) }) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mult_order;

    fn zs(m: usize, e: &[usize]) -> ZeroSet {
        ZeroSet::new(m, e.iter().copied()).unwrap()
    }

    fn value(p: ZeroSet, method: CyclicMethod) -> u64 {
        cyclic_bound(p, method).unwrap().value
    }

    #[test]
    fn hamming_zeros() {
        let p = zs(7, &[1, 2, 4]);
        assert_eq!(value(p, CyclicMethod::Bch), 3);
        assert_eq!(value(p, CyclicMethod::Ht), 3);
        assert_eq!(value(p, CyclicMethod::Roos), 3);
        assert_eq!(value(p, CyclicMethod::Shift), 3);
        assert_eq!(value(zs(7, &[0, 1, 2, 4]), CyclicMethod::Shift), 4);
    }

    #[test]
    fn shift_accounts_for_extra_zeros() {
        // 1 - x^4 vanishes on {0,2,4,6}; {0,2,4,6} is independent with respect to {2,4,6}
        // alone, so the bound must look at zero sets containing P
        let p = zs(8, &[2, 4, 6]);
        assert_eq!(max_independent(p.mask(), 8).count_ones(), 4);
        assert_eq!(value(p, CyclicMethod::Shift), 2);
    }

    #[test]
    fn single_zero() {
        assert_eq!(value(zs(5, &[1]), CyclicMethod::Bch), 2);
        assert_eq!(value(zs(5, &[1]), CyclicMethod::Shift), 2);
    }

    #[test]
    fn rejects_degenerate_sets() {
        assert!(cyclic_bound(zs(5, &[]), CyclicMethod::Bch).is_err());
        assert!(cyclic_bound(ZeroSet::full(5).unwrap(), CyclicMethod::Bch).is_err());
        assert!(ZeroSet::new(65, [0]).is_err());
    }

    #[test]
    fn roos_window_with_gap() {
        // M = {0, 2} is consecutive with stride 2, so N = {0, 1} suffices
        let p = zs(15, &[0, 1, 2, 3]);
        let roos = cyclic_bound(p, CyclicMethod::Roos).unwrap();
        assert_eq!(roos.value, 5);
        let with = roos_with(p, zs(15, &[0, 2])).unwrap().unwrap();
        assert_eq!(with.value, 4);
    }

    #[test]
    fn roos_with_unit_multiplier_is_bch() {
        for mask in 1u64..(1 << 9) - 1 {
            let p = ZeroSet::from_mask(9, mask).unwrap();
            let r = roos_with(p, zs(9, &[0])).unwrap().unwrap();
            assert_eq!(r.value, value(p, CyclicMethod::Bch));
        }
    }

    fn cyclotomic_closure(m: usize, mask: u64) -> u64 {
        let o = mult_order(2, m as u64);
        (0..m).filter(|k| mask >> k & 1 == 1).fold(0u64, |acc, k| (0..o).fold(acc, |acc, j| acc | 1 << (k * (1usize << j) % m)))
    }

    /// Weight of the lightest nonzero binary word vanishing at `ξ^k` for all `k` in the set,
    /// found by testing every binary word through its support.
    fn exact_cyclic_distance(m: usize, mask: u64) -> Option<u32> {
        use crate::galois::root_of_unity;
        let (big, xi) = root_of_unity(2, m).unwrap();
        let zeros: Vec<u64> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| big.pow(xi, k as u64)).collect();
        (1u64..1 << m)
            .filter(|w| {
                zeros
                    .iter()
                    .all(|&z| (0..m).filter(|i| w >> i & 1 == 1).fold(0, |acc, i| big.add(acc, big.pow(z, i as u64))) == 0)
            })
            .map(|w| w.count_ones())
            .min()
    }

    #[test]
    fn bounds_never_exceed_true_distance_m7() {
        let m = 7;
        for mask in 1u64..(1 << m) - 1 {
            let closed = cyclotomic_closure(m, mask);
            if closed == (1 << m) - 1 {
                continue;
            }
            let p = ZeroSet::from_mask(m, mask).unwrap();
            let d = exact_cyclic_distance(m, closed).unwrap() as u64;
            for method in CyclicMethod::ALL {
                assert!(value(p, method) <= d, "{method:?} on {p}");
            }
        }
    }

    #[test]
    fn hierarchy_m9() {
        for mask in 1u64..(1 << 9) - 1 {
            let p = ZeroSet::from_mask(9, mask).unwrap();
            let (b, h, r, s) = (
                value(p, CyclicMethod::Bch),
                value(p, CyclicMethod::Ht),
                value(p, CyclicMethod::Roos),
                value(p, CyclicMethod::Shift),
            );
            assert!(b <= h && h <= s && b <= r, "{p}: {b} {h} {r} {s}");
        }
    }

    #[test]
    fn shift_needs_small_length() {
        let p = zs(17, &[1]);
        assert!(matches!(cyclic_bound(p, CyclicMethod::Shift), Err(Error::BudgetExceeded { .. })));
    }
}
