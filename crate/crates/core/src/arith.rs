//! Integer helpers shared across the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, a)` with `q = p^a`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut a) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    (r == 1).then_some((p, a))
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `q` modulo `m`; requires `gcd(q, m) = 1`. Returns 1 for `m = 1`.
pub fn mult_order(q: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut t = 1u64;
    let mut acc = q % m;
    while acc != 1 {
        acc = (acc as u128 * q as u128 % m as u128) as u64;
        t += 1;
    }
    t
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn orders_and_factors() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(2, 29), 28);
        assert_eq!(mult_order(5, 29), 14);
        assert_eq!(prime_factors((1 << 56) - 1), vec![3, 5, 17, 29, 43, 113, 127, 15790321]);
        assert_eq!(mod_pow(3, 13, 1000), 1594323 % 1000);
    }
}
