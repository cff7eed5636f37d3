//! Small number-theory helpers. Everything here works on desk-scale integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Multiplicative order of `u` modulo `p`, or `None` when `u` is not a unit.
pub fn mult_order(u: u64, p: u64) -> Option<u64> {
    if gcd(u % p, p) != 1 {
        return None;
    }
    let mut x = u % p;
    let mut k = 1;
    while x != 1 % p {
        x = x * (u % p) % p;
        k += 1;
    }
    Some(k)
}

pub fn is_primitive_root(r: u64, p: u64) -> bool {
    is_prime(p) && mult_order(r, p) == Some(p - 1)
}

/// Smallest primitive root modulo the prime `p`, found by trial.
pub fn smallest_primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    (1..p).find(|&r| is_primitive_root(r, p))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
