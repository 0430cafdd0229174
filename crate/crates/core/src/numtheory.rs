//! Small integer helpers: primality, prime powers, divisors and the Möbius function.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^s` into `(p, s)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut s = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The Möbius function: 1 for n = 1, 0 when a square divides n, and
/// (-1)^l when n is a product of l distinct primes.
pub fn moebius(n: u64) -> Result<i8> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("moebius({n}) is undefined")));
    }
    let mut m = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// `base^exp` as i128, failing on overflow.
pub fn checked_pow(base: u64, exp: u64) -> Result<i128> {
    let exp = u32::try_from(exp).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
    (base as i128)
        .checked_pow(exp)
        .ok_or_else(|| Error::InvalidArgument(format!("{base}^{exp} overflows")))
}
