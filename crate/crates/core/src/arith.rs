//! Overflow-aware modular arithmetic, generic over the unsigned machine
//! integers (`u8` through `u128`).

use num_traits::{PrimInt, Unsigned};

use crate::error::{Error, Result};

/// Unsigned integer usable as a modulus.
pub trait Modulus: PrimInt + Unsigned + std::fmt::Debug + std::fmt::Display {}

impl<T> Modulus for T where T: PrimInt + Unsigned + std::fmt::Debug + std::fmt::Display {}

pub fn gcd<T: Modulus>(mut a: T, mut b: T) -> T {
    while b != T::zero() {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `lcm(a, b)`, or an overflow error if it does not fit in `T`.
pub fn checked_lcm<T: Modulus>(a: T, b: T) -> Result<T> {
    if a.is_zero() || b.is_zero() {
        return Ok(T::zero());
    }
    (a / gcd(a, b)).checked_mul(&b).ok_or(Error::Overflow("lcm"))
}

/// `(a + b) mod m` for `a, b < m`, without intermediate overflow.
pub fn add_mod<T: Modulus>(a: T, b: T, m: T) -> T {
    let gap = m - b;
    if a >= gap {
        a - gap
    } else {
        a + b
    }
}

/// `(a * b) mod m` by double-and-add; never overflows for any `m`.
pub fn mul_mod<T: Modulus>(a: T, b: T, m: T) -> T {
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = T::zero();
    while !b.is_zero() {
        if b & T::one() == T::one() {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b = b >> 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
///
/// Extended Euclid with the Bezout coefficient tracked modulo `m`, so no
/// signed type is needed.
pub fn inv_mod<T: Modulus>(a: T, m: T) -> Option<T> {
    if m == T::one() {
        return Some(T::zero());
    }
    let (mut old_r, mut r) = (a % m, m);
    let (mut old_s, mut s) = (T::one(), T::zero());
    while !r.is_zero() {
        let q = old_r / r;
        let next_r = old_r - q * r;
        old_r = r;
        r = next_r;
        // next_s = old_s - q * s (mod m)
        let qs = mul_mod(q, s, m);
        let next_s = add_mod(old_s, m - qs, m);
        old_s = s;
        s = next_s;
    }
    // old_r = gcd(a, m); old_s * a = old_r (mod m) after the final swap
    if old_r != T::one() {
        return None;
    }
    Some(old_s % m)
}
