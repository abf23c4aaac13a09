//! Message-as-exponent encryption masked by conjugation.
//!
//! Keys: public `(X, A, D = A^a X A^-a)`, secret `a`.
//! Encryption of `m` with a fresh `r`: `C = A^r D^m A^-r`, `E = A^r X A^-r`.
//! Both `C` and `F = A^a E A^-a` are conjugates of `X^m` and `X` by
//! `A^(a+r)`, so `C = F^m` and the receiver recovers `m` with the
//! cycle-structure discrete log.

use crate::congruence::perm_dlog;
use crate::error::{Error, Result};
use crate::perm::{Cycle, Permutation};
use crate::rng::RandomSource;

/// Distinct primes summing to 58, giving `order(X) = 510510` at degree 64.
pub const DEFAULT_PROFILE: [usize; 7] = [2, 3, 5, 7, 11, 13, 17];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    x: Permutation,
    a: Permutation,
    d: Permutation,
}

impl PublicKey {
    pub fn new(x: Permutation, a: Permutation, d: Permutation) -> Result<Self> {
        for p in [&a, &d] {
            if p.degree() != x.degree() {
                return Err(Error::DegreeMismatch {
                    left: x.degree(),
                    right: p.degree(),
                });
            }
        }
        Ok(PublicKey { x, a, d })
    }

    /// The base element `X`.
    pub fn x(&self) -> &Permutation {
        &self.x
    }

    /// The conjugating element `A`.
    pub fn a(&self) -> &Permutation {
        &self.a
    }

    /// `D = A^a X A^-a`.
    pub fn d(&self) -> &Permutation {
        &self.d
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    /// Size of the message space, `order(X)`.
    pub fn message_order(&self) -> Result<u64> {
        self.x.order()
    }

    /// Bits per message block, `floor(log2(order(X)))`. Zero when `X` is the
    /// identity.
    pub fn block_bits(&self) -> Result<u32> {
        let order = self.message_order()?;
        Ok(63 - order.leading_zeros())
    }

    /// Checks `D = A^a X A^-a` against a candidate secret.
    pub fn matches(&self, secret: &SecretKey) -> bool {
        self.a
            .pow(secret.exponent)
            .conjugate(&self.x)
            .is_ok_and(|d| d == self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecretKey {
    exponent: u64,
}

impl SecretKey {
    pub fn new(exponent: u64) -> Self {
        SecretKey { exponent }
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    c: Permutation,
    e: Permutation,
}

impl Ciphertext {
    pub fn new(c: Permutation, e: Permutation) -> Result<Self> {
        if c.degree() != e.degree() {
            return Err(Error::DegreeMismatch {
                left: c.degree(),
                right: e.degree(),
            });
        }
        Ok(Ciphertext { c, e })
    }

    /// `C = A^r D^m A^-r`.
    pub fn c(&self) -> &Permutation {
        &self.c
    }

    /// `E = A^r X A^-r`.
    pub fn e(&self) -> &Permutation {
        &self.e
    }

    pub fn degree(&self) -> usize {
        self.c.degree()
    }
}

/// Disjoint cycles of the given lengths on randomly chosen points.
///
/// A uniform shuffle of `0..n` is cut into consecutive runs of the profile
/// lengths; points past the last run stay fixed.
pub fn base_with_profile(n: usize, profile: &[usize], rng: &mut RandomSource) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if profile.contains(&0) {
        return Err(Error::InvalidCycle("zero-length cycle in profile".into()));
    }
    let sum: usize = profile.iter().sum();
    if sum > n {
        return Err(Error::ProfileTooLarge { sum, degree: n });
    }
    let order = Permutation::random(n, rng)?.into_image();
    let mut cycles = Vec::with_capacity(profile.len());
    let mut start = 0;
    for &len in profile {
        cycles.push(Cycle::new(order[start..start + len].to_vec())?);
        start += len;
    }
    Permutation::from_cycles(n, &cycles)
}

pub fn keygen(rng: &mut RandomSource, n: usize, profile: &[usize]) -> Result<(PublicKey, SecretKey)> {
    let x = base_with_profile(n, profile, rng)?;
    let (a, order_a) = loop {
        let a = Permutation::random(n, rng)?;
        let order = a.order()?;
        if order > 1 {
            break (a, order);
        }
    };
    let exponent = 1 + rng.uniform_below(order_a - 1)?;
    let d = a.pow(exponent).conjugate(&x)?;
    Ok((PublicKey { x, a, d }, SecretKey { exponent }))
}

/// Encrypts `m ∈ [0, order(X))` with a fresh `r ∈ [0, order(A))`.
pub fn encrypt(key: &PublicKey, m: u64, rng: &mut RandomSource) -> Result<Ciphertext> {
    let order_a = key.a.order()?;
    // range check before consuming randomness
    check_message(key, m)?;
    let r = rng.uniform_below(order_a)?;
    encrypt_with_nonce(key, m, r)
}

/// Encryption with a caller-chosen `r`.
pub fn encrypt_with_nonce(key: &PublicKey, m: u64, r: u64) -> Result<Ciphertext> {
    check_message(key, m)?;
    let mask = key.a.pow(r);
    let c = mask.conjugate(&key.d.pow(m))?;
    let e = mask.conjugate(&key.x)?;
    Ok(Ciphertext { c, e })
}

fn check_message(key: &PublicKey, m: u64) -> Result<()> {
    let order = key.message_order()?;
    if m >= order {
        return Err(Error::MessageRange { message: m, order });
    }
    Ok(())
}

pub fn decrypt(secret: &SecretKey, key: &PublicKey, ct: &Ciphertext) -> Result<u64> {
    if ct.degree() != key.degree() {
        return Err(Error::DegreeMismatch {
            left: key.degree(),
            right: ct.degree(),
        });
    }
    let unmasked = key.a.pow(secret.exponent).conjugate(&ct.e)?;
    match perm_dlog(&unmasked, &ct.c) {
        Ok(m) => Ok(m.residue()),
        Err(Error::NotAPower) => Err(Error::MalformedCiphertext),
        Err(e) => Err(e),
    }
}
