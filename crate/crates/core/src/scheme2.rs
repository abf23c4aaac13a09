//! Conjugated-word encryption of a cell vector.
//!
//! The secret `X` conjugates the public pair `(A, B)` into `(C, D)`. A fresh
//! 256-bit pattern `R` spells a word `T` over `(A, B)` and the matching word
//! `U` over `(C, D)`; `U` shuffles the message cells and `T` is sent along.
//! Since conjugation is a homomorphism, `X T X^-1 = U`, which lets the key
//! holder undo the shuffle.

use crate::encoding::word_from_bits;
use crate::error::{Error, Result};
use crate::perm::{CellVector, Permutation};
use crate::rng::RandomSource;

/// Length of the random pattern `R`.
pub const PATTERN_BITS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    a: Permutation,
    b: Permutation,
    c: Permutation,
    d: Permutation,
}

impl PublicKey {
    pub fn new(a: Permutation, b: Permutation, c: Permutation, d: Permutation) -> Result<Self> {
        for p in [&b, &c, &d] {
            if p.degree() != a.degree() {
                return Err(Error::DegreeMismatch {
                    left: a.degree(),
                    right: p.degree(),
                });
            }
        }
        Ok(PublicKey { a, b, c, d })
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn b(&self) -> &Permutation {
        &self.b
    }

    /// `C = X A X^-1`.
    pub fn c(&self) -> &Permutation {
        &self.c
    }

    /// `D = X B X^-1`.
    pub fn d(&self) -> &Permutation {
        &self.d
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    /// The two conjugacy instances `(A, C)` and `(B, D)` the key publishes.
    pub fn conjugacy_pairs(&self) -> [(Permutation, Permutation); 2] {
        [(self.a.clone(), self.c.clone()), (self.b.clone(), self.d.clone())]
    }

    pub fn matches(&self, secret: &SecretKey) -> bool {
        secret.x.conjugate(&self.a).is_ok_and(|c| c == self.c) && secret.x.conjugate(&self.b).is_ok_and(|d| d == self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey {
    x: Permutation,
}

impl SecretKey {
    pub fn new(x: Permutation) -> Self {
        SecretKey { x }
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    t: Permutation,
    masked: CellVector,
}

impl Ciphertext {
    pub fn new(t: Permutation, masked: CellVector) -> Result<Self> {
        if t.degree() != masked.len() {
            return Err(Error::DegreeMismatch {
                left: t.degree(),
                right: masked.len(),
            });
        }
        Ok(Ciphertext { t, masked })
    }

    /// The word over `(A, B)`.
    pub fn t(&self) -> &Permutation {
        &self.t
    }

    /// Message cells shuffled by `U`.
    pub fn masked(&self) -> &CellVector {
        &self.masked
    }

    pub fn degree(&self) -> usize {
        self.t.degree()
    }
}

fn non_identity(n: usize, rng: &mut RandomSource) -> Result<Permutation> {
    loop {
        let p = Permutation::random(n, rng)?;
        if !p.is_identity() {
            return Ok(p);
        }
    }
}

pub fn keygen(rng: &mut RandomSource, n: usize) -> Result<(PublicKey, SecretKey)> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    let x = non_identity(n, rng)?;
    let a = non_identity(n, rng)?;
    let b = non_identity(n, rng)?;
    let c = x.conjugate(&a)?;
    let d = x.conjugate(&b)?;
    Ok((PublicKey { a, b, c, d }, SecretKey { x }))
}

/// Encrypts with a fresh [`PATTERN_BITS`]-bit pattern drawn from `rng`.
pub fn encrypt(key: &PublicKey, msg: &CellVector, rng: &mut RandomSource) -> Result<Ciphertext> {
    check_len(key, msg)?;
    let pattern = rng.random_bits(PATTERN_BITS);
    encrypt_with_pattern(key, msg, &pattern)
}

/// Encryption with a caller-chosen pattern `R`.
pub fn encrypt_with_pattern(key: &PublicKey, msg: &CellVector, pattern: &[bool]) -> Result<Ciphertext> {
    check_len(key, msg)?;
    let t = word_from_bits(pattern, &key.a, &key.b)?;
    let u = word_from_bits(pattern, &key.c, &key.d)?;
    let masked = u.act_on(msg)?;
    Ok(Ciphertext { t, masked })
}

fn check_len(key: &PublicKey, msg: &CellVector) -> Result<()> {
    if msg.len() != key.degree() {
        return Err(Error::DegreeMismatch {
            left: key.degree(),
            right: msg.len(),
        });
    }
    Ok(())
}

pub fn decrypt(secret: &SecretKey, ct: &Ciphertext) -> Result<CellVector> {
    let u = secret.x.conjugate(&ct.t)?;
    u.inverse().act_on(&ct.masked)
}
