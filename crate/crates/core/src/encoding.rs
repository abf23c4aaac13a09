//! Words over two generators, message packing, and the binary object format.
//!
//! Every object is a 7-byte header followed by a body whose length depends
//! only on the kind and the degree:
//!
//! ```text
//! "PGC" | version 0x01 | kind | degree (u16 BE) | body
//! ```
//!
//! Permutations are written as their image arrays, one byte per point for
//! degree ≤ 256 and two big-endian bytes per point above that.

use crate::error::{Error, ParseError, Result};
use crate::perm::{CellVector, Permutation};
use crate::{scheme1, scheme2};

pub const MAGIC: [u8; 3] = *b"PGC";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 7;

/// Evaluates the word selected by `bits`: bit 0 picks `g0`, bit 1 picks
/// `g1`, and earlier bits are applied first.
pub fn word_from_bits(bits: &[bool], g0: &Permutation, g1: &Permutation) -> Result<Permutation> {
    if g0.degree() != g1.degree() {
        return Err(Error::DegreeMismatch {
            left: g0.degree(),
            right: g1.degree(),
        });
    }
    if bits.is_empty() {
        return Err(Error::EmptyWord);
    }
    // image[i] tracks where the word so far sends i
    let (g0, g1) = (g0.image(), g1.image());
    let mut image: Vec<usize> = (0..g0.len()).collect();
    for &bit in bits {
        let g = if bit { g1 } else { g0 };
        for p in image.iter_mut() {
            *p = g[*p];
        }
    }
    Ok(Permutation::from_image_unchecked(image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Kind {
    Scheme1Public = 0x01,
    Scheme1Secret = 0x02,
    Scheme2Public = 0x03,
    Scheme2Secret = 0x04,
    Scheme1Ciphertext = 0x05,
    Scheme2Ciphertext = 0x06,
}

impl Kind {
    pub fn from_byte(b: u8) -> Option<Kind> {
        Some(match b {
            0x01 => Kind::Scheme1Public,
            0x02 => Kind::Scheme1Secret,
            0x03 => Kind::Scheme2Public,
            0x04 => Kind::Scheme2Secret,
            0x05 => Kind::Scheme1Ciphertext,
            0x06 => Kind::Scheme2Ciphertext,
            _ => return None,
        })
    }

    /// Body length in bytes for this kind at `degree`.
    pub fn body_len(self, degree: usize) -> usize {
        let perm = permutation_len(degree);
        match self {
            Kind::Scheme1Public => 3 * perm,
            Kind::Scheme1Secret => 8,
            Kind::Scheme2Public => 4 * perm,
            Kind::Scheme2Secret => perm,
            Kind::Scheme1Ciphertext => 2 * perm,
            Kind::Scheme2Ciphertext => perm + 4 * degree,
        }
    }

    pub fn encoded_len(self, degree: usize) -> usize {
        HEADER_LEN + self.body_len(degree)
    }
}

/// A decoded key or ciphertext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Scheme1Public(scheme1::PublicKey),
    /// The secret exponent carries no degree of its own; the header does.
    Scheme1Secret {
        degree: usize,
        key: scheme1::SecretKey,
    },
    Scheme2Public(scheme2::PublicKey),
    Scheme2Secret(scheme2::SecretKey),
    Scheme1Ciphertext(scheme1::Ciphertext),
    Scheme2Ciphertext(scheme2::Ciphertext),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Scheme1Public(_) => Kind::Scheme1Public,
            Object::Scheme1Secret { .. } => Kind::Scheme1Secret,
            Object::Scheme2Public(_) => Kind::Scheme2Public,
            Object::Scheme2Secret(_) => Kind::Scheme2Secret,
            Object::Scheme1Ciphertext(_) => Kind::Scheme1Ciphertext,
            Object::Scheme2Ciphertext(_) => Kind::Scheme2Ciphertext,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Object::Scheme1Public(k) => k.degree(),
            Object::Scheme1Secret { degree, .. } => *degree,
            Object::Scheme2Public(k) => k.degree(),
            Object::Scheme2Secret(k) => k.degree(),
            Object::Scheme1Ciphertext(c) => c.degree(),
            Object::Scheme2Ciphertext(c) => c.degree(),
        }
    }
}

fn permutation_len(degree: usize) -> usize {
    if degree <= 256 {
        degree
    } else {
        2 * degree
    }
}

/// Image array as bytes: `u8` per point up to degree 256, else `u16` BE.
pub fn serialize_permutation(p: &Permutation) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(permutation_len(p.degree()));
    write_permutation(&mut out, p)?;
    Ok(out)
}

fn write_permutation(out: &mut Vec<u8>, p: &Permutation) -> Result<()> {
    let n = p.degree();
    if n > u16::MAX as usize {
        return Err(ParseError::DegreeTooLarge(n).into());
    }
    if n <= 256 {
        out.extend(p.image().iter().map(|&i| i as u8));
    } else {
        for &i in p.image() {
            out.extend_from_slice(&(i as u16).to_be_bytes());
        }
    }
    Ok(())
}

pub fn serialize_object(obj: &Object) -> Result<Vec<u8>> {
    let degree = obj.degree();
    if degree == 0 || degree > u16::MAX as usize {
        return Err(ParseError::DegreeTooLarge(degree).into());
    }
    let kind = obj.kind();
    let mut out = Vec::with_capacity(kind.encoded_len(degree));
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(kind as u8);
    out.extend_from_slice(&(degree as u16).to_be_bytes());
    match obj {
        Object::Scheme1Public(k) => {
            for p in [k.x(), k.a(), k.d()] {
                write_permutation(&mut out, p)?;
            }
        }
        Object::Scheme1Secret { key, .. } => out.extend_from_slice(&key.exponent().to_be_bytes()),
        Object::Scheme2Public(k) => {
            for p in [k.a(), k.b(), k.c(), k.d()] {
                write_permutation(&mut out, p)?;
            }
        }
        Object::Scheme2Secret(k) => write_permutation(&mut out, k.x())?,
        Object::Scheme1Ciphertext(c) => {
            write_permutation(&mut out, c.c())?;
            write_permutation(&mut out, c.e())?;
        }
        Object::Scheme2Ciphertext(c) => {
            write_permutation(&mut out, c.t())?;
            for cell in c.masked().cells() {
                out.extend_from_slice(&cell.to_be_bytes());
            }
        }
    }
    debug_assert_eq!(out.len(), kind.encoded_len(degree));
    Ok(out)
}

/// Decodes exactly one object; trailing bytes are an error.
pub fn deserialize_object(bytes: &[u8]) -> Result<Object> {
    let (obj, used) = read_object(bytes)?;
    if used != bytes.len() {
        return Err(ParseError::TrailingBytes(bytes.len() - used).into());
    }
    Ok(obj)
}

/// Decodes the object at the front of `bytes`, returning it and the number
/// of bytes it occupied.
pub fn read_object(bytes: &[u8]) -> Result<(Object, usize)> {
    if bytes.len() < HEADER_LEN {
        return Err(ParseError::Truncated {
            expected: HEADER_LEN,
            actual: bytes.len(),
        }
        .into());
    }
    if bytes[..3] != MAGIC {
        return Err(ParseError::BadMagic.into());
    }
    if bytes[3] != VERSION {
        return Err(ParseError::BadVersion(bytes[3]).into());
    }
    let kind = Kind::from_byte(bytes[4]).ok_or(ParseError::UnknownKind(bytes[4]))?;
    let degree = u16::from_be_bytes([bytes[5], bytes[6]]) as usize;
    if degree == 0 {
        return Err(ParseError::ZeroDegree.into());
    }
    let total = kind.encoded_len(degree);
    if bytes.len() < total {
        return Err(ParseError::Truncated {
            expected: total,
            actual: bytes.len(),
        }
        .into());
    }
    let mut body = Reader {
        bytes: &bytes[HEADER_LEN..total],
        degree,
    };
    let obj = match kind {
        Kind::Scheme1Public => {
            let x = body.permutation()?;
            let a = body.permutation()?;
            let d = body.permutation()?;
            Object::Scheme1Public(scheme1::PublicKey::new(x, a, d)?)
        }
        Kind::Scheme1Secret => Object::Scheme1Secret {
            degree,
            key: scheme1::SecretKey::new(body.u64()),
        },
        Kind::Scheme2Public => {
            let a = body.permutation()?;
            let b = body.permutation()?;
            let c = body.permutation()?;
            let d = body.permutation()?;
            Object::Scheme2Public(scheme2::PublicKey::new(a, b, c, d)?)
        }
        Kind::Scheme2Secret => Object::Scheme2Secret(scheme2::SecretKey::new(body.permutation()?)),
        Kind::Scheme1Ciphertext => {
            let c = body.permutation()?;
            let e = body.permutation()?;
            Object::Scheme1Ciphertext(scheme1::Ciphertext::new(c, e)?)
        }
        Kind::Scheme2Ciphertext => {
            let t = body.permutation()?;
            let cells = (0..degree).map(|_| body.u32()).collect();
            Object::Scheme2Ciphertext(scheme2::Ciphertext::new(t, CellVector::new(cells))?)
        }
    };
    debug_assert!(body.bytes.is_empty());
    Ok((obj, total))
}

/// Cursor over a body already checked to have the right length.
struct Reader<'a> {
    bytes: &'a [u8],
    degree: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> &[u8] {
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        head
    }

    fn permutation(&mut self) -> Result<Permutation> {
        let n = self.degree;
        let image: Vec<usize> = if n <= 256 {
            self.take(n).iter().map(|&b| b as usize).collect()
        } else {
            self.take(2 * n)
                .chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]) as usize)
                .collect()
        };
        Permutation::new(image).map_err(|_| ParseError::NonBijectiveImage.into())
    }

    fn u64(&mut self) -> u64 {
        u64::from_be_bytes(self.take(8).try_into().expect("8 bytes"))
    }

    fn u32(&mut self) -> u32 {
        u32::from_be_bytes(self.take(4).try_into().expect("4 bytes"))
    }
}

/// Packs up to `4n` bytes into `n` big-endian 32-bit cells, zero-padding the
/// tail.
pub fn pack_message(bytes: &[u8], n: usize) -> Result<CellVector> {
    let capacity = 4 * n;
    if bytes.len() > capacity {
        return Err(Error::BlockOverflow {
            len: bytes.len(),
            capacity,
        });
    }
    let mut padded = bytes.to_vec();
    padded.resize(capacity, 0);
    let cells = padded
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    Ok(CellVector::new(cells))
}

/// All `4n` bytes of the block, padding included.
pub fn unpack_message(v: &CellVector) -> Vec<u8> {
    v.cells().iter().flat_map(|c| c.to_be_bytes()).collect()
}
