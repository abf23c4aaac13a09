//! File I/O: hex armor and the ciphertext envelope.
//!
//! A ciphertext file is an 8-byte big-endian plaintext length followed by
//! serialized ciphertext records, one per block.

use std::path::Path;

use permcrypt::encoding::{read_object, serialize_object, Object};

use crate::error::{CliError, CliResult};

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Reads a file, decoding it as hex when its first byte is a hex digit.
///
/// Raw objects begin with `P` and raw envelopes with a zero length byte, so
/// neither is mistaken for armor.
pub fn read_armored(path: &Path) -> CliResult<Vec<u8>> {
    let raw = read_bytes(path)?;
    dearmor(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn dearmor(raw: &[u8]) -> Result<Vec<u8>, String> {
    match raw.first() {
        Some(b) if b.is_ascii_hexdigit() => {
            let text = std::str::from_utf8(raw).map_err(|_| "armor is not ASCII".to_string())?;
            hex::decode(text.trim()).map_err(|e| format!("bad hex armor: {e}"))
        }
        _ => Ok(raw.to_vec()),
    }
}

pub fn write_bytes(path: &Path, bytes: &[u8], armor: bool) -> CliResult<()> {
    let result = if armor {
        std::fs::write(path, format!("{}\n", hex::encode(bytes)))
    } else {
        std::fs::write(path, bytes)
    };
    result.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_object_file(path: &Path) -> CliResult<Object> {
    let bytes = read_armored(path)?;
    permcrypt::deserialize_object(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_object_file(path: &Path, obj: &Object, armor: bool) -> CliResult<()> {
    write_bytes(path, &serialize_object(obj)?, armor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub plaintext_len: u64,
    pub records: Vec<Object>,
}

impl Envelope {
    pub fn to_bytes(&self) -> CliResult<Vec<u8>> {
        let mut out = self.plaintext_len.to_be_bytes().to_vec();
        for r in &self.records {
            out.extend(serialize_object(r)?);
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Envelope, String> {
        if bytes.len() < 8 {
            return Err(format!("envelope needs 8 length bytes, have {}", bytes.len()));
        }
        let (len, mut rest) = bytes.split_at(8);
        let plaintext_len = u64::from_be_bytes(len.try_into().expect("8 bytes"));
        let mut records = Vec::new();
        while !rest.is_empty() {
            let (obj, used) = read_object(rest).map_err(|e| format!("record {}: {e}", records.len()))?;
            records.push(obj);
            rest = &rest[used..];
        }
        Ok(Envelope { plaintext_len, records })
    }
}

pub fn read_envelope(path: &Path) -> CliResult<Envelope> {
    let bytes = read_armored(path)?;
    Envelope::from_bytes(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Splits `bytes` into `width`-bit big-endian blocks, zero-padding the last.
pub fn to_bit_blocks(bytes: &[u8], width: u32) -> Vec<u64> {
    assert!((1..=63).contains(&width));
    let total_bits = bytes.len() * 8;
    let blocks = total_bits.div_ceil(width as usize);
    let bit = |i: usize| -> u64 {
        if i < total_bits {
            ((bytes[i / 8] >> (7 - i % 8)) & 1) as u64
        } else {
            0
        }
    };
    (0..blocks)
        .map(|b| (0..width as usize).fold(0u64, |acc, j| (acc << 1) | bit(b * width as usize + j)))
        .collect()
}

/// Inverse of [`to_bit_blocks`], keeping the first `len` bytes.
pub fn from_bit_blocks(blocks: &[u64], width: u32, len: usize) -> Option<Vec<u8>> {
    if blocks.len() * (width as usize) < len * 8 || blocks.iter().any(|&b| b >> width != 0) {
        return None;
    }
    let mut out = vec![0u8; len];
    for i in 0..len * 8 {
        let (b, j) = (i / width as usize, i % width as usize);
        let bit = (blocks[b] >> (width as usize - 1 - j)) & 1;
        out[i / 8] |= (bit as u8) << (7 - i % 8);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_blocks_roundtrip() {
        let data: Vec<u8> = (0..=40).map(|i| (i * 37 + 11) as u8).collect();
        for width in [1, 7, 8, 18, 33, 63] {
            let blocks = to_bit_blocks(&data, width);
            assert_eq!(blocks.len(), (data.len() * 8).div_ceil(width as usize));
            assert!(blocks.iter().all(|&b| b >> width == 0));
            assert_eq!(from_bit_blocks(&blocks, width, data.len()).unwrap(), data);
        }
        assert!(to_bit_blocks(&[], 18).is_empty());
    }

    #[test]
    fn eighteen_bit_layout() {
        // 0xFF 0xFF 0xC0 -> first 18 bits all ones
        let blocks = to_bit_blocks(&[0xFF, 0xFF, 0xC0], 18);
        assert_eq!(blocks, vec![(1 << 18) - 1, 0]);
        assert_eq!(from_bit_blocks(&[1 << 18], 18, 1), None);
    }

    #[test]
    fn armor_detection() {
        assert_eq!(dearmor(b"504743\n").unwrap(), b"PGC");
        assert_eq!(dearmor(b"PGC").unwrap(), b"PGC");
        assert_eq!(dearmor(&[0, 0, 1]).unwrap(), [0, 0, 1]);
        assert!(dearmor(b"5zz").is_err());
    }

    #[test]
    fn envelope_rejects_short_and_garbage() {
        assert!(Envelope::from_bytes(&[0; 7]).is_err());
        let empty = Envelope::from_bytes(&[0; 8]).unwrap();
        assert_eq!(empty.plaintext_len, 0);
        assert!(empty.records.is_empty());
        let mut bad = vec![0; 8];
        bad.extend_from_slice(b"XYZ\x01\x05\x00\x01");
        assert!(Envelope::from_bytes(&bad).is_err());
    }
}
