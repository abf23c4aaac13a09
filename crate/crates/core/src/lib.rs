//! Public-key encryption over the symmetric group `S_n`, and the attacks
//! that break it.
//!
//! Two schemes are provided:
//!
//! * [`scheme1`] hides a message as an exponent, `C = A^r D^m A^-r`, and
//!   decrypts with the cycle-structure discrete log in [`congruence`].
//! * [`scheme2`] shuffles a vector of 32-bit cells by a word `U` over
//!   conjugated generators, sending the matching word `T` over the public
//!   generators.
//!
//! [`cryptanalysis`] recovers scheme 1 plaintexts from public data, solves
//! scheme 2 conjugacy instances by exhaustive search at small degree, and
//! reports the cell multiset every scheme 2 ciphertext leaks.
//!
//! Modular arithmetic is generic over the unsigned machine integers; the
//! aliases below fix the widths used by the schemes.

pub mod arith;
pub mod congruence;
pub mod cryptanalysis;
pub mod encoding;
pub mod error;
pub mod perm;
pub mod rng;
pub mod scheme1;
pub mod scheme2;

pub use congruence::{crt_combine, perm_dlog, perm_dlog_in, Congruence};
pub use encoding::{deserialize_object, serialize_object, word_from_bits, Kind, Object};
pub use error::{Error, ParseError, Result};
pub use perm::{CellVector, Cycle, CycleDecomposition, Permutation};
pub use rng::RandomSource;

/// Congruences in the width used for permutation orders.
pub type Congruence64 = Congruence<u64>;
/// Wide congruences, for orders past `u64` at large degree.
pub type Congruence128 = Congruence<u128>;

/// Degree used throughout unless configured otherwise.
pub const DEFAULT_DEGREE: usize = 64;
