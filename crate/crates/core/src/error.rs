use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {0}: a permutation needs at least one point")]
    InvalidDegree(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image is not a bijection on 0..{degree}")]
    NotBijective { degree: usize },
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("cannot sample from an empty range")]
    EmptyRange,
    #[error("empty congruence system")]
    EmptySystem,
    #[error("inconsistent congruence system")]
    Inconsistent,
    #[error("target is not a power of the base permutation")]
    NotAPower,
    #[error("word needs at least one bit")]
    EmptyWord,
    #[error("message of {len} bytes does not fit a block of {capacity} bytes")]
    BlockOverflow { len: usize, capacity: usize },
    #[error("message {message} is outside [0, {order})")]
    MessageRange { message: u64, order: u64 },
    #[error("cycle profile sums to {sum}, more than degree {degree}")]
    ProfileTooLarge { sum: usize, degree: usize },
    #[error("malformed ciphertext: C is not a power of the unmasked base")]
    MalformedCiphertext,
    #[error("search guard: degree {degree} exceeds maximum {max}")]
    GuardExceeded { degree: usize, max: usize },
    #[error("no conjugator exists for the supplied pairs")]
    NotFound,
    #[error("transcript was not produced by the public key")]
    NotHonestTranscript,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Failures while decoding a serialized object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported version {0:#04x}")]
    BadVersion(u8),
    #[error("unknown object kind {0:#04x}")]
    UnknownKind(u8),
    #[error("truncated input: need {expected} bytes, have {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("{0} trailing bytes after object")]
    TrailingBytes(usize),
    #[error("degree 0 is not allowed")]
    ZeroDegree,
    #[error("embedded permutation is not a bijection")]
    NonBijectiveImage,
    #[error("degree {0} cannot be serialized (max 65535)")]
    DegreeTooLarge(usize),
}
