//! Attacks on both schemes.
//!
//! * Scheme 1 falls to a walk along the cyclic subgroup `<A>`: the ephemeral
//!   `E = A^r X A^-r` is found by iterated conjugation, after which the
//!   message is a plain discrete log.
//! * Scheme 2 is attacked by exhaustive conjugacy search, feasible only at
//!   toy degrees.
//! * Scheme 2 ciphertexts are a transposition of the plaintext cells, so
//!   their multiset is public.
//!
//! Search kernels can be split across workers over disjoint index ranges;
//! the result is always the smallest matching index, whatever the split.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::congruence::perm_dlog;
use crate::error::{Error, Result};
use crate::perm::{CellVector, Permutation};
use crate::{scheme1, scheme2};

/// Largest degree [`brute_force_conjugator`] will enumerate (`9! = 362880`).
pub const MAX_BRUTE_FORCE_DEGREE: usize = 9;

const NOT_FOUND: u64 = u64::MAX;

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Splits `[0, total)` into at most `workers` contiguous ranges.
fn partition(total: u64, workers: usize) -> Vec<(u64, u64)> {
    let workers = (workers.max(1) as u64).min(total.max(1));
    let chunk = total.div_ceil(workers);
    (0..workers)
        .map(|w| (w * chunk, ((w + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

/// Runs `scan` on each range and returns the smallest hit.
///
/// `scan(lo, hi, best)` should return its first hit in `[lo, hi)` and may
/// give up once `best` drops below its position.
fn min_over_ranges<F>(total: u64, workers: usize, scan: F) -> Option<u64>
where
    F: Fn(u64, u64, &AtomicU64) -> Option<u64> + Sync,
{
    let best = AtomicU64::new(NOT_FOUND);
    let ranges = partition(total, workers);
    if ranges.len() <= 1 {
        for (lo, hi) in ranges {
            if let Some(hit) = scan(lo, hi, &best) {
                best.fetch_min(hit, Ordering::Relaxed);
            }
        }
    } else {
        std::thread::scope(|s| {
            for &(lo, hi) in &ranges {
                let (scan, best) = (&scan, &best);
                s.spawn(move || {
                    if let Some(hit) = scan(lo, hi, best) {
                        best.fetch_min(hit, Ordering::Relaxed);
                    }
                });
            }
        });
    }
    match best.into_inner() {
        NOT_FOUND => None,
        hit => Some(hit),
    }
}

/// Recovers the scheme 1 plaintext from public data alone.
pub fn attack_scheme1(key: &scheme1::PublicKey, ct: &scheme1::Ciphertext) -> Result<u64> {
    attack_scheme1_with_workers(key, ct, 1)
}

/// [`attack_scheme1`] with the nonce search spread over all available cores.
pub fn attack_scheme1_parallel(key: &scheme1::PublicKey, ct: &scheme1::Ciphertext) -> Result<u64> {
    attack_scheme1_with_workers(key, ct, default_workers())
}

pub fn attack_scheme1_with_workers(key: &scheme1::PublicKey, ct: &scheme1::Ciphertext, workers: usize) -> Result<u64> {
    let r = recover_nonce(key, ct, workers)?;
    // A^-r C A^r = D^m
    let d_pow_m = key.a().pow(r).inverse().conjugate(ct.c())?;
    match perm_dlog(key.d(), &d_pow_m) {
        Ok(m) => Ok(m.residue()),
        Err(Error::NotAPower) => Err(Error::NotHonestTranscript),
        Err(e) => Err(e),
    }
}

/// Smallest `r` with `A^r X A^-r = E`.
pub fn recover_nonce(key: &scheme1::PublicKey, ct: &scheme1::Ciphertext, workers: usize) -> Result<u64> {
    if ct.degree() != key.degree() {
        return Err(Error::DegreeMismatch {
            left: key.degree(),
            right: ct.degree(),
        });
    }
    let order_a = key.a().order()?;
    let a = key.a().image();
    let target = ct.e().image();

    let scan = |lo: u64, hi: u64, best: &AtomicU64| {
        let mut t = key
            .a()
            .pow(lo)
            .conjugate(key.x())
            .expect("degrees checked")
            .into_image();
        let mut next = vec![0; t.len()];
        for r in lo..hi {
            if t == target {
                return Some(r);
            }
            if r & 0xFFF == 0 && best.load(Ordering::Relaxed) < r {
                return None;
            }
            // A t A^-1 sends A(i) to A(t(i))
            for (i, &ti) in t.iter().enumerate() {
                next[a[i]] = a[ti];
            }
            std::mem::swap(&mut t, &mut next);
        }
        None
    };
    min_over_ranges(order_a, workers, scan).ok_or(Error::NotHonestTranscript)
}

/// First permutation, in lexicographic order of image arrays, that
/// conjugates every `Y` to its `Z`.
pub fn brute_force_conjugator(pairs: &[(Permutation, Permutation)], n: usize) -> Result<Permutation> {
    brute_force_conjugator_with_workers(pairs, n, 1)
}

pub fn brute_force_conjugator_parallel(pairs: &[(Permutation, Permutation)], n: usize) -> Result<Permutation> {
    brute_force_conjugator_with_workers(pairs, n, default_workers())
}

pub fn brute_force_conjugator_with_workers(
    pairs: &[(Permutation, Permutation)],
    n: usize,
    workers: usize,
) -> Result<Permutation> {
    if n > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::GuardExceeded {
            degree: n,
            max: MAX_BRUTE_FORCE_DEGREE,
        });
    }
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    for (y, z) in pairs {
        for d in [y.degree(), z.degree()] {
            if d != n {
                return Err(Error::DegreeMismatch { left: n, right: d });
            }
        }
    }
    let total = factorial(n);

    let scan = |lo: u64, hi: u64, best: &AtomicU64| {
        let mut x = unrank_lexicographic(n, lo);
        for idx in lo..hi {
            if conjugates_all(&x, pairs) {
                return Some(idx);
            }
            if idx & 0x3FF == 0 && best.load(Ordering::Relaxed) < idx {
                return None;
            }
            next_permutation(&mut x);
        }
        None
    };
    let idx = min_over_ranges(total, workers, scan).ok_or(Error::NotFound)?;
    Ok(Permutation::from_image_unchecked(unrank_lexicographic(n, idx)))
}

// x y x^-1 = z  <=>  x(y(i)) = z(x(i)) for all i
fn conjugates_all(x: &[usize], pairs: &[(Permutation, Permutation)]) -> bool {
    pairs.iter().all(|(y, z)| {
        let (y, z) = (y.image(), z.image());
        (0..x.len()).all(|i| x[y[i]] == z[x[i]])
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The `rank`-th permutation of `0..n` in lexicographic order.
fn unrank_lexicographic(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let i = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(i));
    }
    out
}

/// Advances to the lexicographic successor; returns false at the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// What a scheme 2 ciphertext reveals without any key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeakageReport {
    pub sorted_cells: Vec<u32>,
    pub counts: BTreeMap<u32, usize>,
    pub degree: usize,
}

impl LeakageReport {
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn min(&self) -> Option<u32> {
        self.sorted_cells.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.sorted_cells.last().copied()
    }

    /// Most frequent cell value; ties go to the smaller value.
    pub fn most_common(&self) -> Option<(u32, usize)> {
        self.counts
            .iter()
            .map(|(&v, &c)| (v, c))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
    }

    /// Shannon entropy of the cell distribution, in bits.
    pub fn entropy_bits(&self) -> f64 {
        let n = self.degree as f64;
        self.counts
            .values()
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    }

    pub fn matches_plaintext(&self, plaintext: &CellVector) -> bool {
        let mut cells = plaintext.cells().to_vec();
        cells.sort_unstable();
        cells == self.sorted_cells
    }
}

pub fn leakage_report(ct: &scheme2::Ciphertext) -> LeakageReport {
    let mut sorted_cells = ct.masked().cells().to_vec();
    sorted_cells.sort_unstable();
    let mut counts = BTreeMap::new();
    for &c in &sorted_cells {
        *counts.entry(c).or_insert(0) += 1;
    }
    LeakageReport {
        sorted_cells,
        counts,
        degree: ct.degree(),
    }
}
