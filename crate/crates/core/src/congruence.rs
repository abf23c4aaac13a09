//! One-unknown linear congruence systems and the discrete logarithm in `S_n`.
//!
//! If `Q = P^m`, then on every cycle `(c_0 … c_{k-1})` of `P` the point `c_0`
//! lands on `c_j` with `j ≡ m (mod k)`. Collecting one such congruence per
//! cycle and combining them with the generalized CRT recovers
//! `m mod order(P)` in linear time.

use std::fmt;

use crate::arith::{add_mod, checked_lcm, gcd, inv_mod, mul_mod, Modulus};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `x ≡ residue (mod modulus)` with `residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Congruence<T> {
    residue: T,
    modulus: T,
}

impl<T: Modulus> Congruence<T> {
    /// Reduces `residue` into `[0, modulus)`. A zero modulus is rejected.
    pub fn new(residue: T, modulus: T) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::EmptyRange);
        }
        Ok(Congruence {
            residue: residue % modulus,
            modulus,
        })
    }

    pub fn residue(&self) -> T {
        self.residue
    }

    pub fn modulus(&self) -> T {
        self.modulus
    }

    pub fn is_satisfied_by(&self, x: T) -> bool {
        x % self.modulus == self.residue
    }

    /// Intersects two congruences; moduli need not be coprime.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        let (r1, m1) = (self.residue, self.modulus);
        let (r2, m2) = (other.residue, other.modulus);
        let g = gcd(m1, m2);
        let lcm = checked_lcm(m1, m2)?;

        // x = r1 + m1 * k, need m1 * k ≡ r2 - r1 (mod m2)
        let diff = add_mod(r2, m2 - (r1 % m2), m2);
        if diff % g != T::zero() {
            return Err(Error::Inconsistent);
        }
        let reduced = m2 / g;
        let inv = inv_mod((m1 / g) % reduced, reduced).expect("m1/g and m2/g are coprime");
        let k = mul_mod(diff / g, inv, reduced);
        // k < m2/g so r1 + m1*k < lcm
        let residue = r1 + m1 * k;
        Ok(Congruence { residue, modulus: lcm })
    }
}

impl<T: Modulus> fmt::Display for Congruence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// Generalized CRT: the unique class modulo `lcm(mᵢ)` satisfying every input.
pub fn crt_combine<T: Modulus>(system: &[Congruence<T>]) -> Result<Congruence<T>> {
    let (first, rest) = system.split_first().ok_or(Error::EmptySystem)?;
    rest.iter().try_fold(*first, |acc, c| acc.combine(c))
}

/// Discrete log in `S_n`: the residue `m mod order(P)` with `P^m = Q`.
pub fn perm_dlog(base: &Permutation, target: &Permutation) -> Result<Congruence<u64>> {
    perm_dlog_in::<u64>(base, target)
}

/// [`perm_dlog`] with the modulus arithmetic carried out in `T`.
pub fn perm_dlog_in<T: Modulus>(base: &Permutation, target: &Permutation) -> Result<Congruence<T>> {
    let n = base.degree();
    if target.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: target.degree(),
        });
    }

    // position of every point within its base cycle
    let decomposition = base.cycles();
    let mut cycle_of = vec![0usize; n];
    let mut position = vec![0usize; n];
    for (ci, cycle) in decomposition.cycles().iter().enumerate() {
        for (j, &p) in cycle.points().iter().enumerate() {
            cycle_of[p] = ci;
            position[p] = j;
        }
    }

    let mut system = Vec::with_capacity(decomposition.cycles().len());
    for (ci, cycle) in decomposition.cycles().iter().enumerate() {
        let start = cycle.points()[0];
        let image = target.apply(start);
        if cycle_of[image] != ci {
            return Err(Error::NotAPower);
        }
        let k = T::from(cycle.len()).ok_or(Error::Overflow("cycle length"))?;
        let j = T::from(position[image]).ok_or(Error::Overflow("cycle position"))?;
        system.push(Congruence::new(j, k)?);
    }

    let solution = match crt_combine(&system) {
        Ok(c) => c,
        Err(Error::Inconsistent) => return Err(Error::NotAPower),
        Err(e) => return Err(e),
    };

    // per-cycle matching alone does not pin down the whole target
    let exponent = solution.residue.to_u128().ok_or(Error::Overflow("exponent"))?;
    let exponent = i128::try_from(exponent).map_err(|_| Error::Overflow("exponent"))?;
    if &base.pow(exponent) != target {
        return Err(Error::NotAPower);
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(r: u64, m: u64) -> Congruence<u64> {
        Congruence::new(r, m).unwrap()
    }

    fn perm(image: &[usize]) -> Permutation {
        Permutation::new(image.to_vec()).unwrap()
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(&[c(1, 2), c(2, 3)]).unwrap(), c(5, 6));
        assert_eq!(crt_combine(&[c(0, 2), c(1, 2)]), Err(Error::Inconsistent));
        assert_eq!(crt_combine(&[c(4, 9)]).unwrap(), c(4, 9));
        assert_eq!(crt_combine(&[c(2, 4), c(4, 6)]).unwrap(), c(10, 12));
        assert_eq!(crt_combine::<u64>(&[]), Err(Error::EmptySystem));
    }

    #[test]
    fn crt_overflow() {
        let big = Congruence::new(1u64, (1 << 40) + 1).unwrap();
        let other = Congruence::new(0u64, (1 << 40) - 1).unwrap();
        assert_eq!(crt_combine(&[big, other]), Err(Error::Overflow("lcm")));
        // the same system fits in u128
        let big = Congruence::new(1u128, (1 << 40) + 1).unwrap();
        let other = Congruence::new(0u128, (1 << 40) - 1).unwrap();
        let sol = crt_combine(&[big, other]).unwrap();
        assert!(big.is_satisfied_by(sol.residue()) && other.is_satisfied_by(sol.residue()));
    }

    #[test]
    fn crt_works_in_small_types() {
        let sol = crt_combine(&[Congruence::new(3u8, 5).unwrap(), Congruence::new(6u8, 7).unwrap()]).unwrap();
        assert_eq!((sol.residue(), sol.modulus()), (13, 35));
        let sol = crt_combine(&[Congruence::new(200u8, 251).unwrap(), Congruence::new(0u8, 1).unwrap()]).unwrap();
        assert_eq!(sol.residue(), 200);
    }

    #[test]
    fn dlog_examples() {
        let p = perm(&[1, 2, 3, 4, 0]);
        let q = perm(&[3, 4, 0, 1, 2]);
        assert_eq!(perm_dlog(&p, &q).unwrap(), c(3, 5));

        let id = Permutation::identity(5).unwrap();
        assert_eq!(perm_dlog(&p, &id).unwrap(), c(0, 5));

        let p = perm(&[1, 0, 3, 4, 2]);
        assert_eq!(perm_dlog(&p, &p.pow(5)).unwrap(), c(5, 6));

        let p = perm(&[1, 0, 2]);
        let q = perm(&[2, 1, 0]);
        assert_eq!(perm_dlog(&p, &q), Err(Error::NotAPower));
    }

    #[test]
    fn dlog_fixed_point_violation() {
        // base fixes 2, target moves it
        let p = perm(&[1, 0, 2, 3]);
        let q = perm(&[0, 1, 3, 2]);
        assert_eq!(perm_dlog(&p, &q), Err(Error::NotAPower));
    }

    #[test]
    fn dlog_needs_final_check() {
        // matches each cycle start but acts differently elsewhere on the cycle
        let p = perm(&[1, 2, 3, 0]);
        let q = perm(&[1, 0, 3, 2]);
        assert_eq!(perm_dlog(&p, &q), Err(Error::NotAPower));
    }

    #[test]
    fn dlog_inconsistent_cycles() {
        // p = (0 1)(2 3); q swaps 0,1 but fixes 2,3: 1 mod 2 vs 0 mod 2
        let p = perm(&[1, 0, 3, 2]);
        let q = perm(&[1, 0, 2, 3]);
        assert_eq!(perm_dlog(&p, &q), Err(Error::NotAPower));
    }

    #[test]
    fn dlog_degree_mismatch() {
        let p = perm(&[1, 0]);
        let q = perm(&[0, 1, 2]);
        assert_eq!(perm_dlog(&p, &q), Err(Error::DegreeMismatch { left: 2, right: 3 }));
    }
}
