//! Arithmetic in the symmetric group `S_n`.
//!
//! A [`Permutation`] is stored as its image array: `image[i]` is where point
//! `i` goes. Composition applies the right operand first, so
//! `p.compose(&q)` maps `i` to `p(q(i))`. Every formula in the schemes is
//! written against this convention.

use std::fmt;

use crate::arith::{checked_lcm, Modulus};
use crate::error::{Error, Result};
use crate::rng::RandomSource;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.image, f)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().cycles() {
            if cycle.len() > 1 {
                any = true;
                write!(f, "(")?;
                for (k, p) in cycle.points().iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")?;
            }
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Permutation {
    /// Validates that `image` is a bijection on `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::InvalidDegree(0));
        }
        if !is_bijection(&image) {
            return Err(Error::NotBijective { degree: image.len() });
        }
        Ok(Permutation { image })
    }

    /// Caller guarantees `image` is a bijection.
    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(!image.is_empty() && is_bijection(&image));
        Permutation { image }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDegree(0));
        }
        Ok(Permutation {
            image: (0..n).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn check_degree(&self, other_degree: usize) -> Result<()> {
        if self.degree() != other_degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other_degree,
            });
        }
        Ok(())
    }

    /// `self ∘ q`: applies `q` first, then `self`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        self.check_degree(q.degree())?;
        let image = q.image.iter().map(|&j| self.image[j]).collect();
        Ok(Permutation { image })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.degree()];
        for (i, &p) in self.image.iter().enumerate() {
            image[p] = i;
        }
        Permutation { image }
    }

    /// `self^e` in O(n), independent of `|e|`.
    ///
    /// Each cycle of length `k` is rotated by `e mod k`; negative exponents
    /// rotate backwards, which is the same as powering the inverse.
    pub fn pow<E: Into<i128>>(&self, e: E) -> Permutation {
        let e: i128 = e.into();
        let n = self.degree();
        let mut image = vec![0; n];
        let mut seen = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image[p];
            }
            let k = cycle.len();
            let shift = e.rem_euclid(k as i128) as usize;
            for (j, &point) in cycle.iter().enumerate() {
                let target = j + shift;
                image[point] = cycle[if target >= k { target - k } else { target }];
            }
        }
        Permutation { image }
    }

    /// `x · y · x⁻¹` with `x = self`. Same cycle type as `y`.
    pub fn conjugate(&self, y: &Permutation) -> Result<Permutation> {
        self.check_degree(y.degree())?;
        // x y x^-1 sends x(i) to x(y(i))
        let mut image = vec![0; self.degree()];
        for (i, &yi) in y.image.iter().enumerate() {
            image[self.image[i]] = self.image[yi];
        }
        Ok(Permutation { image })
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // scanning starts in ascending order, so each cycle starts at its
        // minimum and the list comes out sorted by minimum
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut points = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                points.push(p);
                p = self.image[p];
            }
            cycles.push(Cycle { points });
        }
        CycleDecomposition { degree: n, cycles }
    }

    /// Cycle lengths in ascending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().cycles.iter().map(Cycle::len).collect();
        lens.sort_unstable();
        lens
    }

    /// Order as `u64`; see [`Permutation::order_in`].
    pub fn order(&self) -> Result<u64> {
        self.order_in::<u64>()
    }

    /// Least common multiple of the cycle lengths, computed in `T`.
    pub fn order_in<T: Modulus>(&self) -> Result<T> {
        let mut lens = self.cycle_type();
        lens.dedup();
        lens.into_iter().try_fold(T::one(), |acc, len| {
            let len = T::from(len).ok_or(Error::Overflow("order"))?;
            checked_lcm(acc, len).map_err(|_| Error::Overflow("order"))
        })
    }

    /// Builds the permutation with the given disjoint cycles; unlisted points
    /// are fixed.
    pub fn from_cycles(n: usize, cycles: &[Cycle]) -> Result<Permutation> {
        let mut image: Vec<usize> = (0..n).collect();
        if n == 0 {
            return Err(Error::InvalidDegree(0));
        }
        let mut used = vec![false; n];
        for cycle in cycles {
            for &p in &cycle.points {
                if p >= n {
                    return Err(Error::InvalidCycle(format!("point {p} out of range for degree {n}")));
                }
                if used[p] {
                    return Err(Error::InvalidCycle(format!("point {p} appears in two cycles")));
                }
                used[p] = true;
            }
            let k = cycle.points.len();
            for j in 0..k {
                image[cycle.points[j]] = cycle.points[(j + 1) % k];
            }
        }
        Ok(Permutation { image })
    }

    /// Uniform element of `S_n` by Fisher-Yates.
    ///
    /// Starts from the identity array and, for `i = n-1` down to `1`, swaps
    /// slot `i` with slot `uniform_below(i + 1)`.
    pub fn random(n: usize, rng: &mut RandomSource) -> Result<Permutation> {
        let mut image = Permutation::identity(n)?.image;
        for i in (1..n).rev() {
            let j = rng.uniform_below(i as u64 + 1).expect("range is non-empty") as usize;
            image.swap(i, j);
        }
        Ok(Permutation { image })
    }

    /// Moves the cell at position `i` to position `self(i)`.
    pub fn act_on(&self, v: &CellVector) -> Result<CellVector> {
        self.check_degree(v.len())?;
        let mut cells = vec![0u32; v.len()];
        for (i, &c) in v.cells.iter().enumerate() {
            cells[self.image[i]] = c;
        }
        Ok(CellVector { cells })
    }
}

fn is_bijection(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    for &p in image {
        if p >= image.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// One cycle `points[0] -> points[1] -> ... -> points[0]`, rotated so that
/// `points[0]` is the smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    points: Vec<usize>,
}

impl Cycle {
    pub fn new(mut points: Vec<usize>) -> Result<Cycle> {
        if points.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle("repeated point".into()));
        }
        let min_at = points
            .iter()
            .enumerate()
            .min_by_key(|(_, &p)| p)
            .map(|(i, _)| i)
            .unwrap_or(0);
        points.rotate_left(min_at);
        Ok(Cycle { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Disjoint cycles covering every point, fixed points as 1-cycles, sorted by
/// their smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles).expect("decomposition covers its degree disjointly")
    }
}

/// The message vector scheme 2 shuffles: one 32-bit word per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellVector {
    cells: Vec<u32>,
}

impl CellVector {
    pub fn new(cells: Vec<u32>) -> Self {
        CellVector { cells }
    }

    pub fn zeros(n: usize) -> Self {
        CellVector { cells: vec![0; n] }
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn into_cells(self) -> Vec<u32> {
        self.cells
    }
}

impl From<Vec<u32>> for CellVector {
    fn from(cells: Vec<u32>) -> Self {
        CellVector { cells }
    }
}
