//! Classical root systems in the ε-basis.
//!
//! Types B, C and D of rank `n` use weights in `Zⁿ`. Type A of rank `n`
//! uses `n + 1` coordinates taken modulo the all-ones vector; the canonical
//! representative of such a class has minimum coordinate zero.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest rank accepted for this family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::B | Family::C => 2,
            Family::D => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(format!("unknown family '{other}' (expected A, B, C or D)")),
        }
    }
}

/// A classical simple Lie algebra: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    family: Family,
    rank: usize,
}

/// Checks the rank bounds: `n >= 2` for A, B, C and `n >= 3` for D.
pub fn validate(family: Family, rank: usize) -> Result<()> {
    let min = family.min_rank();
    if rank < min {
        return Err(Error::RankOutOfRange { family, rank, min });
    }
    Ok(())
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        validate(family, rank)?;
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ε-coordinates of a weight: `n + 1` for type A, `n` otherwise.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn check_length(&self, mu: &Weight) -> Result<()> {
        if mu.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: mu.len(),
            });
        }
        Ok(())
    }

    /// Canonical representative: identity for B/C/D, minimum shifted to zero for A.
    pub fn canonical(&self, mu: &Weight) -> Weight {
        match self.family {
            Family::A => {
                let min = mu.0.iter().copied().min().unwrap_or(0);
                Weight(mu.0.iter().map(|&a| a - min).collect())
            }
            _ => mu.clone(),
        }
    }

    /// Same weight class (type A compares modulo constant shifts).
    pub fn same_weight(&self, a: &Weight, b: &Weight) -> bool {
        a.len() == b.len() && self.canonical(a) == self.canonical(b)
    }

    /// Type A only: the representative of `mu` whose coordinates sum to
    /// `total`, if one exists with all coordinates non-negative.
    pub fn representative_with_sum(&self, mu: &Weight, total: i64) -> Option<Weight> {
        debug_assert_eq!(self.family, Family::A);
        let sum: i64 = mu.0.iter().sum();
        let parts = self.dim() as i64;
        let gap = total - sum;
        if gap.rem_euclid(parts) != 0 {
            return None;
        }
        let shift = gap / parts;
        let rep: Vec<i64> = mu.0.iter().map(|&a| a + shift).collect();
        rep.iter().all(|&a| a >= 0).then_some(Weight(rep))
    }

    /// `kε₁ + lε₂` as a coordinate vector.
    pub fn highest_weight(&self, k: i64, l: i64) -> Weight {
        let mut coords = vec![0; self.dim()];
        coords[0] = k;
        coords[1] = l;
        Weight(coords)
    }

    /// Positive roots in ε-coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let unit = |i: usize, c: i64| {
            let mut v = vec![0; d];
            v[i] = c;
            v
        };
        let mut roots = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut minus = vec![0; d];
                minus[i] = 1;
                minus[j] = -1;
                roots.push(minus);
                if self.family != Family::A {
                    let mut plus = vec![0; d];
                    plus[i] = 1;
                    plus[j] = 1;
                    roots.push(plus);
                }
            }
            match self.family {
                Family::B => roots.push(unit(i, 1)),
                Family::C => roots.push(unit(i, 2)),
                _ => {}
            }
        }
        roots
    }

    /// Twice the Weyl vector, i.e. the sum of the positive roots.
    pub fn rho_doubled(&self) -> Vec<i64> {
        let mut rho = vec![0; self.dim()];
        for root in self.positive_roots() {
            for (r, a) in rho.iter_mut().zip(root) {
                *r += a;
            }
        }
        rho
    }

    /// Dominance in the Weyl-chamber sense for this family.
    pub fn is_dominant(&self, mu: &Weight) -> bool {
        let c = &mu.0;
        let decreasing = c.windows(2).all(|w| w[0] >= w[1]);
        match self.family {
            Family::A => decreasing,
            Family::B | Family::C => decreasing && c.last().is_none_or(|&x| x >= 0),
            Family::D => {
                let n = c.len();
                c[..n - 1].windows(2).all(|w| w[0] >= w[1]) && c[n - 2] >= c[n - 1].abs()
            }
        }
    }

    /// Coefficients of `diff` in the basis of simple roots, or `None` if
    /// `diff` is not in the root lattice.
    pub fn simple_root_coefficients(&self, diff: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank;
        let mut partial = Vec::with_capacity(diff.len());
        let mut acc = 0;
        for &d in diff {
            acc += d;
            partial.push(acc);
        }
        let half = |x: i64| (x % 2 == 0).then_some(x / 2);
        match self.family {
            Family::A => (partial[n] == 0).then(|| partial[..n].to_vec()),
            Family::B => Some(partial),
            Family::C => {
                let last = half(partial[n - 1])?;
                let mut c = partial[..n - 1].to_vec();
                c.push(last);
                Some(c)
            }
            Family::D => {
                let second = half(partial[n - 2] - diff[n - 1])?;
                let last = half(partial[n - 1])?;
                let mut c = partial[..n - 2].to_vec();
                c.push(second);
                c.push(last);
                Some(c)
            }
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Integral weight in ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Weight(coords.into())
    }

    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// One-norm and level counts of a weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightStats {
    pub one_norm: i64,
    /// `level_counts[t]` is the number of coordinates of absolute value `t`.
    pub level_counts: Vec<usize>,
}

/// `‖μ‖` and `(ℓ₀(μ), …, ℓ_{l−1}(μ))`.
///
/// Type A weights are first shifted to their canonical representative and
/// counted without absolute values.
pub fn weight_stats(spec: &AlgebraSpec, mu: &Weight, l: usize) -> Result<WeightStats> {
    spec.check_length(mu)?;
    let coords = spec.canonical(mu).0;
    Ok(stats_of(&coords, l))
}

pub(crate) fn stats_of(coords: &[i64], l: usize) -> WeightStats {
    let mut level_counts = vec![0usize; l];
    let mut one_norm = 0;
    for &a in coords {
        let a = a.abs();
        one_norm += a;
        if (a as usize) < l {
            level_counts[a as usize] += 1;
        }
    }
    WeightStats {
        one_norm,
        level_counts,
    }
}

/// Canonical form under signed permutations (B/C/D) or permutations (A).
///
/// For type D this is the `{±1}ⁿ ⋊ Sym(n)` canonical form, which is coarser
/// than the Weyl group; see [`weyl_dominant`] for the Weyl-chamber
/// representative.
pub fn dominant_representative(spec: &AlgebraSpec, mu: &Weight) -> Result<Weight> {
    spec.check_length(mu)?;
    let mut coords: Vec<i64> = match spec.family() {
        Family::A => spec.canonical(mu).0,
        _ => mu.0.iter().map(|a| a.abs()).collect(),
    };
    coords.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Weight(coords))
}

/// The unique dominant weight in the Weyl-group orbit of `mu`.
///
/// Type A weights keep their representative (coordinates are only sorted).
pub fn weyl_dominant(spec: &AlgebraSpec, mu: &Weight) -> Weight {
    match spec.family() {
        Family::A => {
            let mut coords = mu.0.clone();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            Weight(coords)
        }
        Family::B | Family::C => {
            let mut coords: Vec<i64> = mu.0.iter().map(|a| a.abs()).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            Weight(coords)
        }
        Family::D => {
            let negatives = mu.0.iter().filter(|&&a| a < 0).count();
            let mut coords: Vec<i64> = mu.0.iter().map(|a| a.abs()).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            let last = coords.len() - 1;
            if negatives % 2 == 1 && coords[last] != 0 {
                coords[last] = -coords[last];
            }
            Weight(coords)
        }
    }
}

/// Rearranges `v` into the next lexicographically larger permutation.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
pub(crate) fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` on every distinct arrangement of `coords` with all sign
/// patterns on the nonzero entries (`signed = true`) or without sign changes.
pub(crate) fn for_each_orbit_point(coords: &[i64], signed: bool, mut f: impl FnMut(&[i64])) {
    let mut perm = coords.to_vec();
    perm.sort_unstable();
    let mut scratch = vec![0; perm.len()];
    loop {
        if signed {
            let nonzero: Vec<usize> = (0..perm.len()).filter(|&i| perm[i] != 0).collect();
            for mask in 0u64..(1u64 << nonzero.len()) {
                scratch.copy_from_slice(&perm);
                for (bit, &idx) in nonzero.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        scratch[idx] = -scratch[idx];
                    }
                }
                f(&scratch);
            }
        } else {
            f(&perm);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// The orbit of a dominant weight under `{±1}ⁿ ⋊ Sym(n)` (B/C/D) or
/// `Sym(n+1)` (A), in lexicographic order.
pub fn orbit(spec: &AlgebraSpec, mu: &Weight) -> Result<BTreeSet<Weight>> {
    spec.check_length(mu)?;
    let mu = spec.canonical(mu);
    if !spec.is_dominant(&mu) {
        return Err(Error::NotDominant(mu.0));
    }
    let mut out = BTreeSet::new();
    let signed = spec.family() != Family::A;
    for_each_orbit_point(&mu.0, signed, |p| {
        out.insert(Weight(p.to_vec()));
    });
    Ok(out)
}

/// Size of the orbit returned by [`orbit`], without enumerating it.
pub fn orbit_size(spec: &AlgebraSpec, mu: &Weight) -> BigUint {
    let abs: Vec<i64> = match spec.family() {
        Family::A => mu.0.clone(),
        _ => mu.0.iter().map(|a| a.abs()).collect(),
    };
    let mut sorted = abs.clone();
    sorted.sort_unstable();
    let factorial = |m: usize| (1..=m as u64).fold(BigUint::one(), |acc, x| acc * x);
    let mut size = factorial(sorted.len());
    for run in sorted.chunk_by(|a, b| a == b) {
        size /= factorial(run.len());
    }
    if spec.family() != Family::A {
        let nonzero = abs.iter().filter(|&&a| a != 0).count();
        size <<= nonzero;
    }
    size
}

/// Size of the Weyl-group orbit of `mu`. Differs from [`orbit_size`] only
/// for type D weights without zero coordinates, where it is half as large.
pub fn weyl_orbit_size(spec: &AlgebraSpec, mu: &Weight) -> BigUint {
    let size = orbit_size(spec, mu);
    if spec.family() == Family::D && mu.0.iter().all(|&a| a != 0) {
        size >> 1usize
    } else {
        size
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Weyl dimension formula for an arbitrary dominant highest weight.
pub fn weyl_dimension_of(spec: &AlgebraSpec, lambda: &Weight) -> Result<BigUint> {
    spec.check_length(lambda)?;
    if !spec.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let rho2 = spec.rho_doubled();
    let shifted: Vec<i64> = lambda.0.iter().zip(&rho2).map(|(a, r)| 2 * a + r).collect();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for root in spec.positive_roots() {
        num *= dot(&shifted, &root) as u64;
        den *= dot(&rho2, &root) as u64;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `dim π_{kε₁+lε₂}`.
pub fn weyl_dimension(spec: &AlgebraSpec, k: i64, l: i64) -> Result<BigUint> {
    if l < 0 || k < l {
        return Err(Error::InvalidHighestWeight { k, l });
    }
    weyl_dimension_of(spec, &spec.highest_weight(k, l))
}
