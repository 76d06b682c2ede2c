//! Index sets of the multiplicity formulas.
//!
//! * `Q_n(N)`: partitions of `N` with at most `n` parts, as weakly decreasing
//!   `n`-tuples.
//! * `s_j`: the number of parts of a partition equal to `j`.
//! * `B^q`: triangular arrays `β^j_t` (`1 ≤ t ≤ j ≤ N`) with row sums
//!   `Σ_t β^j_t ≤ s_j`.
//! * `A^q_β`: triangular arrays `α` with `0 ≤ α^j_t ≤ β^j_t`.
//!
//! The triangular streams are odometers: row `j = 1` turns fastest, and
//! inside a row position `t = 1` turns fastest.

use num_bigint::BigUint;
use num_traits::Zero;

/// A partition stored as a weakly decreasing `n`-tuple padded with zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    total: usize,
}

impl Partition {
    /// Returns `None` unless `parts` is weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let total = parts.iter().sum();
        Some(Self { parts, total })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

/// Stream over `Q_n(N)` in reverse lexicographic order.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.as_mut()?;
        let out = parts.clone();
        if !advance_partition(parts) {
            self.current = None;
        }
        let total = out.iter().sum();
        Some(Partition { parts: out, total })
    }
}

/// Moves `q` to its reverse-lexicographic successor; `false` at the end.
fn advance_partition(q: &mut [usize]) -> bool {
    let n = q.len();
    let mut tail: usize = 0;
    for i in (0..n).rev() {
        if i + 1 < n && q[i] >= 2 {
            let cap = q[i] - 1;
            let rest = tail + 1;
            if rest <= cap * (n - 1 - i) {
                q[i] = cap;
                let mut rest = rest;
                for slot in q.iter_mut().skip(i + 1) {
                    *slot = cap.min(rest);
                    rest -= *slot;
                }
                return true;
            }
        }
        tail += q[i];
    }
    false
}

/// Partitions of `total` with at most `len` parts. Empty when `total < 0`.
pub fn partitions_le_length(total: i64, len: usize) -> Partitions {
    if total < 0 || len == 0 {
        let current = (total == 0 && len == 0).then(Vec::new);
        return Partitions { current };
    }
    let mut first = vec![0; len];
    first[0] = total as usize;
    Partitions {
        current: Some(first),
    }
}

/// Part-count profile `(s_1, …, s_N)` of a partition of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartCounts {
    counts: Vec<usize>,
}

impl PartCounts {
    /// `s_j` for `1 ≤ j ≤ N`; zero outside that range.
    pub fn get(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.counts.get(j - 1).copied().unwrap_or(0)
    }

    /// `N`, the largest index carried by the profile.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.counts
    }
}

pub fn part_counts(q: &Partition) -> PartCounts {
    let mut counts = vec![0; q.total];
    for &p in &q.parts {
        if p > 0 {
            counts[p - 1] += 1;
        }
    }
    PartCounts { counts }
}

/// Triangular array `(x^1_1, x^2_1, x^2_2, …, x^N_N)` with 1-based `(j, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangular {
    rows: usize,
    data: Vec<usize>,
}

impl Triangular {
    pub fn zeros(rows: usize) -> Self {
        Self {
            rows,
            data: vec![0; rows * (rows + 1) / 2],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    fn offset(j: usize, t: usize) -> usize {
        debug_assert!(1 <= t && t <= j);
        j * (j - 1) / 2 + (t - 1)
    }

    /// Entry `(j, t)`; callers must keep `1 ≤ t ≤ j ≤ rows`.
    #[inline]
    pub fn get(&self, j: usize, t: usize) -> usize {
        self.data[Self::offset(j, t)]
    }

    pub fn set(&mut self, j: usize, t: usize, v: usize) {
        self.data[Self::offset(j, t)] = v;
    }

    /// Row `j` as a slice `(x^j_1, …, x^j_j)`.
    #[inline]
    pub fn row(&self, j: usize) -> &[usize] {
        let start = Self::offset(j, 1);
        &self.data[start..start + j]
    }

    pub fn row_sum(&self, j: usize) -> usize {
        self.row(j).iter().sum()
    }

    /// Entries in layout order.
    pub fn as_slice(&self) -> &[usize] {
        &self.data
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Odometer over `B^q`.
#[derive(Debug, Clone)]
pub struct BetaIndices {
    caps: Vec<usize>,
    current: Triangular,
    done: bool,
}

impl BetaIndices {
    pub fn current(&self) -> &Triangular {
        &self.current
    }

    /// Advances in place; `false` once the stream is exhausted.
    pub fn advance(&mut self) -> bool {
        for j in 1..=self.current.rows {
            let cap = self.caps[j - 1];
            let start = Triangular::offset(j, 1);
            let row = &mut self.current.data[start..start + j];
            if advance_bounded_sum(row, cap) {
                return true;
            }
        }
        self.done = true;
        false
    }

    fn check(&self) {
        for j in 1..=self.current.rows {
            debug_assert!(self.current.row_sum(j) <= self.caps[j - 1]);
        }
    }
}

impl Iterator for BetaIndices {
    type Item = Triangular;

    fn next(&mut self) -> Option<Triangular> {
        if self.done {
            return None;
        }
        self.check();
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// Odometer step over vectors with `Σ row ≤ cap`, position 0 fastest.
fn advance_bounded_sum(row: &mut [usize], cap: usize) -> bool {
    let mut sum: usize = row.iter().sum();
    for slot in row.iter_mut() {
        if sum < cap {
            *slot += 1;
            return true;
        }
        sum -= *slot;
        *slot = 0;
    }
    false
}

/// All `β ∈ B^q`, starting from the zero array.
pub fn beta_indices(q: &Partition) -> BetaIndices {
    let s = part_counts(q);
    BetaIndices {
        caps: s.counts,
        current: Triangular::zeros(q.total),
        done: false,
    }
}

/// Odometer over the box `Π_{(j,t)} {0, …, β^j_t}`.
#[derive(Debug, Clone)]
pub struct AlphaIndices {
    bounds: Triangular,
    current: Triangular,
    done: bool,
}

impl AlphaIndices {
    pub fn current(&self) -> &Triangular {
        &self.current
    }

    pub fn advance(&mut self) -> bool {
        for (x, &b) in self.current.data.iter_mut().zip(&self.bounds.data) {
            if *x < b {
                *x += 1;
                return true;
            }
            *x = 0;
        }
        self.done = true;
        false
    }
}

impl Iterator for AlphaIndices {
    type Item = Triangular;

    fn next(&mut self) -> Option<Triangular> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

pub fn alpha_indices(beta: &Triangular) -> AlphaIndices {
    AlphaIndices {
        bounds: beta.clone(),
        current: Triangular::zeros(beta.rows),
        done: false,
    }
}

/// Size of `B^q`: one stars-and-bars factor `C(s_j + j, j)` per row.
pub fn beta_count(q: &Partition) -> BigUint {
    let s = part_counts(q);
    (1..=q.total)
        .map(|j| binom((s.get(j) + j) as i64, j as i64))
        .product()
}

/// Size of `A^q_β`.
pub fn alpha_count(beta: &Triangular) -> BigUint {
    if beta.is_zero() {
        return BigUint::from(1u32);
    }
    beta.data.iter().map(|&b| BigUint::from(b + 1)).product()
}

#[cfg(test)]
thread_local! {
    static CORRUPT_BINOM: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Test hook: while set on the current thread, `binom(b, a)` returns 1
/// instead of 0 for `0 ≤ b < a`.
#[cfg(test)]
pub(crate) fn set_corrupt_binom(on: bool) {
    CORRUPT_BINOM.with(|c| c.set(on));
}

/// `C(b, a)` in `u128`, with `C(b, a) = 0` whenever `a < 0` or `b < a`.
/// `None` on overflow.
#[inline]
pub fn binom_u128(b: i64, a: i64) -> Option<u128> {
    if a < 0 || b < a {
        #[cfg(test)]
        if a >= 0 && b >= 0 && CORRUPT_BINOM.with(|c| c.get()) {
            return Some(1);
        }
        return Some(0);
    }
    let a = a.min(b - a) as u128;
    let b = b as u128;
    let mut acc: u128 = 1;
    for i in 1..=a {
        // acc = C(b - a + i - 1, i - 1), so the division is exact.
        acc = acc.checked_mul(b - a + i)? / i;
    }
    Some(acc)
}

/// `C(b, a)` for all integers, zero when `a < 0` or `b < a`.
pub fn binom(b: i64, a: i64) -> BigUint {
    if let Some(v) = binom_u128(b, a) {
        return BigUint::from(v);
    }
    let a = a.min(b - a) as u64;
    let b = b as u64;
    let mut acc = BigUint::from(1u32);
    for i in 1..=a {
        acc *= b - a + i;
        acc /= i;
    }
    acc
}

/// `#{η ∈ Zⁿ : ‖η‖ = N} = Σ_{t=0}^{n} C(n, t)·C(N − t + n − 1, n − 1)`.
pub fn count_one_norm_sphere(n: usize, norm: usize) -> BigUint {
    let n = n as i64;
    let norm = norm as i64;
    let mut total = BigUint::zero();
    for t in 0..=n {
        total += binom(n, t) * binom(norm - t + n - 1, n - 1);
    }
    total
}
