//! Weight multiplicities of `π_{kε₁+lε₂}`.
//!
//! For types B, C and D the multiplicity of `μ` is the signed combination
//!
//! ```text
//! m(μ) = T(l, r) − T(l−1, r) − T(l−1, r−1) + T(l−2, r−1),   r = (k+l−‖μ‖)/2,
//! ```
//!
//! where `T(l, r)` is the multiplicity of `μ` in `π_{kε₁} ⊗ π_{lε₁}`, written
//! as a sum over `N ≤ l`, `q ∈ Q_n(N)`, `β ∈ B^q`, `α ∈ A^q_β` of binomial
//! products. `T` only sees `μ` through `r` and the level counts
//! `ℓ_t(μ) = #{i : |a_i| = t}`, `t < l`. Terms with negative first argument
//! vanish.
//!
//! For type A the combination is `T(l) − T(l−1)`, with `T` a sum over
//! partitions only.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{
    alpha_indices, beta_indices, binom, binom_u128, count_one_norm_sphere, part_counts,
    partitions_le_length, PartCounts, Triangular,
};
use crate::root_systems::{stats_of, AlgebraSpec, Family, Weight};

/// Exact non-negative multiplicity.
pub type Multiplicity = BigUint;

/// Exact value in `½Z`, stored as twice the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(v: i64) -> Self {
        Self { twice: 2 * v }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// `Some(v)` iff the value is a non-negative integer.
    pub fn as_natural(self) -> Option<i64> {
        (self.twice >= 0 && self.is_integer()).then_some(self.twice / 2)
    }

    pub fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn sub_int(self, v: i64) -> Self {
        Self {
            twice: self.twice - 2 * v,
        }
    }

    pub fn sub_half(self, halves: i64) -> Self {
        Self {
            twice: self.twice - halves,
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Highest weight `kε₁ + lε₂` with `k ≥ l ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BivariateHighestWeight {
    k: i64,
    l: i64,
}

impl BivariateHighestWeight {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if l < 0 || k < l {
            return Err(Error::InvalidHighestWeight { k, l });
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }
}

fn to_natural(v: BigInt) -> Multiplicity {
    assert!(
        v.sign() != Sign::Minus,
        "negative multiplicity {v}: formula evaluation bug"
    );
    v.to_biguint().unwrap_or_default()
}

/// `r(μ) = (total − ‖μ‖)/2`.
fn depth(total: i64, one_norm: i64) -> HalfInteger {
    HalfInteger::from_twice(total - one_norm)
}

/// The `r` precondition: B needs `r ≥ 0`, C and D need `r ∈ N₀`.
fn depth_admissible(family: Family, r: HalfInteger) -> bool {
    match family {
        Family::B => !r.is_negative(),
        _ => r.as_natural().is_some(),
    }
}

/// Lower index of the single-row binomials: `n − 1` for B and C, `n − 2` for D.
fn row_degree(spec: &AlgebraSpec) -> i64 {
    match spec.family() {
        Family::D => spec.rank() as i64 - 2,
        _ => spec.rank() as i64 - 1,
    }
}

/// Multiplicity of `mu` in `π_{kε₁}`.
pub fn mult_single_row(spec: &AlgebraSpec, k: i64, mu: &Weight) -> Result<Multiplicity> {
    if k < 0 {
        return Err(Error::InvalidHighestWeight { k, l: 0 });
    }
    spec.check_length(mu)?;
    if spec.family() == Family::A {
        let hit = spec.representative_with_sum(mu, k).is_some();
        return Ok(if hit { BigUint::one() } else { BigUint::zero() });
    }
    let one_norm: i64 = mu.coords().iter().map(|a| a.abs()).sum();
    let r = depth(k, one_norm);
    if !depth_admissible(spec.family(), r) {
        return Ok(BigUint::zero());
    }
    let d = row_degree(spec);
    Ok(binom(r.floor() + d, d))
}

/// Everything `T(l', r)` needs besides `l'` and `r`.
struct TensorContext<'a> {
    family: Family,
    n: usize,
    degree: i64,
    levels: &'a [usize],
    /// `below[j] = ℓ_0 + … + ℓ_{j−1}`.
    below: Vec<usize>,
}

impl<'a> TensorContext<'a> {
    fn new(spec: &AlgebraSpec, levels: &'a [usize]) -> Self {
        let mut below = Vec::with_capacity(levels.len() + 1);
        let mut acc = 0;
        below.push(0);
        for &x in levels {
            acc += x;
            below.push(acc);
        }
        Self {
            family: spec.family(),
            n: spec.rank(),
            degree: row_degree(spec),
            levels,
            below,
        }
    }

    /// Multiplicity of `μ` in `π_{kε₁} ⊗ π_{l'ε₁}` where `r = (k+l'−‖μ‖)/2`.
    fn term(&self, lp: i64, r: HalfInteger) -> BigUint {
        if lp < 0 {
            return BigUint::zero();
        }
        debug_assert!(lp as usize <= self.levels.len());
        let d = self.degree;
        let mut total = BigUint::zero();
        for big_n in 0..=lp {
            let parity_ok = self.family == Family::B || (lp - big_n) % 2 == 0;
            if !parity_ok {
                continue;
            }
            let first = binom((lp - big_n).div_euclid(2) + d, d);
            if first.is_zero() {
                continue;
            }
            // ⌊r − (l' + N)/2⌋
            let base = r.sub_half(lp + big_n).floor();
            let mut inner = BigUint::zero();
            for q in partitions_le_length(big_n, self.n) {
                let s = part_counts(&q);
                let mut betas = beta_indices(&q);
                loop {
                    let beta = betas.current();
                    let weight = self.placement_count(big_n as usize, &s, beta);
                    if !weight.is_zero() {
                        inner += weight * self.alpha_sum(beta, base);
                    }
                    if !betas.advance() {
                        break;
                    }
                }
            }
            total += first * inner;
        }
        total
    }

    /// `Σ_{α ∈ A^q_β} Π C(β^j_i, α^j_i) · C(base + Σ (j+1−i)·α^j_i + d, d)`.
    fn alpha_sum(&self, beta: &Triangular, base: i64) -> BigUint {
        let d = self.degree;
        let rows = beta.rows();
        let mut alphas = alpha_indices(beta);
        let mut sum = BigUint::zero();
        loop {
            let alpha = alphas.current();
            let mut shift = 0i64;
            let mut coef: u128 = 1;
            let mut overflow = false;
            for j in 1..=rows {
                for (i, (&a, &b)) in alpha.row(j).iter().zip(beta.row(j)).enumerate() {
                    if b == 0 {
                        continue;
                    }
                    shift += (j - i) as i64 * a as i64;
                    match binom_u128(b as i64, a as i64).and_then(|c| coef.checked_mul(c)) {
                        Some(c) => coef = c,
                        None => overflow = true,
                    }
                }
            }
            let second = binom(base + shift + d, d);
            if !second.is_zero() {
                if overflow {
                    let mut big = BigUint::one();
                    for j in 1..=rows {
                        for (&a, &b) in alpha.row(j).iter().zip(beta.row(j)) {
                            big *= binom(b as i64, a as i64);
                        }
                    }
                    sum += big * second;
                } else {
                    sum += second * coef;
                }
            }
            if !alphas.advance() {
                break;
            }
        }
        sum
    }

    /// Number of weights `η` of norm `N` realising the block pattern `β`
    /// (up to the sign choices counted by `α`).
    ///
    /// Coordinates of `μ` are split, for each `j`, into blocks: those with
    /// `|a| ≥ j`, then `|a| = j−1`, …, `|a| = 1`, `|a| = 0`. Row `j` places
    /// `β^j_t` entries `±j` in block `t` and the remaining `s_j − Σ_t β^j_t`
    /// in the zero block. Rows are filled from `j = N` down, so each
    /// binomial counts what higher rows left free. Row `j+t` uses the block
    /// `|a| = j−i+1` through its entry `β^{j+t}_{i+t}`.
    fn placement_count(&self, big_n: usize, s: &PartCounts, beta: &Triangular) -> BigUint {
        let n = self.n as i64;
        let level = |t: usize| self.levels[t] as i64;
        let mut free_sign_choices = 0usize;
        let mut acc: Option<u128> = Some(1);
        let mut factors: Vec<BigUint> = Vec::new();
        let push = |b: i64, a: i64, acc: &mut Option<u128>, factors: &mut Vec<BigUint>| -> bool {
            match binom_u128(b, a) {
                Some(0) => return false,
                Some(v) => {
                    if let Some(x) = acc.and_then(|x| x.checked_mul(v)) {
                        *acc = Some(x);
                    } else {
                        if let Some(x) = acc.take() {
                            factors.push(BigUint::from(x));
                        }
                        factors.push(BigUint::from(v));
                    }
                }
                None => {
                    if let Some(x) = acc.take() {
                        factors.push(BigUint::from(x));
                    }
                    factors.push(binom(b, a));
                }
            }
            true
        };
        for j in 1..=big_n {
            let sj = s.get(j);
            let placed = beta.row_sum(j);
            let zeros_here = sj as i64 - placed as i64;
            free_sign_choices += zeros_here.max(0) as usize;

            // Block |a| ≥ j, minus what rows r > j took from blocks 1..=r−j+1.
            let mut taken_high = 0i64;
            for r in j + 1..=big_n {
                taken_high += beta.row(r)[..r - j + 1].iter().sum::<usize>() as i64;
            }
            let top = n - self.below[j] as i64 - taken_high;
            if !push(top, beta.get(j, 1) as i64, &mut acc, &mut factors) {
                return BigUint::zero();
            }

            // Zero block, minus zeros used by rows h > j.
            let mut zeros_taken = 0i64;
            for h in j + 1..=big_n {
                zeros_taken += s.get(h) as i64 - beta.row_sum(h) as i64;
            }
            if !push(level(0) - zeros_taken, zeros_here, &mut acc, &mut factors) {
                return BigUint::zero();
            }

            // Block |a| = j−i+1 for 2 ≤ i ≤ j.
            for i in 2..=j {
                let mut used = 0i64;
                for t in 1..=big_n - j {
                    used += beta.get(j + t, i + t) as i64;
                }
                let pool = level(j - i + 1) - used;
                if !push(pool, beta.get(j, i) as i64, &mut acc, &mut factors) {
                    return BigUint::zero();
                }
            }
        }
        let mut out: BigUint = factors.into_iter().product();
        if let Some(x) = acc {
            out *= x;
        }
        out << free_sign_choices
    }
}

fn check_highest(k: i64, l: i64) -> Result<()> {
    BivariateHighestWeight::new(k, l).map(|_| ())
}

/// Level counts of the type-A representative with coordinate sum `total`,
/// or `None` if that representative has a negative coordinate.
fn type_a_levels(spec: &AlgebraSpec, mu: &Weight, total: i64, l: usize) -> Option<(Weight, Vec<usize>)> {
    let rep = spec.representative_with_sum(mu, total)?;
    let stats = stats_of(rep.coords(), l);
    Some((rep, stats.level_counts))
}

/// `Σ_{q ∈ Q_{n+1}(l')} Π_{j=1}^{l'} C(n+1 − Σ_{t<j} ℓ_t − Σ_{i>j} s_i, s_j)`.
fn type_a_term(parts: usize, lp: i64, levels: &[usize]) -> BigUint {
    if lp < 0 {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    for q in partitions_le_length(lp, parts) {
        let s = part_counts(&q);
        let mut prod = BigUint::one();
        let mut below = 0i64;
        for j in 1..=lp as usize {
            below += levels[j - 1] as i64;
            let above: usize = (j + 1..=lp as usize).map(|i| s.get(i)).sum();
            let c = binom(parts as i64 - below - above as i64, s.get(j) as i64);
            if c.is_zero() {
                prod = c;
                break;
            }
            prod *= c;
        }
        total += prod;
    }
    total
}

/// Multiplicity of `mu` in the tensor product `π_{kε₁} ⊗ π_{lε₁}`.
pub fn tensor_mult(spec: &AlgebraSpec, k: i64, l: i64, mu: &Weight) -> Result<Multiplicity> {
    check_highest(k, l)?;
    spec.check_length(mu)?;
    if spec.family() == Family::A {
        return Ok(match type_a_levels(spec, mu, k + l, l as usize) {
            Some((_, levels)) => type_a_term(spec.dim(), l, &levels),
            None => BigUint::zero(),
        });
    }
    let stats = stats_of(mu.coords(), l as usize);
    let r = depth(k + l, stats.one_norm);
    if !depth_admissible(spec.family(), r) {
        return Ok(BigUint::zero());
    }
    Ok(TensorContext::new(spec, &stats.level_counts).term(l, r))
}

/// Multiplicity of `mu` in `π_{kε₁+lε₂}`.
pub fn mult_bivariate(spec: &AlgebraSpec, k: i64, l: i64, mu: &Weight) -> Result<Multiplicity> {
    check_highest(k, l)?;
    spec.check_length(mu)?;
    if spec.family() == Family::A {
        let Some((rep, levels)) = type_a_levels(spec, mu, k + l, l as usize) else {
            return Ok(BigUint::zero());
        };
        if rep.coords().iter().any(|&a| a > k) {
            return Ok(BigUint::zero());
        }
        let parts = spec.dim();
        let value = BigInt::from(type_a_term(parts, l, &levels))
            - BigInt::from(type_a_term(parts, l - 1, &levels));
        return Ok(to_natural(value));
    }
    let stats = stats_of(mu.coords(), l as usize);
    let r = depth(k + l, stats.one_norm);
    if !depth_admissible(spec.family(), r) {
        return Ok(BigUint::zero());
    }
    let ctx = TensorContext::new(spec, &stats.level_counts);
    let r1 = r.sub_int(1);
    let value = BigInt::from(ctx.term(l, r)) - BigInt::from(ctx.term(l - 1, r))
        - BigInt::from(ctx.term(l - 1, r1))
        + BigInt::from(ctx.term(l - 2, r1));
    Ok(to_natural(value))
}

fn rational(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `R(n, k, l, N)` from the zero-weight closed forms.
fn zero_weight_ratio(n: i64, k: i64, l: i64, big_n: i64) -> BigRational {
    if (big_n - l) % 2 == 0 {
        frac(l - big_n + n - 2, l - big_n + 2 * n - 4)
    } else {
        frac(k + 1 - big_n + n - 2, k + 1 - big_n + 2 * n - 4)
    }
}

/// Multiplicity of the zero weight via the single-sum closed forms.
pub fn mult_zero_weight(spec: &AlgebraSpec, k: i64, l: i64) -> Result<Multiplicity> {
    check_highest(k, l)?;
    let n = spec.rank() as i64;
    let family = spec.family();
    if family == Family::A {
        return Err(Error::UnsupportedFamily {
            family,
            reason: "the zero-weight closed form covers types B, C and D",
        });
    }
    if family != Family::B && (k + l) % 2 != 0 {
        return Ok(BigUint::zero());
    }
    let d = row_degree(spec);
    let mut sum = BigRational::zero();
    for big_n in 0..=l {
        let low = (l - big_n).div_euclid(2);
        let high = (k + 1 - big_n).div_euclid(2);
        let weight = match family {
            Family::D => zero_weight_ratio(n, k, l, big_n) * rational(2),
            Family::C => zero_weight_ratio(n + 1, k, l, big_n) * rational(2),
            Family::B => {
                if (k + l) % 2 == 0 {
                    rational(1) - frac(low * high, (low + n - 1) * (high + n - 1))
                } else {
                    frac(high, high + n - 1) - frac(low, low + n - 1)
                }
            }
            Family::A => unreachable!(),
        };
        let sign = if (big_n + l) % 2 == 0 { 1 } else { -1 };
        let count = binom(low + d, d) * binom(high + d, d) * count_one_norm_sphere(n as usize, big_n as usize);
        sum += weight * rational(BigInt::from(count) * sign);
    }
    assert!(sum.is_integer(), "zero-weight closed form produced {sum}");
    Ok(to_natural(sum.to_integer()))
}

/// Closed form for `π_{kε₁+2ε₂}` of type `D_n`.
pub fn mult_l2_d(n: usize, k: i64, mu: &Weight) -> Result<Multiplicity> {
    let spec = AlgebraSpec::new(Family::D, n)?;
    check_highest(k, 2)?;
    spec.check_length(mu)?;
    let stats = stats_of(mu.coords(), 2);
    let Some(r) = depth(k + 2, stats.one_norm).as_natural() else {
        return Ok(BigUint::zero());
    };
    let n = n as i64;
    let l0 = stats.level_counts[0] as i64;
    let l1 = stats.level_counts[1] as i64;
    let b = |top: i64, bottom: i64| BigInt::from(binom(top, bottom));
    let pairs = b(n - l0, 2);
    let value = b(r + n - 4, n - 2) * (BigInt::from(2 * l0 * (n - 1)) + &pairs)
        + b(r + n - 3, n - 2) * (BigInt::from(2 * l0 * (n - l0) + l1 - n) + &pairs * 2)
        + b(r + n - 2, n - 2) * (pairs - l1);
    Ok(to_natural(value))
}

/// Closed form for `π_{kε₁+2ε₂}` of type `A_n`.
pub fn mult_l2_a(n: usize, k: i64, mu: &Weight) -> Result<Multiplicity> {
    let spec = AlgebraSpec::new(Family::A, n)?;
    check_highest(k, 2)?;
    spec.check_length(mu)?;
    let Some((rep, levels)) = type_a_levels(&spec, mu, k + 2, 2) else {
        return Ok(BigUint::zero());
    };
    if rep.coords().iter().any(|&a| a > k) {
        return Ok(BigUint::zero());
    }
    let value = BigInt::from(binom(n as i64 + 1 - levels[0] as i64, 2)) - levels[1];
    Ok(to_natural(value))
}

/// Closed form for `π_{kε₁+ε₂}`.
pub fn mult_l1(spec: &AlgebraSpec, k: i64, mu: &Weight) -> Result<Multiplicity> {
    check_highest(k, 1)?;
    spec.check_length(mu)?;
    let n = spec.rank() as i64;
    if spec.family() == Family::A {
        let Some((rep, levels)) = type_a_levels(spec, mu, k + 1, 1) else {
            return Ok(BigUint::zero());
        };
        if rep.coords().iter().any(|&a| a > k) {
            return Ok(BigUint::zero());
        }
        return Ok(to_natural(BigInt::from(n - levels[0] as i64)));
    }
    let stats = stats_of(mu.coords(), 1);
    let r = depth(k + 1, stats.one_norm);
    if !depth_admissible(spec.family(), r) {
        return Ok(BigUint::zero());
    }
    let d = row_degree(spec);
    let l0 = stats.level_counts[0] as i64;
    let row = |x: HalfInteger| BigInt::from(binom(x.floor() + d, d));
    let mut value = row(r.sub_int(1)) * (2 * l0 + n - l0) + row(r) * (n - l0);
    if spec.family() == Family::B {
        value += row(r.sub_half(1));
    }
    value -= row(r) + row(r.sub_int(1));
    Ok(to_natural(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::freudenthal_diagram;
    use crate::weight_tables::candidate_dominants;
    use proptest::prelude::*;

    fn spec(f: Family, n: usize) -> AlgebraSpec {
        AlgebraSpec::new(f, n).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    fn m(v: Result<Multiplicity>) -> u64 {
        v.unwrap().try_into().unwrap()
    }

    #[test]
    fn half_integers() {
        let r = HalfInteger::from_twice(5);
        assert_eq!((r.floor(), r.is_integer(), r.to_string()), (2, false, "5/2".into()));
        assert_eq!(HalfInteger::from_twice(-1).floor(), -1);
        assert_eq!(HalfInteger::from_int(3).as_natural(), Some(3));
        assert_eq!(HalfInteger::from_twice(-2).as_natural(), None);
        assert_eq!(r.sub_half(1), HalfInteger::from_int(2));
    }

    #[test]
    fn tensor_examples() {
        let c2 = spec(Family::C, 2);
        assert_eq!(m(tensor_mult(&c2, 1, 1, &w(&[0, 0]))), 4);
        assert_eq!(m(tensor_mult(&spec(Family::D, 3), 2, 2, &w(&[3, 3, 0]))), 0);
        let b3 = spec(Family::B, 3);
        for mu in [w(&[0, 0, 0]), w(&[2, 1, 0]), w(&[3, 0, 0])] {
            assert_eq!(tensor_mult(&b3, 3, 0, &mu).unwrap(), mult_single_row(&b3, 3, &mu).unwrap());
        }
    }

    #[test]
    fn bivariate_examples() {
        assert_eq!(m(mult_bivariate(&spec(Family::C, 2), 1, 1, &w(&[0, 0]))), 1);
        assert_eq!(m(mult_bivariate(&spec(Family::A, 2), 2, 2, &w(&[2, 1, 1]))), 1);
        assert_eq!(m(mult_bivariate(&spec(Family::C, 3), 2, 1, &w(&[0, 0, 0]))), 0);
        for f in Family::ALL {
            let s = spec(f, 4);
            assert_eq!(m(mult_bivariate(&s, 5, 3, &s.highest_weight(5, 3))), 1);
        }
    }

    #[test]
    fn type_a_normalization() {
        let s = spec(Family::A, 2);
        // (1,1,1) and (0,0,0) name the same weight; sum 3 is reachable.
        assert_eq!(m(mult_bivariate(&s, 2, 1, &w(&[1, 1, 1]))), 2);
        assert_eq!(m(mult_bivariate(&s, 2, 1, &w(&[0, 0, 0]))), 2);
        assert_eq!(m(mult_bivariate(&s, 2, 1, &w(&[5, 5, 5]))), 2);
        assert_eq!(m(mult_bivariate(&s, 2, 1, &w(&[1, 0, 0]))), 0);
        assert_eq!(m(mult_bivariate(&s, 2, 2, &w(&[4, 0, 0]))), 0);
    }

    #[test]
    fn errors() {
        let b2 = spec(Family::B, 2);
        assert_eq!(
            mult_bivariate(&b2, 1, 2, &w(&[0, 0])),
            Err(Error::InvalidHighestWeight { k: 1, l: 2 })
        );
        assert_eq!(
            mult_bivariate(&b2, 2, 1, &w(&[0, 0, 0])),
            Err(Error::LengthMismatch { expected: 2, got: 3 })
        );
        assert!(matches!(
            mult_zero_weight(&spec(Family::A, 2), 2, 1),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(matches!(mult_l2_d(2, 3, &w(&[0, 0])), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn closed_form_examples() {
        let d3 = spec(Family::D, 3);
        assert_eq!(m(mult_zero_weight(&d3, 2, 1)), 0);
        assert_eq!(m(mult_zero_weight(&spec(Family::C, 2), 1, 1)), 1);
        assert_eq!(m(mult_zero_weight(&spec(Family::B, 2), 1, 0)), 1);
        assert_eq!(m(mult_l2_d(3, 3, &w(&[3, 2, 0]))), 1);
        let tricky = w(&[1, 1, 1]);
        let truth = freudenthal_diagram(&d3, &d3.highest_weight(3, 2)).unwrap().get(&tricky);
        assert_eq!(mult_l2_d(3, 3, &tricky).unwrap(), truth);
        assert_eq!(m(mult_l2_d(3, 3, &tricky)), 6);
        assert_eq!(m(mult_l2_d(4, 3, &w(&[5, 1, 0, 0]))), 0);
        assert_eq!(m(mult_l2_a(2, 2, &w(&[2, 1, 1]))), 1);
        assert_eq!(m(mult_l2_a(2, 2, &w(&[2, 2, 0]))), 1);
        assert_eq!(m(mult_l2_a(2, 2, &w(&[4, 0, 0]))), 0);
        assert_eq!(m(mult_l1(&spec(Family::A, 2), 1, &w(&[1, 1, 0]))), 1);
        assert_eq!(m(mult_l1(&d3, 1, &w(&[1, 1, 1]))), 0);
        for f in [Family::B, Family::C, Family::D] {
            let s = spec(f, 3);
            assert_eq!(m(mult_l1(&s, 4, &w(&[4, 1, 0]))), 1);
        }
    }

    /// Rows `j ≥ 3` of the placement count only matter once `l ≥ 4`.
    #[test]
    fn deep_levels_match_freudenthal() {
        for (f, n, k, l) in [
            (Family::B, 3, 4, 4),
            (Family::C, 3, 5, 4),
            (Family::D, 4, 4, 4),
            (Family::B, 2, 5, 5),
            (Family::C, 4, 5, 5),
            (Family::D, 5, 6, 5),
            (Family::D, 4, 6, 6),
            (Family::A, 3, 5, 4),
        ] {
            let s = spec(f, n);
            let d = freudenthal_diagram(&s, &s.highest_weight(k, l)).unwrap();
            for mu in candidate_dominants(&s, k, l).unwrap() {
                assert_eq!(mult_bivariate(&s, k, l, &mu).unwrap(), d.get(&mu), "{s} k={k} l={l} {mu}");
            }
        }
    }

    fn small_case() -> impl Strategy<Value = (AlgebraSpec, i64, i64, Vec<i64>)> {
        (0usize..4, 2usize..5, 0i64..5, 0i64..4).prop_flat_map(|(fi, n, l, extra)| {
            let f = Family::ALL[fi];
            let n = n.max(f.min_rank());
            let s = AlgebraSpec::new(f, n).unwrap();
            let k = l + extra;
            let bound = k + l + 1;
            (Just(s), Just(k), Just(l), prop::collection::vec(-bound..=bound, s.dim()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn weyl_invariance((s, k, l, mu) in small_case(), seed in any::<u64>()) {
            let base = mult_bivariate(&s, k, l, &Weight::new(mu.clone())).unwrap();
            let mut image = mu.clone();
            let len = image.len();
            image.rotate_left((seed % len as u64) as usize);
            image.swap(0, len - 1);
            if s.family() != Family::A {
                for (i, a) in image.iter_mut().enumerate() {
                    if seed >> (8 + i) & 1 == 1 {
                        *a = -*a;
                    }
                }
            }
            prop_assert_eq!(mult_bivariate(&s, k, l, &Weight::new(image)).unwrap(), base);
        }

        #[test]
        fn vanishing((s, k, l, mu) in small_case()) {
            prop_assume!(s.family() != Family::A);
            let norm: i64 = mu.iter().map(|a| a.abs()).sum();
            let value = mult_bivariate(&s, k, l, &Weight::new(mu)).unwrap();
            let parity_forbidden = s.family() != Family::B && (k + l - norm) % 2 != 0;
            if norm > k + l || parity_forbidden {
                prop_assert_eq!(value, BigUint::zero());
            }
        }

        #[test]
        fn virtual_ring_identity((s, k, l, mu) in small_case()) {
            prop_assume!(s.family() != Family::A && l >= 1);
            let mu = Weight::new(mu);
            let t = |a: i64, b: i64| -> BigInt {
                if b < 0 { BigInt::zero() } else { BigInt::from(tensor_mult(&s, a, b, &mu).unwrap()) }
            };
            let lhs = BigInt::from(mult_bivariate(&s, k, l, &mu).unwrap());
            prop_assert_eq!(lhs, t(k, l) - t(k + 1, l - 1) - t(k - 1, l - 1) + t(k, l - 2));
        }
    }
}
