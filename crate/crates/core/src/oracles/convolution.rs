//! Brute-force tensor products.
//!
//! `m_{τ_{k,l}}(μ) = Σ_η m_{π_{kε₁}}(μ − η)·m_{π_{lε₁}}(η)`, with `η` running
//! over the integer one-norm ball of radius `l` (B/C/D) or over the
//! non-negative compositions of `l` (A). The irreducible is then recovered
//! as `τ_{k,l} − τ_{k+1,l−1} − τ_{k−1,l−1} + τ_{k,l−2}` (B/C/D) or
//! `τ_{k,l} − τ_{k+1,l−1}` (A).
//!
//! Single-row multiplicities are evaluated here with their own code path:
//! `C(⌊(k−‖ν‖)/2⌋ + n−1, n−1)` for B, and for C/D the same with `r` required
//! to be a natural number and lower index `n−1` resp. `n−2`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::root_systems::{AlgebraSpec, Family, Weight};

fn single_row(spec: &AlgebraSpec, k: i64, nu: &[i64]) -> BigUint {
    let n = spec.rank() as u64;
    let norm: i64 = nu.iter().map(|a| a.abs()).sum();
    let gap = k - norm;
    if gap < 0 {
        return BigUint::zero();
    }
    let (r, lower) = match spec.family() {
        Family::B => (gap / 2, n - 1),
        Family::C if gap % 2 == 0 => (gap / 2, n - 1),
        Family::D if gap % 2 == 0 => (gap / 2, n - 2),
        _ => return BigUint::zero(),
    };
    binomial(BigUint::from(r as u64 + lower), BigUint::from(lower))
}

/// Calls `f` on every `η ∈ Zⁿ` with `‖η‖ ≤ radius`.
fn for_each_in_ball(n: usize, radius: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(slot: usize, left: i64, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if slot == cur.len() {
            f(cur);
            return;
        }
        for v in -left..=left {
            cur[slot] = v;
            rec(slot + 1, left - v.abs(), cur, f);
        }
        cur[slot] = 0;
    }
    let mut cur = vec![0; n];
    rec(0, radius, &mut cur, f);
}

/// Calls `f` on every composition of `total` into `parts` non-negative parts.
fn for_each_composition(parts: usize, total: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(slot: usize, left: i64, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            f(cur);
            return;
        }
        for v in 0..=left {
            cur[slot] = v;
            rec(slot + 1, left - v, cur, f);
        }
    }
    let mut cur = vec![0; parts];
    rec(0, total, &mut cur, f);
}

/// `m_{τ_{k,l}}(μ)` by direct convolution.
pub fn convolution_tensor(spec: &AlgebraSpec, k: i64, l: i64, mu: &Weight) -> Result<BigUint> {
    if l < 0 || k < 0 {
        return Err(Error::InvalidHighestWeight { k, l });
    }
    spec.check_length(mu)?;
    let mut total = BigUint::zero();
    match spec.family() {
        Family::A => {
            let parts = spec.dim() as i64;
            let gap = k + l - mu.coords().iter().sum::<i64>();
            if gap % parts != 0 {
                return Ok(total);
            }
            let rep: Vec<i64> = mu.coords().iter().map(|a| a + gap / parts).collect();
            let mut diff = vec![0; rep.len()];
            for_each_composition(rep.len(), l, &mut |eta| {
                for ((d, a), e) in diff.iter_mut().zip(&rep).zip(eta) {
                    *d = a - e;
                }
                if diff.iter().all(|&x| x >= 0) {
                    total += 1u32;
                }
            });
        }
        _ => {
            let mut diff = vec![0; spec.dim()];
            for_each_in_ball(spec.dim(), l, &mut |eta| {
                let small = single_row(spec, l, eta);
                if small.is_zero() {
                    return;
                }
                for ((d, a), e) in diff.iter_mut().zip(mu.coords()).zip(eta) {
                    *d = a - e;
                }
                total += small * single_row(spec, k, &diff);
            });
        }
    }
    Ok(total)
}

/// Multiplicity of `μ` in `π_{kε₁+lε₂}` from convolved tensor products.
pub fn convolution_mult(spec: &AlgebraSpec, k: i64, l: i64, mu: &Weight) -> Result<BigUint> {
    if l < 0 || k < l {
        return Err(Error::InvalidHighestWeight { k, l });
    }
    spec.check_length(mu)?;
    let tau = |a: i64, b: i64| -> Result<BigInt> {
        if b < 0 {
            return Ok(BigInt::zero());
        }
        convolution_tensor(spec, a, b, mu).map(BigInt::from)
    };
    let value = match spec.family() {
        Family::A => tau(k, l)? - tau(k + 1, l - 1)?,
        _ => tau(k, l)? - tau(k + 1, l - 1)? - tau(k - 1, l - 1)? + tau(k, l - 2)?,
    };
    Ok(value
        .to_biguint()
        .expect("virtual-ring combination went negative"))
}
