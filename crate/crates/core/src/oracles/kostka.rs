//! Kostka numbers by counting semistandard tableaux.
//!
//! Letters are placed one at a time. Letter `i` fills a horizontal strip,
//! so the shape after letter `i` interlaces the shape before it. The count
//! is memoized on `(letter, current shape)`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

struct Counter<'a> {
    shape: &'a [i64],
    content: &'a [i64],
    memo: HashMap<(usize, Vec<i64>), BigUint>,
}

impl Counter<'_> {
    /// Fillings of `shape / current` using letters `letter..`.
    fn count(&mut self, letter: usize, current: &[i64]) -> BigUint {
        if letter == self.content.len() {
            return if current == self.shape {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let key = (letter, current.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut next = current.to_vec();
        let mut total = BigUint::zero();
        self.strips(letter, current, 0, self.content[letter], &mut next, &mut total);
        self.memo.insert(key, total.clone());
        total
    }

    /// Distributes `left` copies of the letter over rows `row..`, keeping
    /// `current[row] ≤ next[row] ≤ min(shape[row], current[row−1])`.
    fn strips(
        &mut self,
        letter: usize,
        current: &[i64],
        row: usize,
        left: i64,
        next: &mut Vec<i64>,
        total: &mut BigUint,
    ) {
        if row == current.len() {
            if left == 0 {
                let snapshot = next.clone();
                *total += self.count(letter + 1, &snapshot);
            }
            return;
        }
        let mut cap = self.shape[row];
        if row > 0 {
            cap = cap.min(current[row - 1]);
        }
        let room = (cap - current[row]).max(0);
        for add in 0..=room.min(left) {
            next[row] = current[row] + add;
            self.strips(letter, current, row + 1, left - add, next, total);
        }
        next[row] = current[row];
    }
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
///
/// `shape` must be a partition (weakly decreasing, non-negative); trailing
/// zeros are allowed. Content entries must be non-negative.
pub fn kostka_count(shape: &[i64], content: &[i64]) -> Result<BigUint> {
    if shape.iter().any(|&x| x < 0) || shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{shape:?} is not a partition")));
    }
    if content.iter().any(|&x| x < 0) {
        return Err(Error::InvalidShape(format!("content {content:?} has a negative entry")));
    }
    let boxes: i64 = shape.iter().sum();
    let filled: i64 = content.iter().sum();
    if boxes != filled {
        return Err(Error::ShapeContentMismatch {
            boxes,
            content: filled,
        });
    }
    let mut counter = Counter {
        shape,
        content,
        memo: HashMap::new(),
    };
    Ok(counter.count(0, &vec![0; shape.len()]))
}
