//! Weight tables for `π_{kε₁+lε₂}`.
//!
//! The bivariate engine enumerates candidate dominant weights, evaluates
//! each one independently and keeps the nonzero ones. Full tables expand
//! every dominant row over its `W_n` orbit, on which multiplicities are
//! constant.
//!
//! Type A weights are written with coordinate sum `k + l`, so every weight
//! is a non-negative composition.

use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multiplicity::mult_bivariate;
use crate::oracles::freudenthal_diagram;
use crate::partitions::partitions_le_length;
use crate::root_systems::{for_each_orbit_point, weyl_dimension, weyl_orbit_size, AlgebraSpec, Family, Weight};
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub weight: Weight,
    pub mult: BigUint,
    /// Type D dominant tables only: `(a₁,…,a_{n−1},−a_n)` emitted next to a
    /// dominant row with `a_n > 0`.
    pub mirror: bool,
}

#[derive(Debug, Clone)]
pub struct TableMeta {
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
    pub engine_version: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct MultiplicityTable {
    pub spec: AlgebraSpec,
    pub k: i64,
    pub l: i64,
    pub dominant_only: bool,
    /// Sorted by weight, no duplicates, all multiplicities positive.
    pub rows: Vec<TableRow>,
    pub meta: TableMeta,
}

impl MultiplicityTable {
    pub fn get(&self, mu: &Weight) -> Option<&BigUint> {
        self.rows
            .binary_search_by(|row| row.weight.cmp(mu))
            .ok()
            .map(|i| &self.rows[i].mult)
    }

    /// Sum of multiplicities, weighting dominant rows by their Weyl orbit.
    pub fn total_weight_count(&self) -> BigUint {
        if !self.dominant_only {
            return self.rows.iter().map(|r| &r.mult).sum();
        }
        self.rows
            .iter()
            .map(|r| weyl_orbit_size(&self.spec, &r.weight) * &r.mult)
            .sum()
    }
}

/// Pads `parts` with zeros to length `len`.
fn padded(parts: &[usize], len: usize) -> Weight {
    let mut coords: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
    coords.resize(len, 0);
    Weight::new(coords)
}

/// Weakly decreasing non-negative vectors that may be dominant weights.
///
/// B/C/D: one-norm at most `k + l` (C and D keep only `‖μ‖ ≡ k+l mod 2`).
/// A: length `n + 1` with sum exactly `k + l`.
pub fn candidate_dominants(spec: &AlgebraSpec, k: i64, l: i64) -> Result<Vec<Weight>> {
    if l < 0 || k < l {
        return Err(Error::InvalidHighestWeight { k, l });
    }
    let len = spec.dim();
    let total = k + l;
    let norms: Vec<i64> = match spec.family() {
        Family::A => vec![total],
        Family::B => (0..=total).collect(),
        Family::C | Family::D => (0..=total).filter(|s| (total - s) % 2 == 0).collect(),
    };
    let mut out = Vec::new();
    for s in norms {
        out.extend(partitions_le_length(s, len).map(|q| padded(q.parts(), len)));
    }
    Ok(out)
}

/// `(a₁, …, a_{n−1}, −a_n)`.
fn mirror_of(mu: &Weight) -> Weight {
    let mut coords = mu.coords().to_vec();
    if let Some(last) = coords.last_mut() {
        *last = -*last;
    }
    Weight::new(coords)
}

/// Expands `(weight, mult)` pairs, given in `W_n`-canonical form, into rows.
fn rows_from_dominant(spec: &AlgebraSpec, dominant: Vec<(Weight, BigUint)>, dominant_only: bool) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for (mu, mult) in dominant {
        if dominant_only {
            let mirrored = spec.family() == Family::D && mu.coords().last().is_some_and(|&a| a > 0);
            if mirrored {
                rows.push(TableRow {
                    weight: mirror_of(&mu),
                    mult: mult.clone(),
                    mirror: true,
                });
            }
            rows.push(TableRow {
                weight: mu,
                mult,
                mirror: false,
            });
        } else {
            let signed = spec.family() != Family::A;
            for_each_orbit_point(mu.coords(), signed, |p| {
                rows.push(TableRow {
                    weight: Weight::new(p.to_vec()),
                    mult: mult.clone(),
                    mirror: false,
                });
            });
        }
    }
    rows.sort_unstable_by(|a, b| a.weight.cmp(&b.weight));
    rows
}

fn now_secs() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Table of `π_{kε₁+lε₂}` from the partition formulas.
///
/// Candidates are evaluated on the current rayon pool; the result does not
/// depend on the number of threads.
pub fn build_table(spec: &AlgebraSpec, k: i64, l: i64, dominant_only: bool) -> Result<MultiplicityTable> {
    let start = Instant::now();
    let candidates = candidate_dominants(spec, k, l)?;
    let evaluated: Vec<Option<(Weight, BigUint)>> = candidates
        .into_par_iter()
        .map(|mu| {
            let m = mult_bivariate(spec, k, l, &mu)?;
            Ok((!m.is_zero()).then_some((mu, m)))
        })
        .collect::<Result<_>>()?;
    let dominant = evaluated.into_iter().flatten().collect();
    let rows = rows_from_dominant(spec, dominant, dominant_only);
    Ok(MultiplicityTable {
        spec: *spec,
        k,
        l,
        dominant_only,
        rows,
        meta: TableMeta {
            generated_at: now_secs(),
            engine_version: ENGINE_VERSION.to_string(),
            elapsed: start.elapsed(),
        },
    })
}

/// The same table computed with Freudenthal's recursion.
pub fn freudenthal_table(spec: &AlgebraSpec, k: i64, l: i64, dominant_only: bool) -> Result<MultiplicityTable> {
    if l < 0 || k < l {
        return Err(Error::InvalidHighestWeight { k, l });
    }
    let start = Instant::now();
    let diagram = freudenthal_diagram(spec, &spec.highest_weight(k, l))?;
    // Diagram keys are Weyl-dominant; for D they may end in a negative entry.
    let mut dominant: Vec<(Weight, BigUint)> = diagram
        .entries()
        .iter()
        .map(|(mu, m)| {
            let coords: Vec<i64> = match spec.family() {
                Family::A => mu.coords().to_vec(),
                _ => mu.coords().iter().map(|a| a.abs()).collect(),
            };
            (Weight::new(coords), m.clone())
        })
        .collect();
    dominant.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    dominant.dedup_by(|a, b| a.0 == b.0);
    let rows = rows_from_dominant(spec, dominant, dominant_only);
    Ok(MultiplicityTable {
        spec: *spec,
        k,
        l,
        dominant_only,
        rows,
        meta: TableMeta {
            generated_at: now_secs(),
            engine_version: ENGINE_VERSION.to_string(),
            elapsed: start.elapsed(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionAudit {
    pub computed: BigUint,
    pub expected: BigUint,
    pub ok: bool,
}

/// Compares the (orbit-weighted) multiplicity sum with the Weyl dimension.
pub fn dimension_audit(table: &MultiplicityTable) -> DimensionAudit {
    let computed = table.total_weight_count();
    let expected = weyl_dimension(&table.spec, table.k, table.l)
        .expect("table was built from a valid highest weight");
    let ok = computed == expected;
    DimensionAudit { computed, expected, ok }
}
