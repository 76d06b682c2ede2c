//! Freudenthal's recursion
//!
//! ```text
//! (‖λ+ρ‖² − ‖μ+ρ‖²)·m(μ) = 2 Σ_{α>0} Σ_{t≥1} m(μ+tα)·⟨μ+tα, α⟩
//! ```
//!
//! evaluated on dominant weights in order of increasing depth below `λ`.
//! Lookups of non-dominant weights go through the Weyl-dominant
//! representative. Type A inner products are taken on sum-zero projections,
//! scaled by `n + 1` to stay integral.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::root_systems::{for_each_orbit_point, weyl_dominant, weyl_orbit_size, AlgebraSpec, Family, Weight};

/// Dominant weights of `π_λ` with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    spec: AlgebraSpec,
    highest: Weight,
    entries: BTreeMap<Weight, BigUint>,
}

impl WeightDiagram {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// Dominant weight → multiplicity. Type A keys keep the coordinate sum
    /// of the highest weight.
    pub fn entries(&self) -> &BTreeMap<Weight, BigUint> {
        &self.entries
    }

    /// Multiplicity of an arbitrary weight.
    pub fn get(&self, mu: &Weight) -> BigUint {
        let key = match self.spec.family() {
            Family::A => {
                let total: i64 = self.highest.coords().iter().sum();
                let gap = total - mu.coords().iter().sum::<i64>();
                let parts = mu.len() as i64;
                if gap % parts != 0 {
                    return BigUint::zero();
                }
                let rep: Vec<i64> = mu.coords().iter().map(|a| a + gap / parts).collect();
                weyl_dominant(&self.spec, &Weight::new(rep))
            }
            _ => weyl_dominant(&self.spec, mu),
        };
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    /// `Σ |W·μ| · m(μ)` over the dominant weights.
    pub fn dimension(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(mu, m)| weyl_orbit_size(&self.spec, mu) * m)
            .sum()
    }

    /// Every weight of the representation with its multiplicity.
    pub fn expand(&self) -> BTreeMap<Weight, BigUint> {
        let mut out = BTreeMap::new();
        for (mu, m) in &self.entries {
            let signed = self.spec.family() != Family::A;
            let parity = mu.coords().iter().filter(|&&a| a < 0).count() % 2;
            let split = self.spec.family() == Family::D && mu.coords().iter().all(|&a| a != 0);
            for_each_orbit_point(mu.coords(), signed, |p| {
                if split && p.iter().filter(|&&a| a < 0).count() % 2 != parity {
                    return;
                }
                out.insert(Weight::new(p.to_vec()), m.clone());
            });
        }
        out
    }
}

struct Geometry {
    spec: AlgebraSpec,
    roots: Vec<Vec<i64>>,
    projected_roots: Vec<Vec<i64>>,
    rho2: Vec<i64>,
}

impl Geometry {
    fn new(spec: &AlgebraSpec) -> Self {
        let roots = spec.positive_roots();
        let projected_roots = roots.iter().map(|r| project(spec, r)).collect();
        Self {
            spec: *spec,
            roots,
            projected_roots,
            rho2: spec.rho_doubled(),
        }
    }

    /// `|P(2v + 2ρ)|²`.
    fn shifted_norm(&self, v: &[i64]) -> i128 {
        let w: Vec<i64> = v.iter().zip(&self.rho2).map(|(a, r)| 2 * a + r).collect();
        project(&self.spec, &w).iter().map(|&x| (x as i128) * (x as i128)).sum()
    }

    /// Simple-root height of `λ − v`, or `None` if `v ≰ λ`.
    fn depth_below(&self, lambda: &[i64], v: &[i64]) -> Option<i64> {
        let diff: Vec<i64> = lambda.iter().zip(v).map(|(a, b)| a - b).collect();
        let coeffs = self.spec.simple_root_coefficients(&diff)?;
        coeffs.iter().all(|&c| c >= 0).then(|| coeffs.iter().sum())
    }
}

/// Sum-zero projection scaled by `n + 1` (type A); identity otherwise.
fn project(spec: &AlgebraSpec, v: &[i64]) -> Vec<i64> {
    match spec.family() {
        Family::A => {
            let parts = v.len() as i64;
            let sum: i64 = v.iter().sum();
            v.iter().map(|&a| parts * a - sum).collect()
        }
        _ => v.to_vec(),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dominant weight diagram of `π_λ`.
pub fn freudenthal_diagram(spec: &AlgebraSpec, lambda: &Weight) -> Result<WeightDiagram> {
    spec.check_length(lambda)?;
    if !spec.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.coords().to_vec()));
    }
    let geo = Geometry::new(spec);
    let top = lambda.coords();

    // Saturate: dominant representatives of μ − α that stay below λ.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(top.to_vec());
    queue.push_back(top.to_vec());
    let mut layers: Vec<(i64, Vec<i64>)> = vec![(0, top.to_vec())];
    while let Some(mu) = queue.pop_front() {
        for root in &geo.roots {
            let lower: Vec<i64> = mu.iter().zip(root).map(|(a, b)| a - b).collect();
            let dom = weyl_dominant(spec, &Weight::new(lower)).0;
            if seen.contains(&dom) {
                continue;
            }
            if let Some(depth) = geo.depth_below(top, &dom) {
                seen.insert(dom.clone());
                layers.push((depth, dom.clone()));
                queue.push_back(dom);
            }
        }
    }
    layers.sort();

    let top_norm = geo.shifted_norm(top);
    let mut mults: HashMap<Vec<i64>, BigUint> = HashMap::new();
    mults.insert(top.to_vec(), BigUint::one());
    let mut probe = vec![0i64; top.len()];
    for (depth, mu) in layers.iter().skip(1) {
        debug_assert!(*depth > 0);
        let mut acc = BigInt::zero();
        for (root, proj_root) in geo.roots.iter().zip(&geo.projected_roots) {
            probe.copy_from_slice(mu);
            loop {
                for (p, a) in probe.iter_mut().zip(root) {
                    *p += a;
                }
                if geo.depth_below(top, &probe).is_none() {
                    break;
                }
                let key = weyl_dominant(spec, &Weight::new(probe.clone())).0;
                if let Some(m) = mults.get(&key) {
                    let doubled: Vec<i64> = probe.iter().map(|a| 2 * a).collect();
                    let pairing = dot(&project(spec, &doubled), proj_root);
                    acc += BigInt::from(m.clone()) * pairing;
                }
            }
        }
        let gap = top_norm - geo.shifted_norm(mu);
        assert!(gap > 0, "non-positive Freudenthal denominator at {mu:?}");
        let value = BigRational::new(acc * 4, BigInt::from(gap));
        assert!(value.is_integer(), "non-integral multiplicity {value} at {mu:?}");
        let m = value
            .to_integer()
            .to_biguint()
            .expect("negative Freudenthal multiplicity");
        mults.insert(mu.clone(), m);
    }

    let entries = mults
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, m)| (Weight::new(k), m))
        .collect();
    Ok(WeightDiagram {
        spec: *spec,
        highest: lambda.clone(),
        entries,
    })
}
