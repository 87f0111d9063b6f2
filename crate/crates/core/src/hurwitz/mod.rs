//! Hurwitz numbers: a brute-force factorization oracle, the join-cut solver,
//! and a persistent cache of solved values.
//!
//! Normalization: `F(g, α)` counts ordered transitive factorizations of the
//! canonical permutation of type `α` into `r` transpositions, and
//! `H^g_α = F(g, α) / ∏ α_i`. The genus-series coefficient is
//! `c(g, α) = H^g_α / (r! · |Aut α|)`.

mod cache;
pub mod oracle;
mod solver;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::genus_series::GenusSeries;
use crate::partition::Partition;
use crate::rational::{factorial, from_bigint, Rational};

pub use cache::{FORMAT_ID, FORMAT_VERSION, NORMALIZATION_TAG};
pub use oracle::{count_factorizations, oracle_count_f, search_bound, DEFAULT_BUDGET};
pub use solver::Region;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Oracle,
    Solver,
    Cache,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzValue {
    pub g: u32,
    pub alpha: Partition,
    pub r: i64,
    pub h: Rational,
    pub provenance: Provenance,
}

/// Solved Hurwitz numbers keyed by `(g, α)`.
///
/// Values are held internally as the integers `Z = d! · H / |Aut α|`.
#[derive(Clone, Debug, Default)]
pub struct HurwitzCache {
    d_max: u32,
    g_max: u32,
    table: HashMap<(u32, Partition), BigInt>,
}

impl HurwitzCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Largest degree and genus solved so far.
    pub fn bounds(&self) -> (u32, u32) {
        (self.d_max, self.g_max)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn contains(&self, g: u32, alpha: &Partition) -> bool {
        self.table.contains_key(&(g, alpha.clone()))
    }

    /// `H^g_α` if solved.
    pub fn get(&self, g: u32, alpha: &Partition) -> Option<Rational> {
        self.table
            .get(&(g, alpha.clone()))
            .map(|z| z_to_h(z, alpha))
    }

    /// `c(g, α) = H / (r! |Aut α|)` if solved.
    pub fn series_coefficient(&self, g: u32, alpha: &Partition) -> Option<Rational> {
        let z = self.table.get(&(g, alpha.clone()))?;
        let r = alpha.transposition_count(g);
        if r < 0 {
            return Some(Rational::zero());
        }
        Some(Rational::new(
            z.clone(),
            factorial(alpha.degree()) * factorial(r as u32),
        ))
    }

    /// Solves every missing key of `region`.
    pub fn solve(&mut self, region: Region) {
        solver::solve_region(&mut self.table, region);
        self.d_max = self.d_max.max(region.d_max);
        self.g_max = self.g_max.max(region.g_max);
    }

    /// Solved entries sorted by `(r, g, canonical partition)`.
    pub fn entries(&self) -> Vec<(u32, Partition, Rational)> {
        let mut keys: Vec<&(u32, Partition)> = self.table.keys().collect();
        keys.sort_by(|(g1, a1), (g2, a2)| {
            (a1.transposition_count(*g1), g1, a1).cmp(&(a2.transposition_count(*g2), g2, a2))
        });
        keys.into_iter()
            .map(|(g, a)| (*g, a.clone(), z_to_h(&self.table[&(*g, a.clone())], a)))
            .collect()
    }

    /// The solved values as a genus series truncated at the given bounds.
    pub fn to_genus_series(&self, d_max: u32, g_max: u32) -> GenusSeries {
        let mut s = GenusSeries::new(d_max, g_max);
        for (g, a) in self.table.keys() {
            if let Some(c) = self.series_coefficient(*g, a) {
                s.set(*g, a.clone(), c);
            }
        }
        s
    }

    pub(crate) fn insert_h(&mut self, g: u32, alpha: Partition, h: &Rational) -> Result<()> {
        let z = h * from_bigint(factorial(alpha.degree())) / from_bigint(alpha.aut_order());
        if !z.is_integer() {
            return Err(crate::error::Error::CacheFormat(format!(
                "value {h} at ({g}, {alpha}) is not a valid Hurwitz number"
            )));
        }
        self.d_max = self.d_max.max(alpha.degree());
        self.g_max = self.g_max.max(g);
        self.table.insert((g, alpha), z.to_integer());
        Ok(())
    }
}

fn z_to_h(z: &BigInt, alpha: &Partition) -> Rational {
    Rational::new(z * alpha.aut_order(), factorial(alpha.degree()))
}

/// `H^g_α = F(g, α) / ∏ α_i` by exhaustive enumeration.
pub fn hurwitz_oracle(g: u32, alpha: &Partition, budget: u128) -> Result<HurwitzValue> {
    let f = oracle_count_f(g, alpha, budget)?;
    Ok(HurwitzValue {
        g,
        alpha: alpha.clone(),
        r: alpha.transposition_count(g),
        h: Rational::new(BigInt::from(f), alpha.part_product()),
        provenance: Provenance::Oracle,
    })
}

/// `H^g_α` from the join-cut recursion, solving (and caching) the dependency
/// cone of `(g, α)` if needed. Total: returns zero when `r < 0`.
pub fn hurwitz_solve(g: u32, alpha: &Partition, cache: &mut HurwitzCache) -> HurwitzValue {
    let r = alpha.transposition_count(g);
    let provenance = if cache.contains(g, alpha) {
        Provenance::Cache
    } else {
        if r >= 0 && !alpha.is_empty() {
            cache.solve(Region::cone(g, alpha.len(), alpha.degree()));
        }
        Provenance::Solver
    };
    let h = cache.get(g, alpha).unwrap_or_else(Rational::zero);
    HurwitzValue {
        g,
        alpha: alpha.clone(),
        r,
        h,
        provenance,
    }
}

/// Solves every partition of every `d ≤ d_max` for every `g ≤ g_max`.
pub fn solve_closure(d_max: u32, g_max: u32, cache: &mut HurwitzCache) {
    cache.solve(Region::new(d_max, g_max));
}
