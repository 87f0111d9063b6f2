//! Join-cut recursion in integer form.
//!
//! With `Z(g, α) = d! · r! · c(g, α) = |C_α| · F(g, α)` (the number of
//! transitive factorizations ending anywhere in the class `C_α`), the
//! coefficient equation `r · c = [join_within + join_across + cut](c)`
//! becomes an integer recursion:
//!
//! ```text
//! 2 Z(g, β) = Σ_cut (i+j) m_{i+j} Z(g, src)
//!           + Σ_within ij · mult · Z(g−1, src)
//!           + Σ_across ij m_i m_j Z(g1, s1) Z(g2, s2) C(d, d1) C(r−1, r1)
//! ```
//!
//! Every key of one `r`-layer depends only on the layer below, so layers are
//! solved in order and each layer in parallel.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::partition::{enumerate_partitions, Partition, PartitionConstraints};
use crate::rational::binomial;

pub(crate) type ZTable = HashMap<(u32, Partition), BigInt>;

/// A downward-closed set of keys: `d ≤ d_max`, `g ≤ g_max` and, optionally,
/// `g + n ≤ max_weight`.
///
/// Every source of a join-cut term has degree `≤ d`, genus `≤ g` and weight
/// `g + n` no larger than the target's, so the region is closed under the
/// recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub d_max: u32,
    pub g_max: u32,
    pub max_weight: Option<u32>,
}

impl Region {
    pub fn new(d_max: u32, g_max: u32) -> Self {
        Region {
            d_max,
            g_max,
            max_weight: None,
        }
    }

    /// The dependency cone needed for `n`-part keys of genus `g`.
    pub fn cone(g: u32, n: usize, d_max: u32) -> Self {
        Region {
            d_max,
            g_max: g,
            max_weight: Some(g + n as u32),
        }
    }

    pub fn contains(&self, g: u32, alpha: &Partition) -> bool {
        g <= self.g_max
            && alpha.degree() <= self.d_max
            && self
                .max_weight
                .is_none_or(|w| g + alpha.len() as u32 <= w)
    }

    /// Keys of the region grouped by `r`, ascending; within a layer keys are
    /// in `(g, canonical partition)` order.
    pub fn layers(&self) -> Vec<(i64, Vec<(u32, Partition)>)> {
        let max_parts = self.max_weight.map(|w| w as usize);
        let constraints = PartitionConstraints {
            max_parts,
            ..Default::default()
        };
        let parts = enumerate_partitions(self.d_max, constraints);
        let mut keys: Vec<(i64, u32, Partition)> = Vec::new();
        for g in 0..=self.g_max {
            for a in parts.iter().filter(|a| !a.is_empty()) {
                if self.contains(g, a) {
                    keys.push((a.transposition_count(g), g, a.clone()));
                }
            }
        }
        keys.sort();
        let mut layers: Vec<(i64, Vec<(u32, Partition)>)> = Vec::new();
        for (r, g, a) in keys {
            match layers.last_mut() {
                Some((lr, v)) if *lr == r => v.push((g, a)),
                _ => layers.push((r, vec![(g, a)])),
            }
        }
        layers
    }
}

struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    fn new(n_max: u32) -> Self {
        let rows = (0..=n_max)
            .map(|n| (0..=n).map(|k| binomial(n, k)).collect())
            .collect();
        Binomials { rows }
    }

    fn get(&self, n: u32, k: u32) -> &BigInt {
        &self.rows[n as usize][k as usize]
    }
}

fn lookup<'a>(table: &'a ZTable, g: u32, alpha: &Partition) -> &'a BigInt {
    table
        .get(&(g, alpha.clone()))
        .unwrap_or_else(|| panic!("join-cut source ({g}, {alpha}) solved out of order"))
}

/// Solves every key of `region` that is missing from `table`.
pub(crate) fn solve_region(table: &mut ZTable, region: Region) {
    let layers = region.layers();
    let r_max = layers.last().map_or(0, |(r, _)| *r).max(0) as u32;
    let binom = Binomials::new(r_max.max(region.d_max));
    for (r, keys) in layers {
        let missing: Vec<(u32, Partition)> = keys
            .into_iter()
            .filter(|k| !table.contains_key(k))
            .collect();
        if missing.is_empty() {
            continue;
        }
        let solved: Vec<((u32, Partition), BigInt)> = missing
            .into_par_iter()
            .map(|(g, a)| {
                let z = solve_key(table, &binom, g, &a, r);
                ((g, a), z)
            })
            .collect();
        table.extend(solved);
    }
}

fn solve_key(table: &ZTable, binom: &Binomials, g: u32, beta: &Partition, r: i64) -> BigInt {
    if r < 0 {
        return BigInt::zero();
    }
    if r == 0 {
        // only (0, (1)) sits on layer 0
        return if g == 0 && beta.parts() == [1] {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let d = beta.degree();
    let values: Vec<u32> = beta.multiplicities().into_iter().map(|(v, _)| v).collect();
    let mut twice = BigInt::zero();

    // cut: ordered (i, j) among the parts of β
    for &i in &values {
        for &j in &values {
            if i == j && beta.multiplicity(i) < 2 {
                continue;
            }
            let src = beta.without(i).and_then(|b| b.without(j)).unwrap().with(i + j);
            let z = lookup(table, g, &src);
            if !z.is_zero() {
                twice += z * ((i + j) * src.multiplicity(i + j));
            }
        }
    }

    for k in values.iter().copied().filter(|&k| k >= 2) {
        let rest = beta.without(k).unwrap();

        // join within one factorization: genus drops by one
        if g >= 1 {
            for i in 1..k {
                let j = k - i;
                let src = rest.with(i).with(j);
                let z = lookup(table, g - 1, &src);
                if z.is_zero() {
                    continue;
                }
                let mi = src.multiplicity(i);
                let mult = if i == j { mi * (mi - 1) } else { mi * src.multiplicity(j) };
                twice += z * (i * j * mult);
            }
        }

        // join across two factorizations
        for (left, right) in rest.sub_multisets() {
            for i in 1..k {
                let j = k - i;
                let s1 = left.with(i);
                let s2 = right.with(j);
                let weight = i * j * s1.multiplicity(i) * s2.multiplicity(j);
                let d1 = s1.degree();
                for g1 in 0..=g {
                    let r1 = s1.transposition_count(g1);
                    let r2 = s2.transposition_count(g - g1);
                    if r1 < 0 || r2 < 0 {
                        continue;
                    }
                    debug_assert_eq!(r1 + r2 + 1, r);
                    let z1 = lookup(table, g1, &s1);
                    if z1.is_zero() {
                        continue;
                    }
                    let z2 = lookup(table, g - g1, &s2);
                    if z2.is_zero() {
                        continue;
                    }
                    let interleave = binom.get(d, d1) * binom.get(r as u32 - 1, r1 as u32);
                    twice += z1 * z2 * interleave * weight;
                }
            }
        }
    }
    let (z, rem) = twice.div_rem(&BigInt::from(2));
    assert!(rem.is_zero(), "odd join-cut sum at ({g}, {beta})");
    z
}
