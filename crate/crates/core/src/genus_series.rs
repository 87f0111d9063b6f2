//! Truncated genus series and the join/cut operators acting on it.
//!
//! An entry `c(g, α)` is the coefficient of `p_α z^d x^g` in the connected
//! genus series, normalized so that `c(g, α) = H^g_α / (r! · |Aut α|)` with
//! `H^g_α = F(g, α) / ∏ α_i` (see [`crate::hurwitz`]).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::partition::{enumerate_partitions, transposition_count, Partition, PartitionConstraints};
use crate::rational::{int, Rational};

pub type SeriesKey = (u32, Partition);

/// Sparse `(g, α) ↦ c(g, α)` table truncated at `d ≤ d_max`, `g ≤ g_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSeries {
    d_max: u32,
    g_max: u32,
    coeffs: BTreeMap<SeriesKey, Rational>,
}

impl GenusSeries {
    pub fn new(d_max: u32, g_max: u32) -> Self {
        GenusSeries {
            d_max,
            g_max,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn in_bounds(&self, g: u32, alpha: &Partition) -> bool {
        g <= self.g_max && alpha.degree() <= self.d_max
    }

    /// Sets a coefficient; out-of-bound keys and zeros are dropped.
    pub fn set(&mut self, g: u32, alpha: Partition, value: Rational) {
        if !self.in_bounds(g, &alpha) {
            return;
        }
        if value.is_zero() {
            self.coeffs.remove(&(g, alpha));
        } else {
            self.coeffs.insert((g, alpha), value);
        }
    }

    pub fn add_to(&mut self, g: u32, alpha: Partition, value: Rational) {
        if !self.in_bounds(g, &alpha) || value.is_zero() {
            return;
        }
        let key = (g, alpha);
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn get(&self, g: u32, alpha: &Partition) -> Rational {
        self.coeffs
            .get(&(g, alpha.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SeriesKey, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, factor: &Rational) -> GenusSeries {
        let mut out = GenusSeries::new(self.d_max, self.g_max);
        for ((g, a), v) in &self.coeffs {
            out.set(*g, a.clone(), v * factor);
        }
        out
    }

    pub fn add(&self, other: &GenusSeries) -> GenusSeries {
        let mut out = self.clone();
        for ((g, a), v) in &other.coeffs {
            out.add_to(*g, a.clone(), v.clone());
        }
        out
    }

    /// Entries whose transposition count equals `r`.
    pub fn layer(&self, r: i64) -> GenusSeries {
        self.filter(|g, a| transposition_count(g, a) == r)
    }

    pub fn filter(&self, keep: impl Fn(u32, &Partition) -> bool) -> GenusSeries {
        GenusSeries {
            d_max: self.d_max,
            g_max: self.g_max,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((g, a), _)| keep(*g, a))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Every in-bound key `(g, α)` with `d ≥ 1`.
    pub fn all_keys(&self) -> Vec<SeriesKey> {
        let parts = enumerate_partitions(self.d_max, PartitionConstraints::default());
        let mut keys = Vec::new();
        for g in 0..=self.g_max {
            for a in parts.iter().filter(|a| !a.is_empty()) {
                keys.push((g, a.clone()));
            }
        }
        keys
    }

    fn image(&self, coeff: impl Fn(u32, &Partition) -> Rational) -> GenusSeries {
        let mut out = GenusSeries::new(self.d_max, self.g_max);
        for (g, a) in self.all_keys() {
            let v = coeff(g, &a);
            out.set(g, a, v);
        }
        out
    }
}

/// Diagonal action of `z∂_z + 2x∂_x − 2 + Σ p_i ∂_{p_i}` on `p_α z^d x^g`.
pub fn lhs_eigenvalue(g: u32, alpha: &Partition) -> i64 {
    transposition_count(g, alpha)
}

fn distinct_parts(alpha: &Partition) -> Vec<u32> {
    alpha.multiplicities().into_iter().map(|(v, _)| v).collect()
}

/// `[p_β z^d x^g]` of `½ Σ (i+j) p_i p_j ∂S/∂p_{i+j}`.
pub fn cut_coefficient(s: &GenusSeries, g: u32, beta: &Partition) -> Rational {
    let mut acc = Rational::zero();
    let values = distinct_parts(beta);
    for &i in &values {
        for &j in &values {
            if i == j && beta.multiplicity(i) < 2 {
                continue;
            }
            let src = beta
                .without(i)
                .and_then(|b| b.without(j))
                .expect("parts present")
                .with(i + j);
            let c = s.get(g, &src);
            if c.is_zero() {
                continue;
            }
            acc += c * int(((i + j) * src.multiplicity(i + j)) as i64);
        }
    }
    acc / int(2)
}

/// `[p_β z^d x^g]` of `½ Σ ij x p_{i+j} ∂²S/∂p_i∂p_j`.
pub fn join_within_coefficient(s: &GenusSeries, g: u32, beta: &Partition) -> Rational {
    if g == 0 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for k in distinct_parts(beta).into_iter().filter(|&k| k >= 2) {
        let rest = beta.without(k).expect("part present");
        for i in 1..k {
            let j = k - i;
            let src = rest.with(i).with(j);
            let c = s.get(g - 1, &src);
            if c.is_zero() {
                continue;
            }
            let mi = src.multiplicity(i) as i64;
            let mult = if i == j {
                mi * (mi - 1)
            } else {
                mi * src.multiplicity(j) as i64
            };
            acc += c * int((i * j) as i64 * mult);
        }
    }
    acc / int(2)
}

/// `[p_β z^d x^g]` of `½ Σ ij p_{i+j} (∂A/∂p_i)(∂B/∂p_j)`.
pub fn join_across_coefficient(
    a: &GenusSeries,
    b: &GenusSeries,
    g: u32,
    beta: &Partition,
) -> Rational {
    let mut acc = Rational::zero();
    for k in distinct_parts(beta).into_iter().filter(|&k| k >= 2) {
        let rest = beta.without(k).expect("part present");
        for (left, right) in rest.sub_multisets() {
            for i in 1..k {
                let j = k - i;
                let s1 = left.with(i);
                let s2 = right.with(j);
                let weight = (i * j * s1.multiplicity(i) * s2.multiplicity(j)) as i64;
                for g1 in 0..=g {
                    let c1 = a.get(g1, &s1);
                    if c1.is_zero() {
                        continue;
                    }
                    let c2 = b.get(g - g1, &s2);
                    if c2.is_zero() {
                        continue;
                    }
                    acc += c1 * c2 * int(weight);
                }
            }
        }
    }
    acc / int(2)
}

pub fn join_within(s: &GenusSeries) -> GenusSeries {
    s.image(|g, beta| join_within_coefficient(s, g, beta))
}

/// Bilinear form of the quadratic join term.
pub fn join_across_pair(a: &GenusSeries, b: &GenusSeries) -> GenusSeries {
    a.image(|g, beta| join_across_coefficient(a, b, g, beta))
}

pub fn join_across(s: &GenusSeries) -> GenusSeries {
    join_across_pair(s, s)
}

pub fn cut(s: &GenusSeries) -> GenusSeries {
    s.image(|g, beta| cut_coefficient(s, g, beta))
}

/// Left minus right side of the join-cut equation, over every in-bound key.
///
/// All sources of a key `(g, α)` have degree `≤ d` and genus `≤ g`, so every
/// in-bound key has its dependency cone inside the bounds.
pub fn joincut_residual(s: &GenusSeries) -> GenusSeries {
    s.image(|g, beta| {
        let lhs = s.get(g, beta) * int(lhs_eigenvalue(g, beta));
        let rhs = join_within_coefficient(s, g, beta)
            + join_across_coefficient(s, s, g, beta)
            + cut_coefficient(s, g, beta);
        lhs - rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn series(d_max: u32, g_max: u32, entries: &[(u32, &[u32], Rational)]) -> GenusSeries {
        let mut s = GenusSeries::new(d_max, g_max);
        for (g, a, v) in entries {
            s.set(*g, p(a), v.clone());
        }
        s
    }

    #[test]
    fn join_within_examples() {
        let s = series(4, 2, &[(0, &[1, 1], rat(1, 4))]);
        assert_eq!(join_within(&s), series(4, 2, &[(1, &[2], rat(1, 4))]));
        let base = series(4, 2, &[(0, &[1], rat(1, 1))]);
        assert!(join_within(&base).is_empty());
        assert!(join_within(&GenusSeries::new(4, 2)).is_empty());
    }

    #[test]
    fn join_across_examples() {
        let base = series(3, 1, &[(0, &[1], rat(1, 1))]);
        let img = join_across(&base);
        assert_eq!(img, series(3, 1, &[(0, &[2], rat(1, 2))]));

        let two = series(3, 1, &[(0, &[1], rat(1, 1)), (0, &[2], rat(1, 2))]);
        assert_eq!(join_across(&two).get(0, &p(&[3])), rat(1, 1));
        assert!(join_across(&GenusSeries::new(3, 1)).is_empty());
    }

    #[test]
    fn cut_examples() {
        let s = series(3, 0, &[(0, &[2], rat(1, 2))]);
        assert_eq!(cut(&s), series(3, 0, &[(0, &[1, 1], rat(1, 2))]));
        let s = series(3, 0, &[(0, &[3], rat(1, 2))]);
        assert_eq!(cut(&s), series(3, 0, &[(0, &[2, 1], rat(3, 2))]));
        let base = series(3, 0, &[(0, &[1], rat(1, 1))]);
        assert!(cut(&base).is_empty());
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(lhs_eigenvalue(0, &p(&[1])), 0);
        assert_eq!(lhs_eigenvalue(0, &p(&[3])), 2);
        assert_eq!(lhs_eigenvalue(2, &p(&[2, 2])), 8);
    }

    #[test]
    fn base_case_residual_vanishes_on_layer_zero() {
        let base = series(4, 1, &[(0, &[1], rat(1, 1))]);
        let res = joincut_residual(&base);
        assert!(res.layer(0).is_empty());
        assert!(!res.layer(1).is_empty());
    }

    #[test]
    fn truncation_drops_out_of_bound_keys() {
        let s = series(2, 0, &[(0, &[2], rat(1, 2)), (0, &[1], rat(1, 1))]);
        // (3) would need d = 3
        assert!(join_across(&s).iter().all(|((_, a), _)| a.degree() <= 2));
    }

    fn small_series() -> impl Strategy<Value = GenusSeries> {
        let keys: Vec<SeriesKey> = GenusSeries::new(4, 1).all_keys();
        prop::collection::vec((0..keys.len(), -3i64..4, 1i64..4), 0..6).prop_map(move |picks| {
            let mut s = GenusSeries::new(5, 2);
            for (idx, num, den) in picks {
                let (g, a) = keys[idx].clone();
                s.add_to(g, a, rat(num, den));
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn operators_raise_r_by_one(s in small_series()) {
            for r in 0..8 {
                let layer = s.layer(r);
                for image in [join_within(&layer), cut(&layer), join_across(&layer)] {
                    // join_across of one layer lands at 2r + 1
                    let ok = image.iter().all(|((g, a), _)| {
                        let t = transposition_count(*g, a);
                        t == r + 1 || t == 2 * r + 1
                    });
                    prop_assert!(ok);
                }
                prop_assert!(join_within(&layer).iter().all(|((g, a), _)| transposition_count(*g, a) == r + 1));
                prop_assert!(cut(&layer).iter().all(|((g, a), _)| transposition_count(*g, a) == r + 1));
            }
        }

        #[test]
        fn linearity(a in small_series(), b in small_series(), num in -3i64..4) {
            let k = rat(num, 2);
            let sum = a.add(&b.scale(&k));
            prop_assert_eq!(join_within(&sum), join_within(&a).add(&join_within(&b).scale(&k)));
            prop_assert_eq!(cut(&sum), cut(&a).add(&cut(&b).scale(&k)));
            let left = join_across_pair(&sum, &a);
            let right = join_across_pair(&a, &a).add(&join_across_pair(&b, &a).scale(&k));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn join_across_is_additive_in_degree_and_genus(a in small_series(), b in small_series()) {
            // single-key factors: the image lives at summed degree and genus
            for ((g1, a1), v1) in a.iter().take(2) {
                for ((g2, b1), v2) in b.iter().take(2) {
                    let mut x = GenusSeries::new(10, 4);
                    x.set(*g1, a1.clone(), v1.clone());
                    let mut y = GenusSeries::new(10, 4);
                    y.set(*g2, b1.clone(), v2.clone());
                    for ((g, t), _) in join_across_pair(&x, &y).iter() {
                        prop_assert_eq!(*g, g1 + g2);
                        prop_assert_eq!(t.degree(), a1.degree() + b1.degree());
                        prop_assert_eq!(t.len() + 1, a1.len() + b1.len());
                    }
                }
            }
        }
    }
}
