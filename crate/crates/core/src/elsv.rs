//! Polynomiality of Hurwitz numbers, exact interpolation of the polynomial
//! `P_{g,n}`, and the Hodge integrals read off from its coefficients.
//!
//! `H^g_α = r! · ∏ (α_i^{α_i} / α_i!) · P_{g,n}(α)`, and the coefficient of
//! `α^b` in `P_{g,n}` is `(−1)^k ⟨τ_{b_1} … τ_{b_n} λ_k⟩_g` with
//! `k = 3g − 3 + n − Σ b_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_solve, HurwitzCache, Region};
use crate::linalg::{self, Solution};
use crate::onevar::phi;
use crate::partition::{zero_padded_partitions, Partition, ZeroPaddedPartition};
use crate::rational::{binomial, factorial, format_rational, from_bigint, multinomial, sign, Rational};
use crate::symfunc::{m_basis, MExpansion};

/// Number of grid points kept out of the fit and used for validation.
pub const HELD_OUT: usize = 10;

/// `n, g ≥ 1`, or `g = 0` with `n ≥ 3`.
pub fn check_range(g: u32, n: usize) -> Result<()> {
    if n >= 1 && (g >= 1 || n >= 3) {
        Ok(())
    } else {
        Err(Error::InvalidRange { g, n })
    }
}

/// `3g − 3 + n`, the dimension of the moduli space.
pub fn top_degree(g: u32, n: usize) -> u32 {
    (3 * g as i64 - 3 + n as i64).max(0) as u32
}

/// `2g − 3 + n`, clamped at zero.
pub fn bottom_degree(g: u32, n: usize) -> u32 {
    (2 * g as i64 - 3 + n as i64).max(0) as u32
}

fn weight(alpha: &[u32]) -> Rational {
    alpha.iter().fold(Rational::one(), |acc, &a| {
        acc * Rational::new(BigInt::from(a).pow(a), factorial(a))
    })
}

fn p_from_h(g: u32, alpha: &Partition, h: &Rational) -> Rational {
    let r = alpha.transposition_count(g);
    h / (from_bigint(factorial(r as u32)) * weight(alpha.parts()))
}

/// `P_{g,n}(α) = H^g_α / (r! ∏ α_i^{α_i}/α_i!)`.
pub fn eval_p(g: u32, alpha: &Partition, cache: &mut HurwitzCache) -> Result<Rational> {
    check_range(g, alpha.len())?;
    let h = hurwitz_solve(g, alpha, cache).h;
    Ok(p_from_h(g, alpha, &h))
}

/// An exact symmetric polynomial in `α_1, …, α_n`, in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricAlphaPolynomial {
    pub g: u32,
    pub n: usize,
    pub coeffs: MExpansion,
    /// Verified `[lowest, highest]` total degree of nonzero coefficients.
    pub window: (u32, u32),
    /// Grid parameter: points are sorted tuples from `{1, …, s}`.
    pub grid_size: u32,
    pub fit_points: usize,
    pub held_out: usize,
}

impl SymmetricAlphaPolynomial {
    pub fn eval(&self, alpha: &[u32]) -> Rational {
        let point: Vec<Rational> = alpha.iter().map(|&a| Rational::from_integer(a.into())).collect();
        self.coeffs
            .terms()
            .map(|(b, c)| m_basis(b, self.n).eval(&point) * c)
            .sum()
    }

    /// The homogeneous part of total degree `k`.
    pub fn part_of_degree(&self, k: u32) -> MExpansion {
        let mut out = MExpansion::new(self.n);
        for (b, c) in self.coeffs.terms() {
            if b.degree() == k {
                out.insert(b.clone(), c.clone());
            }
        }
        out
    }
}

/// Sorted `n`-tuples from `{1, …, s}` (ascending within a tuple), ordered
/// by sum, then lexicographically.
fn grid(n: usize, s: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, lo: u32, s: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..=s {
            cur.push(v);
            rec(n, v, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, s, &mut Vec::new(), &mut out);
    out.sort_by_key(|t| (t.iter().sum::<u32>(), t.clone()));
    out
}

fn grid_len(n: usize, s: u32) -> BigInt {
    binomial(s + n as u32 - 1, n as u32)
}

/// Fits `P_{g,n}` exactly on a grid of sorted tuples and validates it on
/// `HELD_OUT` further points.
pub fn interpolate_p(g: u32, n: usize, cache: &mut HurwitzCache) -> Result<SymmetricAlphaPolynomial> {
    check_range(g, n)?;
    let top = top_degree(g, n);
    let unknowns: Vec<ZeroPaddedPartition> =
        (0..=top).flat_map(|k| zero_padded_partitions(k, n)).collect();
    let basis: Vec<_> = unknowns.iter().map(|b| m_basis(b, n)).collect();
    let needed = BigInt::from(unknowns.len() + HELD_OUT);
    let mut s = 1;
    while grid_len(n, s) < needed {
        s += 1;
    }
    let s_limit = s + 8;
    loop {
        if s > s_limit {
            return Err(Error::SingularSystem(format!(
                "no unisolvent grid found for (g, n) = ({g}, {n})"
            )));
        }
        let points = grid(n, s);
        cache.solve(Region::cone(g, n, n as u32 * s));
        let cache_ref = &*cache;
        let values: Vec<Rational> = points
            .par_iter()
            .map(|t| {
                let alpha = Partition::new(t.clone()).expect("positive parts");
                let h = cache_ref.get(g, &alpha).expect("grid point inside the solved cone");
                p_from_h(g, &alpha, &h)
            })
            .collect();
        let rows: Vec<Vec<Rational>> = points
            .par_iter()
            .map(|t| {
                let pt: Vec<Rational> = t.iter().map(|&a| Rational::from_integer(a.into())).collect();
                basis.iter().map(|m| m.eval(&pt)).collect()
            })
            .collect();
        let fit = points.len() - HELD_OUT;
        let solution = linalg::solve(rows[..fit].to_vec(), values[..fit].to_vec());
        let coeffs = match solution {
            Solution::Unique(c) => c,
            Solution::RankDeficient { .. } => {
                s += 1;
                continue;
            }
            Solution::Inconsistent => {
                return Err(Error::PolynomialityViolation(format!(
                    "no polynomial of degree ≤ {top} fits the values at (g, n) = ({g}, {n})"
                )))
            }
        };
        for (row, v) in rows[fit..].iter().zip(&values[fit..]) {
            let predicted: Rational = row.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
            if &predicted != v {
                return Err(Error::PolynomialityViolation(format!(
                    "held-out value {v} predicted as {predicted} at (g, n) = ({g}, {n})"
                )));
            }
        }
        let mut expansion = MExpansion::new(n);
        for (b, c) in unknowns.iter().zip(coeffs) {
            expansion.insert(b.clone(), c);
        }
        let low = bottom_degree(g, n);
        let degrees: Vec<u32> = expansion.terms().map(|(b, _)| b.degree()).collect();
        if let Some(bad) = degrees.iter().find(|&&d| d < low) {
            return Err(Error::PolynomialityViolation(format!(
                "term of degree {bad} below {low} at (g, n) = ({g}, {n})"
            )));
        }
        return Ok(SymmetricAlphaPolynomial {
            g,
            n,
            coeffs: expansion,
            window: (low, top),
            grid_size: s,
            fit_points: fit,
            held_out: HELD_OUT,
        });
    }
}

/// `⟨τ_{b_1} … τ_{b_n} λ_k⟩_g` for every `(g, n)` it covers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WittenTable {
    entries: BTreeMap<(u32, u32, ZeroPaddedPartition), Rational>,
    covered: BTreeSet<(u32, usize)>,
}

/// One exported entry: `{"g":1,"k":1,"b":[0],"value":"1/24"}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WittenRecord {
    pub g: u32,
    pub k: u32,
    pub b: Vec<u32>,
    pub value: String,
}

impl WittenTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn covers(&self, g: u32, n: usize) -> bool {
        self.covered.contains(&(g, n))
    }

    pub fn mark_covered(&mut self, g: u32, n: usize) {
        self.covered.insert((g, n));
    }

    pub fn insert(&mut self, g: u32, k: u32, b: ZeroPaddedPartition, value: Rational) {
        if !value.is_zero() {
            self.entries.insert((g, k, b), value);
        }
    }

    /// The symbol with insertions `b` in any order; zero off the dimension
    /// constraint.
    pub fn get(&self, g: u32, k: u32, b: &[u32]) -> Result<Rational> {
        if !self.covers(g, b.len()) {
            return Err(Error::MissingWittenEntries(format!(
                "genus {g} with {} points",
                b.len()
            )));
        }
        let key = (g, k, ZeroPaddedPartition::new(b.to_vec()));
        Ok(self.entries.get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn merge(&mut self, other: &WittenTable) {
        self.entries.extend(other.entries.iter().map(|(k, v)| (k.clone(), v.clone())));
        self.covered.extend(other.covered.iter().copied());
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries sorted by `(g, k, n, b)`.
    pub fn records(&self) -> Vec<WittenRecord> {
        let mut out: Vec<WittenRecord> = self
            .entries
            .iter()
            .map(|((g, k, b), v)| WittenRecord {
                g: *g,
                k: *k,
                b: b.parts().to_vec(),
                value: format_rational(v),
            })
            .collect();
        out.sort_by(|a, b| (a.g, a.k, a.b.len(), &a.b).cmp(&(b.g, b.k, b.b.len(), &b.b)));
        out
    }
}

/// Reads the Hodge integrals off the coefficients of `P_{g,n}`.
pub fn extract_witten(p: &SymmetricAlphaPolynomial) -> Result<WittenTable> {
    let (g, n) = (p.g, p.n);
    let top = 3 * g as i64 - 3 + n as i64;
    let mut table = WittenTable::new();
    for (b, c) in p.coeffs.terms() {
        let k = top - b.degree() as i64;
        if k < 0 || k > g as i64 {
            return Err(Error::DimensionViolation(format!(
                "coefficient {c} of m_{b} would need λ_{k} in genus {g}"
            )));
        }
        table.insert(g, k as u32, b.clone(), sign(k) * c);
    }
    table.mark_covered(g, n);
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGReport {
    pub g: u32,
    pub n: usize,
    pub c_g: Rational,
    pub pass: bool,
    pub lowest_part: MExpansion,
}

/// Checks that the lowest part of `P_{g,n}` is `(−1)^g c (α_1 + … + α_n)^{2g−3+n}`
/// and reports `c`.
pub fn lambda_g_check(g: u32, n: usize, cache: &mut HurwitzCache) -> Result<LambdaGReport> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let p = interpolate_p(g, n, cache)?;
    Ok(lambda_g_report(&p))
}

pub fn lambda_g_report(p: &SymmetricAlphaPolynomial) -> LambdaGReport {
    let (g, n) = (p.g, p.n);
    let m = 2 * g + n as u32 - 3;
    let lowest = p.part_of_degree(m);
    let mut lead = vec![m];
    lead.resize(n, 0);
    let s = sign(g as i64);
    let c_g = &s * lowest.get(&ZeroPaddedPartition::new(lead));
    let pass = zero_padded_partitions(m, n)
        .into_iter()
        .all(|b| lowest.get(&b) == &s * &c_g * from_bigint(multinomial(b.parts())));
    LambdaGReport {
        g,
        n,
        c_g,
        pass,
        lowest_part: lowest,
    }
}

/// Rebuilds `Ξ_n H^g_n` through total degree `order` as
/// `Σ_b (−1)^k ⟨τ_b λ_k⟩_g ∏ φ_{b_i}(x_i)` and compares it with the direct
/// symmetrization of the Hurwitz numbers.
pub fn verify_genus_ansatz(g: u32, n: usize, order: u32, cache: &mut HurwitzCache) -> Result<bool> {
    check_range(g, n)?;
    let p = interpolate_p(g, n, cache)?;
    let witten = extract_witten(&p)?;
    cache.solve(Region::cone(g, n, order));
    let direct = crate::pipeline::symmetrize(g, n, order, cache)?;
    let top = top_degree(g, n);
    let phis: Vec<_> = (0..=top).map(|b| phi(b, order as usize)).collect();

    // ordered exponent tuples b with Σ b ≤ top
    let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let used: u32 = t.iter().sum();
                (0..=top - used).map(move |v| {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2
                })
            })
            .collect();
    }
    let weights: Vec<(Vec<u32>, Rational)> = tuples
        .into_iter()
        .filter_map(|b| {
            let k = top - b.iter().sum::<u32>();
            let w = witten.get(g, k, &b).ok()?;
            (!w.is_zero()).then(|| (b, sign(k as i64) * w))
        })
        .collect();

    for (a, value) in direct.coeffs() {
        let rebuilt: Rational = weights
            .iter()
            .map(|(b, w)| {
                a.iter()
                    .zip(b)
                    .fold(w.clone(), |acc, (&ai, &bi)| acc * phis[bi as usize].coeff(ai as usize))
            })
            .sum();
        if &rebuilt != value {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn zp(parts: &[u32]) -> ZeroPaddedPartition {
        ZeroPaddedPartition::new(parts.to_vec())
    }

    #[test]
    fn eval_examples() {
        let mut cache = HurwitzCache::new();
        assert_eq!(eval_p(1, &p(&[2]), &mut cache).unwrap(), rat(1, 24));
        assert_eq!(eval_p(1, &p(&[1]), &mut cache).unwrap(), int(0));
        assert_eq!(eval_p(0, &p(&[1, 1, 1]), &mut cache).unwrap(), int(1));
        assert!(matches!(
            eval_p(0, &p(&[2, 1]), &mut cache),
            Err(Error::InvalidRange { g: 0, n: 2 })
        ));
    }

    #[test]
    fn grid_is_sorted_by_sum() {
        let pts = grid(2, 3);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![1, 1]);
        assert_eq!(pts[5], vec![3, 3]);
        assert!(pts.windows(2).all(|w| w[0].iter().sum::<u32>() <= w[1].iter().sum::<u32>()));
    }

    #[test]
    fn interpolation_examples() {
        let mut cache = HurwitzCache::new();
        let p11 = interpolate_p(1, 1, &mut cache).unwrap();
        assert_eq!(p11.coeffs.get(&zp(&[1])), rat(1, 24));
        assert_eq!(p11.coeffs.get(&zp(&[0])), rat(-1, 24));
        assert_eq!(p11.coeffs.len(), 2);

        let p03 = interpolate_p(0, 3, &mut cache).unwrap();
        assert_eq!(p03.coeffs.len(), 1);
        assert_eq!(p03.coeffs.get(&zp(&[0, 0, 0])), int(1));

        let p12 = interpolate_p(1, 2, &mut cache).unwrap();
        assert_eq!(p12.coeffs.get(&zp(&[2, 0])), rat(1, 24));
        assert_eq!(p12.coeffs.get(&zp(&[1, 1])), rat(1, 24));
        assert_eq!(p12.coeffs.get(&zp(&[1, 0])), rat(-1, 24));
        assert_eq!(p12.coeffs.len(), 3);
        assert_eq!(p12.eval(&[1, 1]), eval_p(1, &p(&[1, 1]), &mut cache).unwrap());
    }

    #[test]
    fn genus_zero_closed_form() {
        // P_{0,n} = (α_1 + … + α_n)^{n−3}
        let mut cache = HurwitzCache::new();
        for n in 3..=5 {
            let poly = interpolate_p(0, n, &mut cache).unwrap();
            for b in zero_padded_partitions(n as u32 - 3, n) {
                assert_eq!(poly.coeffs.get(&b), from_bigint(multinomial(b.parts())));
            }
            assert_eq!(poly.coeffs.len(), zero_padded_partitions(n as u32 - 3, n).len());
        }
    }

    #[test]
    fn witten_from_genus_one() {
        let mut cache = HurwitzCache::new();
        let w = extract_witten(&interpolate_p(1, 1, &mut cache).unwrap()).unwrap();
        assert_eq!(w.get(1, 0, &[1]).unwrap(), rat(1, 24));
        assert_eq!(w.get(1, 1, &[0]).unwrap(), rat(1, 24));
        // off the dimension constraint
        assert_eq!(w.get(1, 1, &[1]).unwrap(), int(0));
        assert!(matches!(w.get(1, 0, &[1, 0]), Err(Error::MissingWittenEntries(_))));
        let json = serde_json::to_string(&w.records()[1]).unwrap();
        assert_eq!(json, r#"{"g":1,"k":1,"b":[0],"value":"1/24"}"#);

        let w = extract_witten(&interpolate_p(0, 3, &mut cache).unwrap()).unwrap();
        assert_eq!(w.get(0, 0, &[0, 0, 0]).unwrap(), int(1));
    }

    #[test]
    fn dimension_violation_is_detected() {
        let mut coeffs = MExpansion::new(1);
        coeffs.insert(zp(&[3]), int(1));
        let bogus = SymmetricAlphaPolynomial {
            g: 1,
            n: 1,
            coeffs,
            window: (0, 1),
            grid_size: 0,
            fit_points: 0,
            held_out: 0,
        };
        assert!(matches!(extract_witten(&bogus), Err(Error::DimensionViolation(_))));
    }

    #[test]
    fn lambda_g_small_cases() {
        let mut cache = HurwitzCache::new();
        let r = lambda_g_check(1, 1, &mut cache).unwrap();
        assert!(r.pass);
        assert_eq!(r.c_g, rat(1, 24));
        let r = lambda_g_check(1, 2, &mut cache).unwrap();
        assert!(r.pass);
        assert_eq!(r.lowest_part.get(&zp(&[1, 0])), rat(-1, 24));
        assert_eq!(r.c_g, rat(1, 24));
        let r = lambda_g_check(2, 1, &mut cache).unwrap();
        assert!(r.pass);
        assert_eq!(r.c_g, rat(7, 5760));
        assert!(matches!(lambda_g_check(0, 3, &mut cache), Err(Error::InvalidRange { .. })));
    }

    #[test]
    fn ansatz_small_cases() {
        let mut cache = HurwitzCache::new();
        assert!(verify_genus_ansatz(1, 1, 6, &mut cache).unwrap());
        assert!(verify_genus_ansatz(0, 3, 5, &mut cache).unwrap());
    }
}
