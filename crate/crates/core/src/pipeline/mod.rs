//! The transformation `Ξ_n H^g_n ↦ C Ξ_n H^g_n ↦ F_k C Ξ_n H^g_n`, the
//! closed forms for its lowest full terms, and the checks built on them.
//!
//! `C` substitutes `x_j = G(y_j − 1)` with `G` the compositional inverse of
//! `φ_0`. The substitution is done in the frame `u_j = y_j − 1`, where
//! `G(u) = u + O(u²)` makes every `u`-coefficient of total degree `≤ D`
//! exact once all `x`-monomials of degree `≤ D` are included.

mod closed;
mod pde;
mod tables;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::elsv::{check_range, extract_witten, interpolate_p, lambda_g_report, SymmetricAlphaPolynomial, WittenTable};
use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzCache, Region};
use crate::onevar::{phi, OneVarSeries};
use crate::partition::{enumerate_partitions, Partition, PartitionConstraints};
use crate::poly::{Frame, SymPoly};
use crate::rational::{factorial, from_bigint, Rational};
use crate::symfunc::{arrangements, full_terms};

pub use closed::{
    genus1_k1_closed_form, k1_closed_form, lambda_g_theorem_check, minhur_closed_form,
    multinomial_witten,
};
pub use pde::{omega_residual, omega, verify_dfeqzero, verify_k1r_residual, OmegaSeries};
pub use tables::{
    parse_m_expression, reference_rows, table_report, ReferenceRow, ReportTerm, Resolution, RowJson,
    RowReport, TableKind,
};

/// `Ξ_n H^g_n` through total degree `D`: the coefficient of `x^a` is
/// `H^g_{sort(a)} / r!` for every `a` with `n` positive entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedSeries {
    pub g: u32,
    pub n: usize,
    pub degree_bound: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymmetrizedSeries {
    /// Coefficients keyed by sorted exponent tuples (descending).
    pub fn coeffs(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.coeffs.iter().map(|(a, c)| (a.parts(), c))
    }

    /// Coefficient of `x^a` for `a` in any order.
    pub fn coeff(&self, a: &[u32]) -> Rational {
        Partition::new(a.to_vec())
            .ok()
            .and_then(|p| self.coeffs.get(&p).cloned())
            .unwrap_or_else(Rational::zero)
    }
}

/// Reads `Ξ_n H^g_n` through degree `D` from solved Hurwitz numbers.
pub fn symmetrize(g: u32, n: usize, degree_bound: u32, cache: &HurwitzCache) -> Result<SymmetrizedSeries> {
    let mut coeffs = BTreeMap::new();
    for alpha in enumerate_partitions(degree_bound, PartitionConstraints::exact_parts(n)) {
        let h = cache.get(g, &alpha).ok_or_else(|| Error::CacheIncomplete {
            g,
            alpha: alpha.to_string(),
        })?;
        let r = alpha.transposition_count(g);
        if r < 0 || h.is_zero() {
            continue;
        }
        coeffs.insert(alpha, h / from_bigint(factorial(r as u32)));
    }
    Ok(SymmetrizedSeries {
        g,
        n,
        degree_bound,
        coeffs,
    })
}

/// `6g − 6 + 3n`, the largest total degree `C Ξ_n H^g_n` can have.
pub fn degree_ceiling(g: u32, n: usize) -> u32 {
    (6 * g as i64 - 6 + 3 * n as i64).max(0) as u32
}

/// Working degree for the substitution: the ceiling plus a margin of two
/// whose coefficients must vanish.
pub fn working_degree(g: u32, n: usize) -> u32 {
    degree_ceiling(g, n) + 2
}

/// `x = G(u)` with `G` the compositional inverse of `φ_0`, to order `d`.
pub fn inverse_phi0(d: usize) -> Result<OneVarSeries> {
    phi(0, d.max(1)).revert()
}

/// `C Ξ_n H^g_n` as an exact polynomial in `y`.
pub fn change_of_vars(s: &SymmetrizedSeries) -> Result<SymPoly> {
    let (n, d) = (s.n, s.degree_bound);
    let ceiling = degree_ceiling(s.g, n);
    if d < ceiling + 2 {
        return Err(Error::TruncationTooLow(format!(
            "degree bound {d} is below {} for (g, n) = ({}, {n})",
            ceiling + 2,
            s.g
        )));
    }
    let u = substitute(s, d)?;
    if let Some((m, _)) = u.terms().find(|(m, _)| m.degree() > ceiling) {
        return Err(Error::TruncationTooLow(format!(
            "u-coefficient of degree {} survives above {ceiling} for (g, n) = ({}, {n})",
            m.degree(),
            s.g
        )));
    }
    Ok(u.to_y_frame())
}

/// Substitutes `x_j ↦ G(u_j)` one variable at a time, keeping `u`-degree `≤ d`.
fn substitute(s: &SymmetrizedSeries, d: u32) -> Result<SymPoly> {
    let n = s.n;
    let g_series = inverse_phi0(d as usize)?;
    let mut powers: Vec<OneVarSeries> = vec![OneVarSeries::one(d as usize)];
    for k in 1..=d as usize {
        powers.push(powers[k - 1].mul_trunc(&g_series));
    }
    // exponent vectors hold u-exponents for substituted variables and
    // x-exponents for the rest; each x^a turns into u-degree ≥ a
    let mut current: HashMap<Vec<u16>, Rational> = HashMap::new();
    for (a, c) in s.coeffs() {
        let parts: Vec<u16> = a.iter().map(|&p| p as u16).collect();
        for e in arrangements(&parts) {
            current.insert(e, c.clone());
        }
    }
    for i in 0..n {
        let mut next: HashMap<Vec<u16>, Rational> = HashMap::with_capacity(current.len() * 2);
        for (e, c) in current {
            let total: u32 = e.iter().map(|&v| v as u32).sum();
            let a = e[i] as usize;
            let room = (d - total) as usize;
            for j in a..=a + room {
                let w = powers[a].coeff(j);
                if w.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] = j as u16;
                let slot = next.entry(e2).or_insert_with(Rational::zero);
                *slot += &c * w;
            }
        }
        next.retain(|_, v| !v.is_zero());
        current = next;
    }
    Ok(SymPoly::from_terms(n, Frame::U, current))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Pipeline,
    ClosedForm,
}

/// `Λ^g_{n,k} = F_{2g−3+2n+k} C Ξ_n H^g_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    pub g: u32,
    pub n: usize,
    pub k: i64,
    pub value: SymPoly,
    pub route: Route,
}

/// `2g − 3 + 2n + k`.
pub fn lambda_degree(g: u32, n: usize, k: i64) -> i64 {
    2 * g as i64 - 3 + 2 * n as i64 + k
}

/// Owns a Hurwitz cache and memoizes everything derived from it.
#[derive(Debug, Default)]
pub struct Engine {
    cache: HurwitzCache,
    transformed: HashMap<(u32, usize), SymPoly>,
    interpolated: HashMap<(u32, usize), SymmetricAlphaPolynomial>,
    constants: BTreeMap<u32, Rational>,
}

impl Engine {
    pub fn new(cache: HurwitzCache) -> Self {
        Engine {
            cache,
            ..Default::default()
        }
    }

    pub fn cache(&self) -> &HurwitzCache {
        &self.cache
    }

    pub fn cache_mut(&mut self) -> &mut HurwitzCache {
        &mut self.cache
    }

    pub fn into_cache(self) -> HurwitzCache {
        self.cache
    }

    /// `C Ξ_n H^g_n`, solving whatever Hurwitz numbers it needs.
    pub fn transformed(&mut self, g: u32, n: usize) -> Result<SymPoly> {
        check_range(g, n)?;
        if let Some(p) = self.transformed.get(&(g, n)) {
            return Ok(p.clone());
        }
        let d = working_degree(g, n);
        self.cache.solve(Region::cone(g, n, d));
        let s = symmetrize(g, n, d, &self.cache)?;
        let p = change_of_vars(&s)?;
        self.transformed.insert((g, n), p.clone());
        Ok(p)
    }

    /// `Λ^g_{n,k}` by the pipeline; zero when `n = 0` or the degree is
    /// negative.
    pub fn lambda(&mut self, g: u32, n: usize, k: i64) -> Result<SymPoly> {
        let deg = lambda_degree(g, n, k);
        if n == 0 || deg < 0 {
            return Ok(SymPoly::zero(n));
        }
        Ok(full_terms(&self.transformed(g, n)?, deg as u32))
    }

    pub fn lambda_series(&mut self, g: u32, n: usize, k: i64) -> Result<LambdaSeries> {
        Ok(LambdaSeries {
            g,
            n,
            k,
            value: self.lambda(g, n, k)?,
            route: Route::Pipeline,
        })
    }

    /// `Ω^g_n = Λ^g_{n,0}`.
    pub fn omega_gn(&mut self, g: u32, n: usize) -> Result<SymPoly> {
        self.lambda(g, n, 0)
    }

    pub fn interpolated(&mut self, g: u32, n: usize) -> Result<SymmetricAlphaPolynomial> {
        if let Some(p) = self.interpolated.get(&(g, n)) {
            return Ok(p.clone());
        }
        let p = interpolate_p(g, n, &mut self.cache)?;
        self.interpolated.insert((g, n), p.clone());
        Ok(p)
    }

    pub fn witten(&mut self, g: u32, n: usize) -> Result<WittenTable> {
        extract_witten(&self.interpolated(g, n)?)
    }

    /// `c_g`, read off `P_{g,1}`; errors if it vanishes.
    pub fn c_g(&mut self, g: u32) -> Result<Rational> {
        if let Some(c) = self.constants.get(&g) {
            return Ok(c.clone());
        }
        if g == 0 {
            return Err(Error::InvalidRange { g, n: 1 });
        }
        let report = lambda_g_report(&self.interpolated(g, 1)?);
        if !report.pass {
            return Err(Error::PolynomialityViolation(format!(
                "lowest part of P_{{{g},1}} is not a single power"
            )));
        }
        if report.c_g.is_zero() {
            return Err(Error::ZeroConstant(g));
        }
        self.constants.insert(g, report.c_g.clone());
        Ok(report.c_g)
    }
}

/// Largest total degree of `C Ξ_n H^g_n` next to the ceiling `6g − 6 + 3n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub g: u32,
    pub n: usize,
    pub measured: u32,
    pub ceiling: u32,
}

pub fn degree_report(engine: &mut Engine, g: u32, n: usize) -> Result<DegreeReport> {
    let p = engine.transformed(g, n)?;
    Ok(DegreeReport {
        g,
        n,
        measured: p.total_degree().unwrap_or(0),
        ceiling: degree_ceiling(g, n),
    })
}
