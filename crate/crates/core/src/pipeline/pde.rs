//! The differential equations satisfied by the lowest full terms.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::SymPoly;
use crate::rational::{factorial, from_bigint, int, rat, sign, Rational};
use crate::symfunc::{euler_like, h_basis, sym11_kernel, sym_product, times_all_vars};

use super::Engine;

/// `y_1³ y_2` or `y_1⁴ y_2`.
fn kernel_numerator(power: u16) -> SymPoly {
    SymPoly::monomial(2, vec![power, 1], Rational::from_integer(1.into()))
}

/// `sym_{1,1} (y_1^p y_2 / (y_1 − y_2)) ∂/∂y_1 P(y_1, y_3, …, y_n)`.
fn kernel_term(power: u16, p: &SymPoly, n: usize) -> Result<SymPoly> {
    if n < 2 || p.nvars() + 1 != n {
        return Ok(SymPoly::zero(n));
    }
    sym11_kernel(&kernel_numerator(power), &p.partial(0), n)
}

/// `y_1² ∂/∂y_1`.
fn lift(p: &SymPoly) -> SymPoly {
    p.partial(0).shift(0, 2)
}

/// `(1 − n) Ω^g_n = sym_{1,1} (y_1³ y_2/(y_1 − y_2)) ∂_1 Ω^g_{n−1}`.
pub fn verify_dfeqzero(engine: &mut Engine, g: u32, n: usize) -> Result<bool> {
    if n < 2 || g == 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let lhs = engine.omega_gn(g, n)?.scale(&int(1 - n as i64));
    let rhs = kernel_term(3, &engine.omega_gn(g, n - 1)?, n)?;
    Ok(lhs == rhs)
}

/// `Ω_n(y; t)` truncated at genus `g_max`, as a map from `t`-exponents to
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSeries {
    pub n: usize,
    pub g_max: u32,
    terms: BTreeMap<u32, SymPoly>,
}

impl OmegaSeries {
    pub fn terms(&self) -> impl Iterator<Item = (u32, &SymPoly)> {
        self.terms.iter().map(|(e, p)| (*e, p))
    }

    pub fn coeff(&self, e: u32) -> SymPoly {
        self.terms.get(&e).cloned().unwrap_or_else(|| SymPoly::zero(self.n))
    }

    /// Every `t`-exponent has the parity of `n − 1`.
    pub fn parity_ok(&self) -> bool {
        self.terms.keys().all(|e| (e + self.n as u32 + 1).is_multiple_of(2))
    }

    /// Compares with the matching-parity part of `∏ y_i/(1 − y_i t)`,
    /// whose `t^e` coefficient is `y_1⋯y_n h_e`, at every genus `1..=g_max`.
    pub fn matches_product(&self) -> bool {
        (1..=self.g_max).all(|g| {
            let e = 2 * g + self.n as u32 - 3;
            self.coeff(e) == times_all_vars(&h_basis(e, self.n))
        }) && self.terms.len() == self.g_max as usize
    }
}

/// `Ω_n = Σ_{g ≥ 1} (−1)^{3g−3+n} / c_g · Ω^g_n · t^{2g−3+n} / (2g−3+n)!`.
pub fn omega(engine: &mut Engine, n: usize, g_max: u32) -> Result<OmegaSeries> {
    if n == 0 {
        return Err(Error::InvalidRange { g: g_max, n });
    }
    let mut terms = BTreeMap::new();
    for g in 1..=g_max {
        let c = engine.c_g(g)?;
        if c.is_zero() {
            return Err(Error::ZeroConstant(g));
        }
        let e = 2 * g + n as u32 - 3;
        let w = sign(3 * g as i64 - 3 + n as i64) / (c * from_bigint(factorial(e)));
        terms.insert(e, engine.omega_gn(g, n)?.scale(&w));
    }
    Ok(OmegaSeries { n, g_max, terms })
}

/// `(n−1) ∂Ω_n/∂t − sym_{1,1} (y_1³y_2/(y_1−y_2)) ∂Ω_{n−1}/∂y_1`, one entry per
/// genus present in both truncations, keyed by the `t`-exponent.
pub fn omega_residual(omega_n: &OmegaSeries, omega_prev: &OmegaSeries) -> Result<Vec<(u32, SymPoly)>> {
    let n = omega_n.n;
    assert!(n >= 2 && omega_prev.n + 1 == n);
    let mut out = Vec::new();
    for g in 1..=omega_n.g_max.min(omega_prev.g_max) {
        let e = 2 * g + n as u32 - 4;
        let lhs = omega_n.coeff(e + 1).scale(&int((n as i64 - 1) * (e as i64 + 1)));
        let rhs = kernel_term(3, &omega_prev.coeff(e), n)?;
        out.push((e, lhs.sub(&rhs)));
    }
    Ok(out)
}

/// The next-to-minimal equation:
/// `Λ^g_{n,1} + (1/n) K Λ^g_{n−1,1} = (1/n)(T_1 + T_2 + T_3 + T_4)`.
pub fn verify_k1r_residual(engine: &mut Engine, g: u32, n: usize) -> Result<bool> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let inv_n = rat(1, n as i64);
    let prev = if n >= 2 { engine.lambda(g, n - 1, 1)? } else { SymPoly::zero(0) };
    let lhs = engine
        .lambda(g, n, 1)?
        .add(&kernel_term(3, &prev, n)?.scale(&inv_n));

    let omega_n = engine.omega_gn(g, n)?;
    let t1 = euler_like(&omega_n, 2);
    let t2 = if n >= 2 {
        kernel_term(4, &engine.omega_gn(g, n - 1)?, n)?.scale(&int(2))
    } else {
        SymPoly::zero(n)
    };
    let mut t3 = SymPoly::zero(n);
    for k in 3..=n {
        let a = lift(&engine.omega_gn(0, k)?);
        let b = lift(&engine.omega_gn(g, n - k + 1)?);
        t3 = t3.sub(&sym_product(&a, &b, n));
    }
    let mut t4 = SymPoly::zero(n);
    for k in 1..=n {
        for a in 1..g {
            let left = lift(&engine.omega_gn(a, k)?);
            let right = lift(&engine.omega_gn(g - a, n - k + 1)?);
            t4 = t4.add(&sym_product(&left, &right, n));
        }
    }
    let t4 = t4.scale(&rat(-1, 2));
    let rhs = t1.add(&t2).add(&t3).add(&t4).scale(&inv_n);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfeqzero_small() {
        let mut engine = Engine::default();
        assert!(verify_dfeqzero(&mut engine, 1, 2).unwrap());
        assert!(verify_dfeqzero(&mut engine, 1, 3).unwrap());
        assert!(verify_dfeqzero(&mut engine, 2, 2).unwrap());
    }

    #[test]
    fn omega_initial_condition() {
        let mut engine = Engine::default();
        let o1 = omega(&mut engine, 1, 3).unwrap();
        for (e, p) in o1.terms() {
            assert_eq!(p, &SymPoly::monomial(1, vec![e as u16 + 1], int(1)));
        }
        assert_eq!(o1.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert!(o1.parity_ok() && o1.matches_product());
        let o2 = omega(&mut engine, 2, 2).unwrap();
        assert!(o2.parity_ok() && o2.matches_product());
        assert!(omega_residual(&o2, &o1).unwrap().iter().all(|(_, r)| r.is_zero()));
    }

    #[test]
    fn k1r_small() {
        let mut engine = Engine::default();
        assert!(verify_k1r_residual(&mut engine, 1, 1).unwrap());
        assert!(verify_k1r_residual(&mut engine, 1, 2).unwrap());
        assert!(verify_k1r_residual(&mut engine, 2, 1).unwrap());
    }
}
