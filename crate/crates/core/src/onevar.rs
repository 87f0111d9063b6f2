//! Truncated power series in one variable.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};

/// `Σ_{k ≤ order} a_k x^k + O(x^{order+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVarSeries {
    coeffs: Vec<Rational>,
}

impl OneVarSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        OneVarSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        OneVarSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `d/dx`; the result has order one less.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * int(k as i64))
            .collect();
        Self::new(coeffs, order)
    }

    /// `x d/dx`, order preserved.
    pub fn x_d_dx(&self) -> Self {
        OneVarSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        }
    }

    pub fn mul_trunc(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        OneVarSeries { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul_trunc(self);
        }
        acc
    }

    /// `1 / self`; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = a0.recip();
        for k in 1..=order {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s / &a0;
        }
        Ok(OneVarSeries { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidDomain(
                "inner series of a composition needs zero constant term".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top coefficient
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().take(order + 1).rev() {
            acc = acc.mul_trunc(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::InvalidDomain("exp needs zero constant term".into()));
        }
        // E' = f' E, solved term by term
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = Rational::one();
        for k in 1..=order {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += int(j as i64) * &self.coeffs[j] * &out[k - j];
            }
            out[k] = s / int(k as i64);
        }
        Ok(OneVarSeries { coeffs: out })
    }

    fn check_revertible(&self) -> Result<()> {
        if !self.coeff(0).is_zero() || self.coeff(1).is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(())
    }

    /// Compositional inverse by Newton iteration, doubling the number of
    /// correct coefficients each round.
    pub fn revert(&self) -> Result<Self> {
        self.check_revertible()?;
        let order = self.order();
        let deriv = self.derivative();
        let mut g = OneVarSeries::x(1).scale(&self.coeff(1).recip()).truncate(order);
        let mut correct = 1;
        while correct < order {
            correct = (2 * correct).min(order);
            let s = self.truncate(correct);
            let gt = g.truncate(correct);
            // g ← g − (s(g) − x) / s'(g)
            let residual = s.compose(&gt)? - OneVarSeries::x(correct);
            let slope = deriv.truncate(correct).compose(&gt)?;
            let step = residual.mul_trunc(&slope.recip()?);
            g = (gt - step).truncate(order);
        }
        Ok(g.truncate(order))
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[u^k] g = (1/k) [x^{k−1}] (x / s(x))^k`.
    pub fn revert_lagrange(&self) -> Result<Self> {
        self.check_revertible()?;
        let order = self.order();
        // x / s(x) = 1 / (s(x)/x)
        let shifted = OneVarSeries::new(self.coeffs[1..].to_vec(), order.saturating_sub(1));
        let ratio = shifted.recip()?;
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = OneVarSeries::one(ratio.order());
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            power = power.mul_trunc(&ratio);
            *slot = power.coeff(k - 1) / int(k as i64);
        }
        Ok(OneVarSeries { coeffs: out })
    }
}

impl Add for OneVarSeries {
    type Output = OneVarSeries;
    fn add(self, rhs: Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        OneVarSeries { coeffs }
    }
}

impl Sub for OneVarSeries {
    type Output = OneVarSeries;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for OneVarSeries {
    type Output = OneVarSeries;
    fn neg(self) -> Self {
        OneVarSeries {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &OneVarSeries {
    type Output = OneVarSeries;
    fn mul(self, rhs: Self) -> OneVarSeries {
        self.mul_trunc(rhs)
    }
}

fn pow_big(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// The rooted tree series `w(x) = Σ_{m≥1} m^{m−1} x^m / m!`.
pub fn tree_series(order: usize) -> OneVarSeries {
    let coeffs = (0..=order)
        .map(|m| {
            if m == 0 {
                Rational::zero()
            } else {
                Rational::new(pow_big(m as u32, m as u32 - 1), factorial(m as u32))
            }
        })
        .collect();
    OneVarSeries { coeffs }
}

/// `φ_i(x) = Σ_{m≥1} m^{m+i} x^m / m!`, cross-checked against
/// `(x d/dx)^{i+1} w(x)`.
pub fn phi(i: u32, order: usize) -> OneVarSeries {
    let direct = phi_direct(i, order);
    let mut iterated = tree_series(order);
    for _ in 0..=i {
        iterated = iterated.x_d_dx();
    }
    assert_eq!(direct, iterated, "φ_{i} characterizations disagree");
    direct
}

fn phi_direct(i: u32, order: usize) -> OneVarSeries {
    let coeffs = (0..=order)
        .map(|m| {
            if m == 0 {
                Rational::zero()
            } else {
                Rational::new(pow_big(m as u32, m as u32 + i), factorial(m as u32))
            }
        })
        .collect();
    OneVarSeries { coeffs }
}
