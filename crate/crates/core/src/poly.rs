//! Sparse multivariate polynomials over the rationals.
//!
//! A [`SymPoly`] lives either in the `y` frame or in the shifted frame
//! `u_j = y_j − 1`; conversions between the two are exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, from_bigint, int, Rational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&e| e >= 1)
    }

    pub fn sorted_desc(&self) -> Vec<u16> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Variables `y_1, …, y_n`.
    Y,
    /// Variables `u_j = y_j − 1`.
    U,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    n: usize,
    frame: Frame,
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero(n: usize) -> Self {
        Self::zero_in(n, Frame::Y)
    }

    pub fn zero_in(n: usize, frame: Frame) -> Self {
        SymPoly {
            n,
            frame,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `y_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, Rational::one())
    }

    pub fn monomial(n: usize, exps: Vec<u16>, c: Rational) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        p.add_term(Monomial(exps), c);
        p
    }

    /// `y_1 ⋯ y_n`.
    pub fn product_of_vars(n: usize) -> Self {
        Self::monomial(n, vec![1; n], Rational::one())
    }

    /// Builds from raw terms, dropping zeros and merging duplicates.
    pub fn from_terms(n: usize, frame: Frame, terms: impl IntoIterator<Item = (Vec<u16>, Rational)>) -> Self {
        let mut p = Self::zero_in(n, frame);
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    fn check_compatible(&self, other: &SymPoly) {
        assert_eq!(self.n, other.n, "variable counts differ");
        assert_eq!(self.frame, other.frame, "frames differ");
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> SymPoly {
        if k.is_zero() {
            return Self::zero_in(self.n, self.frame);
        }
        SymPoly {
            n: self.n,
            frame: self.frame,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.check_compatible(other);
        let mut acc: HashMap<Vec<u16>, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u16> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        SymPoly::from_terms(self.n, self.frame, acc)
    }

    pub fn pow(&self, k: u32) -> SymPoly {
        let mut acc = SymPoly::one(self.n);
        acc.frame = self.frame;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂(variable i)`.
    pub fn partial(&self, i: usize) -> SymPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c * int(k as i64))
        });
        SymPoly::from_terms(self.n, self.frame, terms.collect::<Vec<_>>())
    }

    /// Multiplies by `var_i^k`.
    pub fn shift(&self, i: usize, k: u16) -> SymPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e[i] += k;
            (Monomial(e), c.clone())
        });
        SymPoly {
            n: self.n,
            frame: self.frame,
            terms: terms.collect(),
        }
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> SymPoly {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> SymPoly {
        SymPoly {
            n: self.n,
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-indexes into `n_new` variables: variable `i` of `self` becomes
    /// variable `targets[i]`.
    pub fn remap(&self, n_new: usize, targets: &[usize]) -> SymPoly {
        assert_eq!(targets.len(), self.n);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; n_new];
            for (i, &t) in targets.iter().enumerate() {
                e[t] += m.0[i];
            }
            (e, c.clone())
        });
        SymPoly::from_terms(n_new, self.frame, terms.collect::<Vec<_>>())
    }

    /// Exact quotient by `(var_a − var_b)`; fails if there is a remainder.
    pub fn div_by_difference(&self, a: usize, b: usize) -> Result<SymPoly> {
        assert_ne!(a, b);
        // Group by the exponents of every variable except `a` and `b`; on each
        // group we divide a bivariate polynomial in (v_a, v_b).
        let mut groups: HashMap<Vec<u16>, BTreeMap<(u16, u16), Rational>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut key = m.0.clone();
            key[a] = 0;
            key[b] = 0;
            groups
                .entry(key)
                .or_default()
                .insert((m.0[a], m.0[b]), c.clone());
        }
        let mut out = SymPoly::zero_in(self.n, self.frame);
        for (key, mut rest) in groups {
            // repeatedly clear the term with the largest v_a exponent
            while let Some((&(ea, eb), _)) = rest.iter().rev().find(|((ea, _), _)| *ea > 0) {
                let c = rest.remove(&(ea, eb)).unwrap();
                let mut e = key.clone();
                e[a] = ea - 1;
                e[b] = eb;
                out.add_term(Monomial(e), c.clone());
                // subtract c · v_a^{ea−1} v_b^{eb} (v_a − v_b)
                let slot = rest.entry((ea - 1, eb + 1)).or_insert_with(Rational::zero);
                *slot += c;
                if slot.is_zero() {
                    rest.remove(&(ea - 1, eb + 1));
                }
            }
            if !rest.is_empty() {
                return Err(Error::NotDivisible(format!(
                    "nonzero remainder dividing by (v{} − v{})",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(out)
    }

    /// Substitutes `v_i ↦ v_i + shift` in every variable.
    fn translate(&self, shift: &Rational, frame: Frame) -> SymPoly {
        let mut current: HashMap<Vec<u16>, Rational> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.clone()))
            .collect();
        let max_deg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Rational> = (0..=max_deg)
            .scan(Rational::one(), |acc, k| {
                let out = acc.clone();
                if k < max_deg {
                    *acc = &*acc * shift;
                }
                Some(out)
            })
            .collect();
        for i in 0..self.n {
            let mut next: HashMap<Vec<u16>, Rational> = HashMap::new();
            for (e, c) in current {
                let top = e[i];
                for k in 0..=top {
                    let w = from_bigint(binomial(top as u32, k as u32)) * &powers[(top - k) as usize];
                    if w.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] = k;
                    *next.entry(e2).or_insert_with(Rational::zero) += &c * w;
                }
            }
            current = next;
        }
        SymPoly::from_terms(self.n, frame, current)
    }

    /// Expresses the polynomial in the `y` frame.
    pub fn to_y_frame(&self) -> SymPoly {
        match self.frame {
            Frame::Y => self.clone(),
            // u = y − 1
            Frame::U => self.translate(&-Rational::one(), Frame::Y),
        }
    }

    /// Expresses the polynomial in the `u = y − 1` frame.
    pub fn to_u_frame(&self) -> SymPoly {
        match self.frame {
            Frame::U => self.clone(),
            Frame::Y => self.translate(&Rational::one(), Frame::U),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// True when every variable permutation fixes the polynomial.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            // transpositions of adjacent variables generate S_n
            (0..self.n.saturating_sub(1)).all(|i| {
                let mut e = m.0.clone();
                e.swap(i, i + 1);
                self.terms.get(&Monomial(e)) == Some(c)
            })
        })
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.frame {
            Frame::Y => "y",
            Frame::U => "u",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}{}", i + 1)?,
                    _ => write!(f, "*{var}{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn y(n: usize, i: usize) -> SymPoly {
        SymPoly::var(n, i)
    }

    #[test]
    fn arithmetic_and_derivatives() {
        let p = y(2, 0).add(&y(2, 1)).pow(2);
        assert_eq!(p.coeff(&[1, 1]), int(2));
        assert_eq!(p.partial(0), y(2, 0).add(&y(2, 1)).scale(&int(2)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(SymPoly::zero(2).total_degree(), None);
    }

    #[test]
    fn exact_division_by_difference() {
        // y1³ − y2³ = (y1 − y2)(y1² + y1 y2 + y2²)
        let num = y(3, 0).pow(3).sub(&y(3, 1).pow(3)).mul(&y(3, 2));
        let q = num.div_by_difference(0, 1).unwrap();
        let expect = y(3, 0).pow(2).add(&y(3, 0).mul(&y(3, 1))).add(&y(3, 1).pow(2)).mul(&y(3, 2));
        assert_eq!(q, expect);
        assert!(matches!(y(2, 0).div_by_difference(0, 1), Err(Error::NotDivisible(_))));
        assert!(SymPoly::zero(2).div_by_difference(0, 1).unwrap().is_zero());
    }

    #[test]
    fn frames_convert_exactly() {
        // y³ − y² − y + 1 = (y−1)²(y+1) = u²(u + 2)
        let p = SymPoly::from_terms(
            1,
            Frame::Y,
            vec![(vec![3], int(1)), (vec![2], int(-1)), (vec![1], int(-1)), (vec![0], int(1))],
        );
        let u = p.to_u_frame();
        assert_eq!(u, SymPoly::from_terms(1, Frame::U, vec![(vec![3], int(1)), (vec![2], int(2))]));
        assert_eq!(u.to_y_frame(), p);
    }

    #[test]
    fn remap_and_symmetry() {
        let p = y(2, 0).mul(&y(2, 1).pow(2));
        let q = p.remap(3, &[2, 0]);
        assert_eq!(q, y(3, 2).mul(&y(3, 0).pow(2)));
        assert!(!p.is_symmetric());
        assert!(p.add(&p.remap(2, &[1, 0])).is_symmetric());
        assert_eq!(p.eval(&[int(2), rat(1, 2)]), rat(1, 2));
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = SymPoly> {
        prop::collection::vec((prop::collection::vec(0u16..4, n), -5i64..6), 0..8)
            .prop_map(move |ts| {
                SymPoly::from_terms(n, Frame::Y, ts.into_iter().map(|(e, c)| (e, int(c))))
            })
    }

    proptest! {
        #[test]
        fn frame_round_trip(p in arb_poly(3)) {
            prop_assert_eq!(p.to_u_frame().to_y_frame(), p.clone());
            // evaluation agrees: p(y) = p_u(y − 1)
            let pt = [int(2), rat(-1, 3), int(5)];
            let shifted: Vec<Rational> = pt.iter().map(|v| v - int(1)).collect();
            prop_assert_eq!(p.eval(&pt), p.to_u_frame().eval(&shifted));
        }

        #[test]
        fn division_inverts_multiplication(p in arb_poly(3)) {
            let d = y(3, 0).sub(&y(3, 2));
            prop_assert_eq!(p.mul(&d).div_by_difference(0, 2).unwrap(), p);
        }
    }
}
