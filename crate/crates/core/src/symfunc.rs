//! Symmetric functions in finitely many variables, resolution into the
//! monomial basis, and the ordered-set-partition symmetrizers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{zero_padded_partitions, ZeroPaddedPartition};
use crate::poly::{Frame, SymPoly};
use crate::rational::{format_rational, Rational};

/// Steps `v` to its next lexicographic arrangement; false after the last.
fn next_arrangement(v: &mut [u16]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct rearrangement of `parts`.
pub(crate) fn arrangements(parts: &[u16]) -> Vec<Vec<u16>> {
    let mut v = parts.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_arrangement(&mut v) {
        out.push(v.clone());
    }
    out
}

/// `m_β(y_1, …, y_n)`; `β` is padded with zeros to length `n`. Zero when `β`
/// has more than `n` nonzero parts.
pub fn m_basis(beta: &ZeroPaddedPartition, n: usize) -> SymPoly {
    let nonzero: Vec<u16> = beta.parts().iter().filter(|&&p| p > 0).map(|&p| p as u16).collect();
    if nonzero.len() > n {
        return SymPoly::zero(n);
    }
    let mut parts = nonzero;
    parts.resize(n, 0);
    SymPoly::from_terms(
        n,
        Frame::Y,
        arrangements(&parts).into_iter().map(|e| (e, Rational::one())),
    )
}

/// Complete homogeneous `h_k`.
pub fn h_basis(k: u32, n: usize) -> SymPoly {
    zero_padded_partitions(k, n)
        .iter()
        .fold(SymPoly::zero(n), |acc, b| acc.add(&m_basis(b, n)))
}

/// Elementary `e_k`.
pub fn e_basis(k: u32, n: usize) -> SymPoly {
    if k as usize > n {
        return SymPoly::zero(n);
    }
    let mut parts = vec![1u32; k as usize];
    parts.resize(n, 0);
    m_basis(&ZeroPaddedPartition::new(parts), n)
}

/// Power sum `p_k`; `p_0 = n`.
pub fn p_basis(k: u32, n: usize) -> SymPoly {
    let mut parts = vec![k];
    parts.resize(n, 0);
    if k == 0 {
        return SymPoly::constant(n, Rational::from_integer(n.into()));
    }
    m_basis(&ZeroPaddedPartition::new(parts), n)
}

/// `F_k`: the terms in which every variable occurs and whose total degree
/// is exactly `k`.
pub fn full_terms(p: &SymPoly, k: u32) -> SymPoly {
    assert_eq!(p.frame(), Frame::Y, "full terms are taken in the y frame");
    p.filter(|m| m.is_full() && m.degree() == k)
}

/// A symmetric polynomial resolved as `Σ c_β m_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MExpansion {
    n: usize,
    terms: BTreeMap<ZeroPaddedPartition, Rational>,
}

impl MExpansion {
    pub fn new(n: usize) -> Self {
        MExpansion {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, beta: ZeroPaddedPartition, c: Rational) {
        if !c.is_zero() {
            self.terms.insert(beta, c);
        }
    }

    pub fn get(&self, beta: &ZeroPaddedPartition) -> Rational {
        self.terms.get(beta).cloned().unwrap_or_else(Rational::zero)
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

    /// Terms in descending lexicographic order of the partition.
    pub fn terms(&self) -> impl Iterator<Item = (&ZeroPaddedPartition, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn scale(&self, k: &Rational) -> MExpansion {
        let mut out = MExpansion::new(self.n);
        for (b, c) in &self.terms {
            out.insert(b.clone(), c * k);
        }
        out
    }

    pub fn to_poly(&self) -> SymPoly {
        self.terms
            .iter()
            .fold(SymPoly::zero(self.n), |acc, (b, c)| acc.add(&m_basis(b, self.n).scale(c)))
    }

    pub fn to_json(&self) -> MExpansionJson {
        let (m, c) = self
            .terms()
            .map(|(b, c)| (trimmed(b), format_rational(c)))
            .unzip();
        MExpansionJson { m, c }
    }
}

/// JSON form `{"m": [[3,1],[2,2]], "c": ["1","1"]}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MExpansionJson {
    pub m: Vec<Vec<u32>>,
    pub c: Vec<String>,
}

/// Parts with trailing zeros removed, unless all are zero.
pub(crate) fn trimmed(beta: &ZeroPaddedPartition) -> Vec<u32> {
    let v: Vec<u32> = beta.parts().iter().copied().filter(|&p| p > 0).collect();
    if v.is_empty() {
        beta.parts().to_vec()
    } else {
        v
    }
}

/// `m_{3 1}`, `m_{2^2}`, `m_4`.
pub fn format_m_symbol(beta: &ZeroPaddedPartition) -> String {
    let parts = trimmed(beta);
    let mut groups: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        groups.push(if j - i > 1 {
            format!("{}^{}", parts[i], j - i)
        } else {
            parts[i].to_string()
        });
        i = j;
    }
    let inner = groups.join(" ");
    if inner.chars().count() == 1 {
        format!("m_{inner}")
    } else {
        format!("m_{{{inner}}}")
    }
}

impl fmt::Display for MExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms().enumerate() {
            let sym = format_m_symbol(b);
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sym}")?;
            } else if a.is_integer() {
                write!(f, "{a}{sym}")?;
            } else {
                write!(f, "({a}){sym}")?;
            }
        }
        Ok(())
    }
}

/// Resolves a symmetric polynomial in the monomial basis.
pub fn to_m_basis(p: &SymPoly) -> Result<MExpansion> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut out = MExpansion::new(p.nvars());
    for (m, c) in p.terms() {
        if m.0.windows(2).all(|w| w[0] >= w[1]) {
            out.insert(
                ZeroPaddedPartition::new(m.0.iter().map(|&e| e as u32).collect()),
                c.clone(),
            );
        }
    }
    Ok(out)
}

/// Ordered set partitions `(R, S, T)` of `{0, …, n−1}` with `|R| = i`,
/// `|S| = j`, each block ascending, flattened as `R ++ S ++ T`.
pub fn ordered_set_partitions(n: usize, i: usize, j: usize) -> Vec<Vec<usize>> {
    assert!(i + j <= n);
    let mut out = Vec::new();
    for r in subsets(&(0..n).collect::<Vec<_>>(), i) {
        let rest: Vec<usize> = (0..n).filter(|x| !r.contains(x)).collect();
        for s in subsets(&rest, j) {
            let t: Vec<usize> = rest.iter().copied().filter(|x| !s.contains(x)).collect();
            let mut order = r.clone();
            order.extend(&s);
            order.extend(t);
            out.push(order);
        }
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        for mut tail in subsets(&items[idx + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// `sym_{i,j} f = Σ_{(R,S,T)} f(y_R, y_S, y_T)` for `f` in `n` variables.
pub fn sym(f: &SymPoly, i: usize, j: usize) -> SymPoly {
    let n = f.nvars();
    ordered_set_partitions(n, i, j)
        .into_iter()
        .fold(SymPoly::zero_in(n, f.frame()), |acc, order| {
            acc.add(&f.remap(n, &order))
        })
}

/// `sym_{1,1} [N(y_1, y_2) / (y_1 − y_2)] · G(y_1, y_3, …, y_n)` in `n`
/// variables.
///
/// Each unordered pair `{a, b}` is evaluated as
/// `(N(y_a, y_b) G(y_a, y_T) − N(y_b, y_a) G(y_b, y_T)) / (y_a − y_b)`
/// with exact division.
pub fn sym11_kernel(numer: &SymPoly, g: &SymPoly, n: usize) -> Result<SymPoly> {
    assert_eq!(numer.nvars(), 2);
    assert_eq!(g.nvars() + 1, n);
    let mut acc = SymPoly::zero(n);
    for a in 0..n {
        for b in a + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
            let place = |first: usize, second: usize| {
                let mut targets = vec![first];
                targets.extend(&rest);
                numer.remap(n, &[first, second]).mul(&g.remap(n, &targets))
            };
            let diff = place(a, b).sub(&place(b, a));
            acc = acc.add(&diff.div_by_difference(a, b)?);
        }
    }
    Ok(acc)
}

/// `sym_{1,k−1} A(y_1, …, y_k) · B(y_1, y_{k+1}, …, y_n)`, where `A` has `k`
/// variables and `B` has `n − k + 1`.
pub fn sym_product(a: &SymPoly, b: &SymPoly, n: usize) -> SymPoly {
    let k = a.nvars();
    assert_eq!(b.nvars() + k, n + 1);
    let mut acc = SymPoly::zero(n);
    for order in ordered_set_partitions(n, 1, k - 1) {
        let mut b_targets = vec![order[0]];
        b_targets.extend(&order[k..]);
        acc = acc.add(&a.remap(n, &order[..k]).mul(&b.remap(n, &b_targets)));
    }
    acc
}

/// `Σ_i y_i^s ∂/∂y_i`.
pub fn euler_like(p: &SymPoly, s: u16) -> SymPoly {
    (0..p.nvars()).fold(SymPoly::zero_in(p.nvars(), p.frame()), |acc, i| {
        acc.add(&p.partial(i).shift(i, s))
    })
}

/// `y_1 ⋯ y_n · p`.
pub fn times_all_vars(p: &SymPoly) -> SymPoly {
    (0..p.nvars()).fold(p.clone(), |acc, i| acc.shift(i, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn zp(parts: &[u32]) -> ZeroPaddedPartition {
        ZeroPaddedPartition::new(parts.to_vec())
    }

    fn y(n: usize, i: usize) -> SymPoly {
        SymPoly::var(n, i)
    }

    #[test]
    fn basis_examples() {
        let h2 = y(2, 0).pow(2).add(&y(2, 0).mul(&y(2, 1))).add(&y(2, 1).pow(2));
        assert_eq!(h_basis(2, 2), h2);
        assert_eq!(e_basis(2, 2), y(2, 0).mul(&y(2, 1)));
        assert_eq!(p_basis(3, 2), y(2, 0).pow(3).add(&y(2, 1).pow(3)));
        assert_eq!(e_basis(3, 2), SymPoly::zero(2));
        assert_eq!(m_basis(&zp(&[2, 1]), 3).len(), 6);
        assert_eq!(m_basis(&zp(&[1, 1, 1]), 2), SymPoly::zero(2));
        assert_eq!(h_basis(0, 3), SymPoly::one(3));
    }

    #[test]
    fn h_is_sum_of_all_monomials() {
        for n in 1..=4 {
            for k in 0..=5 {
                let mut total = SymPoly::zero(n);
                for b in zero_padded_partitions(k, n) {
                    total = total.add(&m_basis(&b, n));
                }
                assert_eq!(h_basis(k, n), total);
                assert!(h_basis(k, n).terms().all(|(_, c)| c.is_one()));
            }
        }
    }

    #[test]
    fn resolution_examples() {
        let p = y(2, 0).pow(2).mul(&y(2, 1)).add(&y(2, 0).mul(&y(2, 1).pow(2)));
        let r = to_m_basis(&p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.get(&zp(&[2, 1])), int(1));
        let r = to_m_basis(&h_basis(2, 2)).unwrap();
        assert_eq!((r.get(&zp(&[2, 0])), r.get(&zp(&[1, 1]))), (int(1), int(1)));
        assert!(matches!(to_m_basis(&y(2, 0)), Err(Error::NotSymmetric)));
    }

    #[test]
    fn m_basis_round_trip() {
        for n in 1..=4 {
            for k in 0..=8 {
                for b in zero_padded_partitions(k, n) {
                    let r = to_m_basis(&m_basis(&b, n)).unwrap();
                    assert_eq!(r.len(), 1);
                    assert_eq!(r.get(&b), int(1));
                }
            }
        }
    }

    #[test]
    fn full_terms_examples() {
        let p = SymPoly::from_terms(
            1,
            Frame::Y,
            vec![(vec![3], int(1)), (vec![2], int(-1)), (vec![1], int(-1)), (vec![0], int(1))],
        );
        assert_eq!(full_terms(&p, 2), SymPoly::monomial(1, vec![2], int(-1)));
        let q = y(2, 0).mul(&y(2, 1)).add(&y(2, 0).pow(2));
        assert_eq!(full_terms(&q, 2), y(2, 0).mul(&y(2, 1)));
    }

    #[test]
    fn pretty_printing() {
        let mut e = MExpansion::new(2);
        e.insert(zp(&[2, 2]), int(1));
        e.insert(zp(&[3, 1]), int(1));
        assert_eq!(e.to_string(), "m_{3 1}+m_{2^2}");
        let json = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(json, r#"{"m":[[3,1],[2,2]],"c":["1","1"]}"#);

        let mut e = MExpansion::new(3);
        e.insert(zp(&[4, 1, 1]), int(-1));
        e.insert(zp(&[3, 2, 1]), int(-2));
        assert_eq!(e.to_string(), "-m_{4 1^2}-2m_{3 2 1}");
        let mut e = MExpansion::new(1);
        e.insert(zp(&[4]), int(37));
        assert_eq!(e.to_string(), "37m_4");
        e.insert(zp(&[4]), crate::rational::rat(-1, 24));
        assert_eq!(e.to_string(), "-(1/24)m_4");
        assert_eq!(MExpansion::new(1).to_string(), "0");
        assert_eq!(format_m_symbol(&zp(&[10])), "m_{10}");
        assert_eq!(format_m_symbol(&zp(&[6, 1, 1, 1, 1])), "m_{6 1^4}");
    }

    #[test]
    fn symmetrizer_examples() {
        let s = |i: usize| y(3, i);
        let all = s(0).add(&s(1)).add(&s(2));
        // ordered pairs (r, s): y_r appears for each of the two choices of s
        assert_eq!(sym(&s(0), 1, 1), all.scale(&int(2)));
        // R = {r1 < r2}: y_{r1} is y_1 twice and y_2 once
        assert_eq!(sym(&s(0), 2, 0), s(0).scale(&int(2)).add(&s(1)));
        assert_eq!(sym(&s(0).add(&s(1)), 2, 0), all.scale(&int(2)));
        assert!(sym(&SymPoly::zero(3), 1, 1).is_zero());
        assert_eq!(ordered_set_partitions(4, 1, 2).len(), 12);
    }

    #[test]
    fn kernel_identity() {
        // (y_a² − y_b²)/(y_a − y_b) summed over pairs is (n−1) p_1
        for n in 2..=5 {
            let k = sym11_kernel(&y(2, 0).pow(2), &SymPoly::one(n - 1), n).unwrap();
            assert_eq!(k, p_basis(1, n).scale(&int(n as i64 - 1)));
        }
        let zero = sym11_kernel(&y(2, 0), &SymPoly::zero(2), 3).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn sym_product_matches_generic_sym() {
        let n = 4;
        let a = y(2, 0).pow(2).mul(&y(2, 1));
        let b = y(3, 0).mul(&y(3, 2).pow(3));
        let f = a.remap(n, &[0, 1]).mul(&b.remap(n, &[0, 2, 3]));
        assert_eq!(sym_product(&a, &b, n), sym(&f, 1, 1));
    }

    proptest! {
        #[test]
        fn symmetrizers_output_symmetric_polys(
            exps in prop::collection::vec(prop::collection::vec(0u16..3, 3), 1..5)
        ) {
            let f = SymPoly::from_terms(3, Frame::Y, exps.into_iter().map(|e| (e, int(1))));
            // with n = 3, sym_{1,1} runs over every arrangement of the variables
            prop_assert!(sym(&f, 1, 1).is_symmetric());
            let r = to_m_basis(&sym(&f, 1, 1)).unwrap();
            prop_assert_eq!(r.to_poly(), sym(&f, 1, 1));
        }
    }
}
