//! Closed forms for the lowest two layers of full terms.

use num_traits::One;

use crate::elsv::WittenTable;
use crate::error::{Error, Result};
use crate::partition::zero_padded_partitions;
use crate::poly::SymPoly;
use crate::rational::{binomial, factorial, from_bigint, harmonic, multinomial, rat, sign, Rational};
use crate::symfunc::{e_basis, h_basis, m_basis, p_basis, times_all_vars};

use super::{Engine, LambdaSeries, Route};

fn closed(g: u32, n: usize, k: i64, value: SymPoly) -> LambdaSeries {
    LambdaSeries {
        g,
        n,
        k,
        value,
        route: Route::ClosedForm,
    }
}

/// `Σ_{β ⊢₀ m, l(β) = n} ⟨τ_β λ_j⟩_g β! m_β`.
fn witten_sum(witten: &WittenTable, g: u32, j: u32, m: u32, n: usize) -> Result<SymPoly> {
    let mut acc = SymPoly::zero(n);
    for beta in zero_padded_partitions(m, n) {
        let w = witten.get(g, j, beta.parts())?;
        let fact: Rational = beta
            .parts()
            .iter()
            .fold(Rational::one(), |a, &b| a * from_bigint(factorial(b)));
        acc = acc.add(&m_basis(&beta, n).scale(&(w * fact)));
    }
    Ok(acc)
}

/// `Λ^g_{n,0} = y_1⋯y_n (−1)^{3g−3+n} Σ_β ⟨τ_β λ_g⟩_g β! m_β`, `β ⊢₀ 2g−3+n`.
pub fn minhur_closed_form(g: u32, n: usize, witten: &WittenTable) -> Result<LambdaSeries> {
    let m = 2 * g as i64 - 3 + n as i64;
    if n == 0 || m < 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let sum = witten_sum(witten, g, g, m as u32, n)?;
    let value = times_all_vars(&sum).scale(&sign(3 * g as i64 - 3 + n as i64));
    Ok(closed(g, n, 0, value))
}

/// `Λ^g_{n,1}` from the `λ_{g−1}` integrals and `c_g`.
pub fn k1_closed_form(g: u32, n: usize, witten: &WittenTable, c_g: &Rational) -> Result<LambdaSeries> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let top = 2 * g + n as u32 - 2;
    let first = witten_sum(witten, g, g - 1, top, n)?.scale(&sign(3 * g as i64 - 3 + n as i64));
    let mut second = SymPoly::zero(n);
    for k in 2..=top {
        let term = p_basis(k, n).mul(&h_basis(top - k, n)).scale(&harmonic(k - 1));
        second = second.add(&term);
    }
    let weight = sign(3 * g as i64 - 2 + n as i64) * c_g * from_bigint(factorial(top - 1));
    let value = times_all_vars(&first.add(&second.scale(&weight)));
    Ok(closed(g, n, 1, value))
}

/// The explicit genus-one form of `Λ^1_{n,1}`.
pub fn genus1_k1_closed_form(n: usize) -> Result<LambdaSeries> {
    if n == 0 {
        return Err(Error::InvalidRange { g: 1, n });
    }
    let nn = n as u32;
    let f = |k: u32| from_bigint(factorial(k));
    let mut harmonic_part = SymPoly::zero(n);
    for k in 2..=nn {
        harmonic_part = harmonic_part.add(&p_basis(k, n).mul(&h_basis(nn - k, n)).scale(&harmonic(k - 1)));
    }
    let mut acc = harmonic_part.scale(&(sign(n as i64 + 1) * f(nn - 1)));
    acc = acc.add(&h_basis(nn, n).scale(&(sign(n as i64) * f(nn))));

    let mut triple = SymPoly::zero(n);
    for i in 2..=nn {
        for m in i..=nn {
            let e = e_basis(m, n);
            if e.is_zero() {
                continue;
            }
            for k in 0..=nn - m {
                let w = f(i - 2) * f(nn - i) * sign((m - i) as i64) * from_bigint(binomial(m, i));
                triple = triple.add(&e.mul(&h_basis(k, n)).mul(&h_basis(nn - k - m, n)).scale(&w));
            }
        }
    }
    acc = acc.add(&triple.scale(&sign(n as i64 - 1)));
    let value = times_all_vars(&acc).scale(&rat(1, 24));
    Ok(closed(1, n, 1, value))
}

/// `⟨τ_β λ_g⟩_g = (2g−3+n choose β) c_g` for every `β ⊢₀ 2g−3+n`.
pub fn multinomial_witten(g: u32, n: usize, c_g: &Rational) -> WittenTable {
    let mut table = WittenTable::new();
    let m = 2 * g as i64 - 3 + n as i64;
    if m >= 0 {
        for beta in zero_padded_partitions(m as u32, n) {
            let v = from_bigint(multinomial(beta.parts())) * c_g;
            table.insert(g, g, beta, v);
        }
    }
    table.mark_covered(g, n);
    table
}

/// `Λ^g_{n,0} = c_g (−1)^{3g−3+n} (2g−3+n)! y_1⋯y_n h_{2g−3+n}`, and the
/// lowest-term closed form with multinomial integrals agrees.
pub fn lambda_g_theorem_check(engine: &mut Engine, g: u32, n: usize) -> Result<bool> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidRange { g, n });
    }
    let c = engine.c_g(g)?;
    let lambda = engine.lambda(g, n, 0)?;
    let m = 2 * g + n as u32 - 3;
    let expect = times_all_vars(&h_basis(m, n))
        .scale(&(sign(3 * g as i64 - 3 + n as i64) * &c * from_bigint(factorial(m))));
    let closed = minhur_closed_form(g, n, &multinomial_witten(g, n, &c))?;
    Ok(lambda == expect && closed.value == lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::to_m_basis;
    use crate::partition::ZeroPaddedPartition;
    use crate::rational::int;

    fn zp(parts: &[u32]) -> ZeroPaddedPartition {
        ZeroPaddedPartition::new(parts.to_vec())
    }

    #[test]
    fn minhur_examples() {
        let mut engine = Engine::default();
        let w = engine.witten(1, 1).unwrap();
        let v = minhur_closed_form(1, 1, &w).unwrap().value;
        assert_eq!(v, SymPoly::var(1, 0).scale(&rat(-1, 24)));

        let w = engine.witten(1, 2).unwrap();
        let v = minhur_closed_form(1, 2, &w).unwrap().value;
        let y = |i| SymPoly::var(2, i);
        assert_eq!(v, y(0).mul(&y(1)).mul(&y(0).add(&y(1))).scale(&rat(1, 24)));

        let w = engine.witten(0, 3).unwrap();
        assert_eq!(minhur_closed_form(0, 3, &w).unwrap().value, SymPoly::product_of_vars(3));
        assert!(matches!(
            minhur_closed_form(2, 1, &w),
            Err(Error::MissingWittenEntries(_))
        ));
    }

    #[test]
    fn k1_examples() {
        let mut engine = Engine::default();
        let c1 = engine.c_g(1).unwrap();
        let w = engine.witten(1, 1).unwrap();
        let v = k1_closed_form(1, 1, &w, &c1).unwrap().value;
        assert_eq!(v, SymPoly::monomial(1, vec![2], rat(-1, 24)));
        let w = engine.witten(1, 2).unwrap();
        let v = k1_closed_form(1, 2, &w, &c1).unwrap().value.scale(&int(24));
        let r = to_m_basis(&v).unwrap();
        assert_eq!(r.to_string(), "m_{3 1}+m_{2^2}");
        assert_eq!(harmonic(2), rat(3, 2));
    }

    #[test]
    fn genus_one_rows() {
        let v = genus1_k1_closed_form(1).unwrap().value;
        assert_eq!(v, SymPoly::monomial(1, vec![2], rat(-1, 24)));
        let r = to_m_basis(&genus1_k1_closed_form(5).unwrap().value.scale(&int(24))).unwrap();
        assert_eq!(r.get(&zp(&[6, 1, 1, 1, 1])), int(34));
    }

    #[test]
    fn small_theorem_checks() {
        let mut engine = Engine::default();
        assert!(lambda_g_theorem_check(&mut engine, 1, 1).unwrap());
        assert!(lambda_g_theorem_check(&mut engine, 1, 2).unwrap());
        assert!(lambda_g_theorem_check(&mut engine, 2, 1).unwrap());
    }
}
