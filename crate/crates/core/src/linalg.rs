//! Exact linear solves over the rationals.

use num_traits::Zero;

use crate::rational::{bit_size, Rational};

/// Outcome of reducing an `m × k` system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Fewer than `k` independent rows.
    RankDeficient { rank: usize },
    /// A row reduced to `0 = c` with `c ≠ 0`.
    Inconsistent,
}

/// Gauss-Jordan elimination. Among the candidate pivots in a column the
/// entry with the smallest bit size is chosen, which keeps intermediate
/// numbers short.
pub fn solve(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Solution {
    let m = rows.len();
    assert_eq!(rhs.len(), m);
    let k = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..k {
        let pivot = (rank..m)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| bit_size(&rows[i][col]));
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        rhs.swap(rank, p);
        let inv = Rational::from_integer(1.into()) / &rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        rhs[rank] *= &inv;
        let pivot_row = rows[rank].clone();
        let pivot_rhs = rhs[rank].clone();
        for i in 0..m {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for (v, pv) in rows[i].iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            rhs[i] -= &f * &pivot_rhs;
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rhs[rank..].iter().any(|v| !v.is_zero()) {
        return Solution::Inconsistent;
    }
    if rank < k {
        return Solution::RankDeficient { rank };
    }
    Solution::Unique(rhs.into_iter().take(k).collect())
}
