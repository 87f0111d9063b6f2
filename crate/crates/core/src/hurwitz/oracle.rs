//! Brute-force count of transitive factorizations into transpositions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;

/// Default leaf budget for the exhaustive search.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `(d(d−1)/2)^r`, saturating.
pub fn search_bound(d: u32, r: u32) -> u128 {
    let t = (d as u128) * (d.saturating_sub(1) as u128) / 2;
    let mut acc: u128 = 1;
    for _ in 0..r {
        acc = acc.saturating_mul(t);
    }
    acc
}

/// `F(g, α)`: ordered `r`-tuples of transpositions whose product is the
/// canonical permutation of cycle type `α` and which generate a transitive
/// subgroup of `S_d`.
pub fn oracle_count_f(g: u32, alpha: &Partition, budget: u128) -> Result<u64> {
    let r = alpha.transposition_count(g);
    if r < 0 {
        return Err(Error::InvalidDomain(format!(
            "no covers for genus {g} and {alpha}: r = {r}"
        )));
    }
    count_factorizations(&Permutation::canonical(alpha), r as u32, budget)
}

/// Counts transitive factorizations of an arbitrary target permutation.
pub fn count_factorizations(target: &Permutation, r: u32, budget: u128) -> Result<u64> {
    let d = target.degree();
    let bound = search_bound(d as u32, r);
    if bound > budget {
        return Err(Error::BudgetExceeded { bound, budget });
    }
    if r == 0 {
        let ok = *target == Permutation::identity(d) && d <= 1;
        return Ok(ok as u64);
    }
    let transpositions: Vec<(u32, u32)> = (0..d as u32)
        .flat_map(|a| (a + 1..d as u32).map(move |b| (a, b)))
        .collect();
    let search = Search {
        d,
        r,
        target_inv: target.inverse(),
        transpositions,
    };
    // split on the first factor
    let count = search
        .transpositions
        .par_iter()
        .map(|&(a, b)| {
            let mut state = State::new(d);
            state.push(a, b);
            let mut count = 0u64;
            search.descend(&mut state, 1, &mut count);
            count
        })
        .sum();
    Ok(count)
}

struct Search {
    d: usize,
    r: u32,
    target_inv: Permutation,
    transpositions: Vec<(u32, u32)>,
}

/// Partial product and the component labels of the factors chosen so far.
#[derive(Clone)]
struct State {
    product: Vec<u32>,
    labels: Vec<u32>,
}

impl State {
    fn new(d: usize) -> Self {
        State {
            product: (0..d as u32).collect(),
            labels: (0..d as u32).collect(),
        }
    }

    /// Right-multiplies by `(a b)` and merges their components.
    fn push(&mut self, a: u32, b: u32) {
        self.product.swap(a as usize, b as usize);
        let (la, lb) = (self.labels[a as usize], self.labels[b as usize]);
        if la != lb {
            for l in self.labels.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
        }
    }

    fn transitive(&self) -> bool {
        self.labels.iter().all(|&l| l == self.labels[0])
    }
}

impl Search {
    /// `ρ = σ⁻¹ · π`; the remaining factors must multiply to `ρ⁻¹`, which has
    /// the same cycle count as `ρ`.
    fn remainder(&self, state: &State) -> Permutation {
        let pi = Permutation::from_images(state.product.clone()).expect("bijection");
        self.target_inv.compose(&pi)
    }

    fn descend(&self, state: &mut State, depth: u32, count: &mut u64) {
        let rest = self.remainder(state);
        let left = self.r - depth;
        if left == 0 {
            if rest == Permutation::identity(self.d) && state.transitive() {
                *count += 1;
            }
            return;
        }
        let needed = self.d - rest.cycle_count();
        if needed as u32 > left {
            return;
        }
        if left == 1 {
            // the last factor is forced
            let moved: Vec<u32> = (0..self.d as u32).filter(|&i| rest.apply(i) != i).collect();
            if moved.len() == 2 {
                let mut next = state.clone();
                next.push(moved[0], moved[1]);
                if next.transitive() {
                    *count += 1;
                }
            }
            return;
        }
        for &(a, b) in &self.transpositions {
            let mut next = state.clone();
            next.push(a, b);
            self.descend(&mut next, depth + 1, count);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Plain enumeration of every tuple, no pruning.
    fn naive(target: &Permutation, r: u32) -> u64 {
        let d = target.degree();
        let ts: Vec<Permutation> = (0..d as u32)
            .flat_map(|a| (a + 1..d as u32).map(move |b| (a, b)))
            .map(|(a, b)| Permutation::transposition(d, a, b))
            .collect();
        let pairs: Vec<(u32, u32)> = (0..d as u32)
            .flat_map(|a| (a + 1..d as u32).map(move |b| (a, b)))
            .collect();
        let mut count = 0;
        let total = ts.len().pow(r);
        for mut code in 0..total {
            let mut prod = Permutation::identity(d);
            let mut labels: Vec<u32> = (0..d as u32).collect();
            for _ in 0..r {
                let k = code % ts.len();
                code /= ts.len();
                prod = prod.compose(&ts[k]);
                let (a, b) = pairs[k];
                let (la, lb) = (labels[a as usize], labels[b as usize]);
                for l in labels.iter_mut() {
                    if *l == lb {
                        *l = la;
                    }
                }
            }
            if prod == *target && labels.iter().all(|&l| l == labels[0]) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn spot_counts() {
        assert_eq!(oracle_count_f(0, &p(&[1]), DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(oracle_count_f(0, &p(&[2, 1]), DEFAULT_BUDGET).unwrap(), 8);
        assert_eq!(oracle_count_f(1, &p(&[1]), DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(oracle_count_f(1, &p(&[3]), DEFAULT_BUDGET).unwrap(), 27);
        assert_eq!(oracle_count_f(0, &p(&[1, 1, 1]), DEFAULT_BUDGET).unwrap(), 24);
        assert_eq!(oracle_count_f(1, &p(&[2]), DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn pruned_search_matches_naive_enumeration() {
        for (g, parts) in [(0, &[2, 1][..]), (0, &[2, 2]), (1, &[3]), (0, &[1, 1, 1]), (1, &[2, 1])] {
            let a = p(parts);
            let r = a.transposition_count(g) as u32;
            let sigma = Permutation::canonical(&a);
            assert_eq!(
                count_factorizations(&sigma, r, DEFAULT_BUDGET).unwrap(),
                naive(&sigma, r),
                "g={g} alpha={a}"
            );
        }
    }

    #[test]
    fn budget_and_domain_errors() {
        assert!(matches!(
            oracle_count_f(3, &p(&[4, 1]), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(oracle_count_f(0, &p(&[1, 1]), 10).unwrap(), 1);
        assert!(matches!(
            oracle_count_f(0, &Partition::empty(), 10),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn search_bound_saturates() {
        assert_eq!(search_bound(3, 4), 81);
        assert_eq!(search_bound(1, 5), 0);
        assert_eq!(search_bound(1, 0), 1);
        assert_eq!(search_bound(40, 200), u128::MAX);
    }
}
