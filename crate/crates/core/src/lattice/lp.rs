//! Exact two-phase simplex method over `Q` with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::cyclo::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in &mut self.t[r] {
            *v = &*v * &inv;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over columns `< allowed`; false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        r -= &cost[b] * &self.t[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.t.len() {
                if self.t[i][j].is_positive() {
                    let ratio = self.rhs(i) / &self.t[i][j];
                    let better = match &best {
                        None => true,
                        Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, i, _)) = best else {
                return false;
            };
            self.pivot(i, j);
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().enumerate().fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// Maximizes `obj . z` subject to `a z <= b` and `z >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], obj: &[Rational]) -> LpResult {
    let m = a.len();
    let n = obj.len();
    let artificial: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let cols = n + m + artificial.len();
    let mut t = vec![vec![Rational::zero(); cols + 1]; m];
    let mut basis = vec![0; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -&a[i][j] } else { a[i][j].clone() };
        }
        t[i][n + i] = if flip { -Rational::one() } else { Rational::one() };
        t[i][cols] = b[i].abs();
        basis[i] = n + i;
    }
    for (k, &i) in artificial.iter().enumerate() {
        t[i][n + m + k] = Rational::one();
        basis[i] = n + m + k;
    }
    let mut tab = Tableau { t, basis, cols };
    if !artificial.is_empty() {
        let mut cost = vec![Rational::zero(); cols];
        for c in cost.iter_mut().skip(n + m) {
            *c = -Rational::one();
        }
        tab.optimize(&cost, cols);
        if tab.value(&cost).is_negative() {
            return LpResult::Infeasible;
        }
        // Drive zero-level artificials out of the basis.
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n + m {
                match (0..n + m).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    let mut cost = vec![Rational::zero(); cols];
    cost[..n].clone_from_slice(obj);
    if !tab.optimize(&cost, n + m) {
        return LpResult::Unbounded;
    }
    LpResult::Optimal(tab.value(&cost))
}
