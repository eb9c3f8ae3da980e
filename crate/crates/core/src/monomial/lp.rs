//! Dense two-phase tableau simplex over the rationals, Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0`. Bland's rule (lowest index
//! entering, lowest index leaving on ratio ties) guarantees termination.
//! Problem sizes here are tiny, so no effort goes into sparsity.

use crate::exact_math::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

struct Tableau {
    /// `rows[i]` has `cols` coefficients followed by the rhs
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&f * y);
            }
        }
        self.basis[r] = col;
    }

    /// Reduced costs `c_j - c_B B^{-1} A_j` for columns `< active`.
    fn reduced_costs(&self, cost: &[Rational], active: usize) -> Vec<Rational> {
        (0..active)
            .map(|j| {
                let mut rc = cost[j].clone();
                for (row, &bv) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bv].is_zero() {
                        rc -= &(&cost[bv] * &row[j]);
                    }
                }
                rc
            })
            .collect()
    }

    /// Runs simplex iterations on the first `active` columns. Returns false
    /// when unbounded.
    fn optimize(&mut self, cost: &[Rational], active: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost, active);
            let Some(enter) = rc.iter().position(Rational::is_negative) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &bv)| &cost[bv] * &row[self.cols])
            .sum()
    }
}

pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    let total = n + m;

    let mut rows = Vec::with_capacity(m);
    for (i, (arow, bi)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Rational> = arow
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        row.push(if flip { -bi } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..total).collect(),
        cols: total,
    };

    // phase 1: minimize the sum of artificials
    let phase1_cost: Vec<Rational> = (0..total)
        .map(|j| {
            if j >= n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    t.optimize(&phase1_cost, total);
    if t.objective(&phase1_cost).is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // phase 2 over the original columns only
    let mut cost = lp.c.clone();
    cost.extend((0..m).map(|_| Rational::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[t.cols].clone();
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { value, x }
}
