//! Dense two-phase simplex over exact rationals, Bland's rule throughout.
//!
//! Problems here have at most a handful of rows and columns, so the tableau is
//! recomputed naively; the point is exactness and guaranteed termination.

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                r -= &(&cost[b] * &self.rows[i][j]);
            }
        }
        r
    }

    /// Maximizes `cost · x` over columns `< active`; returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], active: usize) -> bool {
        loop {
            let entering = (0..active)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(Rational, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((br, bi)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
            let Some((_, r)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::ZERO; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Maximizes `c · x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n);
        let flip = bi.is_negative();
        let mut r: Vec<Rational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::ONE } else { Rational::ZERO }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };

    // phase I: maximize -(sum of artificials)
    let mut phase1 = vec![Rational::ZERO; ncols];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rational::ONE;
    }
    t.optimize(&phase1, ncols);
    let infeas: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive remaining (zero-level) artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.resize(ncols, Rational::ZERO);
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn small_optimum() {
        // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let c = vec![q(1), q(1), q(0), q(0)];
        let a = vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]];
        let b = vec![q(4), q(6)];
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, Rational::new(14, 5));
                assert_eq!(x[0], Rational::new(8, 5));
                assert_eq!(x[1], Rational::new(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![q(1), q(1)]];
        assert_eq!(maximize(&[q(1), q(0)], &a, &[q(-1)]), LpOutcome::Infeasible);
        let a = vec![vec![q(1), q(-1)]];
        assert_eq!(maximize(&[q(1), q(0)], &a, &[q(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        // duplicated constraint row, degenerate vertex at the origin
        let a = vec![vec![q(1), q(1), q(-1)], vec![q(2), q(2), q(-2)]];
        let b = vec![q(0), q(0)];
        match maximize(&[q(-1), q(0), q(0)], &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(0)),
            other => panic!("{other:?}"),
        }
    }
}
