//! Exhaustive reference computations for small point sets.

use std::collections::BTreeSet;

use cyws::exact::lp::{maximize, LpOutcome};
use cyws::exact::Rational;

/// Facets by exhaustion: every `dim`-subset spanning a hyperplane with all
/// points weakly on one side.
pub fn facets_by_exhaustion(points: &[Vec<i64>], dim: usize) -> BTreeSet<(Vec<i64>, i64)> {
    fn det(m: Vec<Vec<i128>>) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(minor)
            })
            .sum()
    }
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(points.len(), dim, 0, &mut Vec::new(), &mut all);
    let mut out = BTreeSet::new();
    for s in all {
        let base = &points[s[0]];
        let diffs: Vec<Vec<i128>> = s[1..]
            .iter()
            .map(|&i| (0..dim).map(|c| (points[i][c] - base[c]) as i128).collect())
            .collect();
        let mut normal: Vec<i128> = (0..dim)
            .map(|j| {
                let minor = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                if j % 2 == 0 {
                    det(minor)
                } else {
                    -det(minor)
                }
            })
            .collect();
        let g = normal.iter().fold(0, |g, &x| gcd(g, x));
        if g == 0 {
            continue;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let eval = |p: &[i64]| -> i128 { normal.iter().zip(p).map(|(a, &x)| a * x as i128).sum() };
        let c = eval(base);
        let vals: Vec<i128> = points.iter().map(|p| eval(p)).collect();
        let sign = if vals.iter().all(|&v| v <= c) {
            1
        } else if vals.iter().all(|&v| v >= c) {
            -1
        } else {
            continue;
        };
        out.insert((normal.iter().map(|&x| (sign * x) as i64).collect(), (sign * c) as i64));
    }
    out
}

/// `p` is a convex combination of the other points.
pub fn is_redundant(points: &[Vec<i64>], i: usize) -> bool {
    let others: Vec<&Vec<i64>> = points.iter().enumerate().filter(|&(j, q)| j != i && *q != points[i]).map(|(_, q)| q).collect();
    if others.is_empty() {
        return false;
    }
    let dim = points[i].len();
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|c| others.iter().map(|q| Rational::from_integer(q[c])).collect())
        .collect();
    a.push(vec![Rational::ONE; others.len()]);
    let mut b: Vec<Rational> = points[i].iter().map(|&x| Rational::from_integer(x)).collect();
    b.push(Rational::ONE);
    !matches!(maximize(&vec![Rational::ZERO; others.len()], &a, &b), LpOutcome::Infeasible)
}
