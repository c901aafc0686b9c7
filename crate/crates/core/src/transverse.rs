//! Transversality of quasi-homogeneous polynomials for a weight system.

use crate::exact::{solve_square, IntVector, Rational};
use crate::weights::WeightSystem;

/// Bitmask of `{0,…,l-1}`.
pub type IndexSet = u32;

/// Degrees `0..=d` reachable by monomials in the variables of one subset,
/// as a bitset.
#[derive(Clone)]
struct Reach {
    words: Vec<u64>,
    d: usize,
}

impl Reach {
    fn empty(d: usize) -> Reach {
        let mut words = vec![0u64; d / 64 + 1];
        words[0] = 1;
        Reach { words, d }
    }

    /// `self | self << k`, truncated at `d`.
    fn shift_or(&mut self, k: usize) {
        let (ws, bs) = (k / 64, k % 64);
        for i in (ws..self.words.len()).rev() {
            let mut v = self.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        let tail = (self.d + 1) % 64;
        if tail > 0 {
            *self.words.last_mut().expect("nonempty") &= (1u64 << tail) - 1;
        }
    }

    /// Adds arbitrary multiples of `n` to every reachable degree.
    fn with_weight(&self, n: usize) -> Reach {
        let mut r = self.clone();
        let mut step = n;
        while step <= self.d {
            r.shift_or(step);
            step *= 2;
        }
        r
    }

    fn new(ws: &WeightSystem, subset: IndexSet) -> Reach {
        let mut r = Reach::empty(ws.degree() as usize);
        for (j, &n) in ws.numerators().iter().enumerate() {
            if subset & (1 << j) != 0 {
                r = r.with_weight(n as usize);
            }
        }
        r
    }

    fn has(&self, degree: i64) -> bool {
        degree >= 0 && degree as usize <= self.d && self.words[degree as usize / 64] >> (degree as usize % 64) & 1 == 1
    }
}

/// Is there a monomial supported on `subset` of degree `d - deficit`?
pub fn subset_monomial_exists(ws: &WeightSystem, subset: IndexSet, deficit: i64) -> bool {
    Reach::new(ws, subset).has(ws.degree() - deficit)
}

/// Every nonempty subset `J` either carries a monomial of degree `d` or has at
/// least `|J|` distinct outside variables `x_k` with a monomial `x_k · m_J`.
pub fn is_transverse(ws: &WeightSystem) -> bool {
    let l = ws.len();
    let d = ws.degree();
    let ns = ws.numerators();
    let mut reach: Vec<Reach> = Vec::with_capacity(1 << l);
    reach.push(Reach::empty(d as usize));
    for j in 1..(1u32 << l) {
        let low = j.trailing_zeros() as usize;
        let r = reach[(j & (j - 1)) as usize].with_weight(ns[low] as usize);
        let ok = r.has(d) || {
            let partners = (0..l).filter(|&k| j & (1 << k) == 0 && r.has(d - ns[k])).count();
            partners >= j.count_ones() as usize
        };
        if !ok {
            return false;
        }
        reach.push(r);
    }
    true
}

/// Monomials `(X^i)^{a_i}` or `(X^i)^{a_i} X^j`, one per row, of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub rows: Vec<IntVector>,
    /// Solution of `A q̄ = (1,…,1)`.
    pub qbar: Vec<Rational>,
}

fn row_options(ws: &WeightSystem, i: usize) -> Vec<(IntVector, Option<usize>)> {
    let ns = ws.numerators();
    let (l, d) = (ws.len(), ws.degree());
    let mut out = Vec::new();
    if d % ns[i] == 0 && d / ns[i] >= 2 {
        let mut r = vec![0; l];
        r[i] = d / ns[i];
        out.push((r, None));
    }
    for j in (0..l).filter(|&j| j != i) {
        let rest = d - ns[j];
        if rest % ns[i] == 0 && rest / ns[i] >= 2 {
            let mut r = vec![0; l];
            r[i] = rest / ns[i];
            r[j] = 1;
            out.push((r, Some(j)));
        }
    }
    out
}

/// A nonsingular monomial matrix using each off-diagonal column at most once,
/// preferring pure powers.
pub fn lemma2_matrix(ws: &WeightSystem) -> Option<MonomialMatrix> {
    let l = ws.len();
    let options: Vec<_> = (0..l).map(|i| row_options(ws, i)).collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    fn search(
        i: usize,
        options: &[Vec<(IntVector, Option<usize>)>],
        used: &mut Vec<bool>,
        rows: &mut Vec<IntVector>,
    ) -> Option<MonomialMatrix> {
        if i == options.len() {
            let a: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect();
            let qbar = solve_square(&a, &vec![Rational::ONE; rows.len()])?;
            return Some(MonomialMatrix {
                rows: rows.clone(),
                qbar,
            });
        }
        for (row, col) in &options[i] {
            if let Some(j) = col {
                if used[*j] {
                    continue;
                }
                used[*j] = true;
            }
            rows.push(row.clone());
            let found = search(i + 1, options, used, rows);
            rows.pop();
            if let Some(j) = col {
                used[*j] = false;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
    search(0, &options, &mut vec![false; l], &mut Vec::with_capacity(l))
}
