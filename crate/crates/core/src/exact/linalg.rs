//! Dense exact elimination over `Rational` and fraction-free integer rank.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rational;

pub type IntVector = Vec<i64>;
pub type RatForm = Vec<Rational>;

pub fn dot(form: &[Rational], point: &[i64]) -> Rational {
    debug_assert_eq!(form.len(), point.len());
    let mut acc = Rational::ZERO;
    for (a, &x) in form.iter().zip(point) {
        if x != 0 && !a.is_zero() {
            acc += &(a * &Rational::from_integer(x));
        }
    }
    acc
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot_rat(a, a)
}

pub fn to_rat_row(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row (the zero rows are moved to the bottom).
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !super::rational::is_one(&inv) {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves the square system `m x = rhs`; `None` if singular.
pub fn solve_square(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Bareiss step shared by the machine-word and bignum rank routines.
trait FracFree: Clone {
    fn is_zero(&self) -> bool;
    fn step(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Option<Self>;
}

impl FracFree for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn step(akk: &i128, aij: &i128, aik: &i128, akj: &i128, prev: &i128) -> Option<i128> {
        let v = akk.checked_mul(*aij)?.checked_sub(aik.checked_mul(*akj)?)?;
        Some(v / prev)
    }
}

impl FracFree for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(akk: &BigInt, aij: &BigInt, aik: &BigInt, akj: &BigInt, prev: &BigInt) -> Option<BigInt> {
        Some((akk * aij - aik * akj) / prev)
    }
}

fn bareiss_rank<T: FracFree>(mut m: Vec<Vec<T>>, one: T) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = one;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                m[i][j] = T::step(&m[r][c], &m[i][j], &m[i][c], &m[r][j], &prev)?;
            }
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Some(r)
}

/// Rank over Q of a set of integer vectors.
pub fn rank<V: AsRef<[i64]>>(rows: &[V]) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(r) = bareiss_rank(small, 1i128) {
        return r;
    }
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(big, BigInt::from(1)).expect("bignum elimination is total")
}

/// Incrementally maintained row-echelon basis used to test whether a new
/// integer vector increases the rank of a growing set.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<Rational> {
        let mut w = to_rat_row(v);
        for (pc, row) in &self.rows {
            if w[*pc].is_zero() {
                continue;
            }
            let f = w[*pc].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        w
    }

    pub fn is_independent(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((pc, w));
        true
    }
}
