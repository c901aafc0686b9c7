//! Integer lattice tools: column Hermite normal form, kernel bases, LLL.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{dot_rat, IntVector};
use super::Rational;
use crate::Error;

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `h = a · u`, `u` unimodular, `h` in column echelon
/// form with positive pivots and the entries left of each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    // column operations act on h and u alike
    fn combine(mat: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
        // col_k <- s col_k + t col_j ; col_j <- p col_k + q col_j
        for row in mat.iter_mut() {
            let (ck, cj) = (row[k].clone(), row[j].clone());
            row[k] = s * &ck + t * &cj;
            row[j] = p * &ck + q * &cj;
        }
    }
    fn axpy(mat: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
        for row in mat.iter_mut() {
            let v = &row[src] * f;
            row[dst] -= v;
        }
    }
    fn negate(mat: &mut [Vec<BigInt>], c: usize) {
        for row in mat.iter_mut() {
            row[c] = -&row[c];
        }
    }

    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            let (a_, b_) = (h[i][k].clone(), h[i][j].clone());
            let eg = a_.extended_gcd(&b_);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let p = -(&b_ / &g);
            let q = &a_ / &g;
            combine(&mut h, k, j, &s, &t, &p, &q);
            combine(&mut u, k, j, &s, &t, &p, &q);
        }
        if h[i][k].is_zero() {
            continue;
        }
        if h[i][k].is_negative() {
            negate(&mut h, k);
            negate(&mut u, k);
        }
        for j in 0..k {
            let f = h[i][j].div_floor(&h[i][k]);
            if !f.is_zero() {
                axpy(&mut h, j, k, &f);
                axpy(&mut u, j, k, &f);
            }
        }
        k += 1;
    }
    (h, u)
}

/// A basis of `{v ∈ Z^l : Σ w_i v_i = 0}`, LLL-reduced.
pub fn integer_kernel_basis(weights: &[i64]) -> Result<Vec<IntVector>, Error> {
    if weights.is_empty() {
        return Err(Error::Input("empty weight vector".into()));
    }
    if let Some(w) = weights.iter().find(|&&w| w < 1) {
        return Err(Error::Input(format!("weights must be positive, got {w}")));
    }
    let row: Vec<BigInt> = weights.iter().map(|&w| BigInt::from(w)).collect();
    let (h, u) = hermite_normal_form(&[row]);
    let l = weights.len();
    debug_assert!(!h[0][0].is_zero() && h[0][1..].iter().all(Zero::is_zero));
    let basis: Vec<Vec<BigInt>> = (1..l).map(|c| (0..l).map(|r| u[r][c].clone()).collect()).collect();
    let reduced = lll_reduce(&basis);
    reduced
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Input("kernel basis entry exceeds i64".into())))
                .collect()
        })
        .collect()
}

/// `v / gcd(v)`; direction is preserved.
pub fn primitive_reduce(v: &[i64]) -> Result<IntVector, Error> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::Input("cannot reduce the zero vector".into()));
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// LLL reduction (δ = 3/4) of linearly independent integer vectors.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let to_q = |v: &[BigInt]| -> Vec<Rational> { v.iter().map(|x| Rational::from(x.clone())).collect() };
    let delta = Rational::new(3, 4);

    let gram_schmidt = |b: &[Vec<BigInt>]| -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Rational>) {
        let n = b.len();
        let mut bs: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::ZERO; n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let bi = to_q(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                let m = &dot_rat(&bi, &bs[j]) / &norms[j];
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &(&m * y);
                }
                mu[i][j] = m;
            }
            norms.push(dot_rat(&v, &v));
            bs.push(v);
        }
        (bs, mu, norms)
    };

    let mut k = 1;
    let (_, mut mu, mut norms) = gram_schmidt(&b);
    while k < n {
        for j in (0..k).rev() {
            let r = mu[k][j].round_half_up();
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
                let (_, m2, n2) = gram_schmidt(&b);
                mu = m2;
                norms = n2;
            }
        }
        let lhs = &norms[k];
        let rhs = &(&delta - &(&mu[k][k - 1] * &mu[k][k - 1])) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (_, m2, n2) = gram_schmidt(&b);
            mu = m2;
            norms = n2;
            k = (k - 1).max(1);
        }
    }
    b
}
