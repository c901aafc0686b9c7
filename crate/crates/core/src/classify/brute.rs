//! Degree-by-degree sweep over all weight systems.

use rayon::prelude::*;

use crate::weights::{ClassRecord, WeightSystem};

use super::{analyze, Flags};

/// Calls `f` on every canonical weight system of length `l` and degree `d`
/// (ascending numerators, gcd one).
pub fn for_each_system_of_degree(l: usize, d: i64, f: &mut dyn FnMut(WeightSystem)) {
    fn rec(l: usize, d: i64, left: i64, min: i64, g: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(WeightSystem)) {
        use num_integer::Integer;
        if cur.len() + 1 == l {
            if left >= min && g.gcd(&left) == 1 {
                cur.push(left);
                f(WeightSystem::canonicalize(cur, d).expect("valid by construction"));
                cur.pop();
            }
            return;
        }
        let slots = (l - cur.len()) as i64;
        let mut x = min;
        while x * slots <= left {
            cur.push(x);
            rec(l, d, left - x, x, g.gcd(&x), cur, f);
            cur.pop();
            x += 1;
        }
    }
    if l >= 2 {
        rec(l, d, d, 1, 0, &mut Vec::with_capacity(l), f);
    }
}

/// Cheap necessary condition: for every `i` some point has `P^i = 0` and some
/// point has `P^i >= 2`.
fn may_have_interior_point(ws: &WeightSystem) -> bool {
    let ns = ws.numerators();
    let d = ws.degree() as usize;
    let reach = |skip: Option<usize>| {
        let mut r = vec![false; d + 1];
        r[0] = true;
        for (j, &n) in ns.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            let n = n as usize;
            for t in n..=d {
                if r[t - n] {
                    r[t] = true;
                }
            }
        }
        r
    };
    let all = reach(None);
    (0..ns.len()).all(|i| {
        let two = 2 * ns[i] as usize;
        two <= d && all[d - two] && reach(Some(i))[d]
    })
}

/// IP weight systems of length `l` with degree at most `dmax`, canonical order.
pub fn enumerate_by_degree(l: usize, dmax: i64, flags: Flags) -> Vec<ClassRecord> {
    let degrees: Vec<i64> = (l as i64..=dmax).collect();
    let per_degree: Vec<Vec<ClassRecord>> = degrees
        .par_iter()
        .map(|&d| {
            let mut found = Vec::new();
            for_each_system_of_degree(l, d, &mut |ws| {
                if may_have_interior_point(&ws) {
                    let rec = analyze(&ws, flags);
                    if rec.ip {
                        found.push(rec);
                    }
                }
            });
            found
        })
        .collect();
    let mut out: Vec<ClassRecord> = per_degree.into_iter().flatten().collect();
    out.sort_by(|a, b| a.weight_system.cmp(&b.weight_system));
    out
}
