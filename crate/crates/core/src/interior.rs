//! Deciding whether `(1,…,1)` is an interior point of the Newton polyhedron.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{inverse, EchelonBasis, IntVector, Rational};
use crate::geometry::hull_facets;
use crate::weights::PointSet;
use crate::Error;

/// Barycentric coordinates of `(1,…,1)` with respect to `l` linearly
/// independent points on the degree hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycentricCoords {
    pub points: Vec<IntVector>,
    pub lambdas: Vec<Rational>,
    /// Row `i` evaluates to `λ_i(Q)` on a point `Q` of the hyperplane.
    functionals: Vec<Vec<Rational>>,
}

impl BarycentricCoords {
    /// `None` if the points are linearly dependent.
    pub fn new(points: Vec<IntVector>) -> Option<BarycentricCoords> {
        let target = vec![1; points.len()];
        Self::with_target(points, &target)
    }

    fn with_target(points: Vec<IntVector>, target: &[i64]) -> Option<BarycentricCoords> {
        let l = points.len();
        if l != target.len() || points.iter().any(|p| p.len() != l) {
            return None;
        }
        // columns are the points; the inverse's rows are the coordinate functionals
        let m: Vec<Vec<Rational>> = (0..l)
            .map(|r| points.iter().map(|p| Rational::from_integer(p[r])).collect())
            .collect();
        let functionals = inverse(&m)?;
        let lambdas = functionals.iter().map(|row| crate::exact::dot(row, target)).collect();
        Some(BarycentricCoords {
            points,
            lambdas,
            functionals,
        })
    }

    pub fn coordinate_of(&self, i: usize, q: &[i64]) -> Rational {
        crate::exact::dot(&self.functionals[i], q)
    }

    /// `Σ λ_i = 1` and `Σ λ_i P_i = (1,…,1)`.
    pub fn is_consistent(&self) -> bool {
        let l = self.points.len();
        let total: Rational = self.lambdas.iter().sum();
        total == Rational::ONE
            && (0..l).all(|c| {
                let s: Rational = self
                    .points
                    .iter()
                    .zip(&self.lambdas)
                    .map(|(p, lam)| lam * &Rational::from_integer(p[c]))
                    .sum();
                s == Rational::ONE
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkOutcome {
    Interior,
    NotInterior,
    Inconclusive,
}

fn starting_points(ps: &PointSet) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(ps.points[i].iter().copied().max().unwrap_or(0)));
    independent_subset(&ps.points, &ps.interior_point(), order)
}

fn independent_subset(gens: &[IntVector], target: &[i64], order: Vec<usize>) -> Option<Vec<usize>> {
    let m = target.len();
    let mut basis = EchelonBasis::new();
    let mut chosen = Vec::with_capacity(m);
    for i in order {
        if gens[i] != target && basis.insert(&gens[i]) {
            chosen.push(i);
            if chosen.len() == m {
                return Some(chosen);
            }
        }
    }
    None
}

/// Whether `target` lies in the interior of the cone spanned by `gens`,
/// walking from the basis `chosen`. Generators equal to `target` are ignored.
fn cone_walk(gens: &[IntVector], target: &[i64], mut chosen: Vec<usize>) -> WalkOutcome {
    let cap = target.len() * gens.len();
    for _ in 0..cap {
        let bc = BarycentricCoords::with_target(chosen.iter().map(|&i| gens[i].clone()).collect(), target)
            .expect("exchange keeps the selection independent");
        let negative = bc
            .lambdas
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_negative())
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
        if let Some((i, _)) = negative {
            let mut best: Option<(Rational, usize)> = None;
            for (qi, q) in gens.iter().enumerate() {
                if q.as_slice() == target {
                    continue;
                }
                let v = bc.coordinate_of(i, q);
                if v.is_negative() && best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, qi));
                }
            }
            match best {
                Some((_, qi)) => chosen[i] = qi,
                None => return WalkOutcome::NotInterior,
            }
            continue;
        }
        let zeros: Vec<usize> = (0..bc.lambdas.len()).filter(|&i| bc.lambdas[i].is_zero()).collect();
        return match zeros.as_slice() {
            [] => WalkOutcome::Interior,
            [i] => {
                if gens.iter().any(|q| bc.coordinate_of(*i, q).is_negative()) {
                    WalkOutcome::Interior
                } else {
                    WalkOutcome::NotInterior
                }
            }
            _ => quotient_walk(gens, &bc, &zeros),
        };
    }
    WalkOutcome::Inconclusive
}

/// `target` sits in the relative interior of the face spanned by the basis
/// vectors outside `zeros`. Projecting along that face leaves the question
/// whether the images of `gens` positively span the quotient, asked again
/// as a cone problem one dimension up from the quotient.
fn quotient_walk(gens: &[IntVector], bc: &BarycentricCoords, zeros: &[usize]) -> WalkOutcome {
    let k = zeros.len();
    let mut lifted = Vec::new();
    for q in gens {
        let v: Vec<Rational> = zeros.iter().map(|&i| bc.coordinate_of(i, q)).collect();
        if v.iter().all(Rational::is_zero) {
            continue;
        }
        let Some(mut w) = primitive_integer(&v) else {
            return WalkOutcome::Inconclusive;
        };
        w.push(1);
        lifted.push(w);
    }
    lifted.sort_unstable();
    lifted.dedup();
    let mut target = vec![0; k];
    target.push(1);
    match independent_subset(&lifted, &target, (0..lifted.len()).collect()) {
        Some(start) => cone_walk(&lifted, &target, start),
        None => WalkOutcome::NotInterior,
    }
}

/// Positive multiple of `v` with coprime integer entries, if they fit in `i64`.
fn primitive_integer(v: &[Rational]) -> Option<IntVector> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64()).collect()
}

/// Exchange walk on barycentric coordinates of `(1,…,1)`.
pub fn ip_walk(ps: &PointSet) -> WalkOutcome {
    match starting_points(ps) {
        Some(start) => cone_walk(&ps.points, &ps.interior_point(), start),
        None => WalkOutcome::NotInterior,
    }
}

/// Exact decision through the convex hull in chart coordinates.
pub fn ip_oracle(ps: &PointSet) -> bool {
    match hull_facets(ps) {
        Ok(p) => p.origin_interior,
        Err(Error::DimDeficient) => false,
        Err(e) => panic!("hull of a weight system's points failed: {e}"),
    }
}

pub fn ip_check(ps: &PointSet) -> bool {
    match ip_walk(ps) {
        WalkOutcome::Interior => true,
        WalkOutcome::NotInterior => false,
        WalkOutcome::Inconclusive => ip_oracle(ps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightSystem;
    use proptest::prelude::*;

    fn ps(s: &str) -> PointSet {
        s.parse::<WeightSystem>().unwrap().points()
    }

    #[test]
    fn examples() {
        for (s, want) in [
            ("1 1 1 3 4 10", true),
            ("1 1 1 1 6 10", false),
            ("2 2 2 3 9", false),
            ("1 1 1 1 1 5", true),
            ("1 2 3 6", true),
            ("1 1 2 4", true),
            ("1 1 1 4 5 12", true),
            ("40 41 486 1134 1701 3402", true),
        ] {
            let p = ps(s);
            assert_eq!(ip_check(&p), want, "{s}");
            assert_eq!(ip_oracle(&p), want, "{s}");
        }
    }

    #[test]
    fn several_zero_coordinates_are_decided() {
        for (s, want) in [("2 3 3 3 5 16", false), ("3 3 4 4 6 20", false), ("1 3 3 4 9 20", false)] {
            let p = ps(s);
            assert_eq!(ip_oracle(&p), want, "{s}");
            let got = match ip_walk(&p) {
                WalkOutcome::Interior => true,
                WalkOutcome::NotInterior => false,
                WalkOutcome::Inconclusive => panic!("walk undecided on {s}"),
            };
            assert_eq!(got, want, "{s}");
        }
    }

    #[test]
    fn cone_walk_in_the_plane() {
        let square = vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]];
        let t = [0, 0, 1];
        let start = independent_subset(&square, &t, (0..4).collect()).unwrap();
        assert_eq!(cone_walk(&square, &t, start), WalkOutcome::Interior);
        let half = vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1]];
        let start = independent_subset(&half, &t, (0..3).collect()).unwrap();
        assert_eq!(cone_walk(&half, &t, start), WalkOutcome::NotInterior);
    }

    #[test]
    fn degenerate_point_set_is_not_interior() {
        // only the points with P^3 = 0 besides (1,1,1): rank deficient
        let mut p = ps("1 1 1 3");
        p.points.retain(|q| q[2] == 0);
        assert_eq!(ip_walk(&p), WalkOutcome::NotInterior);
        assert!(!ip_oracle(&p));
    }

    #[test]
    fn barycentric_invariants() {
        let bc = BarycentricCoords::new(vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        assert!(bc.is_consistent());
        assert_eq!(bc.lambdas, vec![Rational::new(1, 3); 3]);
        assert!(BarycentricCoords::new(vec![vec![1, 1], vec![2, 2]]).is_none());
    }

    #[test]
    fn walk_agrees_with_oracle_up_to_degree_twenty() {
        for l in 3..=5usize {
            for d in l as i64..=20 {
                for_each_partition(l, d, &mut |ns| {
                    if let Ok(w) = WeightSystem::canonicalize(ns, d) {
                        if w.degree() == d {
                            let p = w.points();
                            let walk = ip_walk(&p);
                            let oracle = ip_oracle(&p);
                            match walk {
                                WalkOutcome::Interior => assert!(oracle, "{w}"),
                                WalkOutcome::NotInterior => assert!(!oracle, "{w}"),
                                WalkOutcome::Inconclusive => panic!("walk undecided on {w}"),
                            }
                            if oracle {
                                assert!(p.len() > l);
                            }
                        }
                    }
                });
            }
        }
    }

    fn for_each_partition(l: usize, d: i64, f: &mut dyn FnMut(&[i64])) {
        fn rec(l: usize, left: i64, min: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
            if cur.len() + 1 == l {
                if left >= min {
                    cur.push(left);
                    f(cur);
                    cur.pop();
                }
                return;
            }
            let slots = (l - cur.len()) as i64;
            let mut x = min;
            while x * slots <= left {
                cur.push(x);
                rec(l, left - x, x, cur, f);
                cur.pop();
                x += 1;
            }
        }
        rec(l, d, 1, &mut Vec::new(), f);
    }

    proptest! {
        #[test]
        fn permutation_invariance(raw in proptest::collection::vec(1i64..8, 4), rot in 0usize..4) {
            let d: i64 = raw.iter().sum();
            let w = WeightSystem::canonicalize(&raw, d).unwrap();
            let base = ip_check(&w.points());
            // the same polytope with permuted coordinates
            let mut p = w.points();
            for q in p.points.iter_mut() {
                q.rotate_left(rot);
            }
            p.points.sort();
            match ip_walk(&p) {
                WalkOutcome::Interior => prop_assert!(base),
                WalkOutcome::NotInterior => prop_assert!(!base),
                WalkOutcome::Inconclusive => {}
            }
        }
    }
}
