//! Recursive search for candidate weight systems.
//!
//! A node is a set of lattice points containing `(1,…,1)` together with the
//! affine space of forms taking the value 1 on all of them. Each node emits its
//! branching form as a candidate and branches on lattice points strictly below
//! that form.

use std::collections::{BTreeSet, HashSet};
use std::sync::Mutex;

use num_integer::Integer;
use rayon::prelude::*;

use crate::exact::{positive_branching_form, rref, AffineFormSpace, IntVector, RatForm, Rational};
use crate::weights::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub chosen_points: Vec<IntVector>,
    /// Reduced row echelon form of the augmented system `[P | 1]`.
    rows: Vec<Vec<Rational>>,
}

/// Canonical identity of a node's form space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NodeKey {
    Small(Box<[i64]>),
    Big(Vec<Rational>),
}

impl SearchNode {
    pub fn root(l: usize) -> SearchNode {
        SearchNode {
            chosen_points: vec![vec![1; l]],
            rows: vec![vec![Rational::ONE; l + 1]],
        }
    }

    pub fn len(&self) -> usize {
        self.chosen_points[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth(&self) -> usize {
        self.chosen_points.len() - 1
    }

    /// Dimension of the form space.
    pub fn dim(&self) -> usize {
        self.len() - self.rows.len()
    }

    pub fn form_space(&self) -> AffineFormSpace {
        let (coeffs, rhs) = self.equations();
        AffineFormSpace::from_equations(&coeffs, &rhs).expect("node systems are consistent")
    }

    fn equations(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let l = self.len();
        let coeffs = self.rows.iter().map(|r| r[..l].to_vec()).collect();
        let rhs = self.rows.iter().map(|r| r[l].clone()).collect();
        (coeffs, rhs)
    }

    /// The node extended by `y`, or `None` if `y` makes the system
    /// inconsistent or adds no new constraint.
    pub fn with_point(&self, y: &[i64]) -> Option<SearchNode> {
        let l = self.len();
        let mut rows = self.rows.clone();
        let mut r: Vec<Rational> = y.iter().map(|&x| Rational::from_integer(x)).collect();
        r.push(Rational::ONE);
        rows.push(r);
        let pivots = rref(&mut rows);
        if pivots.len() != rows.len() || pivots.last() == Some(&l) {
            return None;
        }
        let mut chosen_points = self.chosen_points.clone();
        chosen_points.push(y.to_vec());
        Some(SearchNode { chosen_points, rows })
    }

    fn key(&self) -> NodeKey {
        let flat: Vec<Rational> = self.rows.iter().flatten().cloned().collect();
        let mut small = Vec::with_capacity(flat.len() * 2);
        for x in &flat {
            match x.to_i64_pair() {
                Some((n, d)) => {
                    small.push(n);
                    small.push(d);
                }
                None => return NodeKey::Big(flat),
            }
        }
        NodeKey::Small(small.into_boxed_slice())
    }

    /// For each coordinate, the previous coordinate whose column in the chosen
    /// points is identical; swapping such coordinates fixes the node.
    fn symmetry_links(&self) -> Vec<Option<usize>> {
        let l = self.len();
        let col = |i: usize| self.chosen_points.iter().map(move |p| p[i]);
        (0..l)
            .map(|i| (0..i).rev().find(|&j| col(i).eq(col(j))))
            .collect()
    }
}

/// The least-norm element of the node's form space if it is strictly
/// positive, else the max-min element, else `None` (prune).
pub fn branching_form(node: &SearchNode) -> Option<RatForm> {
    let (coeffs, rhs) = node.equations();
    positive_branching_form(&coeffs, &rhs)
}

/// `a = p / den` with integer `p`.
fn integer_form(a: &[Rational]) -> (Vec<i128>, i128) {
    let den = a.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(&x.denom()));
    let conv = |b: num_bigint::BigInt| -> i128 {
        num_traits::ToPrimitive::to_i128(&b).expect("branching form denominators fit i128")
    };
    let p = a.iter().map(|x| conv(x.numer() * (&den / x.denom()))).collect();
    (p, conv(den))
}

/// Calls `f` on every `y >= 0` with `p · y < den`, `max y >= 2`, and
/// `y_i <= y_j` whenever `links[i] = Some(j)`.
fn for_each_point_below(p: &[i128], den: i128, links: &[Option<usize>], f: &mut dyn FnMut(&[i64])) {
    fn rec(
        i: usize,
        budget: i128,
        p: &[i128],
        links: &[Option<usize>],
        y: &mut Vec<i64>,
        big: bool,
        f: &mut dyn FnMut(&[i64]),
    ) {
        if i == p.len() {
            if big {
                f(y);
            }
            return;
        }
        let mut hi = (budget / p[i]) as i64;
        if let Some(j) = links[i] {
            hi = hi.min(y[j]);
        }
        for x in 0..=hi {
            y.push(x);
            rec(i + 1, budget - p[i] * x as i128, p, links, y, big || x >= 2, f);
            y.pop();
        }
    }
    rec(0, den - 1, p, links, &mut Vec::with_capacity(p.len()), false, f);
}

/// Lattice points admissible as children of `node` under the form `a`.
pub fn child_points(node: &SearchNode, a: &RatForm) -> Vec<IntVector> {
    assert!(a.iter().all(Rational::is_positive), "branching form must be positive");
    let (p, den) = integer_form(a);
    let links = node.symmetry_links();
    let mut out = Vec::new();
    for_each_point_below(&p, den, &links, &mut |y| {
        if node.with_point(y).as_ref().and_then(branching_form).is_some() {
            out.push(y.to_vec());
        }
    });
    out
}

/// Points on the line `a + t v` of forms: the weight system through `y`, if
/// its form is strictly positive. Integer arithmetic; `None` on overflow too.
fn line_child(p: &[i128], den: i128, v: &[i128], y: &[i64]) -> Option<Option<WeightSystem>> {
    let mut vy: i128 = 0;
    let mut py: i128 = 0;
    for ((&pi, &vi), &yi) in p.iter().zip(v).zip(y) {
        vy = vy.checked_add(vi.checked_mul(yi as i128)?)?;
        py = py.checked_add(pi.checked_mul(yi as i128)?)?;
    }
    if vy == 0 {
        return Some(None);
    }
    let n = den - py;
    let s = vy.signum();
    let mut w = Vec::with_capacity(p.len());
    for (&pi, &vi) in p.iter().zip(v) {
        let x = pi.checked_mul(vy)?.checked_add(n.checked_mul(vi)?)?.checked_mul(s)?;
        if x <= 0 {
            return Some(None);
        }
        w.push(x);
    }
    let g = w.iter().fold(0i128, |g, x| g.gcd(x));
    let ns: Option<Vec<i64>> = w.iter().map(|x| i64::try_from(x / g).ok()).collect();
    let ns = ns?;
    let d: i64 = ns.iter().try_fold(0i64, |s, &x| s.checked_add(x))?;
    Some(Some(WeightSystem::canonicalize(&ns, d).expect("positive integer weights")))
}

/// Integer direction spanning a one-dimensional form space.
fn line_direction(node: &SearchNode) -> Vec<i128> {
    let l = node.len();
    let mut pivot_of = vec![None; l];
    for (r, row) in node.rows.iter().enumerate() {
        let c = row.iter().position(|x| !x.is_zero()).expect("rows are nonzero");
        pivot_of[c] = Some(r);
    }
    let free = (0..l).find(|&c| pivot_of[c].is_none()).expect("dimension one");
    let v: Vec<Rational> = (0..l)
        .map(|c| match pivot_of[c] {
            None if c == free => Rational::ONE,
            None => Rational::ZERO,
            Some(r) => -&node.rows[r][free],
        })
        .collect();
    integer_form(&v).0
}

struct Explorer {
    visited: Mutex<HashSet<NodeKey>>,
}

impl Explorer {
    fn explore(&self, node: &SearchNode, a: &RatForm, out: &mut HashSet<WeightSystem>) {
        out.insert(WeightSystem::from_rational_form(a).expect("branching forms are positive"));
        match node.dim() {
            0 => {}
            1 => self.explore_line(node, a, out),
            _ => {
                for (child, b) in self.children(node, a) {
                    self.explore(&child, &b, out);
                }
            }
        }
    }

    fn children(&self, node: &SearchNode, a: &RatForm) -> Vec<(SearchNode, RatForm)> {
        let (p, den) = integer_form(a);
        let links = node.symmetry_links();
        let mut out = Vec::new();
        for_each_point_below(&p, den, &links, &mut |y| {
            let Some(child) = node.with_point(y) else {
                return;
            };
            if child.dim() > 0 && !self.visited.lock().unwrap().insert(child.key()) {
                return;
            }
            if let Some(b) = branching_form(&child) {
                out.push((child, b));
            }
        });
        out
    }

    fn explore_line(&self, node: &SearchNode, a: &RatForm, out: &mut HashSet<WeightSystem>) {
        let (p, den) = integer_form(a);
        let v = line_direction(node);
        let links = node.symmetry_links();
        for_each_point_below(&p, den, &links, &mut |y| match line_child(&p, den, &v, y) {
            Some(Some(ws)) => {
                out.insert(ws);
            }
            Some(None) => {}
            None => {
                if let Some(b) = node.with_point(y).as_ref().and_then(branching_form) {
                    out.insert(WeightSystem::from_rational_form(&b).expect("positive form"));
                }
            }
        });
    }
}

/// First-level branches: one child of the root per orbit of coordinate
/// permutations.
pub fn root_branches(l: usize) -> Vec<IntVector> {
    let root = SearchNode::root(l);
    let a = branching_form(&root).expect("the root form is positive");
    child_points(&root, &a)
}

/// All candidates in the subtree below the root branch `y`, including the
/// branch's own form.
pub fn search_branch(l: usize, y: &[i64]) -> BTreeSet<WeightSystem> {
    let root = SearchNode::root(l);
    let Some(node) = root.with_point(y) else {
        return BTreeSet::new();
    };
    let Some(a) = branching_form(&node) else {
        return BTreeSet::new();
    };
    let explorer = Explorer {
        visited: Mutex::new(HashSet::new()),
    };
    let mut own = HashSet::new();
    own.insert(WeightSystem::from_rational_form(&a).expect("positive form"));
    if node.dim() <= 1 {
        explorer.explore(&node, &a, &mut own);
        return own.into_iter().collect();
    }
    let kids = explorer.children(&node, &a);
    let sets: Vec<HashSet<WeightSystem>> = kids
        .par_iter()
        .map(|(child, b)| {
            let mut s = HashSet::new();
            explorer.explore(child, b, &mut s);
            s
        })
        .collect();
    let mut all: BTreeSet<WeightSystem> = own.into_iter().collect();
    for s in sets {
        all.extend(s);
    }
    all
}

/// The candidate emitted by the root itself, `(1,…,1; l)`.
pub fn root_candidate(l: usize) -> WeightSystem {
    WeightSystem::canonicalize(&vec![1; l], l as i64).expect("l >= 2")
}

/// Deduplicated candidates in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub systems: Vec<WeightSystem>,
}

pub fn enumerate_candidates(l: usize) -> CandidateSet {
    let mut all = BTreeSet::new();
    all.insert(root_candidate(l));
    let branches: Vec<BTreeSet<WeightSystem>> = root_branches(l)
        .par_iter()
        .map(|y| search_branch(l, y))
        .collect();
    for b in branches {
        all.extend(b);
    }
    CandidateSet {
        systems: all.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn branching_forms_of_the_worked_example() {
        let root = SearchNode::root(3);
        assert_eq!(branching_form(&root), Some(vec![q(1, 3); 3]));
        let n1 = root.with_point(&[2, 0, 0]).unwrap();
        assert_eq!(branching_form(&n1), Some(vec![q(1, 2), q(1, 4), q(1, 4)]));
        let n2 = n1.with_point(&[0, 3, 0]).unwrap();
        assert_eq!(n2.dim(), 0);
        assert_eq!(n2.depth(), 2);
        assert_eq!(branching_form(&n2), Some(vec![q(1, 2), q(1, 3), q(1, 6)]));
    }

    #[test]
    fn root_representatives() {
        assert_eq!(root_branches(3), vec![vec![2, 0, 0]]);
        assert_eq!(root_branches(4), vec![vec![2, 0, 0, 0], vec![2, 1, 0, 0], vec![3, 0, 0, 0]]);
        let mut five = root_branches(5);
        five.sort();
        let mut want = vec![
            vec![4, 0, 0, 0, 0],
            vec![3, 1, 0, 0, 0],
            vec![2, 2, 0, 0, 0],
            vec![2, 1, 1, 0, 0],
            vec![3, 0, 0, 0, 0],
            vec![2, 1, 0, 0, 0],
            vec![2, 0, 0, 0, 0],
        ];
        want.sort();
        assert_eq!(five, want);
    }

    #[test]
    fn pruned_node() {
        // forces a_1 = 1/2 and a_1 = 1 simultaneously: inconsistent
        let root = SearchNode::root(3);
        let n = root.with_point(&[2, 0, 0]).unwrap();
        assert!(n.with_point(&[1, 0, 0]).is_none());
        // a_1 = 1/2 and 3a_1 + a_2 = 1 force a_2 < 0
        assert!(n.with_point(&[3, 1, 0]).and_then(|c| branching_form(&c)).is_none());
    }

    #[test]
    fn three_weights() {
        let c = enumerate_candidates(3);
        for s in ["1 1 1 3", "1 1 2 4", "1 2 3 6"] {
            assert!(c.systems.contains(&s.parse().unwrap()), "{s}");
        }
    }

    #[test]
    fn line_fast_path_matches_rational_path() {
        let root = SearchNode::root(4);
        let node = root.with_point(&[2, 1, 0, 0]).unwrap().with_point(&[0, 0, 3, 0]).unwrap();
        assert_eq!(node.dim(), 1);
        let a = branching_form(&node).unwrap();
        let (p, den) = integer_form(&a);
        let v = line_direction(&node);
        let mut checked = 0;
        for_each_point_below(&p, den, &[None; 4], &mut |y| {
            let fast = line_child(&p, den, &v, y).unwrap();
            let slow = node
                .with_point(y)
                .and_then(|c| branching_form(&c))
                .map(|b| WeightSystem::from_rational_form(&b).unwrap());
            assert_eq!(fast, slow, "{y:?}");
            checked += 1;
        });
        assert!(checked > 0);
    }
}
