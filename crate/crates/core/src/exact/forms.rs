//! Affine spaces of linear forms `a` with `a · P = 1` on a chosen point set.

use super::linalg::{dot, dot_rat, norm_sq, rref, solve_square, to_rat_row, RatForm};
use super::lp::{maximize, LpOutcome};
use super::Rational;
use crate::Error;

/// `{ particular + Σ t_j · directions_j }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFormSpace {
    pub particular: RatForm,
    pub directions: Vec<RatForm>,
}

impl AffineFormSpace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn len(&self) -> usize {
        self.particular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_empty()
    }

    pub fn element(&self, coeffs: &[Rational]) -> RatForm {
        assert_eq!(coeffs.len(), self.dim());
        let mut a = self.particular.clone();
        for (t, d) in coeffs.iter().zip(&self.directions) {
            for (x, y) in a.iter_mut().zip(d) {
                *x += &(t * y);
            }
        }
        a
    }

    /// Solution set of `rows[i] · a = rhs[i]`, or `None` when inconsistent.
    pub fn from_equations(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<AffineFormSpace> {
        let l = rows.first().map_or(0, Vec::len);
        let mut aug: Vec<Vec<Rational>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut v = r.clone();
                v.push(b.clone());
                v
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.last() == Some(&l) {
            return None;
        }
        let mut particular = vec![Rational::ZERO; l];
        for (row, &c) in aug.iter().zip(&pivots) {
            particular[c] = row[l].clone();
        }
        let mut directions = Vec::new();
        for f in (0..l).filter(|c| !pivots.contains(c)) {
            let mut d = vec![Rational::ZERO; l];
            d[f] = Rational::ONE;
            for (row, &c) in aug.iter().zip(&pivots) {
                d[c] = -&row[f];
            }
            directions.push(d);
        }
        Some(AffineFormSpace {
            particular,
            directions,
        })
    }

    /// Equations `(rows, rhs)` with independent rows cutting out this space.
    pub fn equations(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let l = self.len();
        let mut dirs = self.directions.clone();
        let pivots = rref(&mut dirs);
        let mut rows = Vec::new();
        for f in (0..l).filter(|c| !pivots.contains(c)) {
            let mut n = vec![Rational::ZERO; l];
            n[f] = Rational::ONE;
            for (row, &c) in dirs.iter().zip(&pivots) {
                n[c] = -&row[f];
            }
            rows.push(n);
        }
        let rhs = rows.iter().map(|n| dot_rat(n, &self.particular)).collect();
        (rows, rhs)
    }

    pub fn contains(&self, a: &[Rational]) -> bool {
        let (rows, rhs) = self.equations();
        rows.iter().zip(&rhs).all(|(n, b)| dot_rat(n, a) == *b)
    }
}

/// The affine space `{a ∈ Q^l : a · P = 1 for every P in points}`.
///
/// Returns `Ok(None)` when the system is inconsistent.
pub fn solve_form_space<V: AsRef<[i64]>>(points: &[V]) -> Result<Option<AffineFormSpace>, Error> {
    let Some(first) = points.first() else {
        return Err(Error::Input("no points given".into()));
    };
    let l = first.as_ref().len();
    if l == 0 {
        return Err(Error::Input("zero-length points".into()));
    }
    if let Some(p) = points.iter().find(|p| p.as_ref().len() != l) {
        return Err(Error::Input(format!(
            "point length mismatch: expected {l}, got {}",
            p.as_ref().len()
        )));
    }
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| to_rat_row(p.as_ref())).collect();
    let rhs = vec![Rational::ONE; rows.len()];
    Ok(AffineFormSpace::from_equations(&rows, &rhs))
}

/// Least-norm solution of a consistent system; `None` if inconsistent.
pub fn least_norm_solution(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<RatForm> {
    let l = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&l) {
        return None;
    }
    aug.truncate(pivots.len());
    if aug.is_empty() {
        return Some(vec![Rational::ZERO; l]);
    }
    // a = Rᵀ (R Rᵀ)⁻¹ b
    let k = aug.len();
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| dot_rat(&aug[i][..l], &aug[j][..l])).collect())
        .collect();
    let b: Vec<Rational> = aug.iter().map(|r| r[l].clone()).collect();
    let z = solve_square(&gram, &b).expect("independent rows give a regular Gram matrix");
    let mut a = vec![Rational::ZERO; l];
    for (zi, row) in z.iter().zip(&aug) {
        for (x, y) in a.iter_mut().zip(&row[..l]) {
            if !y.is_zero() {
                *x += &(zi * y);
            }
        }
    }
    Some(a)
}

/// The unique element of `space` minimizing `Σ a_i²`.
pub fn least_norm_element(space: &AffineFormSpace) -> RatForm {
    if space.dim() == 0 {
        return space.particular.clone();
    }
    if space.dim() == space.len() {
        return vec![Rational::ZERO; space.len()];
    }
    let (rows, rhs) = space.equations();
    least_norm_solution(&rows, &rhs).expect("space is nonempty")
}

/// Maximizes `t` subject to `a ∈ space`, `a_i >= t`.
///
/// Returns `None` unless the optimum is strictly positive; otherwise the
/// least-norm element of the optimal face. When `t` is unbounded the face
/// `{a_i >= 1}` is used instead.
pub fn max_min_positive_element(space: &AffineFormSpace) -> Option<RatForm> {
    let (rows, rhs) = space.equations();
    let t = max_min_value(&rows, &rhs)?;
    let t = match t {
        Some(t) if t.is_positive() => t,
        Some(_) => return None,
        None => Rational::ONE,
    };
    Some(least_norm_on_face(space.len(), &rows, &rhs, &t))
}

/// `Some(Some(t*))` optimum, `Some(None)` unbounded, `None` infeasible.
pub(crate) fn max_min_value(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Option<Rational>> {
    let l = rows.first().map_or(0, Vec::len);
    // variables: b_1..b_l >= 0, t+ , t- with a = b + (t+ - t-)·1
    let mut a = Vec::with_capacity(rows.len());
    for row in rows {
        let s: Rational = row.iter().sum();
        let mut r = row.clone();
        r.push(s.clone());
        r.push(-s);
        a.push(r);
    }
    let mut c = vec![Rational::ZERO; l];
    c.push(Rational::ONE);
    c.push(-Rational::ONE);
    if rows.is_empty() {
        return Some(None);
    }
    match maximize(&c, &a, rhs) {
        LpOutcome::Optimal { value, .. } => Some(Some(value)),
        LpOutcome::Unbounded => Some(None),
        LpOutcome::Infeasible => None,
    }
}

/// Least-norm element of `{a : rows·a = rhs, a_i >= t}` by active-set enumeration.
fn least_norm_on_face(l: usize, rows: &[Vec<Rational>], rhs: &[Rational], t: &Rational) -> RatForm {
    let mut best: Option<(Rational, RatForm)> = None;
    for mask in 0u32..(1 << l) {
        let mut r = rows.to_vec();
        let mut b = rhs.to_vec();
        for i in (0..l).filter(|i| mask & (1 << i) != 0) {
            let mut e = vec![Rational::ZERO; l];
            e[i] = Rational::ONE;
            r.push(e);
            b.push(t.clone());
        }
        let x = if r.is_empty() {
            vec![Rational::ZERO; l]
        } else {
            match least_norm_solution(&r, &b) {
                Some(x) => x,
                None => continue,
            }
        };
        if x.iter().any(|xi| xi < t) {
            continue;
        }
        let n = norm_sq(&x);
        if best.as_ref().is_none_or(|(bn, _)| n < *bn) {
            best = Some((n, x));
        }
    }
    best.expect("optimal face is nonempty").1
}

/// Least-norm element of `rows · a = rhs` if strictly positive, otherwise the
/// max-min element, otherwise `None`.
pub(crate) fn positive_branching_form(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<RatForm> {
    let a = least_norm_solution(rows, rhs)?;
    if a.iter().all(Rational::is_positive) {
        return Some(a);
    }
    let t = match max_min_value(rows, rhs)? {
        Some(t) if t.is_positive() => t,
        Some(_) => return None,
        None => Rational::ONE,
    };
    Some(least_norm_on_face(a.len(), rows, rhs, &t))
}

/// `true` if some element of the form space of `points` is strictly positive.
pub fn admits_positive_form<V: AsRef<[i64]>>(points: &[V]) -> bool {
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| to_rat_row(p.as_ref())).collect();
    let rhs = vec![Rational::ONE; rows.len()];
    match max_min_value(&rows, &rhs) {
        Some(Some(t)) => t.is_positive(),
        Some(None) => true,
        None => false,
    }
}

pub fn satisfies_all<V: AsRef<[i64]>>(a: &[Rational], points: &[V]) -> bool {
    points.iter().all(|p| dot(a, p.as_ref()) == Rational::ONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn single_interior_point() {
        let s = solve_form_space(&[vec![1, 1, 1]]).unwrap().unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(1, 3), q(1, 3), q(1, 3)]));
        assert_eq!(least_norm_element(&s), vec![q(1, 3); 3]);
    }

    #[test]
    fn three_points_pin_the_form() {
        let s = solve_form_space(&[vec![1, 1, 1], vec![2, 0, 0], vec![0, 3, 0]])
            .unwrap()
            .unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.particular, vec![q(1, 2), q(1, 3), q(1, 6)]);
        assert_eq!(least_norm_element(&s), s.particular);
    }

    #[test]
    fn zero_point_is_infeasible() {
        assert!(solve_form_space(&[vec![2, 0], vec![0, 0]]).unwrap().is_none());
    }

    #[test]
    fn length_mismatch_is_an_input_error() {
        let r = solve_form_space(&[vec![1, 1, 1], vec![1, 1]]);
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn least_norm_with_two_points() {
        let s = solve_form_space(&[vec![1, 1, 1], vec![2, 0, 0]]).unwrap().unwrap();
        assert_eq!(least_norm_element(&s), vec![q(1, 2), q(1, 4), q(1, 4)]);
    }

    #[test]
    fn max_min_examples() {
        let s = solve_form_space(&[vec![1, 1, 1]]).unwrap().unwrap();
        assert_eq!(max_min_positive_element(&s), Some(vec![q(1, 3); 3]));

        // a1 = -1, a1 + a2 = 1 pins a = (-1, 2)
        let s = solve_form_space(&[vec![-1, 0], vec![1, 1]]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q(-1, 1), q(2, 1)]);
        assert_eq!(max_min_positive_element(&s), None);

        let s = solve_form_space(&[vec![1, 1, 1, 1], vec![4, 0, 0, 0]]).unwrap().unwrap();
        assert_eq!(max_min_positive_element(&s), Some(vec![q(1, 4); 4]));
    }

    #[test]
    fn max_min_prefers_least_norm_on_optimal_face() {
        // a1 = 1/3, a3 = 1/5, a2 = 7/15: a point, so the face is that point
        let s = solve_form_space(&[vec![1, 1, 1], vec![3, 0, 0], vec![0, 0, 5]])
            .unwrap()
            .unwrap();
        assert_eq!(max_min_positive_element(&s), Some(vec![q(1, 3), q(7, 15), q(1, 5)]));
        let s = solve_form_space(&[vec![1, 1, 1, 1], vec![3, 3, 0, 0]]).unwrap().unwrap();
        let mm = max_min_positive_element(&s).unwrap();
        assert!(mm.iter().all(|x| x.is_positive()));
        assert!(s.contains(&mm));
    }

    /// Brute force over the vertices of the (a, t) feasible region: every
    /// vertex fixes `a_i = t` on some index set and the optimum is the best
    /// feasible vertex.
    fn max_min_by_vertices(points: &[Vec<i64>]) -> Option<Rational> {
        let l = points[0].len();
        let mut best: Option<Rational> = None;
        for mask in 1u32..(1 << l) {
            // unknowns (a_1..a_l, t)
            let mut rows: Vec<Vec<Rational>> = points
                .iter()
                .map(|p| {
                    let mut r = to_rat_row(p);
                    r.push(Rational::ZERO);
                    r
                })
                .collect();
            let mut rhs = vec![Rational::ONE; points.len()];
            for i in (0..l).filter(|i| mask & (1 << i) != 0) {
                let mut r = vec![Rational::ZERO; l + 1];
                r[i] = Rational::ONE;
                r[l] = -Rational::ONE;
                rows.push(r);
                rhs.push(Rational::ZERO);
            }
            let Some(sp) = AffineFormSpace::from_equations(&rows, &rhs) else {
                continue;
            };
            if sp.dim() != 0 {
                continue;
            }
            let x = &sp.particular;
            let t = &x[l];
            if x[..l].iter().all(|a| a >= t) && best.as_ref().is_none_or(|b| t > b) {
                best = Some(t.clone());
            }
        }
        best
    }

    proptest! {
        #[test]
        fn space_elements_satisfy_equations(
            pts in proptest::collection::vec(proptest::collection::vec(0i64..6, 4), 1..4),
            coeffs in proptest::collection::vec(-5i64..5, 4),
        ) {
            let mut pts = pts;
            pts.insert(0, vec![1, 1, 1, 1]);
            if let Some(s) = solve_form_space(&pts).unwrap() {
                let t: Vec<Rational> = coeffs[..s.dim()].iter().map(|&c| q(c, 1)).collect();
                let a = s.element(&t);
                prop_assert!(satisfies_all(&a, &pts));
                let ln = least_norm_element(&s);
                prop_assert!(satisfies_all(&ln, &pts));
                prop_assert!(norm_sq(&ln) <= norm_sq(&a));
            }
        }

        #[test]
        fn simplex_agrees_with_vertex_enumeration(
            pts in proptest::collection::vec(proptest::collection::vec(0i64..5, 4), 1..3),
        ) {
            let mut pts = pts;
            pts.insert(0, vec![1, 1, 1, 1]);
            let rows: Vec<Vec<Rational>> = pts.iter().map(|p| to_rat_row(p)).collect();
            let rhs = vec![Rational::ONE; rows.len()];
            let lp = max_min_value(&rows, &rhs).map(|t| t.expect("bounded by the all-ones row"));
            prop_assert_eq!(lp, max_min_by_vertices(&pts));
        }
    }
}
