//! Intrinsic lattice geometry of the maximal Newton polyhedron.

mod hull;
mod pyramid;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact::{hermite_normal_form, integer_kernel_basis, EchelonBasis, IntVector};
use crate::weights::{PointSet, WeightSystem};
use crate::Error;

pub use hull::{convex_hull, HullData, HullFacet};
pub use pyramid::{pyramid_gap_points, PyramidSpec};

#[cfg(test)]
pub(crate) use hull::tests::brute_force_facets;

/// Integer coordinates on the degree hyperplane, centred at `(1,…,1)`.
///
/// `basis` generates `Λ = {v : Σ n_i v_i = 0}` over the integers and `dual`
/// holds integer vectors with `dual[k] · basis[j] = δ_jk`, so chart coordinates
/// are plain integer dot products.
#[derive(Clone, Debug)]
pub struct AffineLatticeChart {
    pub weight_system: WeightSystem,
    pub basis: Vec<IntVector>,
    pub dual: Vec<IntVector>,
}

impl AffineLatticeChart {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Chart coordinates of `p`; fails if `p` is off the degree hyperplane.
    pub fn to_chart(&self, p: &[i64]) -> Result<IntVector, Error> {
        let ws = &self.weight_system;
        if p.len() != ws.len() {
            return Err(Error::Input(format!("point {p:?} has the wrong length")));
        }
        let level: i128 = ws.numerators().iter().zip(p).map(|(&n, &x)| n as i128 * x as i128).sum();
        if level != ws.degree() as i128 {
            return Err(Error::Input(format!("point {p:?} is not on the degree hyperplane")));
        }
        Ok(self
            .dual
            .iter()
            .map(|w| w.iter().zip(p).map(|(&a, &x)| a * (x - 1)).sum())
            .collect())
    }

    /// Ambient point `(1,…,1) + Σ u_j basis_j`.
    pub fn from_chart(&self, u: &[i64]) -> IntVector {
        let mut p = vec![1i64; self.weight_system.len()];
        for (b, &uj) in self.basis.iter().zip(u) {
            for (x, &bj) in p.iter_mut().zip(b) {
                *x += uj * bj;
            }
        }
        p
    }

    /// The ambient affine functional agreeing with `c - m · u(P)` on the
    /// degree hyperplane, normalised so that its constant lies in `[0, d)`.
    pub fn pairing_functional(&self, m: &[i64], c: i64) -> PairingFunctional {
        let ws = &self.weight_system;
        let l = ws.len();
        let mut w = vec![0i128; l];
        for (wk, &mk) in self.dual.iter().zip(m) {
            for (x, &a) in w.iter_mut().zip(wk) {
                *x += mk as i128 * a as i128;
            }
        }
        // L(P) = c - w·(P - 1) = (c + Σw) - w·P, shifted by multiples of n·P - d
        let d = ws.degree() as i128;
        let constant = c as i128 + w.iter().sum::<i128>();
        let t = constant.div_euclid(d);
        let coeffs = w
            .iter()
            .zip(ws.numerators())
            .map(|(&wi, &n)| (t * n as i128 - wi) as i64)
            .collect();
        PairingFunctional {
            constant: (constant - t * d) as i64,
            coeffs,
        }
    }
}

pub fn chart(ws: &WeightSystem) -> AffineLatticeChart {
    let basis = integer_kernel_basis(ws.numerators()).expect("weight systems have positive weights");
    let rows: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| b.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (h, u) = hermite_normal_form(&rows);
    let k = basis.len();
    debug_assert!((0..k).all(|i| (0..h[i].len()).all(|j| h[i][j] == BigInt::from((i == j) as i64))));
    let n = ws.numerators();
    let nn: i128 = n.iter().map(|&x| (x as i128) * (x as i128)).sum();
    let dual = (0..k)
        .map(|col| {
            let w: Vec<BigInt> = u.iter().map(|row| row[col].clone()).collect();
            // shift by a multiple of n to keep entries small; n is orthogonal to Λ
            let wn: BigInt = w.iter().zip(n).map(|(a, &b)| a * b).sum();
            let t = round_div(&wn, nn);
            w.iter()
                .zip(n)
                .map(|(a, &b)| (a - &t * b).to_i64().expect("dual chart vector fits i64"))
                .collect()
        })
        .collect();
    AffineLatticeChart {
        weight_system: ws.clone(),
        basis,
        dual,
    }
}

fn round_div(a: &BigInt, b: i128) -> BigInt {
    let b = BigInt::from(b);
    let twice: BigInt = a * 2 + &b;
    num_integer::Integer::div_floor(&twice, &(&b * 2))
}

/// Supporting inequality `normal · u <= offset` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: i64,
    /// Indices into the polytope's vertex list.
    pub incident_vertices: Vec<usize>,
}

/// Affine functional `P ↦ constant + coeffs · P` on the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingFunctional {
    pub constant: i64,
    pub coeffs: IntVector,
}

impl PairingFunctional {
    pub fn eval(&self, p: &[i64]) -> i64 {
        self.constant + self.coeffs.iter().zip(p).map(|(a, x)| a * x).sum::<i64>()
    }
}

impl fmt::Display for PairingFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if self.constant != 0 {
            write!(f, "{}", self.constant)?;
            wrote = true;
        }
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else if wrote { "+" } else { "" };
            let sep = if wrote { " " } else { "" };
            let mag = a.abs();
            let body = if mag == 1 { format!("P{}", i + 1) } else { format!("{mag}*P{}", i + 1) };
            if wrote {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Convex hull data of a point set in chart coordinates.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub chart: AffineLatticeChart,
    pub npoints: usize,
    /// Extreme points in ambient coordinates, lexicographic.
    pub vertices: Vec<IntVector>,
    /// Sorted by `(offset, normal)`.
    pub facets: Vec<Facet>,
    /// `(1,…,1)` satisfies every facet inequality strictly.
    pub origin_interior: bool,
}

impl Polytope {
    pub fn is_reflexive(&self) -> Result<bool, Error> {
        if !self.origin_interior {
            return Err(Error::NotIp);
        }
        Ok(self.facets.iter().all(|f| f.offset == 1))
    }

    pub fn pairing_functionals(&self) -> Vec<PairingFunctional> {
        self.facets
            .iter()
            .map(|f| self.chart.pairing_functional(&f.normal, f.offset))
            .collect()
    }
}

/// Facets of `conv(ps)` in chart coordinates together with its vertices.
pub fn hull_facets(ps: &PointSet) -> Result<Polytope, Error> {
    let chart = chart(&ps.weight_system);
    let pts: Vec<IntVector> = ps
        .points
        .iter()
        .map(|p| chart.to_chart(p))
        .collect::<Result<_, _>>()?;
    let data = convex_hull(&pts, chart.dim())?;
    let vertices: Vec<IntVector> = data.vertices.iter().map(|&i| ps.points[i].clone()).collect();
    let facets: Vec<Facet> = data
        .facets
        .into_iter()
        .map(|f| Facet {
            incident_vertices: data
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| f.incident.binary_search(v).is_ok())
                .map(|(k, _)| k)
                .collect(),
            normal: f.normal,
            offset: f.offset,
        })
        .collect();
    let origin_interior = facets.iter().all(|f| f.offset > 0);
    Ok(Polytope {
        chart,
        npoints: ps.len(),
        vertices,
        facets,
        origin_interior,
    })
}

/// Polytope of a weight system that has the IP property.
pub fn ip_polytope(ws: &WeightSystem) -> Result<Polytope, Error> {
    match hull_facets(&ws.points()) {
        Ok(p) if p.origin_interior => Ok(p),
        Ok(_) | Err(Error::DimDeficient) => Err(Error::NotIp),
        Err(e) => Err(e),
    }
}

pub fn is_reflexive(ws: &WeightSystem) -> Result<bool, Error> {
    ip_polytope(ws)?.is_reflexive()
}

/// Extreme points of `conv(ps)`, lexicographic.
pub fn vertices(ps: &PointSet) -> Vec<IntVector> {
    match hull_facets(ps) {
        Ok(p) => p.vertices,
        Err(_) => lower_dimensional_vertices(&ps.points),
    }
}

/// A point is extreme iff it is not a convex combination of the others.
fn lower_dimensional_vertices(points: &[IntVector]) -> Vec<IntVector> {
    use crate::exact::lp::{maximize, LpOutcome};
    use crate::exact::Rational;
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<&IntVector> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
        if others.is_empty() {
            out.push(p.clone());
            continue;
        }
        let mut a: Vec<Vec<Rational>> = (0..p.len())
            .map(|c| others.iter().map(|q| Rational::from_integer(q[c])).collect())
            .collect();
        a.push(vec![Rational::ONE; others.len()]);
        let mut b: Vec<Rational> = p.iter().map(|&x| Rational::from_integer(x)).collect();
        b.push(Rational::ONE);
        let c = vec![Rational::ZERO; others.len()];
        if matches!(maximize(&c, &a, &b), LpOutcome::Infeasible) {
            out.push(p.clone());
        }
    }
    out
}

/// Pairing functionals of the facets of a reflexive polytope, one per facet in
/// canonical facet order.
pub fn dual_vertices(ws: &WeightSystem) -> Result<Vec<PairingFunctional>, Error> {
    let p = ip_polytope(ws)?;
    if !p.is_reflexive()? {
        return Err(Error::NotReflexive);
    }
    Ok(p.pairing_functionals())
}

/// Rows are facets, columns are vertices, both in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub vertices: Vec<IntVector>,
    pub functionals: Vec<PairingFunctional>,
    pub entries: Vec<Vec<i64>>,
}

impl fmt::Display for PairingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn pairing_matrix(ws: &WeightSystem) -> Result<PairingMatrix, Error> {
    let p = ip_polytope(ws)?;
    if !p.is_reflexive()? {
        return Err(Error::NotReflexive);
    }
    let functionals = p.pairing_functionals();
    let entries = functionals
        .iter()
        .map(|l| p.vertices.iter().map(|v| l.eval(v)).collect())
        .collect();
    Ok(PairingMatrix {
        vertices: p.vertices,
        functionals,
        entries,
    })
}

/// Every coordinate hyperplane section spans codimension one.
pub fn span_check(ws: &WeightSystem) -> bool {
    span_check_points(&ws.points())
}

pub fn span_check_points(ps: &PointSet) -> bool {
    let l = ps.dim();
    (0..l).all(|i| {
        let mut basis = EchelonBasis::new();
        ps.points
            .iter()
            .filter(|p| p[i] == 0)
            .any(|p| basis.insert(p) && basis.rank() == l - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ws(s: &str) -> WeightSystem {
        s.parse().unwrap()
    }

    #[test]
    fn chart_of_two_weights() {
        let c = chart(&ws("1 1 2"));
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.basis[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
        let u = c.to_chart(&[2, 0]).unwrap();
        assert_eq!(u[0].abs(), 1);
        assert_eq!(c.from_chart(&u), vec![2, 0]);
        assert_eq!(c.to_chart(&[1, 1]).unwrap(), vec![0]);
        assert!(c.to_chart(&[2, 1]).is_err());
    }

    #[test]
    fn chart_round_trips_on_all_points() {
        for s in ["1 1 1 4 5 12", "40 41 486 1134 1701 3402", "1 2 3 6"] {
            let w = ws(s);
            let c = chart(&w);
            for p in &w.points().points {
                let u = c.to_chart(p).unwrap();
                assert_eq!(&c.from_chart(&u), p);
            }
            assert!(c.to_chart(&vec![1; w.len()]).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn standard_triangle() {
        let p = hull_facets(&ws("1 1 1 3").points()).unwrap();
        assert_eq!(p.facets.len(), 3);
        assert!(p.facets.iter().all(|f| f.offset == 1));
        assert_eq!(p.vertices, vec![vec![0, 0, 3], vec![0, 3, 0], vec![3, 0, 0]]);
        let m = pairing_matrix(&ws("1 1 1 3")).unwrap();
        for row in &m.entries {
            let mut r = row.clone();
            r.sort();
            assert_eq!(r, vec![0, 0, 3]);
        }
    }

    #[test]
    fn sextic_curve_is_reflexive() {
        assert_eq!(is_reflexive(&ws("1 2 3 6")), Ok(true));
        assert_eq!(ip_polytope(&ws("1 2 3 6")).unwrap().facets.len(), 3);
    }

    #[test]
    fn degree_twelve_example() {
        let w = ws("1 1 1 4 5 12");
        let p = ip_polytope(&w).unwrap();
        assert_eq!(p.facets.len(), 6);
        assert!(p.is_reflexive().unwrap());
        let fs = p.pairing_functionals();
        let h6 = PairingFunctional {
            constant: 6,
            coeffs: vec![0, 0, 0, -2, -3],
        };
        assert!(fs.contains(&h6));
        for i in 0..5 {
            let mut e = vec![0; 5];
            e[i] = 1;
            assert!(fs.contains(&PairingFunctional { constant: 0, coeffs: e }));
        }
        assert_eq!(h6.to_string(), "6 - 2*P4 - 3*P5");
        for f in &fs {
            assert_eq!(f.eval(&[1, 1, 1, 1, 1]), 1);
        }
    }

    #[test]
    fn redundant_simplex_example() {
        let w = ws("40 41 486 1134 1701 3402");
        let m = pairing_matrix(&w).unwrap();
        assert_eq!(m.vertices.len(), 5);
        let mut diag: Vec<i64> = m.entries.iter().flatten().copied().filter(|&x| x != 0).collect();
        diag.sort();
        assert_eq!(diag, vec![2, 3, 7, 84, 84]);
        assert!(!span_check(&w));
    }

    #[test]
    fn span_examples() {
        assert!(span_check(&ws("1 1 1 1 4")));
        assert!(!span_check(&ws("2 5 6 7 20")));
    }

    #[test]
    fn non_ip_systems_are_rejected() {
        assert_eq!(is_reflexive(&ws("1 1 1 1 6 10")), Err(Error::NotIp));
        assert_eq!(pairing_matrix(&ws("2 2 2 3 9")).map(|_| ()), Err(Error::NotIp));
    }

    #[test]
    fn lower_dimensional_vertex_fallback() {
        let pts = vec![vec![0, 0, 2], vec![0, 1, 1], vec![0, 2, 0]];
        assert_eq!(lower_dimensional_vertices(&pts), vec![vec![0, 0, 2], vec![0, 2, 0]]);
    }

    #[test]
    fn facets_of_small_systems_match_brute_force() {
        for s in ["1 1 1 3", "1 1 2 4", "1 2 3 6", "1 1 1 1 4", "1 1 1 2 5", "1 1 2 2 6", "1 1 1 1 1 5"] {
            let w = ws(s);
            let ps = w.points();
            let c = chart(&w);
            let pts: Vec<IntVector> = ps.points.iter().map(|p| c.to_chart(p).unwrap()).collect();
            assert!(pts.len() <= 130);
            let hull = convex_hull(&pts, c.dim()).unwrap();
            let got: Vec<(IntVector, i64)> = hull.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
            let mut got_sorted = got.clone();
            got_sorted.sort();
            if pts.len() <= 30 {
                assert_eq!(got_sorted, brute_force_facets(&pts, c.dim()), "{s}");
            }
        }
    }

    proptest! {
        #[test]
        fn every_facet_functional_is_one_at_the_centre(raw in proptest::collection::vec(1i64..6, 3..5)) {
            let d: i64 = raw.iter().sum();
            let w = WeightSystem::canonicalize(&raw, d).unwrap();
            if let Ok(p) = ip_polytope(&w) {
                for (f, l) in p.facets.iter().zip(p.pairing_functionals()) {
                    prop_assert_eq!(l.eval(&vec![1; w.len()]), f.offset);
                    for v in &p.vertices {
                        prop_assert!(l.eval(v) >= 0);
                    }
                    for &k in &f.incident_vertices {
                        prop_assert_eq!(l.eval(&p.vertices[k]), 0);
                    }
                }
            }
        }
    }
}
