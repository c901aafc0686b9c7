//! Lattice points between the bases of a pyramid and its doubled copy.

use crate::exact::IntVector;
use crate::Error;

use super::hull::convex_hull;

/// A lattice pyramid of height `2h` with base at height 0 (the last
/// coordinate). The half-height pyramid with the same peak has its base at
/// height `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidSpec {
    pub base_vertices: Vec<IntVector>,
    pub peak: IntVector,
    pub height: i64,
}

impl PyramidSpec {
    pub fn new(base_vertices: Vec<IntVector>, peak: IntVector, height: i64) -> Result<PyramidSpec, Error> {
        let m = peak.len();
        if !(2..=6).contains(&m) {
            return Err(Error::Input(format!("unsupported lattice dimension {m}")));
        }
        if height < 1 || peak[m - 1] != 2 * height {
            return Err(Error::Input(format!(
                "peak height {} is not twice the height {height}",
                peak[m - 1]
            )));
        }
        if base_vertices.iter().any(|b| b.len() != m || b[m - 1] != 0) {
            return Err(Error::Input("base vertices must lie at height 0".into()));
        }
        let spec = PyramidSpec {
            base_vertices,
            peak,
            height,
        };
        spec.base_facets()?;
        Ok(spec)
    }

    fn base_facets(&self) -> Result<Vec<(Vec<i64>, i64)>, Error> {
        let m = self.peak.len();
        let flat: Vec<IntVector> = self.base_vertices.iter().map(|b| b[..m - 1].to_vec()).collect();
        let hull = convex_hull(&flat, m - 1)?;
        Ok(hull.facets.into_iter().map(|f| (f.normal, f.offset)).collect())
    }
}

/// All lattice points of the doubled pyramid at heights `1..h`, ascending by
/// height then lexicographically.
pub fn pyramid_gap_points(pyr: &PyramidSpec) -> Vec<IntVector> {
    let m = pyr.peak.len();
    let facets = pyr.base_facets().expect("validated on construction");
    let two_h = 2 * pyr.height;
    let apex = &pyr.peak[..m - 1];
    let mut out = Vec::new();
    for k in 1..pyr.height {
        // x is in the slice iff (2h x - k apex) / (2h - k) lies in the base
        let lo: Vec<i64> = (0..m - 1)
            .map(|c| {
                let min_b = pyr.base_vertices.iter().map(|b| b[c]).min().unwrap();
                let num = min_b * (two_h - k) + k * apex[c];
                num.div_euclid(two_h)
            })
            .collect();
        let hi: Vec<i64> = (0..m - 1)
            .map(|c| {
                let max_b = pyr.base_vertices.iter().map(|b| b[c]).max().unwrap();
                let num = max_b * (two_h - k) + k * apex[c];
                -(-num).div_euclid(two_h)
            })
            .collect();
        let mut x = lo.clone();
        'odometer: loop {
            let inside = facets.iter().all(|(n, c)| {
                let lhs: i64 = n.iter().enumerate().map(|(i, &a)| a * (two_h * x[i] - k * apex[i])).sum();
                lhs <= (two_h - k) * c
            });
            if inside {
                let mut p = x.clone();
                p.push(k);
                out.push(p);
            }
            let mut c = m - 1;
            loop {
                if c == 0 {
                    break 'odometer;
                }
                c -= 1;
                if x[c] < hi[c] {
                    x[c] += 1;
                    x[c + 1..].copy_from_slice(&lo[c + 1..]);
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(m: usize, i: usize, s: i64) -> IntVector {
        let mut v = vec![0; m];
        v[i] = s;
        v
    }

    #[test]
    fn four_dimensional_simplex_pyramid() {
        let base = vec![vec![0; 4], unit(4, 0, 2), unit(4, 1, 2), unit(4, 2, 2)];
        let pyr = PyramidSpec::new(base, vec![0, 0, 0, 4], 2).unwrap();
        let gap = pyramid_gap_points(&pyr);
        assert!(gap.contains(&vec![0, 0, 0, 1]));
        assert!(gap.iter().all(|p| p[3] == 1 && p[..3].iter().all(|&x| x >= 0) && p[..3].iter().sum::<i64>() <= 1));
        assert_eq!(gap.len(), 4);
    }

    #[test]
    fn five_dimensional_counterexample_is_empty() {
        let mut base = vec![vec![0; 5]];
        base.extend((0..4).map(|i| unit(5, i, 2)));
        let pyr = PyramidSpec::new(base, vec![2, 2, 2, 2, 4], 2).unwrap();
        assert!(pyramid_gap_points(&pyr).is_empty());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let base = vec![vec![0, 0], vec![2, 0]];
        assert!(PyramidSpec::new(base.clone(), vec![0, 3], 2).is_err());
        assert!(PyramidSpec::new(vec![vec![0, 1], vec![2, 0]], vec![0, 4], 2).is_err());
        assert!(PyramidSpec::new(vec![vec![0, 0], vec![0, 0]], vec![0, 4], 2).is_err());
        assert!(PyramidSpec::new(base, vec![0, 4], 2).is_ok());
    }

    fn slice_member(pyr: &PyramidSpec, p: &[i64]) -> bool {
        // independent check: x = (1 - s) b + s peak with b a convex combination, via LP
        use crate::exact::lp::{maximize, LpOutcome};
        use crate::exact::Rational;
        let m = p.len();
        let nb = pyr.base_vertices.len();
        let mut a: Vec<Vec<Rational>> = (0..m)
            .map(|c| {
                let mut row: Vec<Rational> = pyr.base_vertices.iter().map(|b| Rational::from_integer(b[c])).collect();
                row.push(Rational::from_integer(pyr.peak[c]));
                row
            })
            .collect();
        a.push(vec![Rational::ONE; nb + 1]);
        let mut rhs: Vec<Rational> = p.iter().map(|&x| Rational::from_integer(x)).collect();
        rhs.push(Rational::ONE);
        !matches!(maximize(&vec![Rational::ZERO; nb + 1], &a, &rhs), LpOutcome::Infeasible)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn gap_is_nonempty_up_to_four_dimensions(
            m in 2usize..5,
            h in 2i64..5,
            raw in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 5),
            apex in proptest::collection::vec(-3i64..4, 3),
        ) {
            // an integer pyramid with base at height h; doubling about the apex
            let apex = &apex[..m - 1];
            let base: Vec<IntVector> = raw.iter().map(|c| {
                let mut v: IntVector = c[..m - 1].iter().zip(apex).map(|(&ci, &a)| 2 * ci - a).collect();
                v.push(0);
                v
            }).collect();
            let mut peak = apex.to_vec();
            peak.push(2 * h);
            if let Ok(pyr) = PyramidSpec::new(base, peak, h) {
                let gap = pyramid_gap_points(&pyr);
                prop_assert!(!gap.is_empty());
                for p in &gap {
                    prop_assert!(slice_member(&pyr, p));
                }
            }
        }
    }
}
