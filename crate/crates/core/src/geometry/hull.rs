//! Exact incremental convex hull (beneath-beyond) for integer points in low
//! dimension.
//!
//! The boundary is kept as a simplicial complex; coplanar simplices are merged
//! into facets at the end. All arithmetic is `i128` on primitive normals, and
//! coordinates are bounded on entry so that no product can overflow.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::Error;

/// Hyperplane `normal · x <= offset` supporting the hull, with primitive
/// integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices of all input points lying on the facet, ascending.
    pub incident: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HullData {
    pub facets: Vec<HullFacet>,
    /// Indices of the extreme points, ascending.
    pub vertices: Vec<usize>,
}

/// Coordinates must stay below this bound in absolute value.
pub const COORD_LIMIT: i64 = 1 << 24;

struct Simplex {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
    alive: bool,
}

fn det(m: &mut [Vec<i128>]) -> i128 {
    // fraction-free elimination; sizes here are at most 3x3 so i128 suffices
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Primitive normal of the hyperplane through `pts` (exactly `dim` points), or
/// `None` if they are affinely dependent.
fn hyperplane(points: &[Vec<i64>], verts: &[usize], dim: usize) -> Option<(Vec<i128>, i128)> {
    let base = &points[verts[0]];
    let diffs: Vec<Vec<i128>> = verts[1..]
        .iter()
        .map(|&v| (0..dim).map(|c| (points[v][c] - base[c]) as i128).collect())
        .collect();
    let mut normal = vec![0i128; dim];
    for (j, nj) in normal.iter_mut().enumerate() {
        let mut minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let d = det(&mut minor);
        *nj = if j % 2 == 0 { d } else { -d };
    }
    let g = normal.iter().fold(0i128, |g, x| g.gcd(x));
    if g == 0 {
        return None;
    }
    for x in normal.iter_mut() {
        *x /= g;
    }
    let offset = normal.iter().zip(base).map(|(n, &x)| n * x as i128).sum();
    Some((normal, offset))
}

fn eval(normal: &[i128], p: &[i64]) -> i128 {
    normal.iter().zip(p).map(|(n, &x)| n * x as i128).sum()
}

/// Indices of `dim + 1` affinely independent points, greedily from the front.
fn initial_simplex(points: &[Vec<i64>], dim: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut basis = crate::exact::EchelonBasis::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let d: Vec<i64> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        if basis.insert(&d) {
            chosen.push(i);
            if chosen.len() == dim + 1 {
                return Some(chosen);
            }
        }
    }
    None
}

/// Facets and vertices of `conv(points)` in `Z^dim`.
///
/// Fails with `DimDeficient` if the points do not span `dim` dimensions.
pub fn convex_hull(points: &[Vec<i64>], dim: usize) -> Result<HullData, Error> {
    if dim == 0 {
        return Err(Error::Input("hull dimension must be positive".into()));
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Input("point dimension mismatch".into()));
    }
    if points.iter().flatten().any(|x| x.abs() >= COORD_LIMIT) {
        return Err(Error::Input("hull coordinates exceed the supported range".into()));
    }
    if points.is_empty() {
        return Err(Error::DimDeficient);
    }
    let init = initial_simplex(points, dim).ok_or(Error::DimDeficient)?;

    // scaled interior reference point: centroid * (dim + 1)
    let center: Vec<i128> = (0..dim)
        .map(|c| init.iter().map(|&i| points[i][c] as i128).sum())
        .collect();
    let scale = (dim + 1) as i128;

    let mut simplices: Vec<Simplex> = Vec::new();
    let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();

    let add_simplex = |simplices: &mut Vec<Simplex>,
                       ridges: &mut HashMap<Vec<usize>, Vec<usize>>,
                       mut verts: Vec<usize>| {
        verts.sort_unstable();
        let (mut normal, mut offset) =
            hyperplane(points, &verts, dim).expect("new simplex is nondegenerate");
        let c: i128 = normal.iter().zip(&center).map(|(n, x)| n * x).sum();
        debug_assert!(c != scale * offset);
        if c > scale * offset {
            for x in normal.iter_mut() {
                *x = -*x;
            }
            offset = -offset;
        }
        let id = simplices.len();
        for skip in 0..verts.len() {
            let ridge: Vec<usize> = verts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &v)| v)
                .collect();
            ridges.entry(ridge).or_default().push(id);
        }
        simplices.push(Simplex {
            verts,
            normal,
            offset,
            alive: true,
        });
    };

    for skip in 0..=dim {
        let verts: Vec<usize> = init
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &v)| v)
            .collect();
        add_simplex(&mut simplices, &mut ridges, verts);
    }

    // far points first
    let mut order: Vec<usize> = (0..points.len()).filter(|i| !init.contains(i)).collect();
    order.sort_by_cached_key(|&i| {
        let spread: i128 = (0..dim)
            .map(|c| (scale * points[i][c] as i128 - center[c]).abs())
            .sum();
        (std::cmp::Reverse(spread), i)
    });
    let mut live: Vec<usize> = (0..simplices.len()).collect();
    for pi in order {
        let p = &points[pi];
        let visible: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&s| eval(&simplices[s].normal, p) > simplices[s].offset)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon: Vec<Vec<usize>> = Vec::new();
        for &s in &visible {
            let verts = simplices[s].verts.clone();
            for skip in 0..verts.len() {
                let ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let owners = ridges.get(&ridge).expect("ridge is registered");
                let other = owners.iter().copied().find(|&o| o != s);
                let other = other.expect("closed boundary: every ridge has two simplices");
                if !visible.contains(&other) {
                    horizon.push(ridge);
                }
            }
        }
        for &s in &visible {
            simplices[s].alive = false;
            let verts = simplices[s].verts.clone();
            for skip in 0..verts.len() {
                let ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if let Some(owners) = ridges.get_mut(&ridge) {
                    owners.retain(|&o| o != s);
                    if owners.is_empty() {
                        ridges.remove(&ridge);
                    }
                }
            }
        }
        live.retain(|&s| simplices[s].alive);
        for mut ridge in horizon {
            ridge.push(pi);
            live.push(simplices.len());
            add_simplex(&mut simplices, &mut ridges, ridge);
        }
    }

    let mut planes: BTreeMap<(Vec<i64>, i64), ()> = BTreeMap::new();
    for s in simplices.iter().filter(|s| s.alive) {
        let normal: Vec<i64> = s.normal.iter().map(|&x| x as i64).collect();
        planes.insert((normal, s.offset as i64), ());
    }
    let mut facets: Vec<HullFacet> = planes
        .into_keys()
        .map(|(normal, offset)| {
            let n128: Vec<i128> = normal.iter().map(|&x| x as i128).collect();
            let incident = (0..points.len())
                .filter(|&i| eval(&n128, &points[i]) == offset as i128)
                .collect();
            HullFacet {
                normal,
                offset,
                incident,
            }
        })
        .collect();
    facets.sort_by(|a, b| (a.offset, &a.normal).cmp(&(b.offset, &b.normal)));

    // a point is a vertex iff the normals of its facets have full rank
    let mut vertices = Vec::new();
    for i in 0..points.len() {
        let normals: Vec<&Vec<i64>> = facets
            .iter()
            .filter(|f| f.incident.binary_search(&i).is_ok())
            .map(|f| &f.normal)
            .collect();
        if normals.len() >= dim && crate::exact::rank(&normals) == dim {
            vertices.push(i);
        }
    }
    let mut seen = std::collections::HashSet::new();
    vertices.retain(|&i| seen.insert(&points[i]));
    Ok(HullData { facets, vertices })
}
