//! Weight systems, their lattice points, and classification records.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::exact::{IntVector, Rational};
use crate::Error;

/// Positive integers `n_1 <= … <= n_l` with `Σ n_i = d` and `gcd(n) = 1`.
///
/// Ordered by degree, then by the numerators read from the largest down,
/// which is the order of the published tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    numerators: Vec<i64>,
    degree: i64,
}

impl WeightSystem {
    /// Sorts, checks the degree equation and divides out the common factor.
    pub fn canonicalize(raw: &[i64], degree: i64) -> Result<WeightSystem, Error> {
        if raw.len() < 2 {
            return Err(Error::Input(format!("need at least two weights, got {}", raw.len())));
        }
        if let Some(n) = raw.iter().find(|&&n| n < 1) {
            return Err(Error::Input(format!("weights must be positive, got {n}")));
        }
        let sum = raw.iter().try_fold(0i64, |s, &n| s.checked_add(n));
        if sum != Some(degree) {
            return Err(Error::Input(format!(
                "weights {raw:?} do not sum to the degree {degree}"
            )));
        }
        let g = raw.iter().fold(0, |g, n| g.gcd(n));
        let mut numerators: Vec<i64> = raw.iter().map(|n| n / g).collect();
        numerators.sort_unstable();
        Ok(WeightSystem {
            numerators,
            degree: degree / g,
        })
    }

    /// Clears denominators of a strictly positive form with `Σ a_i = 1`.
    pub fn from_rational_form(a: &[Rational]) -> Result<WeightSystem, Error> {
        if let Some(x) = a.iter().find(|x| !x.is_positive()) {
            return Err(Error::Input(format!("form coefficient {x} is not positive")));
        }
        let total: Rational = a.iter().sum();
        if total != Rational::ONE {
            return Err(Error::Input(format!("form coefficients sum to {total}, not 1")));
        }
        let lcm = a.iter().fold(num_bigint::BigInt::one(), |l, x| l.lcm(&x.denom()));
        let raw: Option<Vec<i64>> = a
            .iter()
            .map(|x| (x.numer() * (&lcm / x.denom())).to_i64())
            .collect();
        let (Some(raw), Some(d)) = (raw, lcm.to_i64()) else {
            return Err(Error::Input("weight system degree exceeds i64".into()));
        };
        WeightSystem::canonicalize(&raw, d)
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// The largest weight equals 1/2.
    pub fn is_half(&self) -> bool {
        2 * self.numerators[self.len() - 1] == self.degree
    }

    /// `q_i = n_i / d`.
    pub fn weights(&self) -> Vec<Rational> {
        self.numerators
            .iter()
            .map(|&n| Rational::new(n, self.degree))
            .collect()
    }

    /// All `P ≥ 0` with `Σ n_i P^i = d`, in lexicographic order.
    pub fn points(&self) -> PointSet {
        enumerate_points(self)
    }
}

impl Ord for WeightSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.numerators.iter().rev().cmp(other.numerators.iter().rev()))
    }
}

impl PartialOrd for WeightSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `"n_1 n_2 … n_l d"`.
impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.numerators {
            write!(f, "{n} ")?;
        }
        write!(f, "{}", self.degree)
    }
}

impl FromStr for WeightSystem {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| Error::Parse {
            line: line.to_string(),
            reason,
        };
        let fields: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| parse_err(format!("{t:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let Some((&d, ns)) = fields.split_last() else {
            return Err(parse_err("empty line".into()));
        };
        WeightSystem::canonicalize(ns, d).map_err(|e| parse_err(e.to_string()))
    }
}

impl Serialize for WeightSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeightSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Lattice points of the maximal Newton polyhedron of a weight system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub weight_system: WeightSystem,
    /// Distinct, lexicographically ascending.
    pub points: Vec<IntVector>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.weight_system.len()
    }

    pub fn interior_point(&self) -> IntVector {
        vec![1; self.dim()]
    }
}

/// Lattice points of `Δ_max`, in lexicographic order.
pub fn enumerate_points(ws: &WeightSystem) -> PointSet {
    // largest weights in the outer loops; the smallest weight's coordinate
    // is determined by division
    fn rec(ns: &[i64], i: usize, remaining: i64, point: &mut IntVector, out: &mut Vec<IntVector>) {
        if i == 0 {
            if remaining % ns[0] == 0 {
                point[0] = remaining / ns[0];
                out.push(point.clone());
            }
            return;
        }
        for x in 0..=remaining / ns[i] {
            point[i] = x;
            rec(ns, i - 1, remaining - x * ns[i], point, out);
        }
    }
    let ns = ws.numerators();
    let mut points = Vec::new();
    rec(ns, ns.len() - 1, ws.degree(), &mut vec![0; ns.len()], &mut points);
    points.sort_unstable();
    PointSet {
        weight_system: ws.clone(),
        points,
    }
}

/// `(1,…,1)` is the only point with all coordinates at least one.
pub fn assert_unique_interior_candidate(ps: &PointSet) -> bool {
    let mut inner = ps.points.iter().filter(|p| p.iter().all(|&x| x >= 1));
    matches!((inner.next(), inner.next()), (Some(p), None) if p.iter().all(|&x| x == 1))
}

/// A weight system together with its computed classification flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RecordRepr", try_from = "RecordRepr")]
pub struct ClassRecord {
    pub weight_system: WeightSystem,
    pub ip: bool,
    pub span: Option<bool>,
    pub transverse: Option<bool>,
    pub half: bool,
    pub reflexive: Option<bool>,
    pub npoints: Option<usize>,
    pub nvertices: Option<usize>,
    pub nfacets: Option<usize>,
}

impl ClassRecord {
    pub fn new(weight_system: WeightSystem, ip: bool) -> ClassRecord {
        let half = weight_system.is_half();
        ClassRecord {
            weight_system,
            ip,
            span: None,
            transverse: None,
            half,
            reflexive: None,
            npoints: None,
            nvertices: None,
            nfacets: None,
        }
    }
}

/// Flat JSON layout of a record: `{"n": [..], "d": .., "ip": .., ...}`.
#[derive(Serialize, Deserialize)]
struct RecordRepr {
    n: Vec<i64>,
    d: i64,
    ip: bool,
    span: Option<bool>,
    transverse: Option<bool>,
    half: bool,
    reflexive: Option<bool>,
    npoints: Option<usize>,
    nvertices: Option<usize>,
    nfacets: Option<usize>,
}

impl From<ClassRecord> for RecordRepr {
    fn from(r: ClassRecord) -> Self {
        RecordRepr {
            n: r.weight_system.numerators,
            d: r.weight_system.degree,
            ip: r.ip,
            span: r.span,
            transverse: r.transverse,
            half: r.half,
            reflexive: r.reflexive,
            npoints: r.npoints,
            nvertices: r.nvertices,
            nfacets: r.nfacets,
        }
    }
}

impl TryFrom<RecordRepr> for ClassRecord {
    type Error = Error;

    fn try_from(r: RecordRepr) -> Result<Self, Error> {
        let weight_system = WeightSystem::canonicalize(&r.n, r.d)?;
        if weight_system.numerators != r.n || weight_system.degree != r.d {
            return Err(Error::Input(format!("record {:?} {} is not canonical", r.n, r.d)));
        }
        if r.half != weight_system.is_half() {
            return Err(Error::Input(format!("record {weight_system}: inconsistent half flag")));
        }
        Ok(ClassRecord {
            weight_system,
            ip: r.ip,
            span: r.span,
            transverse: r.transverse,
            half: r.half,
            reflexive: r.reflexive,
            npoints: r.npoints,
            nvertices: r.nvertices,
            nfacets: r.nfacets,
        })
    }
}
