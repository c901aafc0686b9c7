//! Enumeration of weight systems with the interior point property.

mod brute;
mod search;
mod stats;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::geometry::{ip_polytope, span_check_points};
use crate::interior::ip_check;
use crate::transverse::is_transverse;
use crate::weights::{ClassRecord, WeightSystem};
use crate::Error;

pub use brute::{enumerate_by_degree, for_each_system_of_degree};
pub use search::{
    branching_form, child_points, enumerate_candidates, root_branches, root_candidate, search_branch,
    CandidateSet, SearchNode,
};
pub use stats::{stats, TableOneStats};

/// Which optional flags to compute for each record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub span: bool,
    pub transverse: bool,
    pub reflexive: bool,
}

impl Flags {
    pub const ALL: Flags = Flags {
        span: true,
        transverse: true,
        reflexive: true,
    };
}

impl FromStr for Flags {
    type Err = Error;

    /// Comma separated subset of `span`, `transverse`, `reflexive`; `all` and
    /// the empty string are accepted too.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut f = Flags::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "span" => f.span = true,
                "transverse" => f.transverse = true,
                "reflexive" => f.reflexive = true,
                "all" => f = Flags::ALL,
                other => return Err(Error::Input(format!("unknown flag {other:?}"))),
            }
        }
        Ok(f)
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [
            (self.span, "span"),
            (self.transverse, "transverse"),
            (self.reflexive, "reflexive"),
        ]
        .into_iter()
        .filter(|(on, _)| *on)
        .map(|(_, n)| n)
        .collect();
        f.write_str(&names.join(","))
    }
}

/// Record for a weight system with its IP flag and the requested flags.
pub fn analyze(ws: &WeightSystem, flags: Flags) -> ClassRecord {
    let ip = ip_check(&ws.points());
    describe(ws, ip, flags)
}

/// Like [`analyze`] with the interior point decision already known.
pub fn describe(ws: &WeightSystem, ip: bool, flags: Flags) -> ClassRecord {
    let ps = ws.points();
    let mut rec = ClassRecord::new(ws.clone(), ip);
    rec.npoints = Some(ps.len());
    if flags.span {
        rec.span = Some(span_check_points(&ps));
    }
    if flags.transverse {
        rec.transverse = Some(is_transverse(ws));
    }
    if flags.reflexive && ip {
        let p = ip_polytope(ws).expect("walk and hull agree on the interior point");
        rec.reflexive = Some(p.is_reflexive().expect("interior point"));
        rec.nvertices = Some(p.vertices.len());
        rec.nfacets = Some(p.facets.len());
    }
    rec
}

/// IP records among `systems`, sorted canonically.
pub fn filter_ip(systems: &[WeightSystem], flags: Flags) -> Vec<ClassRecord> {
    let mut out: Vec<ClassRecord> = systems
        .par_iter()
        .map(|ws| analyze(ws, flags))
        .filter(|r| r.ip)
        .collect();
    out.sort_by(|a, b| a.weight_system.cmp(&b.weight_system));
    out
}

/// All weight systems of length `l` with the IP property.
pub fn classify(l: usize, flags: Flags) -> Result<Vec<ClassRecord>, Error> {
    if !(3..=5).contains(&l) {
        return Err(Error::Input(format!("number of weights must be 3, 4 or 5, got {l}")));
    }
    Ok(filter_ip(&enumerate_candidates(l).systems, flags))
}
