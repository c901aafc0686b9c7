//! Counts by transversality, half weight and span.

use std::fmt;

use crate::weights::ClassRecord;
use crate::Error;

/// Rows `[span, total]`; columns `[P4 ∧ half, P4 ∧ ¬half, P4, half, ¬half, total]`
/// where `P4` means transverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableOneStats {
    pub counts: [[u64; 6]; 2],
}

pub fn stats(records: &[ClassRecord]) -> Result<TableOneStats, Error> {
    let mut t = TableOneStats::default();
    for r in records {
        let span = r.span.ok_or(Error::MissingFlag("span"))?;
        let transverse = r.transverse.ok_or(Error::MissingFlag("transverse"))?;
        let half = r.weight_system.is_half();
        let mut cols = vec![if half { 3 } else { 4 }, 5];
        if transverse {
            cols.extend([if half { 0 } else { 1 }, 2]);
        }
        for c in cols {
            t.counts[1][c] += 1;
            if span {
                t.counts[0][c] += 1;
            }
        }
    }
    Ok(t)
}

impl fmt::Display for TableOneStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = ["P4&half", "P4&!half", "P4", "half", "!half", "total"];
        write!(f, "{:<6}", "")?;
        for h in head {
            write!(f, " {h:>9}")?;
        }
        writeln!(f)?;
        for (name, row) in ["span", "total"].iter().zip(&self.counts) {
            write!(f, "{name:<6}")?;
            for c in row {
                write!(f, " {c:>9}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
