use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use cyws::classify::{describe, enumerate_by_degree, stats, Flags};
use cyws::geometry::{ip_polytope, span_check_points, vertices};
use cyws::interior::{ip_oracle, ip_walk, WalkOutcome};
use cyws::transverse::is_transverse;
use cyws::{ClassRecord, Error, WeightSystem};

use crate::format::{read_records, write_records, Format};
use crate::run::{search_ip_systems, RunDir, SearchOutcome};
use crate::CliError;

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn write_atomically(path: &Path, records: &[ClassRecord], format: Format) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        write_records(&mut f, records, format)?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn summary(records: &[ClassRecord], flags: Flags) -> String {
    let mut s = format!("{} systems", records.len());
    let count = |f: fn(&ClassRecord) -> Option<bool>| records.iter().filter(|r| f(r) == Some(true)).count();
    if flags.span {
        s += &format!(", {} span", count(|r| r.span));
    }
    if flags.transverse {
        s += &format!(", {} transverse", count(|r| r.transverse));
    }
    if flags.reflexive {
        s += &format!(", {} reflexive", count(|r| r.reflexive));
    }
    s
}

/// Records go to `out` when given (summary on stdout), otherwise to stdout
/// (summary on stderr).
fn emit(
    records: &[ClassRecord],
    flags: Flags,
    out: Option<&Path>,
    format: Format,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_atomically(path, records, format)?;
            writeln!(stdout, "{}", summary(records, flags))?;
        }
        None => {
            write_records(stdout, records, format)?;
            writeln!(stderr, "{}", summary(records, flags))?;
        }
    }
    Ok(())
}

fn check_with_oracle(records: &[ClassRecord]) -> Result<(), CliError> {
    let bad = records.par_iter().find_any(|r| {
        let ps = r.weight_system.points();
        let oracle = ip_oracle(&ps);
        let walk = ip_walk(&ps);
        oracle != r.ip
            || (walk == WalkOutcome::Interior && !oracle)
            || (walk == WalkOutcome::NotInterior && oracle)
    });
    match bad {
        Some(r) => Err(CliError::Internal(format!(
            "interior point walk and hull oracle disagree on {}",
            r.weight_system
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyArgs {
    pub nweights: usize,
    pub flags: Flags,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub resume: bool,
    pub run_dir: Option<PathBuf>,
    pub verify: bool,
    pub stop_after_branches: Option<usize>,
}

pub fn cmd_classify(args: &ClassifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let l = args.nweights;
    if !(3..=5).contains(&l) {
        return Err(CliError::Usage(format!("--nweights must be 3, 4 or 5, got {l}")));
    }
    let run_dir = args
        .run_dir
        .clone()
        .or_else(|| args.out.as_ref().map(|o| o.with_extension("run")));
    if (args.resume || args.stop_after_branches.is_some()) && run_dir.is_none() {
        return Err(CliError::Usage("--resume needs --out or --run-dir".into()));
    }
    let mut run = match &run_dir {
        Some(dir) => Some(RunDir::open(
            dir,
            l,
            &format!("classify --nweights {l} --flags {}", args.flags),
            args.out.as_ref().map(|p| p.display().to_string()),
            args.resume,
        )?),
        None => None,
    };
    let flags = args.flags;
    let verify = args.verify;
    let stop_after = args.stop_after_branches;
    let result = with_jobs(args.jobs, move || -> Result<Option<Vec<ClassRecord>>, CliError> {
        let systems = match search_ip_systems(l, run.as_mut(), stop_after)? {
            SearchOutcome::Complete(s) => s,
            SearchOutcome::Stopped(_) => return Ok(None),
        };
        let records: Vec<ClassRecord> = systems.par_iter().map(|ws| describe(ws, true, flags)).collect();
        if verify {
            check_with_oracle(&records)?;
        }
        if let Some(run) = run.as_mut() {
            run.finish()?;
        }
        Ok(Some(records))
    })??;
    match result {
        Some(records) => emit(&records, args.flags, args.out.as_deref(), args.format, stdout, stderr),
        None => {
            writeln!(stderr, "stopped before completion; rerun with --resume to continue")?;
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BruteArgs {
    pub nweights: usize,
    pub dmax: i64,
    pub flags: Flags,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn cmd_brute(args: &BruteArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let l = args.nweights;
    if !(3..=6).contains(&l) {
        return Err(CliError::Usage(format!("--nweights must be between 3 and 6, got {l}")));
    }
    let (dmax, flags) = (args.dmax, args.flags);
    let records = with_jobs(args.jobs, move || enumerate_by_degree(l, dmax, flags))?;
    emit(&records, args.flags, args.out.as_deref(), args.format, stdout, stderr)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Ip,
    Span,
    Transverse,
    Reflexive,
    All,
}

fn reflexive_field(ws: &WeightSystem) -> Result<(String, Option<(usize, usize)>), CliError> {
    match ip_polytope(ws) {
        Ok(p) => Ok((p.is_reflexive()?.to_string(), Some((p.vertices.len(), p.facets.len())))),
        Err(Error::NotIp) => Ok(("none".into(), None)),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_check(kind: CheckKind, line: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ws: WeightSystem = line.parse()?;
    let ps = ws.points();
    match kind {
        CheckKind::Ip => writeln!(stdout, "ip={}", cyws::interior::ip_check(&ps))?,
        CheckKind::Span => writeln!(stdout, "span={}", span_check_points(&ps))?,
        CheckKind::Transverse => writeln!(stdout, "transverse={}", is_transverse(&ws))?,
        CheckKind::Reflexive => {
            let (r, _) = reflexive_field(&ws)?;
            if r == "none" {
                return Err(Error::NotIp.into());
            }
            writeln!(stdout, "reflexive={r}")?;
        }
        CheckKind::All => {
            let ip = cyws::interior::ip_check(&ps);
            let (refl, counts) = reflexive_field(&ws)?;
            writeln!(
                stdout,
                "ip={ip} span={} reflexive={refl} transverse={} half={}",
                span_check_points(&ps),
                is_transverse(&ws),
                ws.is_half()
            )?;
            let (nv, nf) = match counts {
                Some((v, f)) => (v.to_string(), f.to_string()),
                None => (vertices(&ps).len().to_string(), "none".into()),
            };
            writeln!(stdout, "npoints={} nvertices={nv} nfacets={nf}", ps.len())?;
        }
    }
    Ok(())
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn cmd_pairing(line: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ws: WeightSystem = line.parse()?;
    let p = ip_polytope(&ws)?;
    if !p.is_reflexive()? {
        return Err(Error::NotReflexive.into());
    }
    let m = cyws::geometry::pairing_matrix(&ws)?;
    writeln!(stdout, "vertices {}", m.vertices.len())?;
    for v in &m.vertices {
        writeln!(stdout, "{}", join(v))?;
    }
    writeln!(stdout, "facets {}", p.facets.len())?;
    for (f, l) in p.facets.iter().zip(&m.functionals) {
        writeln!(stdout, "{} <= {}  :  {l}", join(&f.normal), f.offset)?;
    }
    writeln!(stdout, "pairing {}x{}", m.entries.len(), m.vertices.len())?;
    write!(stdout, "{m}")?;
    Ok(())
}

pub fn cmd_stats(input: &Path, stdout: &mut dyn Write) -> Result<(), CliError> {
    let file = fs::File::open(input)?;
    let records = read_records(&mut BufReader::new(file))?;
    let t = stats(&records)?;
    write!(stdout, "{t}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_check(kind: CheckKind, line: &str) -> Result<String, CliError> {
        let mut out = Vec::new();
        cmd_check(kind, line, &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn check_reports() {
        let all = run_check(CheckKind::All, "1 1 1 4 5 12").unwrap();
        assert!(all.starts_with("ip=true span=true reflexive=true transverse=false"), "{all}");
        assert!(all.contains("nvertices=7 nfacets=6"));
        assert_eq!(run_check(CheckKind::Ip, "2 2 2 3 9").unwrap(), "ip=false\n");
        assert_eq!(run_check(CheckKind::Span, "2 5 6 7 20").unwrap(), "span=false\n");
        assert_eq!(run_check(CheckKind::Transverse, "1 1 1 3 4 10").unwrap(), "transverse=false\n");
        assert_eq!(run_check(CheckKind::Ip, "1 1 1 4").unwrap_err().exit_code(), 1);
        assert_eq!(run_check(CheckKind::Reflexive, "2 2 2 3 9").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn pairing_output() {
        let mut out = Vec::new();
        cmd_pairing("1 1 1 3", &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("pairing 3x3"));
        let mut err = Vec::new();
        assert!(cmd_pairing("2 2 2 3 9", &mut err).is_err());
    }

    #[test]
    fn classify_three_to_stdout() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = ClassifyArgs {
            nweights: 3,
            ..Default::default()
        };
        cmd_classify(&args, &mut out, &mut err).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "1 1 1 3\n1 1 2 4\n1 2 3 6\n");
        assert_eq!(String::from_utf8(err).unwrap(), "3 systems\n");
        let bad = ClassifyArgs {
            nweights: 6,
            ..Default::default()
        };
        assert_eq!(cmd_classify(&bad, &mut Vec::new(), &mut Vec::new()).unwrap_err().exit_code(), 1);
    }
}
