//! Run directory: a manifest plus one file of weight systems per completed
//! root branch, so an interrupted classification resumes branch by branch.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use cyws::classify::{root_branches, root_candidate, search_branch};
use cyws::interior::ip_check;
use cyws::WeightSystem;

use crate::format::read_records;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub l: usize,
    pub command: String,
    pub completed_branches: Vec<String>,
    pub output_path: Option<String>,
    pub started: u64,
    pub finished: Option<u64>,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub fn branch_id(y: &[i64]) -> String {
    y.iter().map(i64::to_string).collect::<Vec<_>>().join("-")
}

pub struct RunDir {
    dir: PathBuf,
    pub manifest: RunManifest,
}

impl RunDir {
    /// Opens `dir`, resuming a compatible manifest when `resume` is set and
    /// starting afresh otherwise.
    pub fn open(dir: &Path, l: usize, command: &str, output_path: Option<String>, resume: bool) -> Result<RunDir, CliError> {
        let manifest_path = dir.join("manifest.json");
        if resume && manifest_path.exists() {
            let text = fs::read_to_string(&manifest_path)?;
            let manifest: RunManifest = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("corrupt manifest {}: {e}", manifest_path.display())))?;
            if manifest.l != l {
                return Err(CliError::Usage(format!(
                    "run directory {} belongs to a run with {} weights",
                    dir.display(),
                    manifest.l
                )));
            }
            return Ok(RunDir {
                dir: dir.to_path_buf(),
                manifest,
            });
        }
        if dir.exists() {
            fs::remove_dir_all(dir)?;
        }
        fs::create_dir_all(dir)?;
        let run = RunDir {
            dir: dir.to_path_buf(),
            manifest: RunManifest {
                l,
                command: command.to_string(),
                completed_branches: Vec::new(),
                output_path,
                started: now(),
                finished: None,
            },
        };
        run.save()?;
        Ok(run)
    }

    fn save(&self) -> Result<(), CliError> {
        let tmp = self.dir.join("manifest.json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&self.manifest).expect("manifest serialises"))?;
        fs::rename(tmp, self.dir.join("manifest.json"))?;
        Ok(())
    }

    fn branch_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("branch-{id}.txt"))
    }

    pub fn is_done(&self, id: &str) -> bool {
        self.manifest.completed_branches.iter().any(|b| b == id)
    }

    pub fn load_branch(&self, id: &str) -> Result<Vec<WeightSystem>, CliError> {
        let file = fs::File::open(self.branch_path(id))?;
        Ok(read_records(&mut BufReader::new(file))?
            .into_iter()
            .map(|r| r.weight_system)
            .collect())
    }

    /// Writes the branch file, then records the branch in the manifest.
    pub fn complete_branch(&mut self, id: &str, systems: &[WeightSystem]) -> Result<(), CliError> {
        if self.is_done(id) {
            return Ok(());
        }
        let path = self.branch_path(id);
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        for ws in systems {
            writeln!(f, "{ws}")?;
        }
        f.sync_all()?;
        fs::rename(tmp, path)?;
        self.manifest.completed_branches.push(id.to_string());
        self.save()
    }

    pub fn finish(&mut self) -> Result<(), CliError> {
        self.manifest.finished = Some(now());
        self.save()
    }
}

/// Outcome of a checkpointed search.
pub enum SearchOutcome {
    Complete(Vec<WeightSystem>),
    /// Stopped on request after this many newly completed branches.
    Stopped(usize),
}

/// Candidates of one root branch that pass the interior point test.
fn branch_ip_systems(l: usize, y: &[i64]) -> Vec<WeightSystem> {
    use rayon::prelude::*;
    let cands: Vec<WeightSystem> = search_branch(l, y).into_iter().collect();
    cands.into_par_iter().filter(|ws| ip_check(&ws.points())).collect()
}

/// IP systems of length `l`, checkpointing each root branch in `run` when
/// given.
pub fn search_ip_systems(l: usize, mut run: Option<&mut RunDir>, stop_after: Option<usize>) -> Result<SearchOutcome, CliError> {
    let mut all: BTreeSet<WeightSystem> = BTreeSet::new();
    let root = root_candidate(l);
    if ip_check(&root.points()) {
        all.insert(root);
    }
    let mut fresh = 0;
    for y in root_branches(l) {
        let id = branch_id(&y);
        if let Some(run) = run.as_deref() {
            if run.is_done(&id) {
                all.extend(run.load_branch(&id)?);
                continue;
            }
        }
        if stop_after.is_some_and(|n| fresh >= n) {
            return Ok(SearchOutcome::Stopped(fresh));
        }
        let mut systems = branch_ip_systems(l, &y);
        systems.sort();
        if let Some(run) = run.as_deref_mut() {
            run.complete_branch(&id, &systems)?;
        }
        all.extend(systems);
        fresh += 1;
    }
    Ok(SearchOutcome::Complete(all.into_iter().collect()))
}
