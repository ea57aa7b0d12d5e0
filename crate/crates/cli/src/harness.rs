//! Runs manifest claims with a worker pool and a per-claim wall-clock budget.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use torsion_core::families::CurveDb;

use crate::claims::{run_check, Claim, Outcome};

/// Default per-claim wall-clock budget.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(300);

/// Final state of a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed,
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Verified => f.write_str("verified"),
            Status::Failed => f.write_str("failed"),
            Status::Skipped(reason) => write!(f, "skipped({reason})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The outcome of one claim as reported to the user.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub status: Status,
    pub elapsed_ms: u128,
    pub detail: String,
    /// Witness dumps written for this claim.
    pub artifacts: Vec<PathBuf>,
    /// Witness text (kept in memory when no dump directory is given).
    #[serde(skip)]
    pub witness: String,
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {:<32} {:>8.2}s  {}", self.status.to_string(), self.id, self.elapsed_ms as f64 / 1000.0, self.detail)
    }
}

/// Harness settings.
#[derive(Clone, Debug)]
pub struct Options {
    pub jobs: usize,
    /// `None` disables the budget.
    pub budget: Option<Duration>,
    pub dump_dir: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options { jobs: 1, budget: Some(DEFAULT_BUDGET), dump_dir: None }
    }
}

/// Select claims by id or group; an empty filter selects everything.
/// Returns the unmatched filter terms alongside the selection.
pub fn select<'a>(claims: &'a [Claim], only: &[String]) -> (Vec<&'a Claim>, Vec<String>) {
    if only.is_empty() {
        return (claims.iter().collect(), Vec::new());
    }
    let matches = |c: &Claim, term: &str| c.id == term || c.group == term;
    let selected = claims.iter().filter(|c| only.iter().any(|t| matches(c, t))).collect();
    let unmatched = only.iter().filter(|t| !claims.iter().any(|c| matches(c, t))).cloned().collect();
    (selected, unmatched)
}

fn run_with_budget(claim: &Claim, db: &Arc<CurveDb>, budget: Option<Duration>) -> (Status, String, String) {
    let (tx, rx) = mpsc::channel();
    let check = claim.check.clone();
    let db = Arc::clone(db);
    // A claim that overruns its budget is abandoned; the thread is detached
    // and dies with the process.
    std::thread::spawn(move || {
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run_check(&check, &db)));
        let _ = tx.send(result);
    });
    let received = match budget {
        Some(b) => rx.recv_timeout(b).map_err(|_| format!("exceeded the {}s budget", b.as_secs())),
        None => rx.recv().map_err(|_| "worker vanished".to_string()),
    };
    match received {
        Ok(Ok(Ok(Outcome { passed, detail, witness }))) => {
            (if passed { Status::Verified } else { Status::Failed }, detail, witness)
        }
        Ok(Ok(Err(e))) => (Status::Failed, format!("error: {e}"), String::new()),
        Ok(Err(_)) => (Status::Failed, "panicked".into(), String::new()),
        Err(msg) => (Status::Failed, msg, String::new()),
    }
}

fn dump(dir: &Path, id: &str, witness: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{id}.txt"));
    std::fs::write(&path, witness)?;
    Ok(path)
}

/// Run one claim: skip it when a database record is missing, otherwise
/// run its check under the budget and dump its witness.
pub fn run_claim(claim: &Claim, db: &Arc<CurveDb>, opts: &Options) -> ClaimResult {
    let start = Instant::now();
    let missing: Vec<&str> = claim.check.labels().into_iter().filter(|l| !db.contains(l)).collect();
    let (status, detail, witness) = if missing.is_empty() {
        run_with_budget(claim, db, opts.budget)
    } else {
        (Status::Skipped("missing-record".into()), format!("database lacks {}", missing.join(", ")), String::new())
    };
    let mut result = ClaimResult {
        id: claim.id.clone(),
        description: claim.description.clone(),
        anchor: claim.anchor.clone(),
        status,
        elapsed_ms: start.elapsed().as_millis(),
        detail,
        artifacts: Vec::new(),
        witness,
    };
    if let Some(dir) = &opts.dump_dir {
        if !result.witness.is_empty() {
            match dump(dir, &claim.id, &result.witness) {
                Ok(p) => result.artifacts.push(p),
                Err(e) => {
                    result.status = Status::Failed;
                    result.detail = format!("{}; cannot write witness: {e}", result.detail);
                }
            }
        }
    }
    result
}

/// Run claims on up to `opts.jobs` workers. `on_result` is called in
/// manifest order as soon as each prefix of results is complete, so
/// output is serialized per claim and deterministic.
pub fn run_claims(claims: &[&Claim], db: Arc<CurveDb>, opts: &Options, mut on_result: impl FnMut(&ClaimResult)) -> Vec<ClaimResult> {
    let n = claims.len();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<ClaimResult>>> = Mutex::new(vec![None; n]);
    let (tx, rx) = mpsc::channel::<usize>();
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.max(1).min(n.max(1)) {
            let tx = tx.clone();
            let (next, slots, db) = (&next, &slots, &db);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let r = run_claim(claims[i], db, opts);
                slots.lock().expect("results lock")[i] = Some(r);
                let _ = tx.send(i);
            });
        }
        drop(tx);
        let mut flushed = 0;
        for _ in rx.iter() {
            let guard = slots.lock().expect("results lock");
            while flushed < n {
                match &guard[flushed] {
                    Some(r) => on_result(r),
                    None => break,
                }
                flushed += 1;
            }
        }
    });
    slots.into_inner().expect("results lock").into_iter().map(|r| r.expect("every claim ran")).collect()
}

/// Counts of verified, failed and skipped claims.
pub fn tally(results: &[ClaimResult]) -> (usize, usize, usize) {
    results.iter().fold((0, 0, 0), |(v, f, s), r| match r.status {
        Status::Verified => (v + 1, f, s),
        Status::Failed => (v, f + 1, s),
        Status::Skipped(_) => (v, f, s + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::{parse_manifest, DEFAULT_MANIFEST};

    #[test]
    fn selection_by_id_and_group() {
        let m = parse_manifest(DEFAULT_MANIFEST).unwrap();
        let (all, _) = select(&m.claims, &[]);
        assert_eq!(all.len(), m.claims.len());
        let (s, unmatched) = select(&m.claims, &["sporadic37".into()]);
        assert!(unmatched.is_empty());
        assert!(!s.is_empty() && s.iter().all(|c| c.group == "sporadic37"));
        let (s, _) = select(&m.claims, &["gltm.galois-cubic".into()]);
        assert_eq!(s.len(), 1);
        let (_, unmatched) = select(&m.claims, &["nope".into()]);
        assert_eq!(unmatched, ["nope"]);
    }

    #[test]
    fn missing_records_are_skipped() {
        let m = parse_manifest(DEFAULT_MANIFEST).unwrap();
        let db = Arc::new(CurveDb::parse("", "empty").unwrap());
        let claim = m.claims.iter().find(|c| c.id == "gltm.21-torsion").unwrap();
        let r = run_claim(claim, &db, &Options::default());
        assert_eq!(r.status, Status::Skipped("missing-record".into()));
        assert_eq!(r.status.to_string(), "skipped(missing-record)");
    }

    #[test]
    fn budget_overrun_fails() {
        let m = parse_manifest(DEFAULT_MANIFEST).unwrap();
        let db = Arc::new(CurveDb::builtin());
        let claim = m.claims.iter().find(|c| c.id == "sporadic37.witness").unwrap();
        let opts = Options { budget: Some(Duration::from_nanos(1)), ..Options::default() };
        let r = run_claim(claim, &db, &opts);
        assert_eq!(r.status, Status::Failed);
        assert!(r.detail.contains("budget"));
    }

    #[test]
    fn manifest_rejects_duplicates() {
        let text = "[[claim]]\nid='a'\ngroup='g'\nanchor='x'\ndescription='d'\ncheck={kind='sporadic37'}\n";
        assert!(parse_manifest(text).is_ok());
        assert!(parse_manifest(&format!("{text}{text}")).is_err());
    }
}
