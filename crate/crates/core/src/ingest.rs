//! Build-log parsing, snapshot loading, and content-change detection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Component, Path, PathBuf};
use std::sync::LazyLock;

use chrono::{DateTime, TimeZone, Utc};
use regex::Regex;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{Artifacts, BuildRecord, ContentHash, ProjectHistory, TestArtifact, TestId, TestResult, Verdict};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LogParseResult {
    /// One entry per recognized result line, in order of appearance.
    pub results: Vec<TestResult>,
    /// `(1-based line, message)`.
    pub warnings: Vec<(usize, String)>,
}

impl LogParseResult {
    /// Collapses repeated results for one test: first-occurrence order, last verdict.
    pub fn final_verdicts(&self) -> Vec<(TestId, Verdict)> {
        let mut index: HashMap<&TestId, usize> = HashMap::new();
        let mut out: Vec<(TestId, Verdict)> = Vec::new();
        for r in &self.results {
            match index.get(&r.test) {
                Some(&i) => out[i].1 = r.verdict,
                None => {
                    index.insert(&r.test, out.len());
                    out.push((r.test.clone(), r.verdict));
                }
            }
        }
        out
    }
}

/// A build-log format.
pub trait LogDialect: Send + Sync {
    fn parse(&self, text: &str) -> LogParseResult;
}

/// Maven Surefire console output:
/// `Tests run: R, Failures: F, Errors: E, Skipped: S[, Time elapsed: ...] - in <Test>`.
///
/// Older Surefire versions omit the `- in` suffix and announce the class on a
/// preceding `Running <Test>` line; both shapes are accepted.
#[derive(Debug, Default, Clone, Copy)]
pub struct Surefire;

static RESULT_LINE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"Tests run:\s*(\d+),\s*Failures:\s*(\d+),\s*Errors:\s*(\d+),\s*Skipped:\s*(\d+)(.*)$",
    )
    .expect("valid regex")
});
static RUNNING_LINE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^(?:\[\w+\]\s*)?Running\s+(\S+)\s*$").expect("valid regex"));

impl LogDialect for Surefire {
    fn parse(&self, text: &str) -> LogParseResult {
        let mut out = LogParseResult::default();
        let mut first_seen: HashMap<TestId, usize> = HashMap::new();
        let mut running: Option<String> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end();
            if let Some(c) = RUNNING_LINE.captures(line) {
                running = Some(c[1].to_owned());
                continue;
            }
            if !line.contains("Tests run:") {
                continue;
            }
            let Some(c) = RESULT_LINE.captures(line) else {
                out.warnings
                    .push((line_no, "result line with unreadable counters".into()));
                continue;
            };
            let counts: Option<Vec<u64>> = (1..=4).map(|i| c[i].parse().ok()).collect();
            let Some(counts) = counts else {
                out.warnings
                    .push((line_no, "counter out of range".into()));
                continue;
            };
            let tail = &c[5];
            let name = match tail.rfind(" - in ") {
                Some(pos) => {
                    let name = tail[pos + " - in ".len()..].trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        out.warnings
                            .push((line_no, "result line without a test name".into()));
                        continue;
                    }
                    running = None;
                    name.to_owned()
                }
                // Without a pending `Running` line this is the totals summary.
                None => match running.take() {
                    Some(name) => name,
                    None => continue,
                },
            };
            let verdict = if counts[1] + counts[2] > 0 {
                Verdict::Failed
            } else {
                Verdict::Passed
            };
            let test = TestId::new(name);
            if let Some(prev) = first_seen.get(&test) {
                out.warnings.push((
                    line_no,
                    format!("duplicate result for `{test}` (first at line {prev}); keeping the last verdict"),
                ));
            } else {
                first_seen.insert(test.clone(), line_no);
            }
            let position = out.results.len();
            out.results.push(TestResult {
                test,
                verdict,
                position,
            });
        }
        out
    }
}

pub fn parse_build_log(text: &str) -> LogParseResult {
    Surefire.parse(text)
}

/// Lossy-decodes arbitrary bytes before parsing.
pub fn parse_build_log_bytes(bytes: &[u8]) -> LogParseResult {
    parse_build_log(&String::from_utf8_lossy(bytes))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SnapshotLoad {
    pub artifacts: Artifacts,
    pub missing: Vec<TestId>,
}

/// Resolves a test id to a path under a snapshot directory. Ids that would
/// escape the directory resolve to nothing.
fn snapshot_path(dir: &Path, test: &TestId) -> Option<PathBuf> {
    let rel = Path::new(test.as_str());
    if rel
        .components()
        .any(|c| !matches!(c, Component::Normal(_) | Component::CurDir))
    {
        return None;
    }
    Some(dir.join(rel))
}

/// Reads `root/<build_id>/<test-id>` for every requested test.
pub fn load_snapshot<'a>(
    root: impl AsRef<Path>,
    build_id: u64,
    tests: impl IntoIterator<Item = &'a TestId>,
) -> Result<SnapshotLoad> {
    let dir = root.as_ref().join(build_id.to_string());
    if !dir.is_dir() {
        return Err(Error::MissingSnapshotDir { build: build_id, dir });
    }
    let mut load = SnapshotLoad::default();
    let unique: BTreeSet<&TestId> = tests.into_iter().collect();
    for test in unique {
        let content = snapshot_path(&dir, test).and_then(|p| fs::read(p).ok());
        match content {
            Some(bytes) => {
                load.artifacts
                    .insert(test.clone(), TestArtifact::new(test.clone(), bytes));
            }
            None => load.missing.push(test.clone()),
        }
    }
    Ok(load)
}

pub fn content_hashes(artifacts: &Artifacts) -> BTreeMap<TestId, ContentHash> {
    artifacts
        .iter()
        .map(|(id, a)| (id.clone(), a.content_hash))
        .collect()
}

/// Tests added, removed, or whose content hash differs.
pub fn changed_tests(
    prev: &BTreeMap<TestId, ContentHash>,
    curr: &BTreeMap<TestId, ContentHash>,
) -> BTreeSet<TestId> {
    let mut changed: BTreeSet<TestId> = prev
        .iter()
        .filter(|(id, h)| curr.get(*id) != Some(*h))
        .map(|(id, _)| id.clone())
        .collect();
    changed.extend(
        curr.keys()
            .filter(|id| !prev.contains_key(*id))
            .cloned(),
    );
    changed
}

/// Optional `<build_id>.meta.json` sidecar next to a log.
#[derive(Debug, Default, Deserialize)]
struct BuildMeta {
    #[serde(default)]
    commit: String,
    timestamp: Option<DateTime<Utc>>,
    #[serde(default)]
    changed_files: Vec<String>,
    provider_number: Option<u64>,
}

#[derive(Debug, Default)]
pub struct LogDirIngest {
    pub history: ProjectHistory,
    /// `(build_id, line, message)`; line 0 refers to the file as a whole.
    pub warnings: Vec<(u64, usize, String)>,
}

/// Converts a directory of `<build_id>.log` files into a history.
///
/// Without a metadata sidecar the commit is empty and the timestamp is the
/// Unix epoch plus `build_id` seconds, raised to the previous build's
/// timestamp if that is later, so timestamps never go backwards.
pub fn ingest_log_dir(dir: impl AsRef<Path>, dialect: &dyn LogDialect) -> Result<LogDirIngest> {
    let dir = dir.as_ref();
    let entries =
        fs::read_dir(dir).map_err(|e| Error::io(format!("reading {}", dir.display()), e))?;
    let mut logs: BTreeMap<u64, PathBuf> = BTreeMap::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(format!("reading {}", dir.display()), e))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("log") {
            continue;
        }
        if let Some(id) = path
            .file_stem()
            .and_then(|s| s.to_str())
            .and_then(|s| s.parse::<u64>().ok())
        {
            logs.insert(id, path);
        }
    }

    let project = dir
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut out = LogDirIngest {
        history: ProjectHistory::new(project),
        warnings: Vec::new(),
    };
    for (build_id, path) in logs {
        let bytes =
            fs::read(&path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let parsed = dialect.parse(&String::from_utf8_lossy(&bytes));
        out.warnings
            .extend(parsed.warnings.iter().map(|(l, m)| (build_id, *l, m.clone())));
        if parsed.results.is_empty() {
            out.warnings
                .push((build_id, 0, "no test results recognized".into()));
        }

        let meta_path = path.with_extension("meta.json");
        let meta = if meta_path.exists() {
            let text = fs::read_to_string(&meta_path)
                .map_err(|e| Error::io(format!("reading {}", meta_path.display()), e))?;
            serde_json::from_str::<BuildMeta>(&text)?
        } else {
            BuildMeta::default()
        };
        let timestamp = meta.timestamp.unwrap_or_else(|| {
            let own = Utc
                .timestamp_opt(build_id as i64, 0)
                .single()
                .unwrap_or_default();
            out.history
                .builds()
                .last()
                .map_or(own, |prev| own.max(prev.timestamp))
        });
        let mut build = BuildRecord::new(
            build_id,
            meta.commit,
            timestamp,
            meta.changed_files,
            parsed.final_verdicts(),
        );
        build.provider_number = meta.provider_number;
        out.history.append_build(build)?;
    }
    Ok(out)
}
