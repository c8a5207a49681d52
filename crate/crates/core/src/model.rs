//! Domain types, the build-history store, and the JSON-Lines history format.
//!
//! A history file holds one build per line:
//!
//! ```text
//! {"build_id": 12, "commit": "ab12", "timestamp": "2016-01-02T03:04:05Z",
//!  "changed_files": ["src/Foo.java"], "tests": [{"id": "FooTest", "verdict": "fail"}]}
//! ```
//!
//! The order of `tests` is the execution order. A build without a `tests`
//! array (or with an empty one) produced no regression-test output; it stays
//! in the history but is invisible to window distance counting.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Stable test identifier. Ordering is byte-lexicographic and is the
/// tie-breaker everywhere a deterministic choice is needed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TestId(String);

impl TestId {
    pub fn new(id: impl Into<String>) -> Self {
        TestId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for TestId {
    fn from(s: &str) -> Self {
        TestId(s.to_owned())
    }
}

impl From<String> for TestId {
    fn from(s: String) -> Self {
        TestId(s)
    }
}

impl AsRef<str> for TestId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Passed,
    #[serde(rename = "fail")]
    Failed,
}

impl Verdict {
    pub fn is_failed(self) -> bool {
        self == Verdict::Failed
    }

    fn tag(self) -> &'static str {
        match self {
            Verdict::Passed => "pass",
            Verdict::Failed => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestResult {
    pub test: TestId,
    pub verdict: Verdict,
    /// 0-based execution index within the build.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildRecord {
    /// Project-local ordinal; strictly increasing within a history.
    pub build_id: u64,
    pub commit_id: String,
    pub timestamp: DateTime<Utc>,
    pub results: Vec<TestResult>,
    pub changed_files: BTreeSet<String>,
    pub has_test_output: bool,
    /// Build number assigned by the CI provider, kept as metadata only.
    pub provider_number: Option<u64>,
}

impl BuildRecord {
    /// Builds a record from tests listed in execution order.
    pub fn new(
        build_id: u64,
        commit_id: impl Into<String>,
        timestamp: DateTime<Utc>,
        changed_files: impl IntoIterator<Item = String>,
        tests: impl IntoIterator<Item = (TestId, Verdict)>,
    ) -> Self {
        let results: Vec<TestResult> = tests
            .into_iter()
            .enumerate()
            .map(|(position, (test, verdict))| TestResult {
                test,
                verdict,
                position,
            })
            .collect();
        BuildRecord {
            build_id,
            commit_id: commit_id.into(),
            timestamp,
            has_test_output: !results.is_empty(),
            results,
            changed_files: changed_files.into_iter().collect(),
            provider_number: None,
        }
    }

    /// Executed tests in execution order.
    pub fn tests(&self) -> impl Iterator<Item = &TestId> + '_ {
        self.results.iter().map(|r| &r.test)
    }

    pub fn test_order(&self) -> Vec<TestId> {
        self.tests().cloned().collect()
    }

    pub fn failing(&self) -> BTreeSet<TestId> {
        self.results
            .iter()
            .filter(|r| r.verdict.is_failed())
            .map(|r| r.test.clone())
            .collect()
    }

    pub fn is_faulty(&self) -> bool {
        self.results.iter().any(|r| r.verdict.is_failed())
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidBuild {
            build: self.build_id,
            reason,
        };
        if self.has_test_output == self.results.is_empty() {
            return Err(invalid(format!(
                "has_test_output is {} but {} results are recorded",
                self.has_test_output,
                self.results.len()
            )));
        }
        let mut seen = HashSet::with_capacity(self.results.len());
        for (i, r) in self.results.iter().enumerate() {
            if r.position != i {
                return Err(invalid(format!(
                    "test `{}` has position {} but is at index {i}",
                    r.test, r.position
                )));
            }
            if r.test.as_str().is_empty() {
                return Err(invalid("empty test id".into()));
            }
            if !seen.insert(&r.test) {
                return Err(invalid(format!("test `{}` appears twice", r.test)));
            }
        }
        Ok(())
    }
}

/// Ordered build sequence of one project.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProjectHistory {
    pub project_id: String,
    builds: Vec<BuildRecord>,
}

impl ProjectHistory {
    pub fn new(project_id: impl Into<String>) -> Self {
        ProjectHistory {
            project_id: project_id.into(),
            builds: Vec::new(),
        }
    }

    pub fn from_builds(
        project_id: impl Into<String>,
        builds: impl IntoIterator<Item = BuildRecord>,
    ) -> Result<Self> {
        let mut history = ProjectHistory::new(project_id);
        for build in builds {
            history.append_build(build)?;
        }
        Ok(history)
    }

    /// Appends a build; ids must strictly increase (gaps are fine).
    pub fn append_build(&mut self, build: BuildRecord) -> Result<()> {
        build.validate()?;
        if let Some(last) = self.builds.last() {
            if build.build_id == last.build_id {
                return Err(Error::DuplicateBuild(build.build_id));
            }
            if build.build_id < last.build_id {
                if self.position(build.build_id).is_some() {
                    return Err(Error::DuplicateBuild(build.build_id));
                }
                return Err(Error::OutOfOrderBuild {
                    last: last.build_id,
                    new: build.build_id,
                });
            }
            if build.timestamp < last.timestamp {
                return Err(Error::TimestampRegression {
                    build: build.build_id,
                });
            }
        }
        self.builds.push(build);
        Ok(())
    }

    pub fn builds(&self) -> &[BuildRecord] {
        &self.builds
    }

    pub fn len(&self) -> usize {
        self.builds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.builds.is_empty()
    }

    fn position(&self, build_id: u64) -> Option<usize> {
        self.builds
            .binary_search_by_key(&build_id, |b| b.build_id)
            .ok()
    }

    pub fn get(&self, build_id: u64) -> Option<&BuildRecord> {
        self.position(build_id).map(|i| &self.builds[i])
    }

    pub fn faulty_builds(&self) -> impl Iterator<Item = &BuildRecord> + '_ {
        self.builds.iter().filter(|b| b.is_faulty())
    }

    /// Every test id that appears anywhere in the history.
    pub fn test_ids(&self) -> BTreeSet<TestId> {
        self.builds
            .iter()
            .flat_map(|b| b.tests().cloned())
            .collect()
    }

    /// Verdicts of the `interval` most recent output-bearing builds strictly
    /// before `anchor`. Distance 1 is the closest such build.
    pub fn window(&self, anchor: u64, interval: u32) -> Result<HistoryWindow> {
        let end = self.position(anchor).ok_or(Error::UnknownBuild(anchor))?;
        let mut series: BTreeMap<TestId, Vec<(u32, Verdict)>> = BTreeMap::new();
        let prior = self.builds[..end]
            .iter()
            .rev()
            .filter(|b| b.has_test_output)
            .take(interval as usize);
        for (distance, build) in (1u32..).zip(prior) {
            for r in &build.results {
                series
                    .entry(r.test.clone())
                    .or_default()
                    .push((distance, r.verdict));
            }
        }
        Ok(HistoryWindow {
            anchor_build: anchor,
            interval,
            series,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = fs::File::open(path)
            .map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
        let project_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::read_jsonl(project_id, BufReader::new(file))
    }

    pub fn read_jsonl(project_id: impl Into<String>, reader: impl BufRead) -> Result<Self> {
        let mut history = ProjectHistory::new(project_id);
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::io(format!("reading line {line_no}"), e))?;
            if line.trim().is_empty() {
                continue;
            }
            let build = parse_build_line(line_no, &line)?;
            history.append_build(build).map_err(|e| Error::Malformed {
                line: line_no,
                field: "build_id".into(),
                reason: e.to_string(),
            })?;
        }
        Ok(history)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = fs::File::create(path)
            .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
        let mut out = BufWriter::new(file);
        self.write_jsonl(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(format!("writing {}", path.display()), e))
    }

    pub fn write_jsonl(&self, out: &mut impl Write) -> std::io::Result<()> {
        for build in &self.builds {
            let line = build_to_json(build);
            serde_json::to_writer(&mut *out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn build_to_json(build: &BuildRecord) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("build_id".into(), build.build_id.into());
    obj.insert("commit".into(), build.commit_id.clone().into());
    obj.insert(
        "timestamp".into(),
        build
            .timestamp
            .to_rfc3339_opts(SecondsFormat::AutoSi, true)
            .into(),
    );
    obj.insert(
        "changed_files".into(),
        build.changed_files.iter().cloned().collect::<Vec<_>>().into(),
    );
    if build.has_test_output {
        let tests: Vec<Value> = build
            .results
            .iter()
            .map(|r| serde_json::json!({"id": r.test.as_str(), "verdict": r.verdict.tag()}))
            .collect();
        obj.insert("tests".into(), tests.into());
    }
    if let Some(n) = build.provider_number {
        obj.insert("provider_number".into(), n.into());
    }
    Value::Object(obj)
}

fn parse_build_line(line: usize, text: &str) -> Result<BuildRecord> {
    let malformed = |field: &str, reason: String| Error::Malformed {
        line,
        field: field.to_owned(),
        reason,
    };
    let value: Value =
        serde_json::from_str(text).map_err(|e| malformed("<line>", e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| malformed("<line>", "expected a JSON object".into()))?;
    let required = |field: &str| {
        obj.get(field)
            .ok_or_else(|| malformed(field, "missing".into()))
    };

    let build_id = required("build_id")?
        .as_u64()
        .ok_or_else(|| malformed("build_id", "expected a non-negative integer".into()))?;
    let commit_id = required("commit")?
        .as_str()
        .ok_or_else(|| malformed("commit", "expected a string".into()))?
        .to_owned();
    let timestamp = required("timestamp")?
        .as_str()
        .ok_or_else(|| malformed("timestamp", "expected a string".into()))
        .and_then(|s| {
            DateTime::parse_from_rfc3339(s)
                .map(|t| t.with_timezone(&Utc))
                .map_err(|e| malformed("timestamp", e.to_string()))
        })?;
    let changed_files = required("changed_files")?
        .as_array()
        .ok_or_else(|| malformed("changed_files", "expected an array".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| malformed("changed_files", "expected string entries".into()))
        })
        .collect::<Result<BTreeSet<_>>>()?;

    let mut tests = Vec::new();
    if let Some(raw) = obj.get("tests") {
        let entries = raw
            .as_array()
            .ok_or_else(|| malformed("tests", "expected an array".into()))?;
        for (i, entry) in entries.iter().enumerate() {
            let id = entry
                .get("id")
                .and_then(Value::as_str)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| malformed(&format!("tests[{i}].id"), "expected a non-empty string".into()))?;
            let verdict = match entry.get("verdict").and_then(Value::as_str) {
                Some("pass") => Verdict::Passed,
                Some("fail") => Verdict::Failed,
                _ => {
                    return Err(malformed(
                        &format!("tests[{i}].verdict"),
                        "expected \"pass\" or \"fail\"".into(),
                    ))
                }
            };
            tests.push((TestId::new(id), verdict));
        }
    }
    let provider_number = match obj.get("provider_number") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| {
            malformed("provider_number", "expected a non-negative integer".into())
        })?),
    };

    let mut build = BuildRecord::new(build_id, commit_id, timestamp, changed_files, tests);
    build.provider_number = provider_number;
    build
        .validate()
        .map_err(|e| malformed("tests", e.to_string()))?;
    Ok(build)
}

/// Per-test verdict series over the last `interval` output-bearing builds.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryWindow {
    pub anchor_build: u64,
    pub interval: u32,
    /// Most recent first; distances are distinct and ascending.
    pub series: BTreeMap<TestId, Vec<(u32, Verdict)>>,
}

impl HistoryWindow {
    pub fn series_for(&self, test: &TestId) -> &[(u32, Verdict)] {
        self.series.get(test).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// SHA-256 of a test's source bytes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentHash([u8; 32]);

impl ContentHash {
    pub fn of(bytes: &[u8]) -> Self {
        ContentHash(Sha256::digest(bytes).into())
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Debug for ContentHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContentHash({})", &hex::encode(self.0)[..12])
    }
}

impl fmt::Display for ContentHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl FromStr for ContentHash {
    type Err = hex::FromHexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bytes = [0u8; 32];
        hex::decode_to_slice(s, &mut bytes)?;
        Ok(ContentHash(bytes))
    }
}

impl Serialize for ContentHash {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ContentHash {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A test's source bytes at one revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestArtifact {
    pub test: TestId,
    pub content: Vec<u8>,
    pub content_hash: ContentHash,
}

impl TestArtifact {
    pub fn new(test: TestId, content: Vec<u8>) -> Self {
        let content_hash = ContentHash::of(&content);
        TestArtifact {
            test,
            content,
            content_hash,
        }
    }
}

pub type Artifacts = BTreeMap<TestId, TestArtifact>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiversityMethod {
    /// Pairwise max-min with Manhattan distance.
    Manhattan,
    /// Pairwise max-min with normalized compression distance.
    Ncd,
    /// Greedy NCD multiset.
    NcdMultiset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Technique {
    Random,
    HistoryRandom,
    HistoryDiversity(DiversityMethod),
    Original,
}

impl Technique {
    pub const ALL: [Technique; 6] = [
        Technique::Random,
        Technique::HistoryRandom,
        Technique::HistoryDiversity(DiversityMethod::Manhattan),
        Technique::HistoryDiversity(DiversityMethod::Ncd),
        Technique::HistoryDiversity(DiversityMethod::NcdMultiset),
        Technique::Original,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Technique::Random => "RND",
            Technique::HistoryRandom => "HBR",
            Technique::HistoryDiversity(DiversityMethod::Manhattan) => "HBD-MNH",
            Technique::HistoryDiversity(DiversityMethod::Ncd) => "HBD-NCD",
            Technique::HistoryDiversity(DiversityMethod::NcdMultiset) => "HBD-NCDMS",
            Technique::Original => "ORIG",
        }
    }

    pub fn needs_artifacts(self) -> bool {
        matches!(self, Technique::HistoryDiversity(_))
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Technique::Random | Technique::HistoryRandom)
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Technique::ALL
            .into_iter()
            .find(|t| t.tag() == upper)
            .ok_or_else(|| Error::UnknownTag {
                kind: "technique",
                value: s.to_owned(),
            })
    }
}

/// A permutation of one build's tests together with how it was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrioritizedSuite {
    pub order: Vec<TestId>,
    pub technique: Technique,
    pub interval: Option<u32>,
    pub seed: Option<u64>,
}

impl PrioritizedSuite {
    /// True when `order` is a permutation of `tests`.
    pub fn is_permutation_of<'a>(&self, tests: impl IntoIterator<Item = &'a TestId>) -> bool {
        let expected: Vec<&TestId> = {
            let mut v: Vec<_> = tests.into_iter().collect();
            v.sort();
            v
        };
        let mut got: Vec<&TestId> = self.order.iter().collect();
        got.sort();
        got == expected
    }
}
