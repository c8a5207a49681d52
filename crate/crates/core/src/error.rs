use std::path::PathBuf;

use thiserror::Error;

use crate::model::TestId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("build #{0} already exists in the history")]
    DuplicateBuild(u64),

    #[error("build #{new} must come after build #{last}")]
    OutOfOrderBuild { last: u64, new: u64 },

    #[error("build #{build}: timestamp precedes the previous build")]
    TimestampRegression { build: u64 },

    #[error("build #{build}: {reason}")]
    InvalidBuild { build: u64, reason: String },

    #[error("unknown build #{0}")]
    UnknownBuild(u64),

    #[error("line {line}: field `{field}`: {reason}")]
    Malformed {
        line: usize,
        field: String,
        reason: String,
    },

    #[error("distance n must be >= 1, got {0}")]
    InvalidDistance(u32),

    #[error("invalid weight scheme: {0}")]
    InvalidWeights(String),

    #[error("no priority for executed test `{0}`")]
    MissingPriority(TestId),

    #[error("invalid priority {value} for test `{test}`")]
    InvalidPriority { test: TestId, value: f64 },

    #[error("no artifact for test `{0}`")]
    MissingArtifact(TestId),

    #[error("NCD undefined: both inputs compress to zero length")]
    ZeroCompressedLength,

    #[error("AllDistances needs a non-empty prioritized set")]
    EmptyPrioritized,

    #[error("failing test `{0}` is not part of the ordering")]
    FailingTestNotInOrder(TestId),

    #[error("APFD needs at least one failing test")]
    NoFailingTests,

    #[error("{0} needs a non-empty sample")]
    EmptySample(&'static str),

    #[error("build #{build}: snapshot directory {} does not exist", .dir.display())]
    MissingSnapshotDir { build: u64, dir: PathBuf },

    #[error("build #{build}: missing snapshot artifacts for {missing:?}")]
    MissingSnapshots { build: u64, missing: Vec<TestId> },

    #[error("technique {0} needs a snapshots root")]
    SnapshotsRequired(String),

    #[error("unknown {kind} `{value}`")]
    UnknownTag { kind: &'static str, value: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("build sets differ: {0}")]
    MismatchedBuilds(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
