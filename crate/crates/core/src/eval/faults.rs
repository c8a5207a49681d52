use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ProjectHistory, TestId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FaultClass {
    /// The test had failed before.
    T1,
    /// First recorded failure of the test.
    T2,
}

impl fmt::Display for FaultClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaultClass::T1 => "T1",
            FaultClass::T2 => "T2",
        })
    }
}

/// One failing test in one build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaultRecord {
    pub build_id: u64,
    pub test: TestId,
    pub class: FaultClass,
    /// Verdicts of this test back to its previous failure (T1) or to its
    /// first recorded verdict (T2).
    pub gap: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveNumber {
    pub min: f64,
    pub p25: f64,
    pub median: f64,
    pub p75: f64,
    pub max: f64,
}

/// Quantiles by linear interpolation at position `(n - 1) p` of the sorted values.
pub fn five_number_summary(values: &[f64]) -> Result<FiveNumber> {
    if values.is_empty() {
        return Err(Error::EmptySample("five-number summary"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let q = |p: f64| {
        let h = (v.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        v[lo] + (h - lo as f64) * (v[hi] - v[lo])
    };
    Ok(FiveNumber {
        min: v[0],
        p25: q(0.25),
        median: q(0.5),
        p75: q(0.75),
        max: v[v.len() - 1],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultSummary {
    pub project: String,
    pub tests: usize,
    pub fault_revealing_tests: usize,
    pub faults: usize,
    pub t1_faults: usize,
    pub t2_faults: usize,
    pub t1_gaps: Option<FiveNumber>,
    pub t2_gaps: Option<FiveNumber>,
}

impl FaultSummary {
    pub fn fault_revealing_ratio(&self) -> f64 {
        ratio(self.fault_revealing_tests, self.tests)
    }

    pub fn t1_ratio(&self) -> f64 {
        ratio(self.t1_faults, self.faults)
    }

    pub fn t2_ratio(&self) -> f64 {
        ratio(self.t2_faults, self.faults)
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultClassification {
    pub records: Vec<FaultRecord>,
    pub summary: FaultSummary,
}

#[derive(Default)]
struct TestTrack {
    verdicts: u32,
    last_failure: Option<u32>,
}

pub fn classify_faults(history: &ProjectHistory) -> FaultClassification {
    let mut tracks: HashMap<&TestId, TestTrack> = HashMap::new();
    let mut records = Vec::new();
    for build in history.builds() {
        for r in &build.results {
            let track = tracks.entry(&r.test).or_default();
            let index = track.verdicts;
            track.verdicts += 1;
            if !r.verdict.is_failed() {
                continue;
            }
            let (class, gap) = match track.last_failure {
                Some(prev) => (FaultClass::T1, index - prev),
                None => (FaultClass::T2, index),
            };
            track.last_failure = Some(index);
            records.push(FaultRecord {
                build_id: build.build_id,
                test: r.test.clone(),
                class,
                gap,
            });
        }
    }

    let gaps = |class| {
        let g: Vec<f64> = records
            .iter()
            .filter(|f| f.class == class)
            .map(|f| f64::from(f.gap))
            .collect();
        five_number_summary(&g).ok()
    };
    let t1 = records.iter().filter(|f| f.class == FaultClass::T1).count();
    let revealing: BTreeSet<&TestId> = records.iter().map(|f| &f.test).collect();
    let summary = FaultSummary {
        project: history.project_id.clone(),
        tests: tracks.len(),
        fault_revealing_tests: revealing.len(),
        faults: records.len(),
        t1_faults: t1,
        t2_faults: records.len() - t1,
        t1_gaps: gaps(FaultClass::T1),
        t2_gaps: gaps(FaultClass::T2),
    };
    FaultClassification { records, summary }
}

pub const SUMMARY_HEADER: [&str; 19] = [
    "project",
    "tests",
    "fault_revealing_tests",
    "fault_revealing_ratio",
    "faults",
    "t1_faults",
    "t2_faults",
    "t1_ratio",
    "t2_ratio",
    "t1_min",
    "t1_p25",
    "t1_p50",
    "t1_p75",
    "t1_max",
    "t2_min",
    "t2_p25",
    "t2_p50",
    "t2_p75",
    "t2_max",
];

fn five_cells(f: Option<FiveNumber>) -> [String; 5] {
    match f {
        Some(f) => [f.min, f.p25, f.median, f.p75, f.max].map(|x| x.to_string()),
        None => Default::default(),
    }
}

/// One row per project: counts and ratios, then T1 and T2 gap summaries.
pub fn write_summary_csv(out: impl Write, summaries: &[FaultSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in summaries {
        let mut row = vec![
            s.project.clone(),
            s.tests.to_string(),
            s.fault_revealing_tests.to_string(),
            format!("{:.4}", s.fault_revealing_ratio()),
            s.faults.to_string(),
            s.t1_faults.to_string(),
            s.t2_faults.to_string(),
            format!("{:.4}", s.t1_ratio()),
            format!("{:.4}", s.t2_ratio()),
        ];
        row.extend(five_cells(s.t1_gaps));
        row.extend(five_cells(s.t2_gaps));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io("writing summary CSV", e))
}

pub fn write_records_csv(out: impl Write, records: &[FaultRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["build_id", "test", "class", "gap"])?;
    for f in records {
        w.write_record([
            f.build_id.to_string(),
            f.test.to_string(),
            f.class.to_string(),
            f.gap.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("writing fault CSV", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BuildRecord, Verdict};
    use chrono::{TimeZone, Utc};
    use proptest::prelude::*;

    fn history(rows: &[(u64, &[(&str, Verdict)])]) -> ProjectHistory {
        ProjectHistory::from_builds(
            "p",
            rows.iter().map(|(id, tests)| {
                BuildRecord::new(
                    *id,
                    "",
                    Utc.timestamp_opt(*id as i64, 0).unwrap(),
                    Vec::<String>::new(),
                    tests.iter().map(|(t, v)| (TestId::from(*t), *v)),
                )
            }),
        )
        .unwrap()
    }

    use Verdict::{Failed as F, Passed as P};

    #[test]
    fn first_execution_failure_is_t2_gap_0() {
        let c = classify_faults(&history(&[(1, &[("a", F)])]));
        assert_eq!(c.records[0].class, FaultClass::T2);
        assert_eq!(c.records[0].gap, 0);
    }

    #[test]
    fn consecutive_failures() {
        let c = classify_faults(&history(&[(1, &[("a", F)]), (2, &[("a", F)])]));
        assert_eq!(c.records[1].class, FaultClass::T1);
        assert_eq!(c.records[1].gap, 1);
    }

    #[test]
    fn ppfpf() {
        let seq = [P, P, F, P, F];
        let rows: Vec<(u64, Vec<(&str, Verdict)>)> =
            seq.iter().enumerate().map(|(i, v)| (i as u64 + 1, vec![("a", *v)])).collect();
        let rows: Vec<(u64, &[(&str, Verdict)])> = rows.iter().map(|(i, t)| (*i, t.as_slice())).collect();
        let c = classify_faults(&history(&rows));
        let got: Vec<(FaultClass, u32)> = c.records.iter().map(|f| (f.class, f.gap)).collect();
        assert_eq!(got, [(FaultClass::T2, 2), (FaultClass::T1, 2)]);
    }

    #[test]
    fn gaps_skip_builds_where_the_test_did_not_run() {
        let c = classify_faults(&history(&[
            (1, &[("a", F), ("b", P)]),
            (2, &[("b", P)]),
            (3, &[]),
            (4, &[("a", F)]),
        ]));
        assert_eq!(c.records[1].gap, 1);
        assert_eq!(c.summary.tests, 2);
        assert_eq!(c.summary.fault_revealing_tests, 1);
    }

    #[test]
    fn five_number_examples() {
        let f = |v: &[f64]| {
            let s = five_number_summary(v).unwrap();
            (s.min, s.p25, s.median, s.p75, s.max)
        };
        assert_eq!(f(&[5.0]), (5.0, 5.0, 5.0, 5.0, 5.0));
        assert_eq!(f(&[1.0, 2.0, 3.0, 4.0, 5.0]), (1.0, 2.0, 3.0, 4.0, 5.0));
        assert_eq!(f(&[4.0, 1.0, 3.0, 2.0]), (1.0, 1.75, 2.5, 3.25, 4.0));
        assert!(five_number_summary(&[]).is_err());
    }

    proptest! {
        #[test]
        fn records_cover_every_failure(
            grid in proptest::collection::vec(proptest::collection::vec(0u8..3, 4), 1..15)
        ) {
            // 0 = passed, 1 = failed, 2 = not run
            let names = ["a", "b", "c", "d"];
            let rows: Vec<(u64, Vec<(&str, Verdict)>)> = grid
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let tests = row
                        .iter()
                        .zip(names)
                        .filter(|(c, _)| **c < 2)
                        .map(|(c, n)| (n, if *c == 1 { F } else { P }))
                        .collect();
                    (i as u64 + 1, tests)
                })
                .collect();
            let rows_ref: Vec<(u64, &[(&str, Verdict)])> = rows.iter().map(|(i, t)| (*i, t.as_slice())).collect();
            let h = history(&rows_ref);
            let c = classify_faults(&h);
            let expected: BTreeSet<(u64, TestId)> = h
                .builds()
                .iter()
                .flat_map(|b| b.failing().into_iter().map(move |t| (b.build_id, t)))
                .collect();
            let got: BTreeSet<(u64, TestId)> = c.records.iter().map(|f| (f.build_id, f.test.clone())).collect();
            prop_assert_eq!(got, expected);
            prop_assert_eq!(c.records.len(), c.summary.faults);
            prop_assert_eq!(c.summary.t1_faults + c.summary.t2_faults, c.summary.faults);
            for f in &c.records {
                if f.class == FaultClass::T1 {
                    prop_assert!(f.gap >= 1);
                }
            }
        }
    }
}
