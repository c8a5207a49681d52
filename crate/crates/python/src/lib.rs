//! Python bindings: `import ciprio`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ciprio_core::diversity::{self, compressor_by_name, DistanceCache, DiversityContext};
use ciprio_core::eval::{self, load_build_artifacts, FiveNumber, ReplayConfig};
use ciprio_core::hbtp::WeightScheme;
use ciprio_core::model::{ProjectHistory, Technique, TestId, Verdict};
use ciprio_core::prioritize::prioritize_build;

fn err(e: ciprio_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn test_ids(v: Vec<String>) -> Vec<TestId> {
    v.into_iter().map(TestId::from).collect()
}

fn strings(v: &[TestId]) -> Vec<String> {
    v.iter().map(|t| t.to_string()).collect()
}

fn parse_verdict(s: &str) -> PyResult<Verdict> {
    match s {
        "pass" => Ok(Verdict::Passed),
        "fail" => Ok(Verdict::Failed),
        _ => Err(PyValueError::new_err(format!("unknown verdict {s:?}"))),
    }
}

fn five_dict<'py>(py: Python<'py>, f: &FiveNumber) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("min", f.min)?;
    d.set_item("p25", f.p25)?;
    d.set_item("median", f.median)?;
    d.set_item("p75", f.p75)?;
    d.set_item("max", f.max)?;
    Ok(d)
}

/// A project's build history, loaded from JSON Lines.
#[pyclass(frozen, module = "ciprio")]
struct History {
    inner: ProjectHistory,
}

#[pymethods]
impl History {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(History {
            inner: ProjectHistory::load(path).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_jsonl(project_id: String, text: &str) -> PyResult<Self> {
        Ok(History {
            inner: ProjectHistory::read_jsonl(project_id, text.as_bytes()).map_err(err)?,
        })
    }

    #[getter]
    fn project_id(&self) -> String {
        self.inner.project_id.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn build_ids(&self) -> Vec<u64> {
        self.inner.builds().iter().map(|b| b.build_id).collect()
    }

    fn faulty_build_ids(&self) -> Vec<u64> {
        self.inner.faulty_builds().map(|b| b.build_id).collect()
    }

    fn test_ids(&self) -> Vec<String> {
        self.inner.test_ids().iter().map(|t| t.to_string()).collect()
    }

    /// Tests of one build in execution order.
    fn execution_order(&self, build_id: u64) -> PyResult<Vec<String>> {
        let b = self
            .inner
            .get(build_id)
            .ok_or_else(|| PyValueError::new_err(format!("no build {build_id}")))?;
        Ok(strings(&b.test_order()))
    }

    fn failing(&self, build_id: u64) -> PyResult<Vec<String>> {
        let b = self
            .inner
            .get(build_id)
            .ok_or_else(|| PyValueError::new_err(format!("no build {build_id}")))?;
        Ok(b.failing().iter().map(|t| t.to_string()).collect())
    }

    fn __repr__(&self) -> String {
        format!("History({:?}, {} builds)", self.inner.project_id, self.inner.len())
    }
}

#[pyfunction]
fn apfd(order: Vec<String>, failing: Vec<String>) -> PyResult<f64> {
    let suite = ciprio_core::model::PrioritizedSuite {
        order: test_ids(order),
        technique: Technique::Original,
        interval: None,
        seed: None,
    };
    let failing: BTreeSet<TestId> = failing.into_iter().map(TestId::from).collect();
    eval::apfd(&suite, &failing).map(|s| s.apfd).map_err(err)
}

#[pyfunction]
fn failure_weight(distance: u32) -> PyResult<f64> {
    WeightScheme::default().failure_weight(distance).map_err(err)
}

/// `series` holds `(distance, "pass" | "fail")` pairs.
#[pyfunction]
fn cumulative_priority(series: Vec<(u32, String)>) -> PyResult<f64> {
    let series = series
        .into_iter()
        .map(|(d, v)| parse_verdict(&v).map(|v| (d, v)))
        .collect::<PyResult<Vec<_>>>()?;
    WeightScheme::default().cumulative_priority(&series).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, compressor = "lz4"))]
fn ncd(a: &[u8], b: &[u8], compressor: &str) -> PyResult<f64> {
    let c = compressor_by_name(compressor).map_err(err)?;
    diversity::ncd(a, b, c.as_ref()).map_err(err)
}

#[pyfunction]
fn manhattan(a: &[u8], b: &[u8]) -> u64 {
    diversity::manhattan(a, b)
}

#[pyfunction]
fn vargha_delaney_a(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    eval::vargha_delaney_a(&x, &y).map_err(err)
}

/// Returns `(u, p_value, exact)`.
#[pyfunction]
fn mann_whitney_u(x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64, bool)> {
    let r = eval::mann_whitney_u(&x, &y).map_err(err)?;
    Ok((r.u, r.p_value, r.exact))
}

#[pyfunction]
fn five_number_summary<'py>(py: Python<'py>, values: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    five_dict(py, &eval::five_number_summary(&values).map_err(err)?)
}

fn parse_technique(s: &str) -> PyResult<Technique> {
    s.parse().map_err(err)
}

/// Prioritized order of one build's tests.
#[pyfunction]
#[pyo3(signature = (history, build_id, technique = "HBR", interval = 10, seed = 0, snapshots = None, compressor = "lz4"))]
fn prioritize(
    history: &History,
    build_id: u64,
    technique: &str,
    interval: u32,
    seed: u64,
    snapshots: Option<PathBuf>,
    compressor: &str,
) -> PyResult<Vec<String>> {
    let technique = parse_technique(technique)?;
    let h = &history.inner;
    let weights = WeightScheme::default();
    let suite = match (technique.needs_artifacts(), snapshots) {
        (true, Some(root)) => {
            let build = h
                .get(build_id)
                .ok_or_else(|| PyValueError::new_err(format!("no build {build_id}")))?;
            let artifacts = load_build_artifacts(&root, build).map_err(err)?;
            let c = compressor_by_name(compressor).map_err(err)?;
            let cache = DistanceCache::new();
            let ctx = DiversityContext::new(&artifacts, c.as_ref(), &cache);
            prioritize_build(h, build_id, technique, interval, seed, &weights, Some(&ctx))
        }
        _ => prioritize_build(h, build_id, technique, interval, seed, &weights, None),
    }
    .map_err(err)?;
    Ok(strings(&suite.order))
}

/// Replays every faulty build; one dict per build.
#[pyfunction]
#[pyo3(signature = (history, technique = "HBR", interval = 10, seed = 0, snapshots = None, compressor = "lz4"))]
fn replay<'py>(
    py: Python<'py>,
    history: &History,
    technique: &str,
    interval: u32,
    seed: u64,
    snapshots: Option<PathBuf>,
    compressor: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let c = compressor_by_name(compressor).map_err(err)?;
    let cache = DistanceCache::new();
    let cfg = ReplayConfig {
        technique: parse_technique(technique)?,
        interval,
        seed,
        weights: WeightScheme::default(),
        snapshots: snapshots.as_deref(),
        compressor: c.as_ref(),
        cache: &cache,
    };
    let report = eval::replay(&history.inner, &cfg).map_err(err)?;
    report
        .results
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("build_id", r.build_id)?;
            d.set_item("technique", r.technique.tag())?;
            d.set_item("interval", r.interval)?;
            d.set_item("seed", r.seed)?;
            d.set_item("n", r.n)?;
            d.set_item("m", r.m)?;
            d.set_item("apfd", r.apfd)?;
            d.set_item("ranks", r.ranks.clone())?;
            d.set_item("order", strings(&r.order))?;
            d.set_item("elapsed_ms", r.elapsed.as_secs_f64() * 1000.0)?;
            Ok(d)
        })
        .collect()
}

/// T1/T2 classification: `{"summary": {...}, "records": [...]}`.
#[pyfunction]
fn classify_faults<'py>(py: Python<'py>, history: &History) -> PyResult<Bound<'py, PyDict>> {
    let c = eval::classify_faults(&history.inner);
    let s = &c.summary;
    let summary = PyDict::new(py);
    summary.set_item("project", &s.project)?;
    summary.set_item("tests", s.tests)?;
    summary.set_item("fault_revealing_tests", s.fault_revealing_tests)?;
    summary.set_item("faults", s.faults)?;
    summary.set_item("t1_faults", s.t1_faults)?;
    summary.set_item("t2_faults", s.t2_faults)?;
    for (key, gaps) in [("t1_gaps", &s.t1_gaps), ("t2_gaps", &s.t2_gaps)] {
        match gaps {
            Some(f) => summary.set_item(key, five_dict(py, f)?)?,
            None => summary.set_item(key, py.None())?,
        }
    }
    let records = c
        .records
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("build_id", r.build_id)?;
            d.set_item("test", r.test.as_str())?;
            d.set_item("class", r.class.to_string())?;
            d.set_item("gap", r.gap)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let out = PyDict::new(py);
    out.set_item("summary", summary)?;
    out.set_item("records", records)?;
    Ok(out)
}

#[pymodule]
fn ciprio(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<History>()?;
    m.add_function(wrap_pyfunction!(apfd, m)?)?;
    m.add_function(wrap_pyfunction!(failure_weight, m)?)?;
    m.add_function(wrap_pyfunction!(cumulative_priority, m)?)?;
    m.add_function(wrap_pyfunction!(ncd, m)?)?;
    m.add_function(wrap_pyfunction!(manhattan, m)?)?;
    m.add_function(wrap_pyfunction!(vargha_delaney_a, m)?)?;
    m.add_function(wrap_pyfunction!(mann_whitney_u, m)?)?;
    m.add_function(wrap_pyfunction!(five_number_summary, m)?)?;
    m.add_function(wrap_pyfunction!(prioritize, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(classify_faults, m)?)?;
    Ok(())
}
