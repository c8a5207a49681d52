//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::diversity::{compressor_by_name, Compressor, DistanceCache, DiversityContext};
use crate::error::{Error, Result};
use crate::eval::faults::{write_records_csv, write_summary_csv};
use crate::eval::{
    classify_faults, compare_results, load_build_artifacts, read_results_csv, replay,
    write_comparison_csv, write_orders_csv, write_results_csv, ReplayConfig,
};
use crate::hbtp::WeightScheme;
use crate::ingest::{ingest_log_dir, Surefire};
use crate::model::{DiversityMethod, ProjectHistory, Technique};
use crate::prioritize::prioritize_build;

#[derive(Debug, Parser)]
#[command(name = "ciprio", version, about = "History- and diversity-based test prioritization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a JSONL history from a directory of `<build_id>.log` files.
    Ingest {
        #[arg(long)]
        logs: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print one build's tests in prioritized order.
    Prioritize {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        build: u64,
    },
    /// Prioritize and score every faulty build.
    Replay {
        #[command(flatten)]
        run: RunArgs,
        /// Also write every ordering, one row per (build, rank).
        #[arg(long)]
        orders: Option<PathBuf>,
    },
    /// Compare two replay result CSVs.
    Compare {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every failure in a history as T1 or T2.
    Classify {
        #[arg(long)]
        history: PathBuf,
        /// Per-project summary CSV (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-fault CSV.
        #[arg(long)]
        records: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub history: PathBuf,
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
    /// RND, HBR, ORIG, HBD (with --metric), HBD-MNH, HBD-NCD or HBD-NCDMS.
    #[arg(long, default_value = "HBR")]
    pub technique: String,
    #[arg(long, default_value_t = 10)]
    pub interval: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// mnh, ncd or ncdms.
    #[arg(long)]
    pub metric: Option<String>,
    #[arg(long, default_value = "lz4")]
    pub compressor: String,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Distance cache file, read if present and written afterwards.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Compute every distance afresh.
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated run settings.
pub struct RunConfig {
    pub history: PathBuf,
    pub snapshots: Option<PathBuf>,
    pub technique: Technique,
    pub interval: u32,
    pub seed: u64,
    pub compressor: Arc<dyn Compressor>,
    pub workers: usize,
    pub cache_path: Option<PathBuf>,
    pub use_cache: bool,
    pub out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<DiversityMethod> {
    match s.to_ascii_lowercase().as_str() {
        "mnh" | "manhattan" => Ok(DiversityMethod::Manhattan),
        "ncd" => Ok(DiversityMethod::Ncd),
        "ncdms" | "ncd-ms" => Ok(DiversityMethod::NcdMultiset),
        _ => Err(Error::UnknownTag {
            kind: "metric",
            value: s.to_owned(),
        }),
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let method = self.metric.as_deref().map(parse_method).transpose()?;
        let technique = if self.technique.eq_ignore_ascii_case("HBD") {
            Technique::HistoryDiversity(
                method.ok_or_else(|| invalid("HBD needs --metric mnh|ncd|ncdms"))?,
            )
        } else {
            let t: Technique = self.technique.parse()?;
            match (t, method) {
                (Technique::HistoryDiversity(a), Some(b)) if a != b => {
                    return Err(invalid(format!("--metric conflicts with --technique {t}")))
                }
                (t, Some(_)) if !t.needs_artifacts() => {
                    return Err(invalid(format!("--metric does not apply to {t}")))
                }
                _ => t,
            }
        };
        if technique.needs_artifacts() && self.snapshots.is_none() {
            return Err(Error::SnapshotsRequired(technique.to_string()));
        }
        if self.workers == 0 {
            return Err(invalid("--workers must be at least 1"));
        }
        Ok(RunConfig {
            history: self.history.clone(),
            snapshots: self.snapshots.clone(),
            technique,
            interval: self.interval,
            seed: self.seed,
            compressor: compressor_by_name(&self.compressor)?,
            workers: self.workers,
            cache_path: self.cache.clone(),
            use_cache: !self.no_cache,
            out: self.out.clone(),
        })
    }
}

impl RunConfig {
    fn open_cache(&self) -> Result<DistanceCache> {
        if !self.use_cache {
            return Ok(DistanceCache::disabled());
        }
        match &self.cache_path {
            Some(p) if p.exists() => DistanceCache::load(p),
            _ => Ok(DistanceCache::new()),
        }
    }

    fn save_cache(&self, cache: &DistanceCache) -> Result<()> {
        match &self.cache_path {
            Some(p) if self.use_cache => cache.save(p),
            _ => Ok(()),
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()?)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_file(p, bytes),
        None => stdout
            .write_all(bytes)
            .map_err(|e| Error::io("writing stdout", e)),
    }
}

pub fn cmd_ingest(logs: &Path, out: &Path, stderr: &mut dyn Write) -> Result<()> {
    let ingest = ingest_log_dir(logs, &Surefire)?;
    for (build, line, msg) in &ingest.warnings {
        let _ = writeln!(stderr, "warning: build {build} line {line}: {msg}");
    }
    ingest.history.save(out)
}

pub fn cmd_prioritize(cfg: &RunConfig, build_id: u64, stdout: &mut dyn Write) -> Result<()> {
    let history = ProjectHistory::load(&cfg.history)?;
    let build = history.get(build_id).ok_or(Error::UnknownBuild(build_id))?;
    let cache = cfg.open_cache()?;
    let artifacts = match (&cfg.snapshots, cfg.technique.needs_artifacts()) {
        (Some(root), true) => Some(load_build_artifacts(root, build)?),
        _ => None,
    };
    let ctx = artifacts
        .as_ref()
        .map(|a| DiversityContext::new(a, cfg.compressor.as_ref(), &cache));
    let suite = cfg.pool()?.install(|| {
        prioritize_build(
            &history,
            build_id,
            cfg.technique,
            cfg.interval,
            cfg.seed,
            &WeightScheme::default(),
            ctx.as_ref(),
        )
    })?;
    let mut text = String::new();
    for t in &suite.order {
        text.push_str(t.as_str());
        text.push('\n');
    }
    emit(cfg.out.as_deref(), text.as_bytes(), stdout)?;
    cfg.save_cache(&cache)
}

pub fn cmd_replay(
    cfg: &RunConfig,
    orders: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let history = ProjectHistory::load(&cfg.history)?;
    let cache = cfg.open_cache()?;
    let replay_cfg = ReplayConfig {
        technique: cfg.technique,
        interval: cfg.interval,
        seed: cfg.seed,
        weights: WeightScheme::default(),
        snapshots: cfg.snapshots.as_deref(),
        compressor: cfg.compressor.as_ref(),
        cache: &cache,
    };
    let report = cfg.pool()?.install(|| replay(&history, &replay_cfg))?;

    let mut results = Vec::new();
    write_results_csv(&mut results, &report.results)?;
    let mut ordering = Vec::new();
    if orders.is_some() {
        write_orders_csv(&mut ordering, &report.results)?;
    }
    emit(cfg.out.as_deref(), &results, stdout)?;
    if let Some(p) = orders {
        write_file(p, &ordering)?;
    }
    cfg.save_cache(&cache)?;

    let fmt = |v: Option<f64>, digits: usize| v.map_or("n/a".to_owned(), |x| format!("{x:.digits$}"));
    let _ = writeln!(
        stderr,
        "{} V={}: {} faulty builds, mean APFD {}, AMET {} ms",
        cfg.technique,
        cfg.interval,
        report.results.len(),
        fmt(report.mean_apfd(), 2),
        fmt(report.amet().map(|d| d.as_secs_f64() * 1e3), 3),
    );
    Ok(())
}

fn read_csv(path: &Path) -> Result<Vec<crate::eval::ResultRow>> {
    let file = fs::File::open(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    read_results_csv(file)
}

pub fn cmd_compare(x: &Path, y: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let row = compare_results(&read_csv(x)?, &read_csv(y)?)?;
    let mut buf = Vec::new();
    write_comparison_csv(&mut buf, &[row])?;
    emit(out, &buf, stdout)
}

pub fn cmd_classify(
    history: &Path,
    out: Option<&Path>,
    records: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let c = classify_faults(&ProjectHistory::load(history)?);
    let mut summary = Vec::new();
    write_summary_csv(&mut summary, &[c.summary])?;
    let mut faults = Vec::new();
    if records.is_some() {
        write_records_csv(&mut faults, &c.records)?;
    }
    emit(out, &summary, stdout)?;
    if let Some(p) = records {
        write_file(p, &faults)?;
    }
    Ok(())
}

pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Ingest { logs, out } => cmd_ingest(&logs, &out, stderr),
        Command::Prioritize { run, build } => cmd_prioritize(&run.resolve()?, build, stdout),
        Command::Replay { run, orders } => cmd_replay(&run.resolve()?, orders.as_deref(), stdout, stderr),
        Command::Compare { x, y, out } => cmd_compare(&x, &y, out.as_deref(), stdout),
        Command::Classify {
            history,
            out,
            records,
        } => cmd_classify(&history, out.as_deref(), records.as_deref(), stdout),
    }
}

/// Parses arguments, runs the command, and returns the process exit code.
/// Any error is printed to `stderr`, and only then is the code nonzero.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
