//! Evaluation: APFD, fault taxonomy, statistics, replay, and CSV reports.

pub mod apfd;
pub mod faults;
pub mod replay;
pub mod report;
pub mod stats;

pub use apfd::{apfd, apfd_value, ApfdScore};
pub use faults::{classify_faults, five_number_summary, FaultClass, FaultClassification, FaultRecord, FaultSummary, FiveNumber};
pub use replay::{load_build_artifacts, replay, ApfdResult, ReplayConfig, ReplayReport};
pub use report::{compare_results, read_results_csv, write_comparison_csv, write_orders_csv, write_results_csv, ResultRow};
pub use stats::{compare, mann_whitney_u, vargha_delaney_a, MannWhitney, StatComparison};
