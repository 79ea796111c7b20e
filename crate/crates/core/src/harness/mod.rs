//! Verification layer: generating series, rank tables, the dimension
//! checks and the persistent result cache.

mod cache;
mod checks;
mod context;
mod ranks;
mod report;
mod series;

pub use cache::{Cache, CacheKey, CACHE_ENV};
pub use checks::{
    decomposition_check, exactness_report, recurrence_check, Comparison, DecompositionResult,
    DepthSummary, ExactnessCell, ExactnessReport, RecurrenceResult,
};
pub use context::{Context, Counters};
pub use ranks::{rank_table, RankEntry, RankMode, RankTable};
pub use report::{
    brown_checks, crosscheck_checks, decomposition_checks, full_report, recurrence_checks,
    tasaka_checks, Check, Status, VerificationReport,
};
pub use series::{cusp_series, hilbert_target, odd_series, Series2};
