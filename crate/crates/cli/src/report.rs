//! Versioned experiment reports and their CSV form.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use dynachrome_core::rng::derive_seed;

use crate::error::CliError;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport<R, A> {
    pub version: u32,
    pub experiment: &'static str,
    pub parameters: serde_json::Value,
    /// Master seed; trial `i` runs with `derive_seed(seed, i)`.
    pub seed: u64,
    pub trials: Vec<R>,
    pub aggregate: A,
}

/// One flat CSV row per trial.
pub trait CsvRow {
    fn header() -> &'static [&'static str];
    fn row(&self) -> Vec<String>;
}

pub fn write_csv<R: CsvRow>(trials: &[R], out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::header())?;
    for t in trials {
        w.write_record(t.row())?;
    }
    w.flush()?;
    Ok(())
}

/// Runs `count` trials in parallel, trial `i` with seed `derive_seed(master, i)`,
/// and returns them in index order so parallel and serial runs agree.
pub fn run_trials<R, F>(count: usize, master: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, u64) -> R + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| f(i, derive_seed(master, i as u64)))
        .collect()
}

pub(crate) fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}
