use serde::Serialize;

use super::config::RunRecord;
use super::run::SweepSummary;
use crate::error::{Error, Result};

/// One row of the run table, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunRow {
    pub omega_rad: f64,
    pub theta_rad: f64,
    pub n: u32,
    pub r: f64,
    pub gamma_sim_rad: f64,
    pub gamma_theory_rad: f64,
    pub visibility_sim: f64,
    pub visibility_theory: f64,
    pub residual_rad: f64,
    pub defined: bool,
}

impl From<&RunRecord> for RunRow {
    fn from(rec: &RunRecord) -> Self {
        Self {
            omega_rad: rec.config.omega().radians(),
            theta_rad: rec.config.theta.radians(),
            n: rec.config.n,
            r: rec.r.abs(),
            gamma_sim_rad: rec.gamma_measured,
            gamma_theory_rad: rec.gamma_theory,
            visibility_sim: rec.visibility_measured,
            visibility_theory: rec.visibility_theory,
            residual_rad: rec.residual,
            defined: rec.defined,
        }
    }
}

/// Serializes `rows` as CSV with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Usage(format!("CSV output failed: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Usage(format!("CSV output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Usage(e.to_string()))
}

pub fn records_csv(records: &[RunRecord]) -> Result<String> {
    to_csv(&records.iter().map(RunRow::from).collect::<Vec<_>>())
}

/// JSON document `{"rows": [...], "summary": {...}}`.
pub fn records_json(records: &[RunRecord], summary: &SweepSummary) -> Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        rows: Vec<RunRow>,
        summary: &'a SweepSummary,
    }
    let doc = Doc { rows: records.iter().map(RunRow::from).collect(), summary };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Usage(format!("JSON output failed: {e}")))
}
