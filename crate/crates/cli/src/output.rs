//! JSON check reports and the CSV filtration table.

use std::io::Write;

use qgl_core::repth::FiltrationRow;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One check's outcome. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
    pub convention_notes: Vec<String>,
    /// Set when the check stopped on a size or step budget.
    #[serde(skip)]
    pub resource_exceeded: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Process exit code for a single run.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            _ if self.resource_exceeded => 3,
            _ => 1,
        }
    }

    /// The report with `elapsed_ms` zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> CheckReport {
        CheckReport { elapsed_ms: 0, ..self.clone() }
    }
}

/// Exit code for a `run_all` aggregate.
pub fn aggregate_exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(CheckReport::passed) {
        0
    } else if reports.iter().any(|r| r.resource_exceeded) {
        3
    } else {
        1
    }
}

pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Writes `lambda, control_value, in_P<=M...` rows, the threshold labels taken from `thresholds`.
pub fn write_filtration_csv<W: Write>(out: W, thresholds: &[String], rows: &[FiltrationRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["lambda".to_string(), "control_value".to_string(), "control_approx".to_string()];
    header.extend(thresholds.iter().map(|m| format!("in_P<={m}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.lambda.to_string(), r.control_value.to_string(), format!("{:.6}", crate::spectrum::to_f64(&r.control_value))];
        rec.extend(r.in_p_leq_m.iter().map(|b| b.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
