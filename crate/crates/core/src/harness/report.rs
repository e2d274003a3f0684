use super::sweep::{SweepResult, SweepRow};
use crate::error::{Result, ToaError};

pub const CSV_HEADER: &str =
    "snr_db,trials,rmse_chips,rmse_ns,mean_abs_error_chips,p_block_correct,p_within_1chip";

/// One header line and one line per row; floats use the shortest
/// representation that parses back to the same value.
pub fn sweep_to_csv(sweep: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &sweep.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.snr_db,
            r.trials,
            r.rmse_chips,
            r.rmse_ns,
            r.mean_abs_error_chips,
            r.p_block_correct,
            r.p_within_1chip
        ));
    }
    out
}

pub fn read_sweep_csv(text: &str) -> Result<SweepResult> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(ToaError::InvalidConfig(format!(
            "unexpected CSV header: {header}"
        )));
    }
    let rows = reader
        .deserialize::<SweepRow>()
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SweepResult { rows })
}

pub fn sweep_to_json(sweep: &SweepResult) -> String {
    let mut s = serde_json::to_string_pretty(sweep).expect("sweep rows serialize");
    s.push('\n');
    s
}
