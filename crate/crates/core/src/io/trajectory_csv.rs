//! Trajectory CSV with 17 significant digits per value, which round-trips
//! every `f64` exactly.

use std::fmt::Write as _;
use std::num::NonZeroUsize;

use thiserror::Error;

use crate::model::State;
use crate::simulator::Trajectory;

pub const TRAJECTORY_HEADER: &str = "t,u_f,u_s,u_p,total";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrajectoryCsvError {
    #[error("bad header: expected `{TRAJECTORY_HEADER}`, got `{0}`")]
    Header(String),
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
}

fn push_value(out: &mut String, v: f64) {
    let _ = write!(out, "{v:.16e}");
}

/// Every `stride`-th sample, plus the final sample when the stride skips it.
pub fn write_trajectory_csv(traj: &Trajectory, stride: NonZeroUsize) -> String {
    let stride = stride.get();
    let n = traj.samples.len();
    let mut out = String::with_capacity(96 * (n / stride + 2));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    let last = n.saturating_sub(1);
    let rows = (0..n)
        .step_by(stride)
        .chain((!last.is_multiple_of(stride)).then_some(last));
    for i in rows {
        let (t, s) = traj.samples[i];
        for (k, v) in [t, s.u_f, s.u_s, s.u_p, s.total()].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            push_value(&mut out, v);
        }
        out.push('\n');
    }
    out
}

/// Reads `(t, state)` rows back; the `total` column is checked for format
/// but not used.
pub fn read_trajectory_csv(text: &str) -> Result<Vec<(f64, State)>, TrajectoryCsvError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header.trim() != TRAJECTORY_HEADER {
        return Err(TrajectoryCsvError::Header(header.to_string()));
    }
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let vals = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TrajectoryCsvError::Row {
                line: line_no,
                message: e.to_string(),
            })?;
        if vals.len() != 5 {
            return Err(TrajectoryCsvError::Row {
                line: line_no,
                message: format!("expected 5 fields, found {}", vals.len()),
            });
        }
        out.push((vals[0], State::new(vals[1], vals[2], vals[3])));
    }
    Ok(out)
}
