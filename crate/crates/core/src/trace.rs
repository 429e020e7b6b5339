//! Per-step records of a search run and their CSV/JSON encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{format_float, format_opt_float, write_table, Table};
use crate::state::SearchProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Standard,
    Modified,
    Degraded,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Standard => "standard",
            Algorithm::Modified => "modified",
            Algorithm::Degraded => "degraded",
        }
    }
}

/// Where the reflection axis of each step comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisSource {
    /// The fixed initial uniform superposition.
    InitialState,
    /// A bitwise copy of the simulated current state. No physical device
    /// can do this for an unknown state; the simulator stands in for the
    /// missing cloner.
    ClassicalCopy,
    /// A unit vector with squared overlap `clone_fidelity` with the current
    /// state, redrawn every step.
    ApproximateClone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: usize,
    pub predicted_angle: f64,
    pub measured_angle: f64,
    pub success_prob: f64,
    /// Spread of `success_prob` across Monte-Carlo trials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_prob_std: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: Algorithm,
    pub n: u32,
    pub dim: usize,
    pub marked_count: usize,
    pub marked: Vec<usize>,
    pub theta: f64,
    pub reflection_axis: AxisSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clone_fidelity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<TraceEntry>,
}

const BASE_COLUMNS: [&str; 4] = ["step", "predicted_angle", "measured_angle", "success_prob"];
const STD_COLUMN: &str = "success_prob_std";

impl RunTrace {
    pub(crate) fn new(
        algorithm: Algorithm,
        problem: &SearchProblem,
        theta: f64,
        reflection_axis: AxisSource,
    ) -> Self {
        RunTrace {
            algorithm,
            n: problem.qubits(),
            dim: problem.dim(),
            marked_count: problem.marked_count(),
            marked: problem.marked().to_vec(),
            theta,
            reflection_axis,
            clone_fidelity: None,
            trials: None,
            seed: None,
            entries: Vec::new(),
        }
    }

    /// Entry with the highest success probability; earliest step on ties.
    pub fn best(&self) -> Option<&TraceEntry> {
        self.entries.iter().reduce(|best, e| {
            if e.success_prob > best.success_prob {
                e
            } else {
                best
            }
        })
    }

    pub fn last(&self) -> Option<&TraceEntry> {
        self.entries.last()
    }

    /// Writes `step, predicted_angle, measured_angle, success_prob`, plus
    /// `success_prob_std` when any entry carries one.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let with_std = self.entries.iter().any(|e| e.success_prob_std.is_some());
        let mut header = BASE_COLUMNS.to_vec();
        if with_std {
            header.push(STD_COLUMN);
        }
        let rows = self.entries.iter().map(|e| {
            let mut row = vec![
                e.step.to_string(),
                format_float(e.predicted_angle),
                format_float(e.measured_angle),
                format_float(e.success_prob),
            ];
            if with_std {
                row.push(format_opt_float(e.success_prob_std));
            }
            row
        });
        write_table(writer, &header, rows)
    }

    /// Pretty-printed JSON; keys appear in declaration order.
    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, self)?;
        writer.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(reader: R) -> Result<Self> {
        Ok(serde_json::from_reader(reader)?)
    }
}

/// Parses the entry table written by [`RunTrace::write_csv`].
pub fn read_trace_csv<R: Read>(reader: R) -> Result<Vec<TraceEntry>> {
    let table = Table::read(reader, &BASE_COLUMNS)?;
    let with_std = table.has_column(STD_COLUMN);
    let entries = table
        .rows()
        .map(|row| {
            Ok(TraceEntry {
                step: row.parse("step")?,
                predicted_angle: row.f64("predicted_angle")?,
                measured_angle: row.f64("measured_angle")?,
                success_prob: row.f64("success_prob")?,
                success_prob_std: if with_std { row.opt_f64(STD_COLUMN)? } else { None },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if entries.iter().enumerate().any(|(i, e)| e.step != i) {
        return Err(Error::Schema("trace steps must be 0, 1, 2, ...".into()));
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunTrace {
        let p = SearchProblem::new(3, [5]).unwrap();
        let mut t = RunTrace::new(Algorithm::Degraded, &p, 0.7, AxisSource::ApproximateClone);
        t.seed = Some(9);
        t.trials = Some(4);
        t.clone_fidelity = Some(0.6);
        t.entries = vec![
            TraceEntry {
                step: 0,
                predicted_angle: 0.35,
                measured_angle: 0.35,
                success_prob: 0.125,
                success_prob_std: Some(0.0),
            },
            TraceEntry {
                step: 1,
                predicted_angle: 1.05,
                measured_angle: 0.1 + 0.2,
                success_prob: 1.0 / 3.0,
                success_prob_std: Some(0.01),
            },
        ];
        t
    }

    #[test]
    fn csv_and_json_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("step,predicted_angle,measured_angle,success_prob,success_prob_std\n"));
        assert_eq!(read_trace_csv(buf.as_slice()).unwrap(), t.entries);

        let mut json = Vec::new();
        t.write_json(&mut json).unwrap();
        assert_eq!(RunTrace::read_json(json.as_slice()).unwrap(), t);
        let text = String::from_utf8(json).unwrap();
        assert!(text.find("\"algorithm\"").unwrap() < text.find("\"entries\"").unwrap());
        assert!(text.contains("\"reflection_axis\": \"approximate-clone\""));
    }

    #[test]
    fn csv_without_std_column() {
        let mut t = sample();
        t.entries.iter_mut().for_each(|e| e.success_prob_std = None);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"step,predicted_angle,measured_angle,success_prob\n"));
        assert_eq!(read_trace_csv(buf.as_slice()).unwrap(), t.entries);
    }

    #[test]
    fn best_prefers_earliest_on_ties() {
        let mut t = sample();
        t.entries[1].success_prob = t.entries[0].success_prob;
        assert_eq!(t.best().unwrap().step, 0);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(read_trace_csv("step,predicted_angle\n0,1\n".as_bytes()).is_err());
        let bad = "step,predicted_angle,measured_angle,success_prob\n0,1,x,0\n";
        assert!(matches!(read_trace_csv(bad.as_bytes()), Err(Error::Schema(_))));
        let gap = "step,predicted_angle,measured_angle,success_prob\n1,1,1,0\n";
        assert!(read_trace_csv(gap.as_bytes()).is_err());
    }
}
