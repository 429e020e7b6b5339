//! Step counts of the standard and modified searches across register sizes.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{format_float, write_table, Table};
use crate::modified::{r_mod, run_modified, search_horizon};
use crate::standard::{iteration_bound, run_standard};
use crate::state::{Limits, SearchProblem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: u32,
    /// Simulated step with the highest success probability, `k <= iteration_bound`.
    pub standard_best_step: usize,
    /// Simulated step with the highest success probability, `l <= ceil(r_mod) + 1`.
    pub modified_best_step: usize,
    pub r_mod: f64,
    pub iteration_bound: usize,
}

/// Simulates both searches for every `n` in `qubits` with the first
/// `marked` indices marked.
pub fn compare_scaling(
    qubits: impl IntoIterator<Item = u32>,
    marked: usize,
    limits: &Limits,
) -> Result<Vec<ScalingRow>> {
    qubits
        .into_iter()
        .map(|n| {
            let problem = SearchProblem::with_limits(n, 0..marked, limits)?;
            let bound = iteration_bound(&problem);
            let standard = run_standard(&problem, Some(bound))?;
            let modified = run_modified(&problem, Some(search_horizon(&problem)))?;
            let best = |t: &crate::RunTrace| t.best().map(|e| e.step).unwrap_or(0);
            Ok(ScalingRow {
                n,
                standard_best_step: best(&standard),
                modified_best_step: best(&modified),
                r_mod: r_mod(&problem),
                iteration_bound: bound,
            })
        })
        .collect()
}

const SCALING_COLUMNS: [&str; 5] = [
    "n",
    "standard_best_step",
    "modified_best_step",
    "r_mod",
    "iteration_bound",
];

pub fn write_scaling_csv<W: Write>(rows: &[ScalingRow], writer: W) -> Result<()> {
    let records = rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            r.standard_best_step.to_string(),
            r.modified_best_step.to_string(),
            format_float(r.r_mod),
            r.iteration_bound.to_string(),
        ]
    });
    write_table(writer, &SCALING_COLUMNS, records)
}

pub fn read_scaling_csv<R: Read>(reader: R) -> Result<Vec<ScalingRow>> {
    let table = Table::read(reader, &SCALING_COLUMNS)?;
    let rows = table
        .rows()
        .map(|row| {
            Ok(ScalingRow {
                n: row.parse("n")?,
                standard_best_step: row.parse("standard_best_step")?,
                modified_best_step: row.parse("modified_best_step")?,
                r_mod: row.f64("r_mod")?,
                iteration_bound: row.parse("iteration_bound")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Schema("scaling table is empty".into()));
    }
    Ok(rows)
}
