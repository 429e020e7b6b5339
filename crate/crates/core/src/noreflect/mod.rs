//! Consistency checks for a universal "reflection machine"
//! `U |chi>|phi> = |chi~> (2<chi|phi>|chi> - |phi>)`.
//!
//! Taking the inner product of the action on two inputs and projecting
//! onto `<chi|..|chi>` and `<chi|..|chi'>` gives two scalar equations in
//! `c = <chi'|chi>` and `t = <chi~'|chi~>`:
//!
//! ```text
//! c = (2|c|^2 - 1) t        c = (4|c|^2 - 3) t
//! ```
//!
//! They agree only for `|c| = 1` and for `c = 0` (with `t = 0`). The second
//! solution corresponds to orthogonal controls, for which a controlled
//! reflection is easy to build; see [`machine`].

pub mod machine;

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{format_float, format_opt_float, write_table, Table};

pub use machine::{
    optimize_reflection_machine, reflection_residual, MachineOptimum, OptimizerConfig,
    ReflectionMachineProblem, StartOutcome,
};

/// Tolerance for declaring a denominator of the implied overlap singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

/// Implied output-control overlaps for one value of `c = <chi'|chi>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapConstraint {
    pub c: Complex64,
    /// `c / (2|c|^2 - 1)`; `None` where the denominator vanishes.
    pub t1: Option<Complex64>,
    /// `c / (4|c|^2 - 3)`; `None` where the denominator vanishes.
    pub t2: Option<Complex64>,
    /// `|t1 - t2|` when both are finite.
    pub discrepancy: Option<f64>,
}

impl OverlapConstraint {
    pub fn is_singular(&self) -> bool {
        self.t1.is_none() || self.t2.is_none()
    }
}

pub fn implied_control_overlaps(c: Complex64) -> Result<OverlapConstraint> {
    let c_sqr = c.norm_sqr();
    if c_sqr.sqrt() > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "overlap magnitude {} exceeds 1",
            c_sqr.sqrt()
        )));
    }
    let implied = |scale: f64, offset: f64| {
        let denom = scale * c_sqr - offset;
        // |c|^2 within tolerance of offset/scale.
        if (c_sqr - offset / scale).abs() <= SINGULAR_TOLERANCE {
            None
        } else {
            Some(c / denom)
        }
    };
    let t1 = implied(2.0, 1.0);
    let t2 = implied(4.0, 3.0);
    let discrepancy = match (t1, t2) {
        (Some(a), Some(b)) => Some((a - b).norm()),
        _ => None,
    };
    Ok(OverlapConstraint {
        c,
        t1,
        t2,
        discrepancy,
    })
}

/// One row of [`consistency_scan`]. `c` is taken real: the discrepancy
/// depends on `|c|` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub c_abs: f64,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub discrepancy: Option<f64>,
    pub singular: bool,
}

/// `|c|^2` values at which one implied overlap is undefined.
pub const SINGULAR_OVERLAPS_SQR: [f64; 2] = [0.5, 0.75];

/// Scans `|c| = i / resolution` for `i = 0..=resolution`, with the two
/// singular magnitudes `sqrt(1/2)` and `sqrt(3/4)` inserted so they are
/// always reported.
pub fn consistency_scan(resolution: usize) -> Result<Vec<ScanPoint>> {
    if resolution < 10 {
        return Err(Error::Precondition(format!(
            "scan resolution must be at least 10, got {resolution}"
        )));
    }
    let mut grid: Vec<f64> = (0..=resolution)
        .map(|i| i as f64 / resolution as f64)
        .collect();
    grid.extend(SINGULAR_OVERLAPS_SQR.iter().map(|x| x.sqrt()));
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    grid.into_iter()
        .map(|c_abs| {
            let k = implied_control_overlaps(Complex64::new(c_abs, 0.0))?;
            Ok(ScanPoint {
                c_abs,
                t1: k.t1.map(|t| t.re),
                t2: k.t2.map(|t| t.re),
                discrepancy: k.discrepancy,
                singular: k.is_singular(),
            })
        })
        .collect()
}

/// Magnitudes at which both equations hold to within `tol`.
pub fn consistent_overlaps(scan: &[ScanPoint], tol: f64) -> Vec<f64> {
    scan.iter()
        .filter(|p| p.discrepancy.is_some_and(|d| d < tol))
        .map(|p| p.c_abs)
        .collect()
}

const SCAN_COLUMNS: [&str; 5] = ["c_abs", "t1", "t2", "discrepancy", "singular"];

pub fn write_scan_csv<W: Write>(scan: &[ScanPoint], writer: W) -> Result<()> {
    let rows = scan.iter().map(|p| {
        vec![
            format_float(p.c_abs),
            format_opt_float(p.t1),
            format_opt_float(p.t2),
            format_opt_float(p.discrepancy),
            p.singular.to_string(),
        ]
    });
    write_table(writer, &SCAN_COLUMNS, rows)
}

pub fn read_scan_csv<R: Read>(reader: R) -> Result<Vec<ScanPoint>> {
    let table = Table::read(reader, &SCAN_COLUMNS)?;
    table
        .rows()
        .map(|row| {
            Ok(ScanPoint {
                c_abs: row.f64("c_abs")?,
                t1: row.opt_f64("t1")?,
                t2: row.opt_f64("t2")?,
                discrepancy: row.opt_f64("discrepancy")?,
                singular: row.flag("singular")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn identical_controls_are_consistent() {
        let k = implied_control_overlaps(real(1.0)).unwrap();
        assert_eq!(k.t1, Some(real(1.0)));
        assert_eq!(k.t2, Some(real(1.0)));
        assert_eq!(k.discrepancy, Some(0.0));
        let phase = Complex64::from_polar(1.0, 0.4);
        let k = implied_control_overlaps(phase).unwrap();
        assert!(k.discrepancy.unwrap() < 1e-14);
    }

    #[test]
    fn orthogonal_controls_are_consistent() {
        let k = implied_control_overlaps(real(0.0)).unwrap();
        assert_eq!(k.t1.unwrap().norm(), 0.0);
        assert_eq!(k.t2.unwrap().norm(), 0.0);
        assert_eq!(k.discrepancy, Some(0.0));
    }

    #[test]
    fn singular_denominators_are_flagged() {
        let k = implied_control_overlaps(real(0.5f64.sqrt())).unwrap();
        assert!(k.t1.is_none());
        assert!((k.t2.unwrap() - real(-(0.5f64.sqrt()))).norm() < 1e-12);
        assert!(k.discrepancy.is_none() && k.is_singular());
        let k = implied_control_overlaps(real(0.75f64.sqrt())).unwrap();
        assert!(k.t2.is_none() && k.t1.is_some());
    }

    #[test]
    fn generic_overlap_is_inconsistent() {
        let k = implied_control_overlaps(real(0.9)).unwrap();
        // |0.9/0.62 - 0.9/0.24|
        let expected = (0.9 / 0.62 - 0.9 / 0.24f64).abs();
        assert!((k.discrepancy.unwrap() - expected).abs() < 1e-12);
        assert!(k.discrepancy.unwrap() > 0.1);
        assert!(implied_control_overlaps(real(1.01)).is_err());
    }

    #[test]
    fn scan_zero_set_and_singularities() {
        let scan = consistency_scan(100).unwrap();
        assert_eq!(scan.len(), 103);
        assert_eq!(consistent_overlaps(&scan, 1e-9), vec![0.0, 1.0]);
        let singular: Vec<f64> = scan.iter().filter(|p| p.singular).map(|p| p.c_abs).collect();
        assert_eq!(singular, vec![0.5f64.sqrt(), 0.75f64.sqrt()]);
        assert!(consistency_scan(9).is_err());
    }

    #[test]
    fn scan_csv_round_trip() {
        let scan = consistency_scan(10).unwrap();
        let mut buf = Vec::new();
        write_scan_csv(&scan, &mut buf).unwrap();
        assert_eq!(read_scan_csv(buf.as_slice()).unwrap(), scan);
    }
}
