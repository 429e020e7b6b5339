//! Can the intermediate search states be cloned?
//!
//! With one marked item, every intermediate state has the form
//! `sin(phi)|beta> + cos(phi)|alpha>`. Letting the marked item range over
//! all `N` basis states gives `N` states; they can be cloned exactly with
//! nonzero probability iff they are linearly independent, i.e. iff the
//! matrix with `sin(phi)` on the diagonal and `cos(phi)/sqrt(N-1)`
//! elsewhere is nonsingular. For universal approximate cloning into two
//! copies, see [`clone_quality`].

mod degraded;
pub mod lu;

use std::f64::consts::FRAC_PI_2;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{format_float, write_table, Table};
use crate::state::Limits;

pub use degraded::{run_degraded_modified, DegradedConfig};
pub use lu::{lu_determinant, SignedLog};

/// `N` states `sin(phi)|x> + cos(phi)|alpha_x>`, one per marked index `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamilySpec {
    dim: usize,
    phi: f64,
}

impl StateFamilySpec {
    pub fn new(dim: usize, phi: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Precondition(format!("family dimension must be >= 2, got {dim}")));
        }
        if !(0.0..=FRAC_PI_2 + 1e-12).contains(&phi) {
            return Err(Error::Precondition(format!("phi = {phi} outside [0, pi/2]")));
        }
        Ok(StateFamilySpec { dim, phi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(diagonal, off-diagonal)` entries.
    pub fn entries(&self) -> (f64, f64) {
        // sin(pi/2 - phi) is exactly zero at phi = pi/2, unlike cos(phi).
        let off = (FRAC_PI_2 - self.phi).sin() / ((self.dim - 1) as f64).sqrt();
        (self.phi.sin(), off)
    }

    /// Row-major matrix whose column `x` is the state for marked index `x`.
    pub fn matrix(&self) -> Vec<f64> {
        let n = self.dim;
        let (diag, off) = self.entries();
        let mut m = vec![off; n * n];
        for i in 0..n {
            m[i * n + i] = diag;
        }
        m
    }
}

/// Determinant of the family matrix by LU with partial pivoting.
pub fn family_determinant_numeric(spec: &StateFamilySpec) -> Result<f64> {
    Ok(family_log_determinant_numeric(spec, &Limits::default())?.value())
}

pub fn family_log_determinant_numeric(spec: &StateFamilySpec, limits: &Limits) -> Result<SignedLog> {
    limits.check_dense_dim(spec.dim, 2)?;
    Ok(lu_determinant(spec.matrix(), spec.dim))
}

/// `(a - b)^{N-1} (a + (N-1) b)` with `a = sin(phi)`,
/// `b = cos(phi)/sqrt(N-1)`: the eigenvalues of `a I + b (J - I)` are
/// `a - b` (multiplicity `N - 1`) and `a + (N-1) b`.
pub fn family_determinant_closed(spec: &StateFamilySpec) -> f64 {
    family_log_determinant_closed(spec).value()
}

pub fn family_log_determinant_closed(spec: &StateFamilySpec) -> SignedLog {
    let (a, b) = spec.entries();
    let k = (spec.dim - 1) as f64;
    let small = a - b;
    let large = a + k * b;
    if small == 0.0 || large == 0.0 {
        return SignedLog::ZERO;
    }
    let mut sign = large.signum();
    if small < 0.0 && (spec.dim - 1) % 2 == 1 {
        sign = -sign;
    }
    SignedLog {
        value: small.powi((spec.dim - 1) as i32) * large,
        sign,
        log_abs: k * small.abs().ln() + large.abs().ln(),
    }
}

/// The unique zero of the determinant on `[0, pi/2]`:
/// `atan(1/sqrt(N-1)) = asin(1/sqrt(N))`, the initial Grover angle.
pub fn determinant_zero(dim: usize) -> f64 {
    (1.0 / ((dim - 1) as f64).sqrt()).atan()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeterminantMethod {
    ClosedForm,
    Lu,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeterminantRow {
    pub n: u32,
    pub phi: f64,
    pub det_signed: f64,
    pub det_abs: f64,
}

/// Determinant over `grid` equally spaced angles in `[0, pi/2]` (both
/// ends included) for each register size in `qubits`.
pub fn determinant_curve(
    qubits: &[u32],
    grid: usize,
    method: DeterminantMethod,
    limits: &Limits,
) -> Result<Vec<DeterminantRow>> {
    if grid < 50 {
        return Err(Error::Precondition(format!("grid must have at least 50 points, got {grid}")));
    }
    let mut rows = Vec::with_capacity(qubits.len() * grid);
    for &n in qubits {
        if n < 2 {
            return Err(Error::Capacity {
                what: "qubits",
                requested: n as usize,
                min: 2,
                max: limits.max_qubits as usize,
            });
        }
        let dim = limits.check_qubits(n)?;
        if method == DeterminantMethod::Lu {
            limits.check_dense_dim(dim, 2)?;
        }
        for i in 0..grid {
            let phi = if i + 1 == grid {
                FRAC_PI_2
            } else {
                i as f64 * FRAC_PI_2 / (grid - 1) as f64
            };
            let spec = StateFamilySpec::new(dim, phi)?;
            let det = match method {
                DeterminantMethod::ClosedForm => family_determinant_closed(&spec),
                DeterminantMethod::Lu => family_log_determinant_numeric(&spec, limits)?.value(),
            };
            rows.push(DeterminantRow {
                n,
                phi,
                det_signed: det,
                det_abs: det.abs(),
            });
        }
    }
    Ok(rows)
}

const DETERMINANT_COLUMNS: [&str; 4] = ["n", "phi", "det_signed", "det_abs"];

pub fn write_determinant_csv<W: Write>(rows: &[DeterminantRow], writer: W) -> Result<()> {
    let records = rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            format_float(r.phi),
            format_float(r.det_signed),
            format_float(r.det_abs),
        ]
    });
    write_table(writer, &DETERMINANT_COLUMNS, records)
}

pub fn read_determinant_csv<R: Read>(reader: R) -> Result<Vec<DeterminantRow>> {
    let table = Table::read(reader, &DETERMINANT_COLUMNS)?;
    table
        .rows()
        .map(|row| {
            Ok(DeterminantRow {
                n: row.parse("n")?,
                phi: row.f64("phi")?,
                det_signed: row.f64("det_signed")?,
                det_abs: row.f64("det_abs")?,
            })
        })
        .collect()
}

/// Scaling factor and single-copy fidelity of the optimal symmetric
/// universal `1 -> 2` cloner in dimension `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloneQuality {
    pub dim: usize,
    /// `(N + 2) / (2 (N + 1))`.
    pub scaling: f64,
    /// `(1 - s)/N + s = (N + 3) / (2 (N + 1))`.
    pub fidelity: f64,
}

pub fn clone_quality(dim: usize) -> Result<CloneQuality> {
    if dim < 2 {
        return Err(Error::Precondition(format!("cloner dimension must be >= 2, got {dim}")));
    }
    let n = dim as f64;
    Ok(CloneQuality {
        dim,
        scaling: (n + 2.0) / (2.0 * (n + 1.0)),
        fidelity: (n + 3.0) / (2.0 * (n + 1.0)),
    })
}

const FIDELITY_COLUMNS: [&str; 3] = ["dim", "scaling", "fidelity"];

pub fn write_fidelity_csv<W: Write>(rows: &[CloneQuality], writer: W) -> Result<()> {
    let records = rows
        .iter()
        .map(|q| vec![q.dim.to_string(), format_float(q.scaling), format_float(q.fidelity)]);
    write_table(writer, &FIDELITY_COLUMNS, records)
}

pub fn read_fidelity_csv<R: Read>(reader: R) -> Result<Vec<CloneQuality>> {
    let table = Table::read(reader, &FIDELITY_COLUMNS)?;
    table
        .rows()
        .map(|row| {
            Ok(CloneQuality {
                dim: row.parse("dim")?,
                scaling: row.f64("scaling")?,
                fidelity: row.f64("fidelity")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_endpoint() {
        for dim in [2, 3, 32, 128] {
            let spec = StateFamilySpec::new(dim, FRAC_PI_2).unwrap();
            assert!((family_determinant_numeric(&spec).unwrap() - 1.0).abs() < 1e-12);
            assert!((family_determinant_closed(&spec) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn vanishes_at_grover_start() {
        for dim in [4usize, 32, 512] {
            let phi = (1.0 / (dim as f64).sqrt()).asin();
            let spec = StateFamilySpec::new(dim, phi).unwrap();
            assert!(family_determinant_numeric(&spec).unwrap().abs() < 1e-10);
            assert!(family_determinant_closed(&spec).abs() < 1e-10);
            assert!((determinant_zero(dim) - phi).abs() < 1e-15);
        }
        let spec = StateFamilySpec::new(2, std::f64::consts::FRAC_PI_4).unwrap();
        assert!(family_determinant_numeric(&spec).unwrap().abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_lu_at_n5() {
        let spec = StateFamilySpec::new(32, 1.0).unwrap();
        let lu = family_log_determinant_numeric(&spec, &Limits::default()).unwrap();
        let closed = family_log_determinant_closed(&spec);
        assert!(lu.log_distance(&closed) < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(StateFamilySpec::new(1, 0.3).is_err());
        assert!(StateFamilySpec::new(4, 2.0).is_err());
        let big = StateFamilySpec::new(8192, 1.0).unwrap();
        assert!(matches!(family_determinant_numeric(&big), Err(Error::Capacity { .. })));
        assert!(determinant_curve(&[5], 10, DeterminantMethod::ClosedForm, &Limits::default()).is_err());
        assert!(determinant_curve(&[1], 60, DeterminantMethod::ClosedForm, &Limits::default()).is_err());
    }

    #[test]
    fn curve_shape() {
        let rows = determinant_curve(&[5, 7, 9], 200, DeterminantMethod::ClosedForm, &Limits::default()).unwrap();
        assert_eq!(rows.len(), 600);
        for n in [5, 7, 9] {
            let curve: Vec<_> = rows.iter().filter(|r| r.n == n).collect();
            let last = curve.last().unwrap();
            assert_eq!(last.phi, FRAC_PI_2);
            assert!((last.det_signed - 1.0).abs() < 1e-15);
        }
        let n9_small = rows.iter().filter(|r| r.n == 9 && r.phi < 1.0);
        assert!(n9_small.clone().all(|r| r.det_abs < 0.01));
        let near_half = StateFamilySpec::new(512, 0.5).unwrap();
        assert!(family_determinant_closed(&near_half).abs() < 1e-3);
    }

    #[test]
    fn determinant_csv_round_trip() {
        let rows = determinant_curve(&[3], 50, DeterminantMethod::Lu, &Limits::default()).unwrap();
        let mut buf = Vec::new();
        write_determinant_csv(&rows, &mut buf).unwrap();
        assert!(buf.starts_with(b"n,phi,det_signed,det_abs\n"));
        let back = read_determinant_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), rows.len());
        for (a, b) in back.iter().zip(&rows) {
            assert_eq!(a.det_signed.to_bits(), b.det_signed.to_bits());
            assert_eq!(a.phi.to_bits(), b.phi.to_bits());
        }
    }

    #[test]
    fn clone_quality_examples() {
        let q = clone_quality(2).unwrap();
        assert!((q.scaling - 2.0 / 3.0).abs() < 1e-15);
        assert!((q.fidelity - 5.0 / 6.0).abs() < 1e-15);
        let q = clone_quality(1_000_000).unwrap();
        assert!((q.fidelity - 0.500_000_999_999).abs() < 1e-12);
        assert!(clone_quality(1).is_err());
    }
}
