//! Searching the unitary group for a machine that reflects a target about
//! an unknown control state.
//!
//! The machine acts on `control ⊗ target`, both of dimension `d`. Its
//! quality on a sample `(chi, phi)` is the fidelity of the reduced target
//! state with `2<chi|phi>|chi> - |phi>`; the control output is traced out
//! and left unconstrained. The residual is one minus the mean fidelity.
//!
//! Optimization is Riemannian gradient ascent on the mean fidelity:
//! `U <- U exp(t A)` with `A` anti-Hermitian, Armijo backtracking on `t`,
//! and a polar re-projection after each accepted step.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{reflect_about, StateVector};

/// Max-entry tolerance on `U^dagger U - I`.
pub const UNITARITY_TOLERANCE: f64 = 1e-8;

type CMatrix = DMatrix<Complex64>;
type CVector = DVector<Complex64>;

struct Sample {
    /// `chi ⊗ phi`.
    input: CVector,
    /// Desired target output `2<chi|phi>chi - phi`.
    reflected: CVector,
}

/// Controls and targets whose every pairing is a training sample.
#[derive(Debug, Clone)]
pub struct ReflectionMachineProblem {
    d: usize,
    controls: Vec<StateVector>,
    targets: Vec<StateVector>,
}

impl ReflectionMachineProblem {
    pub fn new(d: usize, controls: Vec<StateVector>, targets: Vec<StateVector>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Precondition(format!("machine dimension must be >= 2, got {d}")));
        }
        if controls.is_empty() || targets.is_empty() {
            return Err(Error::Precondition("need at least one control and one target".into()));
        }
        for s in controls.iter().chain(&targets) {
            if s.dim() != d {
                return Err(Error::Shape {
                    expected: d,
                    actual: s.dim(),
                });
            }
        }
        Ok(ReflectionMachineProblem {
            d,
            controls,
            targets,
        })
    }

    /// A single generic (non-basis) control state.
    pub fn single_control(d: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); d];
        for (k, a) in amps.iter_mut().enumerate() {
            *a = Complex64::from_polar(1.0 / (k as f64 + 1.0), 0.7 * k as f64);
        }
        Self::new(d, vec![StateVector::normalized(amps)?], spanning_targets(d)?)
    }

    /// The first two basis states as controls.
    pub fn orthogonal_controls(d: usize) -> Result<Self> {
        let controls = vec![StateVector::basis(d, 0)?, StateVector::basis(d, 1)?];
        Self::new(d, controls, spanning_targets(d)?)
    }

    /// Controls `|0>` and `c|0> + sqrt(1 - c^2)|1>`, so `|<chi'|chi>| = c`.
    pub fn with_overlap(d: usize, c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::Precondition(format!("overlap {c} outside [0, 1]")));
        }
        let mut second = vec![0.0; d];
        second[0] = c;
        second[1] = (1.0 - c * c).sqrt();
        let controls = vec![StateVector::basis(d, 0)?, StateVector::from_real(&second)?];
        Self::new(d, controls, spanning_targets(d)?)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn controls(&self) -> &[StateVector] {
        &self.controls
    }

    pub fn targets(&self) -> &[StateVector] {
        &self.targets
    }

    pub fn sample_count(&self) -> usize {
        self.controls.len() * self.targets.len()
    }

    /// `|<chi_j|chi_i>|` for every pair `i < j` of controls.
    pub fn control_overlaps(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (i, a) in self.controls.iter().enumerate() {
            for b in &self.controls[i + 1..] {
                out.push(a.inner(b).map(|c| c.norm()).unwrap_or(f64::NAN));
            }
        }
        out
    }

    fn samples(&self) -> Result<Vec<Sample>> {
        let mut out = Vec::with_capacity(self.sample_count());
        for chi in &self.controls {
            for phi in &self.targets {
                let reflected = reflect_about(chi, phi)?;
                // A reflection of a unit vector has unit norm.
                debug_assert!(reflected.is_normalized(1e-10));
                out.push(Sample {
                    input: kron(chi.amplitudes(), phi.amplitudes()),
                    reflected: CVector::from_column_slice(reflected.amplitudes()),
                });
            }
        }
        Ok(out)
    }
}

/// Basis states plus `(e_j + e_k)/sqrt2` and `(e_j + i e_k)/sqrt2` for
/// `j < k`: an informationally complete target set.
pub fn spanning_targets(d: usize) -> Result<Vec<StateVector>> {
    let mut out = Vec::with_capacity(d * d);
    for j in 0..d {
        out.push(StateVector::basis(d, j)?);
    }
    for j in 0..d {
        for k in j + 1..d {
            for phase in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                let mut amps = vec![Complex64::new(0.0, 0.0); d];
                amps[j] = Complex64::new(1.0, 0.0);
                amps[k] = phase;
                out.push(StateVector::normalized(amps)?);
            }
        }
    }
    Ok(out)
}

fn kron(a: &[Complex64], b: &[Complex64]) -> CVector {
    CVector::from_iterator(
        a.len() * b.len(),
        a.iter().flat_map(|x| b.iter().map(move |y| x * y)),
    )
}

/// Largest entry of `|U^dagger U - I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

fn check_operator(u: &CMatrix, d: usize) -> Result<()> {
    if u.nrows() != d * d || u.ncols() != d * d {
        return Err(Error::Shape {
            expected: d * d,
            actual: u.nrows().max(u.ncols()),
        });
    }
    let defect = unitarity_defect(u);
    if defect > UNITARITY_TOLERANCE {
        return Err(Error::Precondition(format!(
            "operator is not unitary: max |U'U - I| = {defect:e}"
        )));
    }
    Ok(())
}

/// `sum_i |<i, r| psi>|^2` and the projected vector `(I ⊗ |r><r|) psi`.
fn target_fidelity(psi: &CVector, r: &CVector, d: usize) -> (f64, CVector) {
    let mut projected = CVector::zeros(d * d);
    let mut fidelity = 0.0;
    for i in 0..d {
        let block = psi.rows(i * d, d);
        let amp = r.dotc(&block);
        fidelity += amp.norm_sqr();
        projected.rows_mut(i * d, d).copy_from(&(r * amp));
    }
    (fidelity, projected)
}

fn mean_fidelity(u: &CMatrix, samples: &[Sample], d: usize) -> f64 {
    let total: f64 = samples
        .iter()
        .map(|s| target_fidelity(&(u * &s.input), &s.reflected, d).0)
        .sum();
    total / samples.len() as f64
}

/// Ascent direction of the mean fidelity at `U` in the left-invariant
/// frame: `A = mean_s (w v^dagger - v w^dagger)`, `w = U^dagger P_r U v`.
fn fidelity_gradient(u: &CMatrix, samples: &[Sample], d: usize) -> (f64, CMatrix) {
    let dim = d * d;
    let mut grad = CMatrix::zeros(dim, dim);
    let mut total = 0.0;
    let u_adj = u.adjoint();
    for s in samples {
        let (f, projected) = target_fidelity(&(u * &s.input), &s.reflected, d);
        total += f;
        let w = &u_adj * projected;
        grad += &w * s.input.adjoint() - &s.input * w.adjoint();
    }
    let scale = 1.0 / samples.len() as f64;
    (total * scale, grad * Complex64::new(scale, 0.0))
}

/// `1 - mean fidelity` of `u` over every control/target pairing.
pub fn reflection_residual(u: &CMatrix, problem: &ReflectionMachineProblem) -> Result<f64> {
    check_operator(u, problem.d)?;
    let samples = problem.samples()?;
    Ok((1.0 - mean_fidelity(u, &samples, problem.d)).clamp(0.0, 1.0))
}

/// `exp(A)` for anti-Hermitian `A`, via the eigendecomposition of the
/// Hermitian `iA`.
fn expm_anti_hermitian(a: &CMatrix) -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    let mut h = a * i;
    // Symmetrize away rounding before the Hermitian solver.
    h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let phases = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -l)),
    );
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Nearest unitary in Frobenius norm (polar factor).
fn project_unitary(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => u * v_t,
        _ => m.clone(),
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal pushed into `Q`.
pub fn haar_unitary(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let z = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    project_unitary(&q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iterations: usize,
    /// Stop when the Frobenius norm of the gradient drops below this.
    pub gradient_tolerance: f64,
    /// Stop when the residual drops below this.
    pub residual_floor: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            starts: 20,
            max_iterations: 2000,
            gradient_tolerance: 1e-9,
            residual_floor: 1e-13,
            seed: 0x5EED,
        }
    }
}

/// Result of one local optimization.
#[derive(Debug, Clone)]
pub struct StartOutcome {
    pub start: usize,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub unitary: CMatrix,
}

#[derive(Debug, Clone)]
pub struct MachineOptimum {
    pub d: usize,
    pub control_overlaps: Vec<f64>,
    pub best_residual: f64,
    pub best_start: usize,
    pub unitary: CMatrix,
    pub converged: bool,
    pub starts: usize,
    pub total_iterations: usize,
    pub seed: u64,
    /// Best residual after each restart, in start order.
    pub record: Vec<f64>,
    pub outcomes: Vec<StartOutcome>,
}

/// JSON summary written by the harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineSummary {
    pub d: usize,
    pub control_overlaps: Vec<f64>,
    pub best_residual: f64,
    pub converged: bool,
    pub starts: usize,
    pub seed: u64,
}

impl MachineOptimum {
    pub fn summary(&self) -> MachineSummary {
        MachineSummary {
            d: self.d,
            control_overlaps: self.control_overlaps.clone(),
            best_residual: self.best_residual,
            converged: self.converged,
            starts: self.starts,
            seed: self.seed,
        }
    }
}

fn start_rng(seed: u64, start: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    rng
}

fn local_search(
    start: usize,
    mut u: CMatrix,
    samples: &[Sample],
    d: usize,
    config: &OptimizerConfig,
) -> StartOutcome {
    const ARMIJO: f64 = 1e-4;
    const MIN_STEP: f64 = 1e-14;

    let mut step = 1.0;
    let mut iterations = 0;
    let mut converged = false;
    let (mut fidelity, mut grad) = fidelity_gradient(&u, samples, d);
    while iterations < config.max_iterations {
        let grad_sqr = grad.norm_squared();
        if 1.0 - fidelity <= config.residual_floor || grad_sqr.sqrt() <= config.gradient_tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let mut t = step;
        let accepted = loop {
            let candidate = project_unitary(&(&u * expm_anti_hermitian(&(&grad * Complex64::new(t, 0.0)))));
            let f = mean_fidelity(&candidate, samples, d);
            if f >= fidelity + ARMIJO * t * grad_sqr {
                break Some(candidate);
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some(next) = accepted else {
            // No ascent possible at machine precision: a stationary point.
            converged = true;
            break;
        };
        u = next;
        step = (2.0 * t).min(1e3);
        (fidelity, grad) = fidelity_gradient(&u, samples, d);
    }
    if !converged {
        let grad_norm = grad.norm();
        converged = 1.0 - fidelity <= config.residual_floor || grad_norm <= config.gradient_tolerance;
    }
    StartOutcome {
        start,
        residual: (1.0 - fidelity).clamp(0.0, 1.0),
        iterations,
        converged,
        unitary: u,
    }
}

/// Multi-start search for the unitary minimizing [`reflection_residual`].
///
/// Start `k` draws a Haar-random initial point from a ChaCha8 stream
/// `(seed, k)`, so the result is independent of thread scheduling.
pub fn optimize_reflection_machine(
    problem: &ReflectionMachineProblem,
    config: &OptimizerConfig,
) -> Result<MachineOptimum> {
    if config.starts == 0 {
        return Err(Error::Precondition("need at least one start".into()));
    }
    let d = problem.d;
    let samples = problem.samples()?;
    let outcomes: Vec<StartOutcome> = (0..config.starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = start_rng(config.seed, k);
            let u0 = haar_unitary(d * d, &mut rng);
            local_search(k, u0, &samples, d, config)
        })
        .collect();

    let mut record = Vec::with_capacity(outcomes.len());
    let mut best = 0;
    for (k, o) in outcomes.iter().enumerate() {
        if o.residual < outcomes[best].residual {
            best = k;
        }
        record.push(outcomes[best].residual);
    }
    let winner = &outcomes[best];
    Ok(MachineOptimum {
        d,
        control_overlaps: problem.control_overlaps(),
        best_residual: winner.residual,
        best_start: best,
        unitary: winner.unitary.clone(),
        converged: winner.converged,
        starts: config.starts,
        total_iterations: outcomes.iter().map(|o| o.iterations).sum(),
        seed: config.seed,
        record,
        outcomes,
    })
}

/// `2|chi><chi| - I` as a dense matrix.
pub fn reflection_matrix(chi: &StateVector) -> CMatrix {
    let v = CVector::from_column_slice(chi.amplitudes());
    &v * v.adjoint() * Complex64::new(2.0, 0.0) - CMatrix::identity(chi.dim(), chi.dim())
}

/// `sum_i |e_i><e_i| ⊗ (2|e_i><e_i| - I)`: reflects the target about
/// whichever basis state the control is in.
pub fn controlled_basis_reflection(d: usize) -> CMatrix {
    let mut u = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        let proj = CMatrix::from_fn(d, d, |a, b| {
            if a == i && b == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let e_i = StateVector::basis(d, i).expect("index in range");
        u += proj.kronecker(&reflection_matrix(&e_i));
    }
    u
}
