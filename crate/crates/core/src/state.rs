//! Dense state vectors over the index register, the phase-flip oracle and
//! reflections about arbitrary states.
//!
//! All search dynamics live in the plane spanned by
//! `|alpha> = (N-M)^{-1/2} sum_{x unmarked} |x>` and
//! `|beta> = M^{-1/2} sum_{x marked} |x>`; [`decompose_in_plane`] recovers
//! the in-plane angle of a state measured from `|alpha>` towards `|beta>`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|<psi|psi> - 1|` for states built by this crate.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance on the norm of a reflection axis.
pub const AXIS_NORM_TOLERANCE: f64 = 1e-8;

/// Size caps for dense objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest register accepted by state constructors (2^n amplitudes).
    pub max_qubits: u32,
    /// Largest dimension of an explicitly built dense matrix.
    pub max_dense_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_qubits: 24,
            max_dense_dim: 1 << 12,
        }
    }
}

impl Limits {
    pub fn check_qubits(&self, n: u32) -> Result<usize> {
        if n < 1 || n > self.max_qubits {
            return Err(Error::Capacity {
                what: "qubits",
                requested: n as usize,
                min: 1,
                max: self.max_qubits as usize,
            });
        }
        Ok(1usize << n)
    }

    pub fn check_dense_dim(&self, dim: usize, min: usize) -> Result<()> {
        if dim < min || dim > self.max_dense_dim {
            return Err(Error::Capacity {
                what: "dense matrix dimension",
                requested: dim,
                min,
                max: self.max_dense_dim,
            });
        }
        Ok(())
    }
}

/// A pure state: `dim` complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes, rejecting an empty vector or a norm off by more
    /// than [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_raw(amplitudes)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Precondition(format!(
                "state is not normalized: <psi|psi> = {norm_sqr}"
            )));
        }
        Ok(state)
    }

    /// Scales the amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::from_raw(amplitudes)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Precondition(format!(
                "cannot normalize vector of norm {norm}"
            )));
        }
        let inv = 1.0 / norm;
        state.amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(state)
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    fn from_raw(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Capacity {
                what: "state dimension",
                requested: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        Ok(StateVector { amplitudes })
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::Precondition(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::from_raw(amplitudes)
    }

    /// Haar-random state (normalized complex Gaussian vector).
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        let amplitudes = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect();
        Self::normalized(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        inner_product(self, other)
    }

    /// Multiplies every amplitude by `phase` (expected to have unit modulus).
    pub fn with_global_phase(mut self, phase: Complex64) -> Self {
        self.amplitudes.iter_mut().for_each(|a| *a *= phase);
        self
    }

    /// Probability mass on the marked indices of `problem`.
    pub fn success_probability(&self, problem: &SearchProblem) -> f64 {
        problem
            .marked()
            .iter()
            .map(|&x| self.amplitudes[x].norm_sqr())
            .sum()
    }

    pub(crate) fn from_vec_unchecked(amplitudes: Vec<Complex64>) -> Self {
        debug_assert!(!amplitudes.is_empty());
        StateVector { amplitudes }
    }
}

/// Unstructured search over `N = 2^n` indices with a set of marked indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    n: u32,
    marked: Vec<usize>,
}

impl SearchProblem {
    pub fn new(n: u32, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::with_limits(n, marked, &Limits::default())
    }

    pub fn with_limits(
        n: u32,
        marked: impl IntoIterator<Item = usize>,
        limits: &Limits,
    ) -> Result<Self> {
        let dim = limits.check_qubits(n)?;
        let mut marked: Vec<usize> = marked.into_iter().collect();
        marked.sort_unstable();
        if marked.is_empty() {
            return Err(Error::InvalidProblem("no marked index".into()));
        }
        if let Some(&x) = marked.iter().find(|&&x| x >= dim) {
            return Err(Error::InvalidProblem(format!(
                "marked index {x} out of range [0, {dim})"
            )));
        }
        if let Some(w) = marked.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidProblem(format!(
                "marked index {} listed twice",
                w[0]
            )));
        }
        Ok(SearchProblem { n, marked })
    }

    /// `m` distinct marked indices drawn uniformly.
    pub fn random<R: Rng + ?Sized>(n: u32, m: usize, rng: &mut R) -> Result<Self> {
        Self::random_with_limits(n, m, rng, &Limits::default())
    }

    pub fn random_with_limits<R: Rng + ?Sized>(
        n: u32,
        m: usize,
        rng: &mut R,
        limits: &Limits,
    ) -> Result<Self> {
        let dim = limits.check_qubits(n)?;
        if m == 0 || m > dim {
            return Err(Error::InvalidProblem(format!(
                "marked count {m} outside [1, {dim}]"
            )));
        }
        let marked = rand::seq::index::sample(rng, dim, m).into_vec();
        Self::with_limits(n, marked, limits)
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    /// `N = 2^n`.
    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    /// Sorted marked indices.
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    /// `M`.
    pub fn marked_count(&self) -> usize {
        self.marked.len()
    }

    /// The oracle predicate `f(x)`.
    pub fn is_marked(&self, x: usize) -> bool {
        self.marked.binary_search(&x).is_ok()
    }

    pub(crate) fn check_dim(&self, state: &StateVector) -> Result<()> {
        if state.dim() != self.dim() {
            return Err(Error::Shape {
                expected: self.dim(),
                actual: state.dim(),
            });
        }
        Ok(())
    }
}

/// Position of a state relative to the `(alpha, beta)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneCoordinates {
    /// Angle from `|alpha>` towards `|beta>`, in `(-pi, pi]`.
    pub angle: f64,
    /// Norm of the component orthogonal to the plane.
    pub residual: f64,
    /// `<alpha|state>` before phase alignment.
    pub alpha: Complex64,
    /// `<beta|state>` before phase alignment.
    pub beta: Complex64,
}

/// `|psi> = N^{-1/2} sum_x |x>` over `n` qubits.
pub fn uniform_superposition(n: u32) -> Result<StateVector> {
    uniform_superposition_with_limits(n, &Limits::default())
}

pub fn uniform_superposition_with_limits(n: u32, limits: &Limits) -> Result<StateVector> {
    let dim = limits.check_qubits(n)?;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    Ok(StateVector::from_vec_unchecked(vec![amp; dim]))
}

/// `sum_x conj(a_x) b_x`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::Shape {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Mirror `target` about `axis`: `2<axis|target>|axis> - |target>`.
pub fn reflect_about(axis: &StateVector, target: &StateVector) -> Result<StateVector> {
    let axis_norm = axis.norm_sqr().sqrt();
    if (axis_norm - 1.0).abs() > AXIS_NORM_TOLERANCE {
        return Err(Error::Precondition(format!(
            "reflection axis must be unit norm, got {axis_norm}"
        )));
    }
    let overlap = 2.0 * inner_product(axis, target)?;
    let amplitudes = axis
        .amplitudes
        .iter()
        .zip(&target.amplitudes)
        .map(|(a, t)| overlap * a - t)
        .collect();
    Ok(StateVector::from_vec_unchecked(amplitudes))
}

/// Phase-flip oracle: `|x> -> (-1)^{f(x)} |x>`.
pub fn apply_oracle(problem: &SearchProblem, state: &StateVector) -> Result<StateVector> {
    problem.check_dim(state)?;
    let mut out = state.clone();
    for &x in problem.marked() {
        out.amplitudes[x] = -out.amplitudes[x];
    }
    Ok(out)
}

/// Projects `state` onto the `(alpha, beta)` plane.
///
/// The global phase is fixed modulo pi: states whose plane components are
/// real up to a common phase `e^{i g}` are rotated by `e^{-i g}` with
/// `g` in `(-pi/2, pi/2]`, so real states keep their sign and the angle
/// ranges over `(-pi, pi]`. When no such phase exists the phase of the
/// larger component is removed.
pub fn decompose_in_plane(problem: &SearchProblem, state: &StateVector) -> Result<PlaneCoordinates> {
    if problem.marked_count() == problem.dim() {
        return Err(Error::DegeneratePlane {
            marked: problem.marked_count(),
            dim: problem.dim(),
        });
    }
    plane_coordinates(problem, state)
}

/// Like [`decompose_in_plane`] but accepts `M = N`, in which case the
/// `|alpha>` component is taken to be zero.
pub(crate) fn plane_coordinates(
    problem: &SearchProblem,
    state: &StateVector,
) -> Result<PlaneCoordinates> {
    problem.check_dim(state)?;
    let dim = problem.dim();
    let m = problem.marked_count();
    let amps = state.amplitudes();

    let mut sum_marked = Complex64::new(0.0, 0.0);
    for &x in problem.marked() {
        sum_marked += amps[x];
    }
    let sum_all: Complex64 = amps.iter().sum();
    let sum_unmarked = sum_all - sum_marked;

    let beta_amp = 1.0 / (m as f64).sqrt();
    let alpha_amp = if m < dim {
        1.0 / ((dim - m) as f64).sqrt()
    } else {
        0.0
    };
    let alpha = sum_unmarked * alpha_amp;
    let beta = sum_marked * beta_amp;

    let alpha_coeff = alpha * alpha_amp;
    let beta_coeff = beta * beta_amp;
    let mut residual_sqr = 0.0;
    let mut marked_iter = problem.marked().iter().peekable();
    for (x, a) in amps.iter().enumerate() {
        let coeff = if marked_iter.peek() == Some(&&x) {
            marked_iter.next();
            beta_coeff
        } else {
            alpha_coeff
        };
        residual_sqr += (a - coeff).norm_sqr();
    }

    let phase = alignment_phase(alpha, beta);
    let (a, b) = ((alpha * phase).re, (beta * phase).re);
    let angle = if a == 0.0 && b == 0.0 {
        0.0
    } else if a == 0.0 {
        FRAC_PI_2.copysign(b)
    } else {
        b.atan2(a)
    };

    Ok(PlaneCoordinates {
        angle,
        residual: residual_sqr.sqrt(),
        alpha,
        beta,
    })
}

fn alignment_phase(alpha: Complex64, beta: Complex64) -> Complex64 {
    let w = alpha * alpha + beta * beta;
    let scale = alpha.norm_sqr() + beta.norm_sqr();
    if scale == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if w.norm() > 1e-12 * scale {
        // w = e^{2ig} r^2 for a plane vector that is real up to phase.
        Complex64::from_polar(1.0, -0.5 * w.arg())
    } else {
        let dominant = if alpha.norm() >= beta.norm() { alpha } else { beta };
        Complex64::from_polar(1.0, -dominant.arg())
    }
}
