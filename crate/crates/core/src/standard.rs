//! Standard Grover search: `G = (2|psi><psi| - I) O` applied `k` times to
//! the uniform superposition rotates the state to angle `(2k+1) theta/2`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::state::{
    apply_oracle, plane_coordinates, reflect_about, SearchProblem, StateVector,
};
use crate::trace::{Algorithm, AxisSource, RunTrace, TraceEntry};

/// Rotation per Grover step, `theta = 2 asin(sqrt(M/N))`, in `(0, pi]`.
pub fn theta(problem: &SearchProblem) -> f64 {
    let ratio = problem.marked_count() as f64 / problem.dim() as f64;
    2.0 * ratio.sqrt().asin()
}

/// `ceil((pi/4) sqrt(N/M))`.
///
/// The looser form `ceil(pi / (2 theta))` coincides for small `theta`
/// and is not used.
pub fn iteration_bound(problem: &SearchProblem) -> usize {
    let ratio = problem.dim() as f64 / problem.marked_count() as f64;
    (PI / 4.0 * ratio.sqrt()).ceil() as usize
}

/// Closed-form success probability after `k` standard steps.
pub fn predicted_success(theta: f64, k: usize) -> f64 {
    predicted_angle(theta, k).sin().powi(2)
}

/// `(2k+1) theta / 2`.
pub fn predicted_angle(theta: f64, k: usize) -> f64 {
    (2 * k + 1) as f64 * theta / 2.0
}

/// The `k <= iteration_bound` maximizing the closed-form success
/// probability; the smallest such `k` on ties.
pub fn optimal_step(problem: &SearchProblem) -> usize {
    let theta = theta(problem);
    argmax_by(0..=iteration_bound(problem), |k| predicted_success(theta, k))
}

pub(crate) fn argmax_by(steps: impl Iterator<Item = usize>, f: impl Fn(usize) -> f64) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for k in steps {
        let v = f(k);
        if v > best.1 {
            best = (k, v);
        }
    }
    best.0
}

/// One Grover iteration: reflect `O|state>` about `initial`.
pub fn grover_step(
    state: &StateVector,
    problem: &SearchProblem,
    initial: &StateVector,
) -> Result<StateVector> {
    let flipped = apply_oracle(problem, state)?;
    reflect_about(initial, &flipped)
}

pub(crate) fn uniform_for(problem: &SearchProblem) -> StateVector {
    let dim = problem.dim();
    let amp = num_complex::Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    StateVector::from_vec_unchecked(vec![amp; dim])
}

pub(crate) fn record(
    problem: &SearchProblem,
    state: &StateVector,
    step: usize,
    predicted_angle: f64,
) -> Result<TraceEntry> {
    let coords = plane_coordinates(problem, state)?;
    Ok(TraceEntry {
        step,
        predicted_angle,
        measured_angle: coords.angle,
        success_prob: state.success_probability(problem),
        success_prob_std: None,
    })
}

/// Runs standard Grover from the uniform superposition for steps
/// `0..=K`, where `K = max_steps` or [`optimal_step`] by default.
pub fn run_standard(problem: &SearchProblem, max_steps: Option<usize>) -> Result<RunTrace> {
    let theta = theta(problem);
    let steps = max_steps.unwrap_or_else(|| optimal_step(problem));
    let initial = uniform_for(problem);

    let mut trace = RunTrace::new(Algorithm::Standard, problem, theta, AxisSource::InitialState);
    trace.entries.reserve(steps + 1);
    let mut state = initial.clone();
    trace.entries.push(record(problem, &state, 0, predicted_angle(theta, 0))?);
    for k in 1..=steps {
        state = grover_step(&state, problem, &initial)?;
        trace.entries.push(record(problem, &state, k, predicted_angle(theta, k))?);
    }
    Ok(trace)
}
