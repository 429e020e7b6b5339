//! Modified search with an imperfect copy of the current state.
//!
//! The reflection axis at each step is `sqrt(F) psi + sqrt(1-F) xi` with
//! `xi` a uniformly random unit vector orthogonal to `psi`, redrawn every
//! step and trial. This pure-state surrogate has squared overlap exactly
//! `F` with the ideal axis. It is a model choice: an approximate cloner
//! really outputs a mixed state.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::clone_quality;
use crate::error::{Error, Result};
use crate::modified::{modified_step, optimal_step, predicted_angle};
use crate::standard::{record, theta, uniform_for};
use crate::state::{apply_oracle, reflect_about, SearchProblem, StateVector};
use crate::trace::{Algorithm, AxisSource, RunTrace, TraceEntry};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradedConfig {
    pub trials: usize,
    pub seed: u64,
    /// Squared overlap of the axis with the current state. Defaults to the
    /// two-copy universal cloner fidelity `F(N)`.
    pub clone_fidelity: Option<f64>,
    /// Defaults to the ideal modified run's best step.
    pub max_steps: Option<usize>,
}

impl DegradedConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        DegradedConfig {
            trials,
            seed,
            clone_fidelity: None,
            max_steps: None,
        }
    }
}

fn perturbed_axis(state: &StateVector, fidelity: f64, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    let dim = state.dim();
    if dim < 2 {
        return Ok(state.clone());
    }
    let xi = loop {
        let raw = StateVector::random(dim, rng)?;
        let overlap = state.inner(&raw)?;
        let orth: Vec<Complex64> = raw
            .amplitudes()
            .iter()
            .zip(state.amplitudes())
            .map(|(r, s)| r - overlap * s)
            .collect();
        // Re-draw on the measure-zero event that raw is parallel to state.
        if let Ok(xi) = StateVector::normalized(orth) {
            if xi.norm_sqr() > 0.5 {
                break xi;
            }
        }
    };
    let (keep, mix) = (fidelity.sqrt(), (1.0 - fidelity).sqrt());
    let amplitudes = state
        .amplitudes()
        .iter()
        .zip(xi.amplitudes())
        .map(|(s, x)| s * keep + x * mix)
        .collect();
    StateVector::normalized(amplitudes)
}

fn run_trial(
    problem: &SearchProblem,
    steps: usize,
    fidelity: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<TraceEntry>> {
    let theta = theta(problem);
    let mut state = uniform_for(problem);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(record(problem, &state, 0, predicted_angle(theta, 0))?);
    for l in 1..=steps {
        state = if fidelity >= 1.0 {
            modified_step(&state, problem)?
        } else {
            let axis = perturbed_axis(&state, fidelity, rng)?;
            reflect_about(&axis, &apply_oracle(problem, &state)?)?
        };
        out.push(record(problem, &state, l, predicted_angle(theta, l))?);
    }
    Ok(out)
}

#[derive(Default)]
struct Welford {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn std(&self) -> f64 {
        if self.count > 0.0 {
            (self.m2 / self.count).sqrt()
        } else {
            0.0
        }
    }
}

/// Monte-Carlo modified search with an approximate-clone reflection axis.
///
/// Each trial uses its own ChaCha8 stream `(seed, trial)`. Entries report
/// the mean over trials of the in-plane angle and of the success
/// probability, plus the population standard deviation of the latter.
/// With `clone_fidelity = 1` every trial equals [`crate::run_modified`]
/// bit for bit.
pub fn run_degraded_modified(problem: &SearchProblem, config: &DegradedConfig) -> Result<RunTrace> {
    if config.trials == 0 {
        return Err(Error::Precondition("trials must be >= 1".into()));
    }
    let fidelity = match config.clone_fidelity {
        Some(f) => f,
        None => clone_quality(problem.dim())?.fidelity,
    };
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Precondition(format!("clone fidelity {fidelity} outside [0, 1]")));
    }
    let steps = config.max_steps.unwrap_or_else(|| optimal_step(problem));

    let trials: Vec<Vec<TraceEntry>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(t as u64);
            run_trial(problem, steps, fidelity, &mut rng)
        })
        .collect::<Result<_>>()?;

    let mut trace = RunTrace::new(Algorithm::Degraded, problem, theta(problem), AxisSource::ApproximateClone);
    trace.clone_fidelity = Some(fidelity);
    trace.trials = Some(config.trials);
    trace.seed = Some(config.seed);
    for step in 0..=steps {
        let mut angle = Welford::default();
        let mut prob = Welford::default();
        for trial in &trials {
            angle.push(trial[step].measured_angle);
            prob.push(trial[step].success_prob);
        }
        trace.entries.push(TraceEntry {
            step,
            predicted_angle: trials[0][step].predicted_angle,
            measured_angle: angle.mean,
            success_prob: prob.mean,
            success_prob_std: Some(prob.std()),
        });
    }
    Ok(trace)
}
