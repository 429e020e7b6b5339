//! Search that reflects about the *current* state instead of the initial
//! one: `K_{l+1} = (2|psi_l><psi_l| - I) O`.
//!
//! Each step maps in-plane angle `phi` to `3 phi`, so after `l` steps the
//! state sits at `3^l theta/2`. The reflection axis is a bitwise copy of
//! the simulated amplitudes. A physical register cannot be copied like
//! this; the copy is the hypothetical resource the speedup depends on.

use crate::error::Result;
use crate::standard::{argmax_by, record, theta, uniform_for};
use crate::state::{apply_oracle, reflect_about, SearchProblem, StateVector};
use crate::trace::{Algorithm, AxisSource, RunTrace};

/// One step: reflect `O|state>` about a copy of `state`.
///
/// The copy is renormalized before use. Reflecting a state about itself
/// amplifies any norm error of the axis by up to 5x per step, so an
/// unnormalized copy would make rounding grow geometrically.
pub fn modified_step(state: &StateVector, problem: &SearchProblem) -> Result<StateVector> {
    let flipped = apply_oracle(problem, state)?;
    let axis = StateVector::normalized(state.amplitudes().to_vec())?;
    reflect_about(&axis, &flipped)
}

/// `log_3(pi / theta)`; zero when every index is marked.
pub fn r_mod(problem: &SearchProblem) -> f64 {
    if problem.marked_count() == problem.dim() {
        return 0.0;
    }
    (std::f64::consts::PI / theta(problem)).log(3.0)
}

/// `3^l theta / 2`.
pub fn predicted_angle(theta: f64, l: usize) -> f64 {
    3f64.powi(l as i32) * theta / 2.0
}

pub fn predicted_success(theta: f64, l: usize) -> f64 {
    predicted_angle(theta, l).sin().powi(2)
}

/// `ceil(r_mod) + 1`: the last step considered by the default stopping rule.
pub fn search_horizon(problem: &SearchProblem) -> usize {
    r_mod(problem).ceil() as usize + 1
}

/// Largest `max_steps` accepted from user configuration, `ceil(r_mod) + 3`.
pub fn max_steps_cap(problem: &SearchProblem) -> usize {
    r_mod(problem).ceil() as usize + 3
}

/// The `l <= ceil(r_mod) + 1` maximizing `sin^2(3^l theta/2)`.
///
/// `3^l theta/2` rarely lands on `pi/2` exactly, so the best achievable
/// probability can be well below one.
pub fn optimal_step(problem: &SearchProblem) -> usize {
    let theta = theta(problem);
    argmax_by(0..=search_horizon(problem), |l| predicted_success(theta, l))
}

/// Runs the modified search for steps `0..=L`, `L = max_steps` or
/// [`optimal_step`] by default.
pub fn run_modified(problem: &SearchProblem, max_steps: Option<usize>) -> Result<RunTrace> {
    let theta = theta(problem);
    let steps = max_steps.unwrap_or_else(|| optimal_step(problem));

    let mut trace = RunTrace::new(Algorithm::Modified, problem, theta, AxisSource::ClassicalCopy);
    let mut state = uniform_for(problem);
    trace.entries.push(record(problem, &state, 0, predicted_angle(theta, 0))?);
    for l in 1..=steps {
        state = modified_step(&state, problem)?;
        trace.entries.push(record(problem, &state, l, predicted_angle(theta, l))?);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::grover_step;

    #[test]
    fn r_mod_examples() {
        assert!((r_mod(&SearchProblem::new(2, [0]).unwrap()) - 1.0).abs() < 1e-14);
        let p = SearchProblem::new(10, [0]).unwrap();
        assert!((r_mod(&p) - 3.565_548_856_284_818).abs() < 1e-12);
        assert_eq!(r_mod(&SearchProblem::new(1, [0, 1]).unwrap()), 0.0);
    }

    #[test]
    fn first_step_matches_grover() {
        let p = SearchProblem::new(6, [17, 40]).unwrap();
        let u = uniform_for(&p);
        let a = modified_step(&u, &p).unwrap();
        let b = grover_step(&u, &p, &u).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn four_items_in_one_step() {
        let p = SearchProblem::new(2, [1]).unwrap();
        let t = run_modified(&p, None).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert!((t.entries[1].success_prob - 1.0).abs() < 1e-12);
        assert_eq!(t.reflection_axis, AxisSource::ClassicalCopy);
    }

    #[test]
    fn overshoot_is_reported_not_hidden() {
        // N = 1024: 27 theta/2 falls short of pi/2, 81 theta/2 overshoots,
        // and 243 theta/2 wraps around to p ~ 0.93.
        let p = SearchProblem::new(10, [0]).unwrap();
        assert_eq!(search_horizon(&p), 5);
        let t = run_modified(&p, Some(3)).unwrap();
        assert!((t.entries[3].success_prob - 0.558_355_923_305_556).abs() < 1e-9);
        assert_eq!(optimal_step(&p), 5);
        let best = optimal_step(&p);
        let t = run_modified(&p, None).unwrap();
        assert_eq!(t.entries.len(), best + 1);
        assert!((t.last().unwrap().success_prob - predicted_success(theta(&p), best)).abs() < 1e-9);
    }
}
