//! State-vector simulation of Grover search and of a variant that reflects
//! about the current state, together with numerical checks on why that
//! variant cannot be built: no universal reflection machine exists, and
//! the intermediate states can only be cloned poorly.
//!
//! Modules:
//!
//! * [`state`]: dense states, the phase-flip oracle, reflections, and the
//!   `(alpha, beta)` plane decomposition.
//! * [`standard`]: Grover iteration, angle law and iteration bound.
//! * [`modified`]: reflection about the current state (angle tripling).
//! * [`noreflect`]: overlap-consistency scan and unitary-group search for a
//!   reflection machine.
//! * [`cloning`]: linear-independence determinant, cloner fidelity, and a
//!   Monte-Carlo model of modified search with approximate copies.
//! * [`scaling`]: step counts of both searches across register sizes.
//! * [`trace`]: run traces and their CSV/JSON encodings.

pub mod cloning;
pub mod error;
pub mod io;
pub mod modified;
pub mod noreflect;
pub mod scaling;
pub mod standard;
pub mod state;
pub mod trace;

pub use error::{Error, Result};
pub use modified::{modified_step, r_mod, run_modified};
pub use scaling::{compare_scaling, ScalingRow};
pub use standard::{grover_step, iteration_bound, run_standard, theta};
pub use state::{
    apply_oracle, decompose_in_plane, inner_product, reflect_about, uniform_superposition,
    Limits, PlaneCoordinates, SearchProblem, StateVector,
};
pub use trace::{read_trace_csv, Algorithm, AxisSource, RunTrace, TraceEntry};

pub use num_complex::Complex64;
