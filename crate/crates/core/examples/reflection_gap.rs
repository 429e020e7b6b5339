//! Dense multi-start search for the best reflection machine at a given
//! control overlap. Prints per-start residuals and the best value.
//!
//! cargo run --release -p grover-reflect --example reflection_gap -- 0.9 200

use grover_reflect::noreflect::{optimize_reflection_machine, OptimizerConfig, ReflectionMachineProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let overlap: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.9);
    let starts: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let max_iterations: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5000);

    let problem = ReflectionMachineProblem::with_overlap(2, overlap)?;
    let config = OptimizerConfig {
        starts,
        max_iterations,
        ..OptimizerConfig::default()
    };
    let result = optimize_reflection_machine(&problem, &config)?;
    let mut residuals: Vec<f64> = result.outcomes.iter().map(|o| o.residual).collect();
    residuals.sort_by(f64::total_cmp);
    let converged = result.outcomes.iter().filter(|o| o.converged).count();
    println!("overlap {overlap}: {starts} starts, {converged} converged");
    println!("lowest residuals: {:?}", &residuals[..residuals.len().min(10)]);
    println!("median residual: {:e}", residuals[residuals.len() / 2]);
    let mut iters: Vec<usize> = result.outcomes.iter().map(|o| o.iterations).collect();
    iters.sort();
    println!("iterations: min {} median {} max {}", iters[0], iters[iters.len() / 2], iters[iters.len() - 1]);
    println!("best residual {:.12e} (start {})", result.best_residual, result.best_start);
    Ok(())
}
