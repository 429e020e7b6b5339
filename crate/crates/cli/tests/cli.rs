use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grover_reflect::cloning::{read_determinant_csv, read_fidelity_csv, CloneQuality, DeterminantRow};
use grover_reflect::noreflect::machine::MachineSummary;
use grover_reflect::noreflect::{read_scan_csv, ScanPoint};
use grover_reflect::scaling::{read_scaling_csv, ScalingRow};
use grover_reflect::{read_trace_csv, RunTrace};
use grover_reflect_cli::{exit_code, parse_args, Command as Cmd, Format, OUTPUT_DIR_ENV};

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover-reflect"))
        .args(args)
        .current_dir(dir)
        .env_remove(OUTPUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn standard_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["standard", "--n", "10", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("best k=25 p=0.999"), "{}", stdout(&out));
    let entries = read_trace_csv(fs::File::open(dir.path().join("standard.csv")).unwrap()).unwrap();
    assert_eq!(entries.len(), 26);
    assert!(entries.len() <= 27);
}

#[test]
fn modified_exact_case_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["modified", "--n", "2", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("best l=1 p=1.000"), "{}", stdout(&out));
}

#[test]
fn every_output_round_trips_through_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |args: &[&str]| {
        let out = bin(d, args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    };
    run(&["standard", "--n", "7", "--M", "3", "-o", "s.csv"]);
    run(&["standard", "--n", "7", "--M", "3", "-o", "s.json", "--format", "json"]);
    run(&["degraded", "--n", "5", "--trials", "20", "-o", "d.csv"]);
    run(&["degraded", "--n", "5", "--trials", "20", "-o", "d.json", "--format", "json"]);
    run(&["noreflect-scan", "--grid", "100", "-o", "scan.csv"]);
    run(&["noreflect-scan", "--grid", "100", "-o", "scan.json", "--format", "json"]);
    run(&["noreflect-optimize", "--starts", "4", "-o", "opt.json"]);
    run(&["determinant", "--n-list", "3,4", "--grid", "60", "-o", "det.csv"]);
    run(&["determinant", "--n-list", "3,4", "--grid", "60", "-o", "det.json", "--format", "json"]);
    run(&["fidelity", "--dims", "2,3,1000000", "-o", "f.csv"]);
    run(&["fidelity", "--n-list", "1,2", "-o", "f.json", "--format", "json"]);
    run(&["compare-scaling", "--n-list", "2,3,4", "-o", "c.csv"]);
    run(&["compare-scaling", "--n-list", "2,3,4", "-o", "c.json", "--format", "json"]);

    let open = |name: &str| fs::File::open(d.join(name)).unwrap();
    let text = |name: &str| fs::read_to_string(d.join(name)).unwrap();

    let json = RunTrace::read_json(open("s.json")).unwrap();
    let csv = read_trace_csv(open("s.csv")).unwrap();
    assert_eq!(json.entries, csv);
    assert_eq!(json.marked_count, 3);
    let json = RunTrace::read_json(open("d.json")).unwrap();
    assert_eq!(json.entries, read_trace_csv(open("d.csv")).unwrap());
    assert!(json.entries.iter().all(|e| e.success_prob_std.is_some()));

    let scan_json: Vec<ScanPoint> = serde_json::from_str(&text("scan.json")).unwrap();
    assert_eq!(scan_json, read_scan_csv(open("scan.csv")).unwrap());

    let summary: MachineSummary = serde_json::from_str(&text("opt.json")).unwrap();
    assert_eq!(summary.starts, 4);
    assert_eq!(summary.d, 2);
    let keys: Vec<&str> = ["\"d\"", "\"control_overlaps\"", "\"best_residual\"", "\"converged\"", "\"starts\"", "\"seed\""]
        .into_iter()
        .collect();
    let body = text("opt.json");
    let positions: Vec<usize> = keys.iter().map(|k| body.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "key order {body}");

    let det_json: Vec<DeterminantRow> = serde_json::from_str(&text("det.json")).unwrap();
    assert_eq!(det_json, read_determinant_csv(open("det.csv")).unwrap());
    assert_eq!(det_json.len(), 120);

    let f: Vec<CloneQuality> = read_fidelity_csv(open("f.csv")).unwrap();
    assert_eq!(f.iter().map(|q| q.dim).collect::<Vec<_>>(), vec![2, 3, 1_000_000]);
    let f_json: Vec<CloneQuality> = serde_json::from_str(&text("f.json")).unwrap();
    assert_eq!(f_json.iter().map(|q| q.dim).collect::<Vec<_>>(), vec![2, 4]);

    let c_json: Vec<ScalingRow> = serde_json::from_str(&text("c.json")).unwrap();
    assert_eq!(c_json, read_scaling_csv(open("c.csv")).unwrap());

    let stray: Vec<_> = fs::read_dir(d)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.starts_with('.'))
        .collect();
    assert!(stray.is_empty(), "temporary files left: {stray:?}");
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let code = |args: &[&str]| bin(d, args).status.code();
    assert_eq!(code(&["fidelity", "--dims", "2"]), Some(exit_code::OK));
    assert_eq!(code(&["frobnicate"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["standard"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["modified", "--n", "10", "--max-steps", "8"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["standard", "--n", "4", "--M", "17"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["determinant", "--M", "2"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["determinant", "--grid", "10"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["noreflect-optimize", "--format", "csv"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["degraded", "--n", "3", "--clone-fidelity", "1.5"]), Some(exit_code::CONFIG));
    assert_eq!(code(&["standard", "--n", "25"]), Some(exit_code::CAPACITY));
    assert_eq!(code(&["standard", "--n", "0"]), Some(exit_code::CAPACITY));
    assert_eq!(code(&["determinant", "--n-list", "13", "--method", "lu"]), Some(exit_code::CAPACITY));

    let out = bin(d, &["modified", "--n", "10", "--max-steps", "8"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-steps"));
    assert!(!d.join("modified.csv").exists());
}

#[test]
fn non_convergence_has_its_own_exit_code() {
    // One iteration cannot converge from a random start; drive the library
    // directly since the iteration budget is not a CLI flag.
    use grover_reflect::noreflect::{optimize_reflection_machine, OptimizerConfig, ReflectionMachineProblem};
    let problem = ReflectionMachineProblem::with_overlap(2, 0.9).unwrap();
    let config = OptimizerConfig { starts: 2, max_iterations: 1, ..OptimizerConfig::default() };
    assert!(!optimize_reflection_machine(&problem, &config).unwrap().converged);
    let err = grover_reflect_cli::CliError::NotConverged { summary: String::new() };
    assert_eq!(err.exit_code(), exit_code::NOT_CONVERGED);
    let codes = [exit_code::OK, exit_code::RUNTIME, exit_code::CONFIG, exit_code::CAPACITY, exit_code::NOT_CONVERGED];
    for (i, a) in codes.iter().enumerate() {
        assert!(codes[i + 1..].iter().all(|b| a != b));
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_grover-reflect"))
        .args(["fidelity", "--dims", "2,4", "--format", "json"])
        .current_dir(dir.path())
        .env(OUTPUT_DIR_ENV, "results/run1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("results/run1/fidelity.json").exists());
}

#[test]
fn repeated_binary_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = bin(dir.path(), &["degraded", "--n", "6", "--M", "2", "--trials", "40", "--seed", "17", "-o", name]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.csv")).unwrap());
    let out = bin(dir.path(), &["degraded", "--n", "6", "--M", "2", "--trials", "40", "--seed", "18", "-o", "c.csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(a, fs::read(dir.path().join("c.csv")).unwrap());
}

#[test]
fn parse_args_fills_defaults() {
    let c = parse_args(["grover-reflect", "determinant"]).unwrap();
    assert_eq!(c.command, Cmd::Determinant);
    assert_eq!(c.n_list, Some(vec![5, 7, 9]));
    assert_eq!(c.grid, Some(200));
    assert_eq!(c.seed, grover_reflect_cli::DEFAULT_SEED);
    let c = parse_args(["grover-reflect", "noreflect-optimize"]).unwrap();
    assert_eq!(c.format, Format::Json);
    assert_eq!(c.overlap, Some(0.9));
    let c = parse_args(["grover-reflect", "standard", "--n", "4", "--M", "3", "--seed", "9"]).unwrap();
    assert_eq!((c.n, c.marked, c.seed), (Some(4), Some(3), 9));
    assert!(parse_args(["grover-reflect", "standard", "--n", "4", "--trials", "3"]).is_err());
}
