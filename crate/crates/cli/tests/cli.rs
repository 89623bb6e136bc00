//! End-to-end checks of the `curiosity` binary: flag surface, file formats,
//! and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use curiosity_core::env::{is_irreducible, EnvSpec};

fn curiosity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curiosity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn fig1_writes_csv_to_stdout() {
    let out = curiosity(&["fig1", "--samples", "5", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(
        lines.next().unwrap(),
        "t,cumulative_gain,sum_one_step_gains"
    );
    assert_eq!(text.lines().count(), 8); // metadata + header + t = 0..=5
}

#[test]
fn compare_rejects_oversized_trees_with_exit_code_3() {
    let out = curiosity(&["compare", "--tau", "30"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("resource budget"), "stderr: {err}");
}

#[test]
fn run_rejects_bad_discounts_with_exit_code_2() {
    let out = curiosity(&[
        "run",
        "--gamma",
        "1.5",
        "--steps",
        "1",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = curiosity(&["run", "--seeds", "bogus", "--out", "/tmp/unused"]);
    assert_eq!(out.status.code(), Some(2));
    let out = curiosity(&["run", "--algos", "random,warp", "--out", "/tmp/unused"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_step_random_run_writes_one_row() {
    let dir = tmp("single_step_run");
    let _ = std::fs::remove_dir_all(&dir);
    let out = curiosity(&[
        "run",
        "--algos",
        "random",
        "--steps",
        "1",
        "--seeds",
        "7",
        "--clique-size",
        "2",
        "--corridor",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let trajectory = std::fs::read_to_string(dir.join("random_seed7.csv")).unwrap();
    let lines: Vec<&str> = trajectory.lines().collect();
    assert_eq!(lines.len(), 3); // metadata + header + one step
    assert!(lines[0].starts_with("# {"));
    assert_eq!(
        lines[1],
        "t,state,action,next_state,realized_gain,cumulative_gain"
    );
    assert!(lines[2].starts_with("1,0,"));
    assert!(dir.join("summary.csv").exists());
    assert!(dir.join("aggregate.csv").exists());
}

#[test]
fn env_dump_round_trips_and_is_irreducible() {
    let out = curiosity(&[
        "env-dump",
        "--clique-size",
        "3",
        "--corridor",
        "4",
        "--seed",
        "11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let env = EnvSpec::from_text(&text).unwrap();
    assert_eq!(env.s_count(), 10);
    assert_eq!(env.a_count(), 2);
    assert!(is_irreducible(&env));

    let out = curiosity(&[
        "env-dump",
        "--random",
        "--states",
        "3",
        "--actions",
        "2",
        "--seed",
        "5",
    ]);
    let env = EnvSpec::from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(env.s_count(), 3);
    assert!(is_irreducible(&env));
}

#[test]
fn dumped_env_file_feeds_a_run() {
    let env_path = tmp("dumped_env.txt");
    let out = curiosity(&[
        "env-dump",
        "--clique-size",
        "2",
        "--corridor",
        "2",
        "--seed",
        "4",
        "--out",
        env_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dir = tmp("env_file_run");
    let _ = std::fs::remove_dir_all(&dir);
    let out = curiosity(&[
        "run",
        "--env-file",
        env_path.to_str().unwrap(),
        "--algos",
        "greedy,dp",
        "--steps",
        "20",
        "--seeds",
        "1,2",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = std::fs::read_to_string(dir.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 2 + 4); // metadata + header + 4 runs
}

#[test]
fn aggregate_is_the_exact_mean_of_per_seed_curves() {
    let dir = tmp("aggregate_check");
    let _ = std::fs::remove_dir_all(&dir);
    let out = curiosity(&[
        "run",
        "--algos",
        "random,greedy",
        "--steps",
        "15",
        "--seeds",
        "1,2,3",
        "--clique-size",
        "2",
        "--corridor",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let column = |name: &str, seed: u64| -> Vec<f64> {
        std::fs::read_to_string(dir.join(format!("{name}_seed{seed}.csv")))
            .unwrap()
            .lines()
            .skip(2)
            .map(|line| line.split(',').nth(5).unwrap().parse().unwrap())
            .collect()
    };
    let aggregate = std::fs::read_to_string(dir.join("aggregate.csv")).unwrap();
    for (t, line) in aggregate.lines().skip(2).enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], (t + 1).to_string());
        for (i, algo) in ["random", "greedy"].iter().enumerate() {
            let mean: f64 = (1..=3).map(|s| column(algo, s)[t]).sum::<f64>() / 3.0;
            let written: f64 = cells[i + 1].parse().unwrap();
            assert!((written - mean).abs() < 1e-12, "t {} {algo}", t + 1);
        }
    }
}

#[test]
fn config_file_is_loaded_and_flags_override_it() {
    let config_path = tmp("run_config.json");
    std::fs::write(
        &config_path,
        r#"{"clique_size": 2, "corridor": 2, "steps": 5, "seeds": [3], "algos": ["random"]}"#,
    )
    .unwrap();
    let dir = tmp("config_run");
    let _ = std::fs::remove_dir_all(&dir);
    let out = curiosity(&[
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--steps",
        "2",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let trajectory = std::fs::read_to_string(dir.join("random_seed3.csv")).unwrap();
    // 2 steps (flag) override the config file's 5.
    assert_eq!(trajectory.lines().count(), 4);
}

#[test]
fn help_documents_output_columns() {
    for (sub, needle) in [
        ("run", "realized_gain"),
        ("fig1", "sum_one_step_gains"),
        ("compare", "c2_error"),
        ("env-dump", "S A init"),
    ] {
        let out = curiosity(&[sub, "--help"]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(needle), "{sub} --help lacks {needle}");
    }
}
