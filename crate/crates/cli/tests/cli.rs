use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hkpr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkpr"))
        .args(args)
        .env_remove("HKPR_RNG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hkpr(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows as field vectors, skipping comments and the column header.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const BRIDGED: &str = "0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n";

#[test]
fn exact_vector_on_an_edge() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.edges", "0 1\n");
    let out = stdout(&["hkpr", "--graph", &k2, "--seed-vertex", "0", "--t", "1", "--exact"]);
    let rows = rows(&out);
    assert_eq!(rows[0][0], "0");
    let value: f64 = rows[0][1].parse().unwrap();
    assert!((value - 0.567668).abs() < 1e-6);
    assert!(out.contains("# t=1"));
}

#[test]
fn zero_temperature_returns_the_seed() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.edges", BRIDGED);
    let rows = rows(&stdout(&["hkpr", "--graph", &g, "--seed-vertex", "4", "--t", "0"]));
    assert_eq!(rows, vec![vec!["4".to_string(), "1".to_string()]]);
}

#[test]
fn sampled_vector_is_reproducible_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.edges", BRIDGED);
    let base = ["hkpr", "--graph", &g, "--seed-vertex", "0", "--t", "3", "--rng-seed", "9"];
    let one = stdout(&[&base[..], &["--threads", "1"]].concat());
    let four = stdout(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    let other = stdout(&["hkpr", "--graph", &g, "--seed-vertex", "0", "--t", "3", "--rng-seed", "10"]);
    assert_ne!(one, other);
}

#[test]
fn seed_comes_from_environment() {
    let flag = stdout(&["gen", "--model", "ba", "--n", "30", "--d", "2", "--rng-seed", "5"]);
    let out = Command::new(env!("CARGO_BIN_EXE_hkpr"))
        .args(["gen", "--model", "ba", "--n", "30", "--d", "2"])
        .env("HKPR_RNG_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(flag.as_bytes(), &out.stdout[..]);
}

#[test]
fn generated_small_world_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ws.edges");
    let path = path.to_str().unwrap();
    let args = ["gen", "--model", "ws", "--n", "100", "--d", "5", "--p", "0.1", "--out", path];
    stdout(&args);
    let first = std::fs::read_to_string(path).unwrap();
    let edges = first.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edges, 200);
    stdout(&args);
    assert_eq!(first, std::fs::read_to_string(path).unwrap());

    // The file feeds straight back in as a graph.
    let out = stdout(&["hkpr", "--graph", path, "--seed-vertex", "0", "--t", "2", "--exact"]);
    assert!(out.contains("# m=200"));
}

#[test]
fn lattice_without_rewiring() {
    let out = stdout(&["gen", "--model", "ws", "--n", "10", "--d", "4", "--p", "0"]);
    let mut edges: Vec<(usize, usize)> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<usize>().unwrap());
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut expected: Vec<(usize, usize)> = (0..10)
        .flat_map(|u| [1, 2].map(|j| (u.min((u + j) % 10), u.max((u + j) % 10))))
        .collect();
    expected.sort_unstable();
    assert_eq!(edges, expected);
}

#[test]
fn oversized_target_volume_fails_the_trial() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.edges", BRIDGED);
    let out = hkpr(&[
        "cluster", "--graph", &g, "--seed-vertex", "0", "--phi", "0.1", "--target-size", "3",
        "--target-volume", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("failed trials: 0"), "{stderr}");
}

#[test]
fn half_sweep_finds_the_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.edges", BRIDGED);
    let out = stdout(&[
        "cluster", "--graph", &g, "--seed-vertex", "1", "--phi", "0.25", "--target-size", "3",
        "--target-volume", "3", "--sweep-mode", "half", "--trials", "3",
    ]);
    let rows = rows(&out);
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row[5], "FOUND");
        let ratio: f64 = row[6].parse().unwrap();
        assert!((ratio - 1.0 / 7.0).abs() < 1e-12);
        let mut cut: Vec<&str> = row[9].split(' ').collect();
        cut.sort_unstable();
        assert_eq!(cut, ["0", "1", "2"]);
    }
}

#[test]
fn compare_reports_three_sweeps() {
    let out = stdout(&[
        "compare", "--model", "ba", "--n", "100", "--d", "5", "--phi", "0.1", "--target-size", "20",
        "--target-volume", "100", "--trials", "2", "--r", "5000",
    ]);
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    let algorithms: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(algorithms, ["eps-hkpr", "hkpr", "pr", "eps-hkpr", "hkpr", "pr"]);
    for row in &rows {
        let ratio: f64 = row[4].parse().unwrap();
        assert!(ratio > 0.0 && ratio <= 1.0);
    }
}

#[test]
fn rank_experiment_control_rows_are_zero() {
    let out = stdout(&[
        "rank-experiment", "--model", "ba", "--n", "60", "--d", "3", "--t", "5", "--K", "0,5",
        "--r", "2000", "--trials", "2", "--control",
    ]);
    let rows = rows(&out);
    let control: Vec<&Vec<String>> = rows.iter().filter(|r| r[2] == "exact").collect();
    assert_eq!(control.len(), 3);
    for row in control {
        assert!(row[4..].iter().all(|x| x.parse::<f64>().unwrap() == 0.0), "{row:?}");
    }
    // K=0 keeps every walk at the seed, which the exact vector does not.
    let zero = rows.iter().find(|r| r[0] == "0" && r[2] == "0").unwrap();
    assert!(zero[4].parse::<f64>().unwrap() > 0.0);
    assert!(rows.iter().any(|r| r[0] == "mean" && r[2] == "5"));
}

#[test]
fn graph_source_is_required() {
    let out = hkpr(&["hkpr", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_seed_label_is_an_error() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.edges", BRIDGED);
    let out = hkpr(&["hkpr", "--graph", &g, "--seed-vertex", "zz", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(Path::new(&g).exists());
}
