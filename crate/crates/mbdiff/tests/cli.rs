use std::path::Path;
use std::process::{Command, Output};

use mbdiff::io::load_edge_list;
use mbdiff::report::HEADER;

fn mbdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbdiff")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn generate_ring_and_spatial() {
    let dir = tempfile::tempdir().unwrap();
    let ring = path(dir.path(), "ring.txt");
    assert!(mbdiff(&["generate", "sw", "--n", "10", "--p", "0", "--out", &ring]).status.success());
    let text = std::fs::read_to_string(&ring).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with("0 1\n0 9\n1 2\n"));

    let sc = path(dir.path(), "sc.txt");
    assert!(mbdiff(&["generate", "sc", "--n", "500", "--avg-degree", "10", "--seed", "2", "--out", &sc])
        .status
        .success());
    let g = load_edge_list(Path::new(&sc)).unwrap();
    assert!(g.graph.mean_degree() >= 10.0);
}

#[test]
fn unknown_generator_is_a_usage_error() {
    let out = mbdiff(&["generate", "er", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(mbdiff(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn seeds_file_layout() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "pa.txt");
    assert!(mbdiff(&["generate", "pa", "--n", "500", "--seed", "1", "--out", &graph]).status.success());

    let out = mbdiff(&["seeds", "--graph", &graph, "--alpha", "0.1", "--heuristic", "ciw-rank"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# budget 17 17 17"));
    let seeds: Vec<(u64, usize)> = lines
        .map(|l| {
            let mut it = l.split(' ');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect();
    assert_eq!(seeds.len(), 51);
    let mut nodes: Vec<u64> = seeds.iter().map(|s| s.0).collect();
    nodes.sort_unstable();
    nodes.dedup();
    assert_eq!(nodes.len(), 51, "single-variant seeds repeat a node");
    for i in 0..3 {
        assert_eq!(seeds.iter().filter(|s| s.1 == i).count(), 17);
    }

    let out = mbdiff(&["seeds", "--graph", &graph, "--b", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "# budget 0 0 0\n");
}

#[test]
fn seeds_needs_a_graph() {
    let out = mbdiff(&["seeds", "--generator", "pa"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graph"));
}

#[test]
fn shortfall_is_reported_with_output() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "tiny.txt");
    std::fs::write(&graph, "0 1\n1 2\n").unwrap();
    // Three nodes cannot host six single-behavior seeds.
    let out = mbdiff(&["seeds", "--graph", &graph, "--b", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# budget 2 2 2\n# shortfall "), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn experiment_csv_shape() {
    let out = mbdiff(&["experiment", "--generator", "pa", "--n", "100", "--runs", "3", "--seed", "5", "--heuristic", "random"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 1 + 3 + 4);
    for (j, line) in lines[1..4].iter().enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 13);
        assert_eq!(&f[..7], &["experiment", "random", "S-T", "uniform", "pa", "ta", &j.to_string()]);
        assert_eq!(f[9].split('.').nth(1).map(str::len), Some(6));
        assert_eq!(f[12].len(), 16);
    }
    for (line, stat) in lines[4..].iter().zip(["mean", "stderr", "ci_low", "ci_high"]) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[6], format!("summary:{stat}"));
        assert!(f[7..12].iter().all(|x| x.split('.').nth(1).map(str::len) == Some(6)));
        assert_eq!(f[12], "");
    }
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "exp.toml");
    std::fs::write(&cfg, "experiment = \"sweep\"\ngenerator = \"sw\"\nn = 80\nruns = 2\ncosts = [0.3, 0.6]\n").unwrap();
    let out = mbdiff(&["experiment", "--config", &cfg, "--runs", "5", "--strategy", "high"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 + 4);
    assert!(text.lines().nth(1).unwrap().starts_with("sweep,ciw-rank,S-T,high,sw,ta,0,"));
}

#[test]
fn invalid_config_lists_fields() {
    let out = mbdiff(&["experiment", "--w", "3", "--runs", "0", "--mode", "xa"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    for field in ["w:", "runs:", "mode:"] {
        assert!(err.contains(field), "{field} missing from {err}");
    }
}

#[test]
fn non_convergence_exit_code() {
    // Reevaluate runs on a cycle-rich graph hitting a one-epoch cap.
    let out = mbdiff(&[
        "experiment", "--generator", "sw", "--n", "60", "--runs", "5", "--heuristic", "all",
        "--adoption-mode", "reevaluate", "--max-epochs", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = mbdiff(&["experiment", "--generator", "pa", "--n", "60", "--runs", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bound_command() {
    let out = mbdiff(&["bound", "--costs", "0.2,0.5,0.7"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0.780000\n");
    let out = mbdiff(&["bound", "--costs", "0.25,0.5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0.750000\n");
}

#[test]
fn eia_command_reads_a_seed_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "star.txt");
    std::fs::write(&graph, "0 1\n0 2\n0 3\n0 4\n").unwrap();
    let seeds = path(dir.path(), "seeds.txt");
    std::fs::write(&seeds, "# budget 1 0\n0 0\n").unwrap();
    // A leaf's only influencer is the seeded center, so its signal is 1 and it adopts
    // whenever it can afford the behavior.
    let out = mbdiff(&["eia", "--graph", &graph, "--costs", "0.01", "--seeds", &seeds, "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "0 4.000000\ntotal 4.000000\n");
}
