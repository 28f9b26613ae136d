//! End-to-end checks of the `plnet` binary: output contracts, exit codes,
//! and byte-level reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn plnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_utf8(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        if parts.next() == Some(key) {
            return parts.next().unwrap_or("").to_string();
        }
    }
    panic!("no field {key:?} in output:\n{text}");
}

#[test]
fn predict_identity_case() {
    let out = plnet(&["predict", "--beta", "2.5", "--nodes", "1000000", "--p", "0"]);
    assert!(out.status.success());
    let text = stdout_utf8(&out);
    assert_eq!(field(&text, "beta_prime"), "2.5");
    assert_eq!(field(&text, "expected_orphans"), "0");
    assert_eq!(field(&text, "has_giant"), "true");
    assert!(out.stderr.is_empty());
}

#[test]
fn predict_collapse_point() {
    // Giant-component verdict flips right around p = 0.898.
    let before = stdout_utf8(&plnet(&[
        "predict", "--beta", "2.5", "--nodes", "1000000", "--p", "0.893",
    ]));
    let after = stdout_utf8(&plnet(&[
        "predict", "--beta", "2.5", "--nodes", "1000000", "--p", "0.903",
    ]));
    assert_eq!(field(&before, "has_giant"), "true");
    assert_eq!(field(&after, "has_giant"), "false");
}

#[test]
fn predict_output_equals_library_call_exactly() {
    let out = plnet(&["predict", "--beta", "2.5", "--nodes", "1000000", "--p", "0.5"]);
    let text = stdout_utf8(&out);
    let params = plnet::PlnParams::for_size(2.5, 1_000_000).unwrap();
    let pred = plnet::predict(&params, 0.5).unwrap();
    use plnet::harness::fmt_sig10;
    assert_eq!(field(&text, "chi"), fmt_sig10(pred.chi));
    assert_eq!(field(&text, "xi"), fmt_sig10(pred.xi));
    assert_eq!(field(&text, "alpha_prime"), fmt_sig10(pred.alpha_prime));
    assert_eq!(field(&text, "beta_prime"), fmt_sig10(pred.beta_prime));
    assert_eq!(field(&text, "expected_orphans"), fmt_sig10(pred.expected_orphans));
    assert_eq!(
        field(&text, "expected_survivors"),
        fmt_sig10(pred.expected_survivors)
    );
    assert_eq!(
        field(&text, "p_critical"),
        fmt_sig10(plnet::critical_failure_rate(&params).unwrap())
    );
}

#[test]
fn predict_rejects_total_failure_with_exit_2() {
    let out = plnet(&["predict", "--beta", "2.5", "--nodes", "1000000", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("xi(1) = 0"), "diagnostic names the degeneracy: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn predict_needs_exactly_one_size_flag() {
    let neither = plnet(&["predict", "--beta", "2.5", "--p", "0.5"]);
    assert_eq!(neither.status.code(), Some(2));
    let both = plnet(&[
        "predict", "--beta", "2.5", "--nodes", "100", "--alpha", "5", "--p", "0.5",
    ]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn critical_prints_four_decimals() {
    let out = plnet(&["critical", "--beta", "3.0", "--nodes", "1000000"]);
    assert!(out.status.success());
    let text = stdout_utf8(&out);
    let value: f64 = text.trim().parse().expect("bare number");
    assert!((value - 0.580).abs() < 0.005, "p_c = {value}");
    assert_eq!(text.trim().len(), 6, "four decimal places: {text:?}");

    let out33 = plnet(&["critical", "--beta", "3.3", "--nodes", "1000000"]);
    let v33: f64 = stdout_utf8(&out33).trim().parse().unwrap();
    assert!((v33 - 0.254).abs() < 0.005, "p_c(3.3) = {v33}");
}

#[test]
fn critical_rejects_boundary_beta() {
    let out = plnet(&["critical", "--beta", "2.0", "--nodes", "1000000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_tiny_graph_to_stdout() {
    // e^alpha = 2: two degree-1 vertices joined by one edge.
    let out = plnet(&[
        "generate", "--beta", "2.5", "--alpha", "0.6931471805599453", "--seed", "1",
    ]);
    assert!(out.status.success());
    let text = stdout_utf8(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "plngraph v1 2 1");
    assert!(lines[1] == "0 1" || lines[1] == "1 0");
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("num_vertices    2"));
}

#[test]
fn generate_same_seed_same_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.plngraph");
    let b = dir.path().join("b.plngraph");
    let c = dir.path().join("c.plngraph");
    for (path, seed) in [(&a, "9"), (&b, "9"), (&c, "10")] {
        let out = plnet(&[
            "generate", "--beta", "2.5", "--nodes", "5000", "--seed", seed,
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(stdout_utf8(&out).contains("num_vertices"));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
    assert_ne!(bytes_a, std::fs::read(&c).unwrap());
}

#[test]
fn generated_hub_self_arc_rate_tracks_formula() {
    // 20 seeded graphs; self-arcs observed at the hub vs the closed-form
    // rate (expected count per graph is degree * rate / 4).
    let dir = tempfile::tempdir().unwrap();
    let mut observed = 0u64;
    let mut expected = 0.0;
    for seed in 0..20u64 {
        let path = dir.path().join(format!("g{seed}.plngraph"));
        let out = plnet(&[
            "generate", "--beta", "2.5", "--nodes", "100000",
            "--seed", &seed.to_string(), "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let graph = plnet::Multigraph::load_path(&path).unwrap();
        observed += graph
            .edges()
            .iter()
            .filter(|&&(u, v)| u == 0 && v == 0)
            .count() as u64;
        let params = plnet::PlnParams::for_size(2.5, 100_000).unwrap();
        let rate = plnet::self_arc_probability(&params).unwrap();
        expected += graph.degree(0) as f64 * rate / 4.0;
        std::fs::remove_file(&path).unwrap();
    }
    let sigma = expected.sqrt().max(1.0);
    assert!(
        (observed as f64 - expected).abs() <= 3.0 * sigma,
        "observed {observed} vs expected {expected:.2} +- {sigma:.2}"
    );
}

fn write_test_graph(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("graph.plngraph");
    let out = plnet(&[
        "generate", "--beta", "2.5", "--nodes", "500", "--seed", "3",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

#[test]
fn simulate_no_failures_equals_intact_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_test_graph(dir.path());
    let out = plnet(&[
        "simulate", "--graph", path.to_str().unwrap(), "--p", "0", "--seed", "5",
    ]);
    assert!(out.status.success());
    let text = stdout_utf8(&out);
    assert_eq!(field(&text, "failed_count"), "0");
    let graph = plnet::Multigraph::load_path(&path).unwrap();
    let intact = plnet::census_components(&graph, None).unwrap();
    assert_eq!(field(&text, "giant_size"), intact.giant_size.to_string());
    assert_eq!(
        field(&text, "total_survivors"),
        intact.total_survivors.to_string()
    );
}

#[test]
fn simulate_total_failure_leaves_no_survivors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_test_graph(dir.path());
    let out = plnet(&[
        "simulate", "--graph", path.to_str().unwrap(), "--p", "1", "--seed", "5",
    ]);
    let text = stdout_utf8(&out);
    assert_eq!(field(&text, "total_survivors"), "0");
    assert_eq!(field(&text, "giant_size"), "0");
}

#[test]
fn simulate_matches_library_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_test_graph(dir.path());
    let out = plnet(&[
        "simulate", "--graph", path.to_str().unwrap(), "--p", "0.5", "--seed", "9", "--csv",
    ]);
    let text = stdout_utf8(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("num_vertices,failed_count,"));
    // Re-derive through the library with the same seed.
    let graph = plnet::Multigraph::load_path(&path).unwrap();
    let mask = plnet::draw_failure_mask(graph.num_vertices(), 0.5, plnet::Seed::new(9)).unwrap();
    let census = plnet::census_components(&graph, Some(&mask)).unwrap();
    let expected = format!(
        "{},{},{},{},{},{},{}",
        graph.num_vertices(),
        mask.failed_count(),
        census.total_survivors,
        census.giant_size,
        census.second_size,
        census.orphan_count,
        census.survivors_outside_giant
    );
    assert_eq!(lines[1], expected);
}

#[test]
fn simulate_io_failures_exit_3() {
    let missing = plnet(&["simulate", "--graph", "/nonexistent/g.plngraph", "--p", "0.5", "--seed", "1"]);
    assert_eq!(missing.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let corrupt = dir.path().join("corrupt.plngraph");
    std::fs::write(&corrupt, "plngraph v1 2 1\n0 7\n").unwrap();
    let out = plnet(&["simulate", "--graph", corrupt.to_str().unwrap(), "--p", "0.5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));

    std::fs::write(&corrupt, "not a graph\n").unwrap();
    let out = plnet(&["simulate", "--graph", corrupt.to_str().unwrap(), "--p", "0.5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_single_cell_and_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for path in [&csv_a, &csv_b] {
        let out = plnet(&[
            "sweep", "--beta", "2.5", "--p", "0", "--nodes", "1000", "--replicates", "1",
            "--seed", "42", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty(), "stdout stays machine-clean");
        assert!(!out.stderr.is_empty(), "progress goes to stderr");
    }
    let a = std::fs::read_to_string(&csv_a).unwrap();
    assert_eq!(a.lines().count(), 2, "header plus one data row:\n{a}");
    assert_eq!(a, std::fs::read_to_string(&csv_b).unwrap());
    // Sidecar records the provenance.
    let meta = std::fs::read_to_string(csv_a.with_extension("meta")).unwrap();
    assert!(meta.contains("base_seed = 42"));
    assert!(meta.contains("generator = "));
    assert!(meta.contains("wall_seconds = "));
}

#[test]
fn sweep_grid_flags_build_the_p_range() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = plnet(&[
        "sweep", "--beta", "2.5", "--p-min", "0", "--p-max", "0.4", "--p-step", "0.2",
        "--nodes", "1000", "--replicates", "1", "--seed", "1", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let ps: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(ps, ["0", "0.2", "0.4"]);
}

#[test]
fn sweep_rejects_bad_grids() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    let out = plnet(&[
        "sweep", "--beta", "2.5", "--nodes", "1000", "--replicates", "1",
        "--seed", "1", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "missing p grid");
    let out = plnet(&[
        "sweep", "--beta", "2.5", "--p", "1.5", "--nodes", "1000", "--replicates", "1",
        "--seed", "1", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "p out of range");
}

#[test]
fn sweep_headline_giant_fraction_of_survivors() {
    // Internet-like slope at desk scale: by p = 0.5 the giant component
    // keeps only about a quarter of the surviving nodes.
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("headline.csv");
    let out = plnet(&[
        "sweep", "--beta", "2.5", "--p", "0,0.5", "--nodes", "100000",
        "--replicates", "10", "--seed", "2026", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let gi = header.iter().position(|&c| c == "giant_size_mean").unwrap();
    let ti = header.iter().position(|&c| c == "total_survivors_mean").unwrap();
    let row = text
        .lines()
        .find(|l| l.starts_with("2.5,") && l.split(',').nth(2) == Some("0.5"))
        .expect("p = 0.5 row");
    let cols: Vec<&str> = row.split(',').collect();
    let giant: f64 = cols[gi].parse().unwrap();
    let survivors: f64 = cols[ti].parse().unwrap();
    let frac = giant / survivors;
    assert!(
        (frac - 0.25).abs() <= 0.05,
        "giant fraction of survivors at p = 0.5: {frac:.4}"
    );
}

#[test]
fn surviving_dist_table_on_stdout() {
    let out = plnet(&[
        "surviving-dist", "--beta", "2.5", "--nodes", "2000", "--p", "0,0.5", "--seed", "4",
    ]);
    assert!(out.status.success());
    let text = stdout_utf8(&out);
    assert!(text.starts_with("p,k,analytic_count,empirical_count\n"));
    assert!(text.lines().count() > 4);
    // p = 0 rows: empirical equals the generating histogram, analytic the
    // raw power law; orphan row is zero.
    let first_data: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first_data[0], "0");
    assert_eq!(first_data[1], "0");
    assert_eq!(first_data[3], "0");
}

#[test]
fn giant_fraction_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gf.csv");
    let out = plnet(&[
        "giant-fraction", "--beta", "2.5", "--nodes", "10000", "--replicates", "2",
        "--seed", "5", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("beta,mean_fraction,std\n"));
    assert_eq!(text.lines().count(), 2);
    assert!(csv.with_extension("meta").exists());
    let out_of_range = plnet(&[
        "giant-fraction", "--beta", "1.5", "--nodes", "10000", "--replicates", "2", "--seed", "5",
    ]);
    assert_eq!(out_of_range.status.code(), Some(2));
}
