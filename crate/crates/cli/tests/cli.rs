use std::process::{Command, Output};

fn hyplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyplab"))
        .args(args)
        .output()
        .expect("run hyplab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn family_info_graph_haar_row() {
    let o = hyplab(&["family-info", "--family", "graph", "--params", "a=2,b=4", "-N", "10"]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for row in &rows[1..] {
        let n = row["n"].as_u64().unwrap() as i32;
        let h = row["h"].as_f64().unwrap();
        assert!((h / (2.0 * 3f64.powi(n)) - 1.0).abs() < 1e-10, "h({n}) = {h}");
    }
}

#[test]
fn family_info_chebyshev_rows() {
    let o = hyplab(&["family-info", "--family", "chebyshev", "-N", "5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,a,b,c,h"));
    for line in lines.skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(&cols[1..4], &["0.5", "0", "0.5"]);
    }
}

#[test]
fn unknown_family_is_a_config_error() {
    let o = hyplab(&["family-info", "--family", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
    let o = hyplab(&["classify", "--family", "chebyshev", "--grid", "1:0:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structure_failure_exit_code() {
    let o = hyplab(&["verify", "--family", "jacobi", "--params", "alpha=-0.5,beta=-0.9"]);
    assert_eq!(o.status.code(), Some(3));
    let o = hyplab(&["verify", "--family", "soradi", "--params", "k=2"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn infeasible_program_exit_code() {
    let o = hyplab(&["reiter", "--family", "chebyshev", "--M", "0.5", "-N", "4"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn soradi_grid_is_not_amenable() {
    let o = hyplab(&[
        "classify",
        "--family",
        "soradi",
        "--params",
        "k=2",
        "--grid",
        "-0.99:0.99:9",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let verdicts: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(verdicts.len(), 9);
    for v in verdicts {
        assert_eq!(v["verdict"], "NotAmenable", "{v}");
        assert!(v["thresholds"].is_object());
    }
}

#[test]
fn graph_named_points_in_input_order() {
    let o = hyplab(&[
        "classify",
        "--family",
        "graph",
        "--params",
        "a=2,b=4",
        "--points",
        "s1,0,xstar",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), ["s1", "0", "xstar"]);
    assert_eq!(
        rows.iter().map(|r| r[2]).collect::<Vec<_>>(),
        ["Amenable", "NotAmenable", "Amenable"]
    );
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = [
        "classify",
        "--family",
        "pollaczek",
        "--params",
        "eta=0.5,mu=1",
        "--grid",
        "-0.9:0.9:12",
    ];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hyplab"))
            .args(args)
            .env("HYPLAB_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"family":"graph","params":{"a":2,"b":4},"n":4,"format":"csv"}"#,
    )
    .unwrap();
    let o = hyplab(&["--config", cfg.to_str().unwrap(), "family-info"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = hyplab(&[
        "--config",
        cfg.to_str().unwrap(),
        "family-info",
        "-N",
        "2",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["rows"].as_array().unwrap().len(), 3);
    std::fs::write(&cfg, r#"{"family":"graph","bogus":1}"#).unwrap();
    let o = hyplab(&["--config", cfg.to_str().unwrap(), "family-info"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reiter_certificate_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("eps.csv");
    let o = hyplab(&[
        "reiter",
        "--family",
        "chebyshev",
        "--x",
        "1",
        "--c-radius",
        "4",
        "--support",
        "16",
        "--M",
        "10",
        "--curve",
        "8,16",
        "--curve-out",
        curve.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["certificate"]["residuals"]["passed"].as_bool().unwrap());
    let g = v["certificate"]["g"].as_array().unwrap();
    assert!(g.iter().all(|e| e.as_array().unwrap().len() == 2));
    let text = std::fs::read_to_string(curve).unwrap();
    let eps: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(eps.len(), 2);
    assert!(eps[1] <= eps[0]);
}

#[test]
fn join_of_cyclic_groups() {
    let o = hyplab(&[
        "join",
        "--j",
        r#"{"cyclic":3,"prefix":"j"}"#,
        "--dual",
        "--tol-join",
        "1e-12",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["axioms"]["triples"], 64);
    assert_eq!(v["dual"].as_array().unwrap().len(), 4);
}

#[test]
fn join_transfer_agrees() {
    let o = hyplab(&[
        "join",
        "--family",
        "graph",
        "--params",
        "a=4,b=2",
        "--transfer",
        "0,xstar",
    ]);
    assert!(o.status.success());
    for row in json(&o)["transfer"].as_array().unwrap() {
        assert_eq!(row["verdict_j"], row["verdict_k"]);
    }
}

#[test]
fn scan_decay_and_orthocheck() {
    let o = hyplab(&[
        "scan-decay",
        "--family",
        "jacobi",
        "--params",
        "alpha=0,beta=0",
        "--x",
        "0.2",
        "-N",
        "128",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["decays"], true);
    assert!((v["slope"].as_f64().unwrap() + 0.5).abs() < 0.2);

    let o = hyplab(&[
        "scan-decay",
        "--family",
        "disc",
        "--params",
        "alpha=1",
        "--x",
        "0.6",
        "-N",
        "64",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 66);

    let o = hyplab(&["orthocheck", "--family", "graph", "--params", "a=2,b=4", "-N", "10"]);
    assert!(o.status.success());
    assert!(json(&o)["deviation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn export_table_rows_are_probabilities() {
    let o = hyplab(&[
        "export-table",
        "--family",
        "jacobi",
        "--params",
        "alpha=0.5,beta=0.5",
        "-N",
        "3",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["index_kind"], "naturals");
    for e in v["entries"].as_array().unwrap() {
        let total: f64 = e["measure"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p[1].as_f64().unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}

#[test]
fn derivation_at_one_grows_like_n_squared() {
    let o = hyplab(&["derivation", "--family", "chebyshev", "--x", "1", "-N", "20"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["sup_derivative"].as_f64().unwrap(), 400.0);
    assert_eq!(v["appears_bounded"], false);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-8);
}
