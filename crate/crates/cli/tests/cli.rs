use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pstrata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pstrata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = pstrata(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn dir_arg(dir: &Path) -> &str {
    dir.to_str().unwrap()
}

#[test]
fn graph_edge_lists() {
    let tmp = tempfile::tempdir().unwrap();
    for (n, edges) in [("1", 0), ("3", 2), ("4", 5)] {
        let out = tmp.path().join(n);
        run_ok(&["graph", "--n", n, "--out", dir_arg(&out)]);
        assert_eq!(read(&out, "edges.txt").lines().count(), edges, "n={n}");
    }
    assert_eq!(
        read(&tmp.path().join("3"), "edges.txt"),
        "[3]\t[2,1]\n[2,1]\t[1,1,1]\n"
    );
}

#[test]
fn layers_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("7");
    run_ok(&["layers", "--n", "7", "--out", dir_arg(&out)]);
    assert_eq!(
        read(&out, "layer_sizes.csv"),
        "n,r,size\n7,1,2\n7,2,9\n7,3,4\n"
    );
    let layers = read(&out, "layers.csv");
    assert!(layers.starts_with("n,partition,dim_loc,s,t\n7,[7],1,1,1\n"));
    assert_eq!(layers.lines().count(), 1 + 15);

    let out = tmp.path().join("1");
    run_ok(&[
        "layers",
        "--n",
        "1",
        "--mode",
        "cross-check",
        "--out",
        dir_arg(&out),
    ]);
    assert_eq!(read(&out, "layer_sizes.csv"), "n,r,size\n1,0,1\n");

    let out = tmp.path().join("29");
    run_ok(&[
        "layers",
        "--n",
        "29",
        "--mode",
        "clique",
        "--out",
        dir_arg(&out),
    ]);
    assert!(read(&out, "layer_sizes.csv").contains("\n29,7,8\n"));
}

#[test]
fn layers_json_mirrors_csv() {
    let tmp = tempfile::tempdir().unwrap();
    run_ok(&[
        "layers",
        "--n",
        "4",
        "--format",
        "json",
        "--out",
        dir_arg(tmp.path()),
    ]);
    let v: serde_json::Value = serde_json::from_str(&read(tmp.path(), "layer_sizes.json")).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"n": 4, "r": 1, "size": 2},
            {"n": 4, "r": 2, "size": 3}
        ])
    );
    let v: serde_json::Value = serde_json::from_str(&read(tmp.path(), "layers.json")).unwrap();
    assert_eq!(
        v[2],
        serde_json::json!({"n": 4, "partition": "[2,2]", "dim_loc": 2, "s": 2, "t": 1})
    );
}

#[test]
fn thresholds_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    run_ok(&["thresholds", "--n-max", "30", "--out", dir_arg(tmp.path())]);
    let csv = read(tmp.path(), "thresholds.csv");
    let rows = |kind: &str| -> Vec<(u32, u32)> {
        csv.lines()
            .skip(1)
            .filter(|l| l.split(',').next() == Some(kind))
            .map(|l| {
                let f: Vec<&str> = l.splitn(4, ',').collect();
                (f[1].parse().unwrap(), f[2].parse().unwrap())
            })
            .collect()
    };
    assert_eq!(
        rows("tau"),
        vec![
            (0, 1),
            (1, 2),
            (2, 4),
            (3, 7),
            (4, 11),
            (5, 16),
            (6, 22),
            (7, 29)
        ]
    );
    assert_eq!(
        rows("tau_boundary"),
        vec![(1, 4), (2, 7), (3, 11), (4, 16), (5, 22), (6, 29)]
    );
    assert_eq!(rows("tau_ge"), rows("tau"));
    assert!(csv.starts_with("kind,r,n,witness\n"));

    let small = tmp.path().join("small");
    run_ok(&["thresholds", "--n-max", "3", "--out", dir_arg(&small)]);
    assert_eq!(
        read(&small, "thresholds.csv"),
        "kind,r,n,witness\ntau,0,1,[1]\ntau,1,2,[2]\ntau_ge,0,1,[1]\ntau_ge,1,2,[2]\n"
    );
}

#[test]
fn boundaries_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("4-1");
    run_ok(&["boundaries", "--n", "4", "--r", "1", "--out", dir_arg(&out)]);
    assert_eq!(
        read(&out, "boundaries.csv"),
        "n,r,side,partition\n4,1,lower,[4]\n4,1,lower,\"[1,1,1,1]\"\n4,1,upper,\"[3,1]\"\n4,1,upper,\"[2,1,1]\"\n"
    );
    assert_eq!(
        read(&out, "interface_edges.csv"),
        "n,r,left,right\n4,1,[4],\"[3,1]\"\n4,1,\"[1,1,1,1]\",\"[2,1,1]\"\n"
    );

    let out = tmp.path().join("4-2");
    run_ok(&["boundaries", "--n", "4", "--r", "2", "--out", dir_arg(&out)]);
    assert_eq!(read(&out, "boundaries.csv"), "n,r,side,partition\n");
    assert_eq!(read(&out, "interface_edges.csv"), "n,r,left,right\n");

    let out = tmp.path().join("7-2");
    run_ok(&["boundaries", "--n", "7", "--r", "2", "--out", dir_arg(&out)]);
    assert!(read(&out, "boundaries.csv").lines().count() > 1);
}

#[test]
fn traces_output() {
    let tmp = tempfile::tempdir().unwrap();
    run_ok(&["traces", "--n", "10", "--out", dir_arg(tmp.path())]);
    let csv = read(tmp.path(), "traces.csv");
    assert!(csv.starts_with("n,region,kind,r,partition\n"));
    let framework_boundary_1: Vec<&str> = csv
        .lines()
        .filter(|l| l.starts_with("10,framework,boundary,1,"))
        .collect();
    assert_eq!(
        framework_boundary_1,
        vec![
            "10,framework,boundary,1,[10]",
            "10,framework,boundary,1,\"[9,1]\"",
            "10,framework,boundary,1,\"[2,1,1,1,1,1,1,1,1]\"",
            "10,framework,boundary,1,\"[1,1,1,1,1,1,1,1,1,1]\"",
        ]
    );
    assert!(!csv.contains("10,framework,boundary,3,"));
}

#[test]
fn verify_is_deterministic_across_job_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let out = run_ok(&[
        "--jobs",
        "1",
        "verify",
        "--n-max",
        "30",
        "--out",
        dir_arg(&a),
    ]);
    run_ok(&[
        "--jobs",
        "4",
        "verify",
        "--n-max",
        "30",
        "--out",
        dir_arg(&b),
    ]);
    assert_eq!(
        fs::read(a.join("report.json")).unwrap(),
        fs::read(b.join("report.json")).unwrap()
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("[verified-in-range]").count(), 11, "{text}");

    let report: serde_json::Value = serde_json::from_str(&read(&a, "report.json")).unwrap();
    assert_eq!(
        report["claims"]["claim.tau.triangular"]["status"],
        "verified-in-range"
    );
    assert_eq!(report["tau"]["7"], 29);
}

#[test]
fn verify_small_ranges() {
    let out = run_ok(&["verify", "--n-max", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[verified-in-range] claim.zero-layer"));
    assert!(text.contains("[skipped] claim.L1.antennas"));
    assert!(text.contains("[skipped] claim.firstfamily.staircase"));

    let out = run_ok(&["verify", "--n-max", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("[verified-in-range] claim.tau.triangular: τ(r) = 1 + r(r+1)/2 for r <= 3")
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pstrata(&["graph", "--n", "0"]).status.code(), Some(2));
    assert_eq!(pstrata(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        pstrata(&["layers", "--n", "5", "--mode", "fast"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pstrata(&["verify", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn cache_reuse_and_tamper_recovery() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let first = tmp.path().join("first");
    let second = tmp.path().join("second");
    run_ok(&[
        "--cache",
        dir_arg(&cache),
        "layers",
        "--n",
        "12",
        "--mode",
        "cross-check",
        "--out",
        dir_arg(&first),
    ]);
    let entry = cache.join("v1").join("n12.json");
    assert!(entry.exists());

    let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&entry).unwrap()).unwrap();
    v["dims"][5] = serde_json::json!(9);
    fs::write(&entry, serde_json::to_vec(&v).unwrap()).unwrap();

    let out = run_ok(&[
        "--cache",
        dir_arg(&cache),
        "layers",
        "--n",
        "12",
        "--out",
        dir_arg(&second),
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid"));
    assert_eq!(read(&first, "layers.csv"), read(&second, "layers.csv"));

    // The entry rewritten by a capacity run is single-route; verify recomputes.
    let a = tmp.path().join("va");
    run_ok(&[
        "--cache",
        dir_arg(&cache),
        "verify",
        "--n-max",
        "12",
        "--out",
        dir_arg(&a),
    ]);
    let b = tmp.path().join("vb");
    run_ok(&["verify", "--n-max", "12", "--out", dir_arg(&b)]);
    assert_eq!(read(&a, "report.json"), read(&b, "report.json"));
}
