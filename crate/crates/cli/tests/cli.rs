use std::process::{Command, Output};

fn qdecode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdecode"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SHOR: &str = "file:../core/data/shor9.code";

#[test]
fn simulate_writes_one_row_per_probability() {
    let args = [
        "simulate",
        "--code",
        "toric:5",
        "--decoder",
        "spa-lppcwd",
        "--p",
        "0.01,0.02,0.05",
        "--trials",
        "300",
        "--seed",
        "1",
    ];
    let first = qdecode(&args);
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config: {"));
    assert_eq!(
        lines[1],
        "code,decoder,p,trials,failures,wer,wilson_lo,wilson_hi,min_fail_weight,mean_fail_weight,seed,config_hash"
    );
    assert_eq!(lines.len(), 5);
    for (line, p) in lines[2..].iter().zip(["0.01", "0.02", "0.05"]) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 12);
        assert_eq!(&cols[..4], &["toric:5", "spa-lppcwd", p, "300"]);
        assert_eq!(cols[10], "1");
        assert_eq!(cols[11].len(), 64);
    }
    // byte-identical on a rerun
    assert_eq!(qdecode(&args).stdout, first.stdout);
}

#[test]
fn config_hash_tracks_the_configuration() {
    let hash = |seed: &str| {
        let out = qdecode(&[
            "simulate", "--code", "toric:3", "--trials", "10", "--seed", seed,
        ]);
        stdout(&out)
            .lines()
            .nth(2)
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(hash("4"), hash("4"));
    assert_ne!(hash("4"), hash("5"));
}

#[test]
fn json_mirror_and_output_file() {
    let dir = std::env::temp_dir().join(format!("qdecode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = qdecode(&[
        "simulate",
        "--code",
        "toric:3",
        "--trials",
        "20",
        "--json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 1);
    assert_eq!(value["rows"][0]["stats"]["trials"], 20);
    assert_eq!(value["config_hash"].as_str().unwrap().len(), 64);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["simulate", "--code", "toric:5", "--decoder", "bp-osd"][..],
        &["simulate", "--code", "toric:x"],
        &["simulate", "--code", "toric:5", "--p", "1.5"],
        &[
            "simulate",
            "--code",
            "toric:5",
            "--rr-range",
            "0,1",
            "--decoder",
            "rr-spa",
        ],
        &[
            "enumerate",
            "--code",
            SHOR,
            "--decoder",
            "spa-pcwd",
            "--weight",
            "1",
        ],
        &["simulate", "--code", "file:/nonexistent/path.code"],
    ] {
        let out = qdecode(args);
        assert_ne!(out.status.code(), Some(0), "{args:?}");
        assert!(!out.stderr.is_empty());
        if args[2] != "file:/nonexistent/path.code" {
            assert_eq!(out.status.code(), Some(2), "{args:?}");
        }
    }
    // usage errors from the argument parser
    assert_eq!(qdecode(&["simulate"]).status.code(), Some(2));
}

#[test]
fn budget_guard_exits_with_three() {
    let out = qdecode(&[
        "enumerate",
        "--code",
        "toric:5",
        "--weight",
        "3",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn enumerate_counts_and_lists_failures() {
    let out = qdecode(&[
        "enumerate",
        "--code",
        "toric:5",
        "--decoder",
        "spa",
        "--weight",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count 0 of 150\n"));

    let out = qdecode(&[
        "enumerate",
        "--code",
        SHOR,
        "--decoder",
        "ml-nd",
        "--weight",
        "1",
        "--json",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let count = value["count"].as_u64().unwrap();
    assert!(count > 0);
    assert_eq!(value["failures"].as_array().unwrap().len() as u64, count);
    assert_eq!(value["criterion"], "exact");
}

#[test]
fn enumerate_binary_weight_model() {
    let out = qdecode(&[
        "enumerate",
        "--code",
        "toric:3",
        "--weight",
        "1",
        "--weight-model",
        "binary",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count 0 of 36\n"));
}

#[test]
fn verify_reports_distances_and_passes() {
    let out = qdecode(&["verify", "--code", SHOR]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for line in ["d 3", "d_N 2", "t 1", "t_N 0"] {
        assert!(text.lines().any(|l| l == line), "missing `{line}`");
    }
    assert!(text.contains("PASS: ml-nd first failure weight (t_N + 1) (expected 1, observed 1)"));
    assert!(text.contains("PASS: ml-d-star first failure weight (t + 1) (expected 2, observed 2)"));
    assert!(text.contains("PASS: ml-d first failure weight (t + 1) (expected 2, observed 2)"));
    assert!(!text.contains("FAIL"));

    let out = qdecode(&["verify", "--code", "toric:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d 3\nd_N 3\n"));
}

#[test]
fn decode_one_reports_the_result() {
    let out = qdecode(&[
        "decode-one",
        "--code",
        "toric:5",
        "--decoder",
        "spa-pcwd",
        "--error",
        "5:X 31:X 11:X 37:X",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "SYNDROME_MATCHED");
    assert_eq!(value["class"], "SAME_COSET_OF_B");
    assert_eq!(value["syndrome"], serde_json::json!([25, 37]));

    let out = qdecode(&["decode-one", "--code", "toric:5", "--syndrome", "25,37"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "SYNDROME_MISMATCH");
    assert!(value["class"].is_null());

    let out = qdecode(&["decode-one", "--code", "toric:5", "--syndrome", "99"]);
    assert_eq!(out.status.code(), Some(2));
}
