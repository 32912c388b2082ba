use std::process::{Command, Output};

fn superw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superw"))
        .args(args)
        .env("SUPERW_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn frame_reports_invariants() {
    let o = superw(&["frame", "--alg", "osp(1|2)", "--nilpotent", "jordan:1|2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["d0"].as_u64(), v["d1"].as_u64(), v["r"].as_u64()),
        (Some(2), Some(1), Some(1))
    );
    assert_eq!(v["gram_holds"], true);
}

#[test]
fn bound_table_is_csv() {
    let o = superw(&[
        "bound",
        "--alg",
        "osp(1|2)",
        "--nilpotent",
        "jordan:1|2",
        "--p",
        "3,5,7",
    ]);
    assert_eq!(stdout(&o), "p,d0,d1,bound\n3,2,1,6\n5,2,1,10\n7,2,1,14\n");
}

#[test]
fn catalog_json_round_trips_through_a_file() {
    let path = std::env::temp_dir().join(format!("superw-gl11-{}.json", std::process::id()));
    let first = superw(&[
        "catalog",
        "--alg",
        "gl(1|1)",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(first.status.success());
    let again = superw(&["catalog", "--alg", path.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(stdout(&again), std::fs::read_to_string(&path).unwrap());
    std::fs::remove_file(path).unwrap();
}

#[test]
fn even_prime_exits_with_config_status() {
    let o = superw(&["verify", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p = 2"));
    assert_eq!(
        superw(&[
            "bound",
            "--alg",
            "gl(1|1)",
            "--nilpotent",
            "jordan:1|1",
            "--p",
            "4"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_is_deterministic_apart_from_timing() {
    let args = [
        "verify",
        "--alg",
        "osp(1|2)",
        "--p",
        "3",
        "--suite",
        "parity,frames,walgebra,hilbert",
        "--format",
        "json",
    ];
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["checks"]
            .as_array_mut()
            .unwrap()
            .iter_mut()
            .for_each(|c| c["runtime_ms"] = 0.into());
        v
    };
    let (a, b) = (superw(&args), superw(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
    assert!(strip(&a)["summary"]["failed"] == 0);
}

#[test]
fn config_file_and_flags_combine() {
    let path = std::env::temp_dir().join(format!("superw-config-{}.toml", std::process::id()));
    std::fs::write(
        &path,
        "algebras = [\"gl(1|1)\"]\nprimes = [3]\nsuites = [\"axioms\", \"envelope\"]\n",
    )
    .unwrap();
    let o = superw(&[
        "verify",
        "--config",
        path.to_str().unwrap(),
        "--seed",
        "7",
        "--format",
        "csv",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("claim_id,reference,inputs,expected,computed,pass,runtime_ms\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn unknown_config_key_is_rejected() {
    let path = std::env::temp_dir().join(format!("superw-bad-{}.toml", std::process::id()));
    std::fs::write(&path, "primes = [3]\nfrobnicate = true\n").unwrap();
    let o = superw(&["verify", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theta_reports_the_odd_case() {
    let o = superw(&[
        "theta",
        "--alg",
        "osp(1|2)",
        "--nilpotent",
        "jordan:1|2",
        "--p",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["odd_case"]["square_is_expected_scalar"], true);
    assert_eq!(v["one_dimensional_variety"], "Infeasible");
}

#[test]
fn split_and_wdim() {
    let s: serde_json::Value = serde_json::from_str(&stdout(&superw(&[
        "split",
        "--alg",
        "gl(2|1)",
        "--nilpotent",
        "jordan:2|1",
        "--p",
        "3",
    ])))
    .unwrap();
    assert_eq!(
        (s["min_dim"].as_u64(), s["attained"].as_bool()),
        (Some(6), Some(true))
    );
    let w: serde_json::Value = serde_json::from_str(&stdout(&superw(&[
        "wdim",
        "--alg",
        "osp(1|2)",
        "--nilpotent",
        "jordan:1|2",
        "--p",
        "5",
    ])))
    .unwrap();
    assert_eq!(
        (w["dim"].as_u64(), w["matches"].as_bool()),
        (Some(20), Some(true))
    );
}

#[test]
fn levi_lists_standard_levis() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&superw(&["levi", "--alg", "gl(2|1)"]))).unwrap();
    assert_eq!(v["levis"].as_array().unwrap().len(), 4);
}
