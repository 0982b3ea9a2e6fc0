use std::process::{Command, Output};

fn ncbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncbell(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn bell_examples() {
    assert_eq!(
        stdout(&["bell", "--nc", "-n", "3", "--format", "text"]),
        "d1^3 + d2*d1 + 2*d1*d2 + d3"
    );
    assert_eq!(stdout(&["bell", "-n", "0"]), "1");
    assert_eq!(stdout(&["bell", "--c", "-n", "3"]), "d1^3 + 3*d1*d2 + d3");
    assert_eq!(
        stdout(&["partial", "-n", "3", "-k", "2"]),
        "d2*d1 + 2*d1*d2"
    );
    assert_eq!(
        stdout(&["bell", "-n", "3", "-k", "2", "--format", "latex"]),
        "d_2 d_1 + 2 d_1 d_2"
    );
}

#[test]
fn json_output_parses_back() {
    let raw = stdout(&["bell", "--nc", "-n", "5", "--format", "json"]);
    let p = ncbell::format::from_json::<ncbell::Word>(&raw).unwrap();
    assert_eq!(p, ncbell::bell::bell(5));
    let raw = stdout(&[
        "hopf",
        "--dfdb",
        "--coproduct",
        "-n",
        "4",
        "--format",
        "json",
    ]);
    let doc: ncbell::tensor::TensorDoc = serde_json::from_str(&raw).unwrap();
    let t = ncbell::tensor::Tensor::<ncbell::Word>::from_doc(&doc).unwrap();
    assert_eq!(
        t,
        ncbell::hopf::HopfAlgebra::<ncbell::Word>::new().coproduct_generator(4)
    );
}

#[test]
fn hopf_and_mobius() {
    assert_eq!(
        stdout(&["hopf", "--fdb", "--antipode", "-n", "3"]),
        "-15*X1^3 + 10*X1*X2 - X3"
    );
    assert_eq!(
        stdout(&[
            "hopf",
            "--dfdb",
            "--antipode",
            "--method",
            "qdet",
            "-n",
            "3"
        ]),
        "-15*X1^3 + 4*X2*X1 + 6*X1*X2 - X3"
    );
    assert_eq!(
        stdout(&["mobius", "--invert", "-n", "3"]),
        "2*B1^3 - 3*B1*B2 + B3"
    );
    assert_eq!(
        stdout(&["mobius", "--nc", "--invert", "-n", "3"]),
        "2*B1^3 - B2*B1 - 2*B1*B2 + B3"
    );
}

#[test]
fn quasidet_from_file() {
    let dir = std::env::temp_dir().join(format!("ncbell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let numeric = dir.join("q.json");
    std::fs::write(
        &numeric,
        r#"{"algebra": "q", "rows": [["2", "1"], ["1", "3"]]}"#,
    )
    .unwrap();
    let out = stdout(&[
        "quasidet",
        "--file",
        numeric.to_str().unwrap(),
        "--entry",
        "1",
        "1",
    ]);
    assert!(out.contains("|A|_(1,1) = 5/3"), "{out}");
    let symbolic = dir.join("nc.json");
    std::fs::write(
        &symbolic,
        r#"{"algebra": "nc", "rows": [["d1", "d2"], ["-1", "d1"]]}"#,
    )
    .unwrap();
    let out = stdout(&[
        "quasidet",
        "--file",
        symbolic.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(out.ends_with("= d1^2 + d2"), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn series_and_trees() {
    assert!(
        stdout(&["series", "--compose", "--order", "6", "--seed", "3"]).ends_with("agrees: yes")
    );
    assert!(stdout(&["series", "--reversion", "--order", "6"]).ends_with("round trip: ok"));
    assert!(stdout(&["series", "--flow-check", "--order", "3"]).ends_with("yes"));
    assert_eq!(stdout(&["trees", "-n", "2"]), "aababb + aaabbb");
}

#[test]
fn verify_is_deterministic() {
    let a = stdout(&[
        "verify",
        "--suite",
        "all",
        "--max-degree",
        "3",
        "--seed",
        "9",
        "--samples",
        "3",
    ]);
    let b = stdout(&[
        "verify",
        "--suite",
        "all",
        "--max-degree",
        "3",
        "--seed",
        "9",
        "--samples",
        "3",
    ]);
    assert_eq!(a, b);
    assert!(a.ends_with("0 failed"), "{a}");
}

#[test]
fn failures_exit_nonzero() {
    // The free Moebius coproduct breaks at degree four; verify reports it.
    let out = ncbell(&["verify", "--suite", "mobius", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(ncbell(&["bell", "-n", "99"]).status.code(), Some(2));
    assert_eq!(
        ncbell(&["bell", "-n", "2", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncbell(&["bell", "-n", "2", "-k", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncbell(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncbell(&["hopf", "--dfdb", "--antipode", "--method", "det", "-n", "3"])
            .status
            .code(),
        Some(2)
    );
}
