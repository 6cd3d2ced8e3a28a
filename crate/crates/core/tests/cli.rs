use std::process::{Command, Output};

use qeis::cli::{CoeffOutput, SeriesOutput, VerifyOutput};

fn qeis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeis"))
        .args(args)
        .env_remove("QEIS_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reemit<T: serde::Serialize + serde::de::DeserializeOwned>(text: &str) -> String {
    let value: T = serde_json::from_str(text).unwrap();
    serde_json::to_string(&value).unwrap() + "\n"
}

#[test]
fn json_output_round_trips_byte_identically() {
    for args in [
        &["series", "g", "--format", "json"][..],
        &[
            "series", "h", "--k-max", "3", "--order", "12", "--format", "json",
        ],
        &["series", "u", "--format", "json"],
        &["series", "G", "--k-max", "8", "--format", "json"],
        &["coeffs", "bnm", "--n-max", "12", "--format", "json"],
        &[
            "verify", "--suite", "exact", "--order", "6", "--format", "json",
        ],
    ] {
        let o = qeis(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let again = match args[0] {
            "series" => reemit::<SeriesOutput>(&text),
            "coeffs" => reemit::<CoeffOutput>(&text),
            _ => reemit::<VerifyOutput>(&text),
        };
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn typed_series_output_round_trips() {
    let text = stdout(&qeis(&["series", "h", "--format", "json"]));
    let parsed: qeis::cli::SeriesOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(
        parsed,
        qeis::cli::series_rows(qeis::cli::SeriesKind::H, 6, 8).unwrap()
    );
    assert_eq!(serde_json::to_string(&parsed).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify", "--suite", "all", "--order", "6", "--seed", "11", "--format", "csv",
    ];
    assert_eq!(qeis(&args).stdout, qeis(&args).stdout);
}

#[test]
fn order_defaults_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qeis"))
        .args(["series", "g", "--k-max", "1"])
        .env("QEIS_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "g_1 = -1/2 + q + q^2 - q^3 + O(q^4)\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        qeis(&["verify", "--suite", "exact", "--order", "8"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        qeis(&["series", "g", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qeis(&["coeffs", "anm", "--n-max", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qeis(&["verify", "--suite", "everything"]).status.code(),
        Some(2)
    );

    let faulty = qeis(&[
        "verify",
        "--suite",
        "exact",
        "--order",
        "8",
        "--inject-fault",
    ]);
    assert_eq!(faulty.status.code(), Some(1));
    let err = String::from_utf8(faulty.stderr).unwrap();
    assert!(
        err.contains("FAIL g: extraction = closed form = recursion"),
        "{err}"
    );
}

#[test]
fn numeric_suite_reports_the_slow_limit() {
    let o = qeis(&["verify", "--suite", "numeric", "--seed", "7"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("FAIL ") && !l.contains("checks,"))
        .collect();
    assert_eq!(failing.len(), 1, "{out}");
    assert!(failing[0].starts_with("FAIL Hhat limit"));
}
