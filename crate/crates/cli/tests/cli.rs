use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn tensq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(args: &[&str]) -> String {
    let out = tensq(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn structured(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    serde_json::from_str(&text(&all)).unwrap()
}

#[test]
fn gamma_examples() {
    assert_eq!(structured(&["gamma", "Z_2"])["results"]["gamma"]["group"], "Z_4");
    assert_eq!(structured(&["gamma", "Z^3"])["results"]["gamma"]["group"], "Z^6");
    let a = structured(&["gamma", "Z_6"]);
    let b = structured(&["gamma", "Z_2 x Z_3"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn tensor_examples() {
    let r = structured(&["tensor", "--group", "Z2"]);
    assert_eq!(r["results"]["result"]["order"], 2);
    let r = structured(&["tensor", "--group", "Z2", "--exterior"]);
    assert_eq!(r["results"]["result"]["order"], 1);
    let r = structured(&["tensor", "--group", "D4", "--strategy", "both"]);
    assert_eq!(r["results"]["strategies_agree"], true);
    assert_eq!(r["results"]["hlt"]["order"], r["results"]["felsch"]["order"]);
    let r = structured(&["tensor", "--group", "< a, b | a^2, b^2, (a b)^3 >", "--tietze"]);
    assert_eq!(r["results"]["result"]["order"], 6);
}

#[test]
fn peiffer_examples() {
    let r = structured(&["peiffer", "--group", "S3"]);
    assert_eq!(r["results"]["abelianization"]["group"], "Z_2 x Z_2");
    let r = structured(&["peiffer", "--group", "Z3", "--with", "Z4"]);
    assert_eq!(r["results"]["order"], 12);
    assert_eq!(r["results"]["direct_product_order"], 12);
    let r = structured(&["peiffer", "--group", "Q8"]);
    assert_eq!(r["results"]["abelianization"]["invariant_factors"], serde_json::json!(["2", "2", "2", "2"]));
    assert_eq!(r["results"]["abelianization_matches"], true);
}

#[test]
fn pure_braid_index() {
    let r = structured(&[
        "cosets",
        "--group",
        "< s1, s2 | s1 s2 s1 s2^-1 s1^-1 s2^-1 >",
        "--subgroup",
        "s1^2",
        "--subgroup",
        "s2^2, s2 s1^2 s2^-1",
        "--strategy",
        "both",
    ]);
    assert_eq!(r["results"]["index"], 6);
}

#[test]
fn malcev_from_files() {
    let mut tf = tempfile::NamedTempFile::new().unwrap();
    writeln!(tf, "torsion_free_rank = inf").unwrap();
    let path = tf.path().to_str().unwrap();
    let r = structured(&["malcev", "--descriptor", path, "--degree", "1"]);
    assert_eq!(r["results"]["linear"], true);

    let mut g2 = tempfile::NamedTempFile::new().unwrap();
    writeln!(g2, "torsion_free_rank: 1\nprime: 2\nrank: infinite\nexponent: 1").unwrap();
    let path = g2.path().to_str().unwrap();
    let r = structured(&["malcev", "--descriptor", path, "--char", "2", "--degree", "2"]);
    assert_eq!(r["results"]["linear"], true);
    assert_eq!(r["results"]["lhs"], "2");
    assert_eq!(r["results"]["rhs"], 3);
    let r = structured(&["malcev", "--descriptor", path, "--char", "2", "--degree", "1"]);
    assert_eq!(r["results"]["linear"], false);
    let r = structured(&["malcev", "--descriptor", path, "--char", "3", "--degree", "50"]);
    assert_eq!(r["results"]["linear"], false);
    assert_eq!(r["results"]["r"], "inf");

    for args in [["--char", "0"], ["--char", "2"], ["--char", "5"]] {
        let mut all = vec!["malcev", "--canned", "k2q", "--degree", "8"];
        all.extend(args);
        assert_eq!(structured(&all)["results"]["linear"], false);
    }
}

#[test]
fn malcev_bad_file_is_an_input_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "prime = 6, rank = 1, exponent = 1").unwrap();
    let out = tensq(&["malcev", "--descriptor", f.path().to_str().unwrap(), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    let out = tensq(&["malcev", "--canned", "g2", "--char", "4", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rep_examples() {
    let r = structured(&["rep", "tensor-free", "--n", "3", "--samples", "200"]);
    let vars = r["results"]["variables"].as_array().unwrap();
    assert_eq!(vars.len(), 6);
    assert!(vars.iter().all(|v| v.as_str().unwrap().ends_with("(laurent)")));
    assert_eq!(r["results"]["scalar_block_central"], true);
    assert_eq!(r["results"]["sampling"]["identity_hits"], 0);

    let r = structured(&["rep", "button", "--variant", "2", "--count", "3"]);
    assert_eq!(r["results"]["all_identities_hold"], true);
    assert_eq!(r["results"]["identities_checked"], 12);

    let r = structured(&["rep", "nilpotent", "--n", "2", "--c", "1"]);
    assert_eq!(r["results"]["dimension"], 3);
    assert_eq!(r["results"]["commutators"]["vanishing_all"], true);

    let r = structured(&["rep", "sanov", "--samples", "500", "--seed", "7"]);
    assert_eq!(r["results"]["sampling"]["identity_hits"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(tensq(&["tensor", "--group", "nonsense"]).status.code(), Some(1));
    assert_eq!(tensq(&["gamma", "Z_"]).status.code(), Some(1));
    assert_eq!(tensq(&["tensor"]).status.code(), Some(1));
    assert_eq!(tensq(&["rep", "free", "--n", "0"]).status.code(), Some(1));
    assert_eq!(
        tensq(&["tensor", "--group", "Q8", "--budget", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(tensq(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_reproducible_and_renderings_agree() {
    let args = ["rep", "free", "--n", "3", "--samples", "300", "--seed", "11"];
    assert_eq!(text(&args), text(&args));
    let t = text(&["tensor", "--group", "Q8"]);
    let s = structured(&["tensor", "--group", "Q8"]);
    let res = &s["results"]["result"];
    for key in ["order", "kappa_kernel_order", "kappa_table_sha256", "abelianization"] {
        let v = match &res[key] {
            Value::String(x) => x.clone(),
            other => other.to_string(),
        };
        assert!(t.contains(&format!("{key}: {v}\n")), "{key} missing from text rendering");
    }
    let again = structured(&["tensor", "--group", "Q8"]);
    assert_eq!(s, again);
}
