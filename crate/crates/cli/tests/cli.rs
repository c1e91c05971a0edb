use std::path::PathBuf;
use std::process::{Command, Output};

use lcadag_core::text::{
    emit_dag, emit_set_system, emit_transit, parse_dag, parse_set_system, parse_transit,
};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn lcadag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcadag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_dag_reports_failing_properties() {
    let o = lcadag(&[
        "check-dag",
        &fixture("fig1.dag"),
        "--k",
        "2",
        "--props",
        "pcc,klca",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "PCC: FAIL witness=(p,v) C(p)={w,x,y} C(v)={x,y}\nKLCA(k=2): FAIL witness={x,y} LCA={p,v,q}\n"
    );
}

#[test]
fn check_sets_mixed_verdicts_exit_one() {
    let o = lcadag(&[
        "check-sets",
        &fixture("fig3.sets"),
        "--k",
        "2",
        "--props",
        "tsystem,kweak",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["property"], "T_SYSTEM");
    assert_eq!(v[0]["holds"], true);
    assert_eq!(v[1]["property"], "K_WEAK_HIER");
    assert_eq!(v[1]["holds"], false);
}

#[test]
fn passing_report_json_is_byte_stable() {
    let o = lcadag(&[
        "check-sets",
        &fixture("fig1.sets"),
        "--props",
        "ks",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[{\"property\":\"KS\",\"k\":null,\"holds\":true,\"witness\":null}]\n"
    );
}

#[test]
fn default_properties_skip_k_without_k() {
    let o = lcadag(&["check-dag", &fixture("fig3.dag")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("(k="));
    let o = lcadag(&["check-dag", &fixture("fig3.dag"), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("STRONG_KLCA(k=3): PASS"));
}

#[test]
fn closure_of_a_pair() {
    let o = lcadag(&["closure", &fixture("fig2.sets"), "--of", "x,y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{x,y,z}\n");
    let o = lcadag(&["closure", &fixture("fig2.sets"), "--of", "x,q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions_and_exit_two() {
    let o = lcadag(&["check-dag", &fixture("self_loop.dag")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
    assert!(stderr(&o).contains("cycle"));

    let o = lcadag(&["check-transit", &fixture("ex1_partial.transit")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not total"));

    let o = lcadag(&[
        "check-transit",
        &fixture("ex1_partial.transit"),
        "--implicit-t3",
        "--props",
        "t1,t3,aprime",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = lcadag(&["check-dag", &fixture("does_not_exist.dag")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["check-dag", "x.dag", "--props", "nonsense"],
        vec!["validate", "UNKNOWN_ID"],
        vec!["validate", "--bounds", "n=9"],
        vec!["validate", "--k-range", "1..3"],
        vec!["frobnicate"],
        vec!["gen", "sets", "--n", "2", "--members", "9"],
    ] {
        assert_eq!(lcadag(&args).status.code(), Some(2), "{args:?}");
    }
    let o = lcadag(&["check-dag", &fixture("fig1.dag"), "--props", "klca"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("needs a parameter k"));
    let o = lcadag(&["check-transit", &fixture("ex1.transit"), "--props", "klca"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn transit_checks_follow_the_example() {
    let o = lcadag(&[
        "check-transit",
        &fixture("ex1.transit"),
        "--props",
        "monotone,aprime,network",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.starts_with("MONOTONE(k=2): FAIL witness=(U={a,c},W={a,b})"),
        "{out}"
    );
    assert!(out.contains("A_PRIME(k=2): PASS"));
    assert!(out.contains("NETWORK: PASS"));
}

#[test]
fn rg_and_canonical_agree_when_defined() {
    let rg = lcadag(&["rg", &fixture("fig3.dag"), "--k", "2"]);
    assert_eq!(rg.status.code(), Some(0));
    let can = lcadag(&["canonical", &fixture("fig3.sets"), "--k", "2"]);
    assert_eq!(can.status.code(), Some(0));
    assert_eq!(
        parse_transit(&stdout(&rg), false).unwrap(),
        parse_transit(&stdout(&can), false).unwrap()
    );

    let o = lcadag(&["rg", &fixture("fig1.dag"), "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("LCA = {p,v,q}"));
}

#[test]
fn clusters_and_hasse_round_trip() {
    let o = lcadag(&["clusters", &fixture("fig1.dag")]);
    assert_eq!(o.status.code(), Some(0));
    let sys = parse_set_system(&stdout(&o)).unwrap();
    assert_eq!(
        sys,
        parse_set_system(&std::fs::read_to_string(fixture("fig1.sets")).unwrap()).unwrap()
    );

    let o = lcadag(&["hasse", &fixture("fig1.sets")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_dag(&stdout(&o)).unwrap().cluster_system(), sys);

    let o = lcadag(&["hasse", &fixture("ex1.transit"), "--transit", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph hasse {\n"));
    assert!(dot.contains("\"a+b+c+d\" -> \"a+b+c\";"));
}

#[test]
fn validate_reports_and_hides_timing_by_default() {
    let o = lcadag(&[
        "validate", "LEM4", "--bounds", "n=2,v=3", "--random", "0", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["theorem"], "LEM4");
    assert_eq!(v["instances_checked"], 29);
    assert_eq!(v["discrepancies"], serde_json::json!([]));
    assert!(v.get("elapsed_ms").is_none());

    let o = lcadag(&[
        "validate", "LEM4", "PROP6", "--bounds", "n=2,v=3", "--random", "0", "--format", "json",
        "--timing",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["elapsed_ms"].is_u64());
    assert_eq!(v[1]["form_divergences"], 0);
}

#[test]
fn catalog_lists_every_separation() {
    let o = lcadag(&["catalog", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v.as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["claim"] == "lca =/=> strong 2-lca" && e["instance"] == "FIG3"));
    assert!(entries
        .iter()
        .any(|e| e["claim"] == "Hasse has k-lca =/=> R monotone" && e["instance"] == "EX1"));
}

#[test]
fn generated_instances_are_reproducible_and_parse() {
    let a = lcadag(&[
        "gen",
        "dag",
        "--seed",
        "11",
        "--vertices",
        "8",
        "--density",
        "0.4",
    ]);
    let b = lcadag(&[
        "gen",
        "dag",
        "--seed",
        "11",
        "--vertices",
        "8",
        "--density",
        "0.4",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(parse_dag(&stdout(&a)).unwrap().len(), 8);

    let s = lcadag(&[
        "gen",
        "sets",
        "--seed",
        "2",
        "--n",
        "5",
        "--members",
        "4",
        "--clustering",
    ]);
    let sys = parse_set_system(&stdout(&s)).unwrap();
    assert!(sys.check_ks().holds && sys.check_k1().holds);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = lcadag(&[
        "check-dag",
        &fixture("fig3.dag"),
        "--k",
        "2",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(written
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["property"] == "STRONG_KLCA" && r["holds"] == false));
}

#[test]
fn fixture_files_round_trip() {
    for name in ["fig1.dag", "fig2.dag", "fig3.dag", "sec2_no_anc.dag"] {
        let d = parse_dag(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(parse_dag(&emit_dag(&d)).unwrap(), d, "{name}");
    }
    for name in ["fig1.sets", "fig2.sets", "fig3.sets"] {
        let s = parse_set_system(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(parse_set_system(&emit_set_system(&s)).unwrap(), s, "{name}");
    }
    let t = parse_transit(
        &std::fs::read_to_string(fixture("ex1.transit")).unwrap(),
        false,
    )
    .unwrap();
    assert_eq!(parse_transit(&emit_transit(&t), false).unwrap(), t);
}

#[test]
fn fixture_files_match_the_library_fixtures() {
    use lcadag_core::validate::fixtures::{fig1_dag, fig2_dag, fig3_dag, sec2_no_anc_dag};
    for (name, d) in [
        ("fig1.dag", fig1_dag()),
        ("fig2.dag", fig2_dag()),
        ("fig3.dag", fig3_dag()),
        ("sec2_no_anc.dag", sec2_no_anc_dag()),
    ] {
        let parsed = parse_dag(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(parsed.cluster_system(), d.cluster_system(), "{name}");
        assert_eq!(parsed.edge_count(), d.edge_count(), "{name}");
    }
}
