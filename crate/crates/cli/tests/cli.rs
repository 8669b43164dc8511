use assert_cmd::Command;

fn mcmkit() -> Command {
    let mut c = Command::cargo_bin("mcmkit").unwrap();
    c.env_remove("MF_PRECISION_MAX").env_remove("MF_FIELD");
    c
}

fn stdout(args: &[&str]) -> String {
    let out = mcmkit().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn analyze_t44_counts() {
    let v = json(&["analyze", "--catalog", "T44", "--lambda", "2", "--json"]);
    assert_eq!(v["schema"], 1);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c["value"].as_u64().unwrap()).collect();
    assert_eq!(counts, [14, 24, 3]);
    for c in v["counts"].as_array().unwrap().iter().chain(v["geometry"].as_array().unwrap()) {
        assert!(["formula", "verified", "cross-checked", "asserted", "unverified"].contains(&c["label"].as_str().unwrap()));
    }
}

#[test]
fn analyze_e7_has_no_cluster_tilting() {
    let s = stdout(&["analyze", "x*(x^2+y^3)"]);
    assert!(s.contains("verdict: no cluster tilting object"), "{s}");
    assert!(s.contains("fails (f2 has order 2)"));
}

#[test]
fn analyze_e7_catalog_uses_mesh_counts() {
    let v = json(&["analyze", "--catalog", "E7", "--json"]);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c["value"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 0, 1]);
    assert_eq!(v["counts"][1]["label"], "cross-checked");
}

#[test]
fn analyze_empty_factor_is_a_parse_error() {
    mcmkit().args(["analyze", "--factors", "x", ""]).assert().code(2);
    mcmkit().args(["analyze", "x +* y"]).assert().code(2);
}

#[test]
fn analyze_compact_needs_the_flag() {
    mcmkit().args(["analyze", "x3+xy3"]).assert().code(2);
    let s = stdout(&["analyze", "--compact", "x3+xy3"]);
    assert!(s.contains("x^3 + x*y^3"));
}

#[test]
fn analyze_verify_lines() {
    let v = json(&["analyze", "--factors", "x", "y", "x - y", "--verify", "--json"]);
    let labels: Vec<&str> = v["counts"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["verified", "verified", "verified"]);
}

#[test]
fn analyze_output_is_deterministic() {
    let a = stdout(&["analyze", "--catalog", "T36", "--json"]);
    let b = stdout(&["analyze", "--catalog", "T36", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn mutation_graph_shapes() {
    let s = stdout(&["mutation-graph", "--n", "3"]);
    assert!(s.starts_with("6 vertices, 6 edges (6-cycle)"), "{s}");
    let v = json(&["mutation-graph", "--n", "2", "--json"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
    let dot = stdout(&["mutation-graph", "--n", "3", "--dot"]);
    assert!(dot.starts_with("graph mutations {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn mutation_graph_d4_labels() {
    let dot = stdout(&["mutation-graph", "--catalog", "D_even_split", "--dot"]);
    for l in ["{A,C+}", "{A,C-}", "{C+,D-}", "{B,D-}", "{C-,D+}", "{B,D+}"] {
        assert!(dot.contains(&format!("label=\"{l}\"")), "{l}");
    }
}

#[test]
fn mutation_graph_needs_condition_a() {
    mcmkit().args(["mutation-graph", "--catalog", "E7"]).assert().code(1);
}

#[test]
fn ext_table_engines() {
    let s = stdout(&["ext-table", "E7", "--engine", "both"]);
    assert!(s.contains("agree"));
    assert!(!s.contains("NO"));
    let v = json(&["ext-table", "T36", "--json"]);
    let t = &v["symbolic"];
    assert_eq!(t.as_array().unwrap().len(), 2);
    assert_eq!(t[0][1], t[1][0]);
    let out = mcmkit().args(["ext-table", "E8"]).assert().code(1).get_output().stderr.clone();
    assert!(String::from_utf8(out).unwrap().contains("no symbolic presentations in catalog"));
    let v = json(&["ext-table", "E8", "--engine", "mesh", "--json"]);
    assert_eq!(v["objects"].as_array().unwrap().len(), 16);
}

#[test]
fn precision_cap_exit_code() {
    mcmkit().args(["--precision-max", "8", "ext-table", "E7"]).assert().code(4);
    mcmkit().env("MF_PRECISION_MAX", "8").args(["ext-table", "E7"]).assert().code(4);
    mcmkit().env("MF_PRECISION_MAX", "8").args(["--precision-max", "32", "ext-table", "E7"]).assert().success();
    mcmkit().env("MF_FIELD", "GF(4)").args(["ext-table", "T36"]).assert().code(1);
}

#[test]
fn verify_exit_codes() {
    mcmkit().args(["verify", "thm1_2"]).assert().success();
    mcmkit().args(["verify", "hammocks"]).assert().success();
    let out = mcmkit().args(["verify", "singular_e7", "--json"]).assert().code(3).get_output().stdout.clone();
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let failed: Vec<&str> = v["suites"][0]["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["Ext1(M1,M1)"]);
    mcmkit().args(["verify", "nonsense"]).assert().code(1);
}

#[test]
fn usage_errors() {
    mcmkit().args(["frobnicate"]).assert().code(1);
    mcmkit().args(["analyze"]).assert().code(1);
    mcmkit().args(["ext-table", "E7", "--engine", "fast"]).assert().code(1);
    mcmkit().args(["--help"]).assert().success();
}
