use std::process::Command;

use charstack::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("charstack").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call_json(args: &[&str]) -> (i32, Value) {
    let mut v = args.to_vec();
    v.push("--json");
    let (code, out, err) = call(&v);
    assert!(err.is_empty() || code != 0, "{err}");
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn a2_walk_list() {
    let (code, doc) = call_json(&["walks", "--type", "A2", "--word", "a,b,b,a", "--from", "e"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["config"]["word"], "a,b,b,a");
    let mut tracks: Vec<Vec<String>> = doc["result"]["walks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["p"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect())
        .collect();
    tracks.sort();
    assert_eq!(
        tracks,
        vec![
            vec!["e", "s1", "s2s1", "s1", "e"],
            vec!["e", "s1", "s2s1", "s1", "s1"],
            vec!["e", "s1", "s2s1", "s2s1", "s1s2s1"],
        ]
    );
}

#[test]
fn unknown_letter_is_invalid_input() {
    let (code, _, err) = call(&["walks", "--type", "A2", "--word", "a,q"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown letter"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(call(&["walks", "--type", "A2"]).0, 2);
    assert_eq!(call(&["motive", "--type", "X9"]).0, 2);
    assert_eq!(call(&["motive", "--type", "A1", "--k", "0"]).0, 2);
    assert_eq!(call(&["walks", "--type", "A1", "--word", "a,a", "--steps", "S S"]).0, 2);
}

#[test]
fn mirror_rank_one() {
    let (code, doc) = call_json(&["mirror", "--type", "A1", "--F", "full", "--g", "1", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["equal"], true);
    assert_eq!(doc["result"]["validity"], "unconditional");
    assert_eq!(doc["result"]["lhs"]["display"], "q^2 + 4q + 1");
    assert_eq!(doc["result"]["rhs"]["display"], "q^2 + 4q + 1");
    assert_eq!(doc["config"]["F"], "full");
}

#[test]
fn stringy_needs_twists_at_genus_two() {
    let (code, _, err) = call(&["stringy", "--type", "C2", "--g", "2", "--F", "full"]);
    assert_eq!(code, 2);
    assert!(err.contains("handle twists"));
}

#[test]
fn stringy_carries_validity_tag() {
    let (code, doc) = call_json(&["stringy", "--type", "B2", "--g", "1", "--F", "full"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["validity"], "conditional");
}

#[test]
fn explicit_twist_generator() {
    let (code, doc) = call_json(&["stringy", "--type", "A1", "--g", "1", "--F", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["display"], "q^2 + 4q + 1");
    assert_eq!(call(&["stringy", "--type", "A1", "--g", "1", "--F", "1/3"]).0, 2);
}

#[test]
fn motive_and_evaluation() {
    let (code, doc) = call_json(&["motive", "--type", "A1", "--g", "1", "--eval", "3,5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["display"], "q^2 + 4q + 1");
    assert_eq!(doc["result"]["evaluations"][0]["value"], 22);
    assert_eq!(doc["result"]["evaluations"][1]["value"], 46);
    assert_eq!(doc["result"]["dimension"], 2);
}

#[test]
fn invariants_of_a_cell() {
    let (code, doc) = call_json(&["invariants", "--type", "A1", "--handle", "e:s1", "--F", "full"]);
    assert_eq!(code, 0);
    let row = &doc["result"]["walks"][0];
    assert_eq!(row["cell"]["surjective"], true);
    assert_eq!(row["sectors"]["m1"], 2);
}

#[test]
fn oracle_verb() {
    let (code, doc) = call_json(&["oracle", "--q", "7", "--zeta", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["ratio"], 78);
    assert_eq!(call(&["oracle", "--q", "5", "--zeta", "2"]).0, 2);
}

#[test]
fn output_is_byte_stable() {
    let args = ["stringy", "--type", "A2", "--g", "1", "--F", "full", "--twists", "identity"];
    assert_eq!(call(&args).1, call(&args).1);
    let mut par = args.to_vec();
    par.extend(["--jobs", "3"]);
    let (a, b) = (call_json(&args).1, call_json(&par).1);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn binary_writes_report_to_output_dir() {
    let dir = std::env::temp_dir().join(format!("charstack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_charstack"))
        .args(["walks", "--type", "A1", "--word", "a,a"])
        .env("CHARSTACK_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("walks.json")).unwrap()).unwrap();
    assert_eq!(doc["result"]["count"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
