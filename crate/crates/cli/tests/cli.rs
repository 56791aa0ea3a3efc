use std::path::Path;
use std::process::{Command, Output};

use splicekit::regular::Nfa;
use splicekit::splicing::SplicingSystem;

fn splicekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splicekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const EXAMPLE_ONE: &str =
    r#"{"variant":"classic","alphabet":["a","b"],"axioms":["ab"],"rules":[["a","b","","ab"],["ab","","a","b"]]}"#;

#[test]
fn decide_even_length_says_no() {
    let o = splicekit(&["decide", "--lang", "(aa)*", "--alphabet", "a", "--variant", "classic", "--bounds", "theorem"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("a^16"), "{}", stdout(&o));
}

#[test]
fn decide_custom_bounds_says_yes_and_emits() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    let clo = dir.path().join("closure.json");
    let o = splicekit(&[
        "decide", "--lang", "a+b+", "--alphabet", "ab", "--variant", "classic", "--axiom-lt", "3",
        "--inner-lt", "3", "--outer-lt", "3", "--prune", "--emit-system", sys.to_str().unwrap(),
        "--emit-closure", clo.to_str().unwrap(), "--stats",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("yes\n"));
    assert!(out.contains("\"candidate_rules\":2401"));

    let system = SplicingSystem::from_json(&std::fs::read_to_string(&sys).unwrap()).unwrap();
    let closure = Nfa::from_json(&std::fs::read_to_string(&clo).unwrap()).unwrap();
    let expect = splicekit::regular::parse_regex("a+b+", system.alphabet()).unwrap().to_min_dfa();
    assert!(closure.to_min_dfa().equivalent(&expect).unwrap().0);
    assert!(splicekit::closure::closure_language(&system).unwrap().equivalent(&expect).unwrap().0);
}

#[test]
fn decide_inconclusive_and_limit() {
    let o = splicekit(&[
        "decide", "--lang", "(aa)*", "--alphabet", "a", "--variant", "pixton", "--axiom-lt", "2",
        "--inner-lt", "1", "--outer-lt", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = splicekit(&["decide", "--lang", "a+b+", "--alphabet", "ab", "--variant", "classic"]);
    assert_eq!(o.status.code(), Some(69));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the limit"));
}

#[test]
fn candidate_limit_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_splicekit"))
        .args(["decide", "--lang", "(aa)*", "--alphabet", "a", "--variant", "classic"])
        .env("SPLICEKIT_CANDIDATE_LIMIT", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(69));
}

#[test]
fn monoid_json() {
    let o = splicekit(&["monoid", "--lang", "a+b+", "--alphabet", "ab"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"size\":5"));
    assert_eq!(out, stdout(&splicekit(&["monoid", "--lang", "a+b+", "--alphabet", "ab", "--json"])));
}

#[test]
fn splice_running_example() {
    let o = splicekit(&["splice", "--variant", "classic", "--rule", "a,b;,ab", "--w1", "ab", "--w2", "ab"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "aab\n");
    // x1 ∈ {ε, a}, y2 ∈ {ε, b}
    let o = splicekit(&["splice", "--variant", "pixton", "--rule", "a,b;c", "--w1", "aa", "--w2", "bb"]);
    assert_eq!(stdout(&o), "c\nac\ncb\nacb\n");
    let o = splicekit(&["splice", "--variant", "classic", "--rule", "a,b;,ab", "--w1", "ab", "--w2", "ab", "--positions"]);
    assert_eq!(stdout(&o), "aab 1\n");
}

#[test]
fn respect_with_witness() {
    let o = splicekit(&["respect", "--lang", "a+b+", "--alphabet", "ab", "--variant", "classic", "--rule", "a,b;,ab"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let o = splicekit(&[
        "respect", "--lang", "(aa)*", "--alphabet", "a", "--variant", "classic", "--rule", "aa,;aa,", "--witness",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: "));
}

#[test]
fn closure_and_oracle_agree_on_marker_system() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(
        dir.path(),
        "m.json",
        r#"{"variant":"classic","alphabet":["a","b"],"axioms":["b","baa"],"rules":[["baa","","b",""]]}"#,
    );
    let out_json = dir.path().join("c.json");
    let out_dot = dir.path().join("c.dot");
    let o = splicekit(&[
        "closure", "--system", &sys, "--emit-closure", out_json.to_str().unwrap(), "--dot",
        out_dot.to_str().unwrap(), "--trace",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("round 1"));
    assert!(std::fs::read_to_string(&out_dot).unwrap().starts_with("digraph"));
    let nfa = Nfa::from_json(&std::fs::read_to_string(&out_json).unwrap()).unwrap();
    let reparsed = Nfa::from_json(&nfa.to_json()).unwrap();
    assert!(nfa.to_min_dfa().equivalent(&reparsed.to_min_dfa()).unwrap().0);

    let o = splicekit(&["oracle", "--system", &sys, "--report-len", "7"]);
    assert_eq!(stdout(&o), "b\nbaa\nbaaaa\nbaaaaaa\n");
    let from_automaton: Vec<String> = nfa.to_min_dfa().enumerate_words(7);
    assert_eq!(from_automaton.join("\n") + "\n", stdout(&o));
}

#[test]
fn lang_from_automaton_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = EXAMPLE_ONE;
    let sys = write(dir.path(), "e1.json", s);
    let clo = dir.path().join("e1c.json");
    assert!(splicekit(&["closure", "--system", &sys, "--emit-closure", clo.to_str().unwrap()]).status.success());
    let arg = format!("@{}", clo.to_str().unwrap());
    let o = splicekit(&["monoid", "--lang", &arg]);
    assert!(stdout(&o).contains("\"size\":5"));
    let o = splicekit(&["monoid", "--lang", &arg, "--alphabet", "ba"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn pump() {
    let o = splicekit(&["pump", "--lang", "(aa)*", "--alphabet", "a", "--word", "aaaa", "--z", "aaaaaa", "--j", "12"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("beta=aa"));
    let o = splicekit(&["pump", "--lang", "(aa)*", "--alphabet", "a", "--word", "aaaa", "--j", "3"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(splicekit(&["nope"]).status.code(), Some(64));
    assert_eq!(splicekit(&["monoid", "--lang", "a+"]).status.code(), Some(64));
    assert_eq!(splicekit(&["monoid", "--lang", "a+(", "--alphabet", "a"]).status.code(), Some(65));
    assert_eq!(splicekit(&["closure", "--system", "/nonexistent/x.json"]).status.code(), Some(66));
    assert_eq!(splicekit(&["--help"]).status.code(), Some(0));
    assert_eq!(
        splicekit(&["decide", "--lang", "a", "--alphabet", "a", "--variant", "classic", "--bounds", "tiny"]).status.code(),
        Some(64)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["decide", "--lang", "a*", "--alphabet", "a", "--variant", "pixton", "--json"];
    let strip = |s: String| s.split("\"wall_time_s\"").next().unwrap().to_string();
    assert_eq!(strip(stdout(&splicekit(&args))), strip(stdout(&splicekit(&args))));
}
