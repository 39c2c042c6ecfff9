use std::path::PathBuf;
use std::process::{Command, Output};

fn gsb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsb")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_b3_succeeds() {
    let o = gsb(&["verify-gsb", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ambiguities checked: 73, failures: 0");
}

#[test]
fn normal_form_of_a_square() {
    let o = gsb(&["nf", "--n", "3", "--word", "g1^-1 g1^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s12^-1");
    let o = gsb(&["nf", "--n", "3", "--word", "g1^-1 g1^-1 g1^-1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["normal_form"], "s12^-1 g1^-1");
}

#[test]
fn missing_family_is_reported() {
    let o = gsb(&["verify-gsb", "--presentation", &fixture("broken.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL Nontrivial (16)∧(16)"));
    assert!(text.trim_end().ends_with("failures: 16"));
}

#[test]
fn dumped_presentation_verifies() {
    let dump = gsb(&["dump-presentation", "--n", "4"]);
    let path = std::env::temp_dir().join(format!("gsb-dump-{}.txt", std::process::id()));
    std::fs::write(&path, &dump.stdout).unwrap();
    let o = gsb(&["verify-gsb", "--presentation", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ambiguities checked: 418, failures: 0");
}

#[test]
fn usage_errors_exit_2() {
    let path = std::env::temp_dir().join(format!("gsb-bad-{}.txt", std::process::id()));
    std::fs::write(&path, "letters: a > b\norder: deglex(all)\na.c = b\n").unwrap();
    let o = gsb(&["verify-gsb", "--presentation", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(gsb(&["nf", "--n", "3", "--word", "g7"]).status.code(), Some(2));
    assert_eq!(gsb(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn fuel_exhaustion_exits_3() {
    let o = gsb(&["verify-gsb", "--n", "4", "--fuel", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_does_not_depend_on_jobs() {
    let one = gsb(&["verify-gsb", "--presentation", &fixture("broken.txt"), "--json", "--jobs", "1"]);
    let four = gsb(&["verify-gsb", "--presentation", &fixture("broken.txt"), "--json", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let one = gsb(&["compositions", "--n", "4", "--json", "--jobs", "1"]);
    let four = gsb(&["compositions", "--n", "4", "--json", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn scoped_compositions_cover_the_full_list() {
    let full = gsb(&["compositions", "--n", "3", "--json"]);
    let full: serde_json::Value = serde_json::from_slice(&full.stdout).unwrap();
    let total = full["ambiguities_checked"].as_u64().unwrap();
    assert_eq!(total, 73);
    let mut sum = 0;
    for i in 1..=17 {
        for j in 1..=17 {
            let o = gsb(&["compositions", "--n", "3", "--json", "--scope", &format!("{i},{j}")]);
            let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
            for c in v["compositions"].as_array().unwrap() {
                assert_eq!((c["left_family"].as_u64(), c["right_family"].as_u64()), (Some(i), Some(j)));
            }
            sum += v["ambiguities_checked"].as_u64().unwrap();
        }
    }
    assert_eq!(sum, total);
}

#[test]
fn irreducible_words_and_completion() {
    let o = gsb(&["irr", "--n", "3", "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.is_empty()).count(), 9);
    let o = gsb(&["complete", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
}
