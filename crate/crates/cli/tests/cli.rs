use std::path::PathBuf;
use std::process::Command;

use cyclift_cli::run;
use cyclift_testkit::{random_obstructed_scenario, worked_case};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .display()
        .to_string()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(all);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn verify_worked_case() {
    let (code, r) = json(&["verify", &fixture("worked.scn")]);
    assert_eq!(code, 0);
    assert_eq!(r["branch"], "Obstructed");
    assert_eq!(r["overall"], "pass");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names[0].starts_with("1:") && names[1].starts_with("2:"));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn check_cycle_reports_the_obstruction() {
    let out = run(["check-cycle", &fixture("worked.scn"), "--class", "muY", "--order", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("result: not-a-cycle"));
    assert!(out.stdout.contains("sum: [ε^1: 1] over (x, y) at origin"));
    assert!(out.stdout.contains("ε^1 [1]: 1 ∉ (x, y)"));
    for class in ["C", "C-minus-muZ", "muZ"] {
        let out = run(["check-cycle", &fixture("worked.scn"), "--class", class, "--order", "1"]);
        assert_eq!(out.code, 0, "{class}: {}", out.stdout);
    }
}

#[test]
fn lift_and_boundary() {
    let (code, r) = json(&["lift", &fixture("worked.scn"), "--to", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["scenario"]["order"], 3);
    assert_eq!(r["checks"].as_array().unwrap().len(), 4);
    let (code, r) = json(&["boundary", &fixture("worked.scn")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"], "nontrivial");
    assert_eq!(r["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn kernel_commands() {
    let (code, r) = json(&["member", "y^3-1", "--ideal", "x^2-y,x*y-1"]);
    assert_eq!((code, r["result"].as_str()), (0, Some("true")));
    let (code, r) = json(&["member", "x", "--ideal", "x^2-y,x*y-1"]);
    assert_eq!((code, r["result"].as_str()), (0, Some("false")));
    let (_, r) = json(&["member", "y", "--ideal", "y + y*x", "--vars", "x y", "--local"]);
    assert_eq!(r["result"], "true");
    let (code, r) = json(&["groebner", "--ideal", "x^2-y,x*y-1"]);
    assert_eq!((code, r["result"].as_str()), (0, Some("[x^2 - y, x*y - 1, y^2 - x]")));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["verify"],
        vec!["verify", "no-such-file.scn"],
        vec!["check-cycle", "x.scn", "--class", "muX"],
        vec!["lift", "x.scn", "--to", "0"],
        vec!["member", "y + w", "--ideal", "x", "--vars", "x y"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing.scn");
    std::fs::write(&path, worked_case(1).file_text().replace("fnext: y\n", "")).unwrap();
    let out = run(["verify", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("missing key: fnext"), "{}", out.stderr);
    assert_eq!(run(["--help"]).code, 0);
}

#[test]
fn unsupported_branch_fails() {
    let (code, r) = json(&["verify", &fixture("failing/unsupported.scn")]);
    assert_eq!(code, 1);
    assert_eq!(r["branch"], "Unsupported");
    assert_eq!(r["overall"], "fail");
}

#[test]
fn verify_all_is_ordered_and_concurrent() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (i, p) in [1, 2, 2, 3].into_iter().enumerate() {
        let s = random_obstructed_scenario(&mut rng, p, 2);
        std::fs::write(dir.path().join(format!("s{i}.scn")), s.file_text()).unwrap();
    }
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let (code, r) = json(&["verify", "--all", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let sources: Vec<String> = r
        .as_array()
        .unwrap()
        .iter()
        .map(|x| PathBuf::from(x["source"].as_str().unwrap()).file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(sources, ["s0.scn", "s1.scn", "s2.scn", "s3.scn"]);

    std::fs::write(dir.path().join("s4.scn"), "vars: x\n").unwrap();
    let (code, r) = json(&["verify", "--all", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r[4]["overall"], "error");
    assert!(r[4]["details"][0].as_str().unwrap().contains("missing key: p"));
}

#[test]
fn fixture_directory_verifies() {
    let out = run(["verify", "--all", &fixture("")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.matches("overall: pass").count(), 4);
}

#[test]
fn text_and_json_agree() {
    for args in [
        vec!["verify".to_string(), fixture("obstructed_space.scn")],
        vec!["verify".to_string(), fixture("unobstructed_plane.scn")],
        vec!["check-cycle".to_string(), fixture("worked.scn"), "--class".into(), "muY".into()],
    ] {
        let text = run(&args);
        let (code, r) = json(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(text.code, code);
        let lines: Vec<String> = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| format!("check [{}] {}", c["verdict"].as_str().unwrap(), c["name"].as_str().unwrap()))
            .collect();
        let text_lines: Vec<&str> = text.stdout.lines().filter(|l| l.starts_with("check [")).collect();
        assert_eq!(text_lines, lines);
        assert!(text.stdout.ends_with(&format!("overall: {}\n", r["overall"].as_str().unwrap())));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cyclift");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", &fixture("worked.scn")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), run(["verify", &fixture("worked.scn")]).stdout);
    let fail = status(&["check-cycle", &fixture("worked.scn"), "--class", "muY", "--order", "1"]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(status(&["--bogus"]).status.code(), Some(2));
}
