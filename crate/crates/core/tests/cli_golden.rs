use std::path::PathBuf;

use magic_completion::cli::run;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("magic-complete").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn assert_golden(args: &[&str], file: &str, expected_code: i32) {
    let (code, out) = call(args);
    assert_eq!(code, expected_code, "exit code of {args:?}");
    let expected = std::fs::read_to_string(golden(file)).unwrap();
    assert_eq!(out, expected, "output of {args:?} differs from {file}");
    assert_eq!(call(args).1, out, "output of {args:?} is not stable");
}

const IIB: [&str; 5] = ["5", "3", "3", "16", "13"];

fn with_params<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    let mut v = head.to_vec();
    v.push("--params");
    v.extend(IIB);
    v.extend(tail);
    v
}

#[test]
fn params_list_matches_golden() {
    assert_golden(
        &["params", "list", "--delta", "3"],
        "params_list_delta3.txt",
        0,
    );
}

#[test]
fn forks_match_golden() {
    assert_golden(&with_params(&["forks"], &[]), "forks_iib.txt", 0);
    assert_golden(
        &with_params(&["forks"], &["--magic", "3"]),
        "forks_iib.txt",
        0,
    );
}

#[test]
fn obstacle_catalogues_match_golden() {
    for length in ["3", "4", "5", "6"] {
        let file = format!("obstacles_iib_length{length}.txt");
        assert_golden(
            &with_params(&["obstacles", "enumerate"], &["--length", length]),
            &file,
            0,
        );
        assert_golden(
            &with_params(
                &["obstacles", "enumerate"],
                &["--length", length, "--jobs", "3"],
            ),
            &file,
            0,
        );
    }
}

#[test]
fn completion_runs_match_golden() {
    assert_golden(
        &with_params(
            &["complete"],
            &["--cycle", "1 1 5 5 5", "--trace", "--obstacle"],
        ),
        "complete_11555.txt",
        1,
    );
    assert_golden(
        &with_params(&["complete"], &["--cycle", "1 5 5 5", "--trace"]),
        "complete_1555.txt",
        0,
    );
}

#[test]
fn shortest_path_matches_golden() {
    let path = golden("path3.graph");
    assert_golden(
        &[
            "shortest-path",
            "--delta",
            "3",
            "--file",
            path.to_str().unwrap(),
        ],
        "shortest_path3.txt",
        0,
    );
}

#[test]
fn verify_matches_golden() {
    let args = [
        "verify",
        "--params",
        "3",
        "1",
        "2",
        "10",
        "9",
        "--exhaustive",
        "3",
    ];
    assert_golden(&args, "verify_exhaustive3.txt", 0);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_golden(&parallel, "verify_exhaustive3.txt", 0);
}

#[test]
fn exit_code_matrix() {
    let path = golden("path3.graph");
    let path = path.to_str().unwrap();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["params", "list", "--delta", "3"], 0),
        (vec!["params", "list", "--delta", "2"], 2),
        (vec!["params", "check", "5", "3", "3", "16", "13"], 0),
        (vec!["params", "check", "3", "1", "1", "10", "11"], 1),
        (vec!["params", "check", "3", "1"], 2),
        (with_params(&["complete"], &["--file", path]), 2),
        (
            vec![
                "complete", "--params", "3", "1", "2", "10", "9", "--file", path,
            ],
            0,
        ),
        (with_params(&["complete"], &["--cycle", "1 1 5 5 5"]), 1),
        (with_params(&["complete"], &["--cycle", "1 1"]), 2),
        (with_params(&["complete"], &["--cycle", "1 1 9"]), 2),
        (with_params(&["complete"], &[]), 2),
        (
            with_params(&["verify"], &["--random", "20", "--seed", "1"]),
            0,
        ),
        (with_params(&["verify"], &["--random", "20"]), 2),
        (
            with_params(&["obstacles", "enumerate"], &["--length", "2"]),
            2,
        ),
        (
            vec!["shortest-path", "--delta", "3", "--file", "/no/such/file"],
            2,
        ),
        (vec!["--unknown-flag"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(call(&args).0, expected, "exit code of {args:?}");
    }
}
