use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treepark"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn park_reports_spots_per_driver() {
    let o = run(&["park", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("spots: 2 3 1 4 5"));
}

#[test]
fn park_exits_one_when_a_driver_leaves() {
    let o = run(&["park", "--tree", "3 3 5 5 0", "--seq", "5 5 5 5 5"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().next(), Some("spots: 5 - - - -"));
}

#[test]
fn park_json_has_stable_fields() {
    let o = run(&[
        "park",
        "--tree",
        "3 3 5 5 0",
        "--seq",
        "2 2 1 4 2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spots"], serde_json::json!([2, 3, 1, 4, 5]));
    assert_eq!(v["parked"], true);
    assert_eq!(v["crossings"][0]["child"], 2);
}

#[test]
fn prime_example() {
    let o = run(&["prime", "--tree", "2 4 4 5 0", "--seq", "1 3 2 3 1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "prime: true\n");
    let o = run(&["prime", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "prime: false\n");
}

#[test]
fn check_and_distribution() {
    assert_eq!(
        code(&run(&[
            "check",
            "--tree",
            "3 3 5 5 0",
            "--seq",
            "2 2 1 4 2"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "check",
            "--tree",
            "3 3 5 5 0",
            "--seq",
            "2 2 1 4 2",
            "--distribution"
        ])),
        1
    );
    let o = run(&[
        "check",
        "--tree",
        "3 3 5 5 0",
        "--seq",
        "1 2 2 2 4",
        "--distribution",
    ]);
    assert_eq!(stdout(&o), "parking distribution: true\n");
}

#[test]
fn used_edges_in_crossing_order() {
    let o = run(&["used-edges", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "used: (2,3) (3,5)\n");
    // not a parking function: a precondition failure
    assert_eq!(
        code(&run(&[
            "used-edges",
            "--tree",
            "3 3 5 5 0",
            "--seq",
            "5 5 5 5 5"
        ])),
        2
    );
}

#[test]
fn counts_tsv_prime_column() {
    let o = run(&["counts", "--max", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n\tF\tP\tFtilde\tPtilde\tPstar\tFstar"));
    let p: Vec<&str> = lines.map(|l| l.split('\t').nth(2).unwrap()).collect();
    assert_eq!(p, ["1", "2", "24", "720", "40320"]);
}

#[test]
fn counts_json_is_exact() {
    let tsv = stdout(&run(&["counts", "--max", "20"]));
    let last: Vec<&str> = tsv.lines().last().unwrap().split('\t').collect();
    let json = stdout(&run(&["counts", "--max", "20", "--format", "json"]));
    // F_20 has far more digits than a double holds
    assert!(last[1].len() > 17);
    assert!(json.contains(&format!("\"F\": {}", last[1])), "{json}");
    assert!(
        !json.contains("e+") && !json.contains("E+"),
        "no scientific notation"
    );
}

#[test]
fn psi_and_its_inverse_through_the_cli() {
    let o = run(&[
        "psi",
        "--tree",
        "2 4 4 5 0",
        "--seq",
        "1 3 2 3 1",
        "--check",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let sigma = text
        .lines()
        .find_map(|l| l.strip_prefix("sigma: "))
        .unwrap()
        .to_string();
    let ptree = text
        .lines()
        .find_map(|l| l.strip_prefix("ptree: "))
        .unwrap()
        .to_string();
    assert!(text.contains("roundtrip: ok"));

    let o = run(&["psi-inv", "--perm", &sigma, "--ptree", &ptree, "--check"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "tree: 2 4 4 5 0\nseq: 1 3 2 3 1\nroundtrip: ok\n"
    );
}

#[test]
fn psi_rejects_non_prime_input() {
    assert_eq!(
        code(&run(&["psi", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2"])),
        2
    );
}

#[test]
fn payloads_from_files() {
    let dir = std::env::temp_dir().join(format!("treepark-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree.txt");
    let seq = dir.join("seq.txt");
    std::fs::write(&tree, "3 3 5 5 0\n").unwrap();
    std::fs::write(&seq, "2 2 1 4 2\n").unwrap();
    let o = run(&[
        "park",
        "--tree",
        &format!("@{}", tree.display()),
        "--seq",
        &format!("@{}", seq.display()),
    ]);
    assert_eq!(stdout(&o).lines().next(), Some("spots: 2 3 1 4 5"));
    assert_eq!(
        code(&run(&[
            "park",
            "--tree",
            "@/nonexistent/tree",
            "--seq",
            "1"
        ])),
        2
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn borie_map() {
    let o = run(&["borie", "--perm", "3 1 2", "--check"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("seq: 1 1 3\n"));
    assert_eq!(code(&run(&["borie", "--perm", "1 3 2"])), 2);
}

#[test]
fn series_identities() {
    let o = run(&["series", "--identity", "pf-recursion"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS pf-recursion"));
    assert_eq!(code(&run(&["series", "--identity", "no-such-identity"])), 2);
    let o = run(&["series", "--order", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("OK\n"));
}

#[test]
fn verify_suites_and_limits() {
    let o = run(&["verify", "--suite", "mmp-path", "--max-n", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("all 5 checks passed\n"));
    assert_eq!(
        code(&run(&["verify", "--suite", "census", "--max-n", "6"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "--suite",
            "roundtrip",
            "--max-n",
            "3",
            "--format",
            "tsv"
        ])),
        0
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "props",
        "--max-n",
        "3",
        "--instances",
        "200",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        code(&run(&[
            "park",
            "--tree",
            "3 3 5 5 0",
            "--seq",
            "2 2 1 4 2",
            "--bogus"
        ])),
        2
    );
    assert_eq!(
        code(&run(&["park", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4"])),
        2
    );
    assert_eq!(code(&run(&["park", "--tree", "1 1", "--seq", "1 1"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "park",
        "check",
        "prime",
        "used-edges",
        "psi",
        "psi-inv",
        "borie",
        "series",
        "counts",
        "verify",
    ] {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        assert!(stdout(&o).contains("Usage"), "{sub}");
    }
}
