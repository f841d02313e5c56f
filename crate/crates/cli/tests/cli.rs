//! Golden CLI behavior: outputs, exit codes, and byte-determinism.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_epist"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn word_examples() {
    let (out, _, code) = run(&["word", "periodic:|012", "zeros", "--length", "50"]);
    assert_eq!(code, 0);
    assert_eq!(out, "01020100102010102010010201020100102010102010010201\n");

    let (out, _, code) = run(&["word", "periodic:|01", "periodic:1|0", "--length", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1001010\n");

    let (out, _, code) = run(&["word", "periodic:|001122", "periodic:|1", "--length", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "01002\n");
}

#[test]
fn regular_grammar_matches_its_periodic_form() {
    // regular:d=3;a=|1 directs the same word as periodic:|012.
    let (a, _, code_a) = run(&["word", "regular:d=3;a=|1", "zeros", "--length", "60"]);
    let (b, _, code_b) = run(&["word", "periodic:|012", "zeros", "--length", "60"]);
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(a, b);
    let (out, _, code) = run(&["exponent", "regular:d=2;a=|1", "zeros", "--kind", "closed"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2.618033989\n");
    let (out, _, code) = run(&["numeration", "regular:d=3;a=|2", "rep", "70"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2022\n"); // 70 = 2·1 + 2·9 + 2·25 in the (1,3,9,25,…) system
}

#[test]
fn numeration_examples() {
    let (out, _, code) = run(&["numeration", "periodic:|012", "rep", "10"]);
    assert_eq!((out.as_str(), code), ("1101\n", 0));
    let (out, _, code) = run(&["numeration", "periodic:|012", "rep", "0"]);
    assert_eq!((out.as_str(), code), ("\n", 0));
    let (out, _, code) = run(&["numeration", "periodic:|012", "val", "0001"]);
    assert_eq!((out.as_str(), code), ("7\n", 0));
    let (out, _, code) = run(&["numeration", "periodic:|012", "check", "111"]);
    assert_eq!((out.as_str(), code), ("invalid\n", 0));
    let (out, _, code) = run(&["numeration", "periodic:|012", "check", "0001"]);
    assert_eq!((out.as_str(), code), ("valid\n", 0));
}

#[test]
fn irep_rows_and_cross_mode() {
    let (out, _, code) =
        run(&["irep", "periodic:|01", "zeros", "--n-from", "2", "--n-to", "2", "--mode", "closed"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,irep,case"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("2,3,"), "row was {row:?}");

    let (out, _, code) = run(&[
        "irep",
        "periodic:|001122",
        "periodic:|1",
        "--n-from",
        "2",
        "--n-to",
        "2",
        "--mode",
        "closed",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("2,5,"), "{out}");

    let (_, _, code) = run(&[
        "irep",
        "periodic:|001122",
        "zeros",
        "--n-from",
        "1",
        "--n-to",
        "147",
        "--mode",
        "cross",
    ]);
    assert_eq!(code, 0, "cross mode must agree on the full figure range");

    // brute and rauzy agree with closed on a small sweep.
    for mode in ["brute", "rauzy"] {
        let (out, _, code) = run(&[
            "irep",
            "periodic:|012",
            "digits:1101",
            "--n-from",
            "1",
            "--n-to",
            "24",
            "--mode",
            mode,
        ]);
        assert_eq!(code, 0);
        let (closed, _, _) = run(&[
            "irep",
            "periodic:|012",
            "digits:1101",
            "--n-from",
            "1",
            "--n-to",
            "24",
            "--mode",
            "closed",
        ]);
        let strip_case =
            |s: &str| s.lines().skip(1).map(|l| l.splitn(3, ',').take(2).collect::<Vec<_>>().join(",")).collect::<Vec<_>>();
        assert_eq!(strip_case(&out), strip_case(&closed), "mode {mode}");
    }
}

#[test]
fn figure_is_byte_deterministic() {
    let (a, _, code_a) = run(&["figure", "--fig", "1"]);
    let (b, _, code_b) = run(&["figure", "--fig", "1"]);
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(a, b);
    assert!(a.starts_with("# intervals: 1,5,17,51,147\nn,irep_zeros,irep_01,irep_ones\n"));
    assert_eq!(a.lines().count(), 2 + 147);
    assert!(a.ends_with('\n'));
    assert!(!a.contains('\r'));
}

#[test]
fn exponent_outputs() {
    let (out, _, code) = run(&["exponent", "periodic:|01", "zeros", "--kind", "closed"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2.618033989\n");

    let (out, _, code) =
        run(&["exponent", "periodic:|001122", "periodic:|1", "--k-max", "40", "--kind", "dio"]);
    assert_eq!(code, 0);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 1.9156).abs() < 1e-3);

    let (out, _, code) =
        run(&["exponent", "periodic:|0123", "periodic:|001", "--k-max", "40", "--kind", "dio"]);
    assert_eq!(code, 0);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 1.9873).abs() < 1e-3);

    let (out, _, code) =
        run(&["exponent", "periodic:|01", "zeros", "--k-max", "40", "--kind", "bounds"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("lower,upper,liouville"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((row[0].parse::<f64>().unwrap() - 2.618).abs() < 1e-3);
    assert!((row[1].parse::<f64>().unwrap() - 452.25).abs() < 0.5);
    assert_eq!(row[2], "false");

    let (out, _, code) = run(&[
        "exponent", "periodic:|01", "zeros", "--k-max", "12", "--kind", "dio", "--trace",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# value: "));
    assert!(out.contains("k,max_ratio\n"));
}

#[test]
fn exit_codes() {
    // 2: parse errors in the grammars.
    let (_, _, code) = run(&["word", "nonsense", "zeros", "--length", "5"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["word", "periodic:|01", "sideways", "--length", "5"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["numeration", "periodic:|01", "rep", "ten"]);
    assert_eq!(code, 2);

    // 3: contract violations.
    let (_, err, code) = run(&["word", "periodic:|01", "periodic:|1", "--length", "5"]);
    assert_eq!(code, 3, "invalid intercept: {err}");
    let (_, _, code) = run(&[
        "irep", "periodic:|0102", "zeros", "--n-from", "1", "--n-to", "2", "--mode", "closed",
    ]);
    assert_eq!(code, 3, "closed mode needs a regular directive word");
    let (_, _, code) =
        run(&["exponent", "periodic:|01", "digits:1", "--kind", "closed"]);
    assert_eq!(code, 3, "closed form is for the epistandard word");

    // clap's own usage errors use exit code 2 as well.
    let (_, _, code) = run(&["word", "periodic:|01"]);
    assert_eq!(code, 2);
}
