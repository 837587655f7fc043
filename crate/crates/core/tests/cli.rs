use std::process::Command;

use trapezoids::sttree::SttTree;
use trapezoids::trapezoid::{self, TrapezoidRecord};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trapezoids"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn documented_examples() {
    assert_eq!(
        bin(&["gf", "det", "--n", "2", "--l", "4"]).1,
        "R^2 + 4*R + P*R + Q*R + 1\n"
    );
    assert_eq!(bin(&["count", "--n", "2", "--l", "3"]).1, "7\n");
    let (code, out, _) = bin(&["verify", "main", "--n-max", "3", "--l-max", "5"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("PASS main")).count() == 45);
    assert!(!out.contains("FAIL"));
    assert!(out.ends_with("summary: 45 passed, 0 failed\n"));
}

#[test]
fn every_route_gives_the_same_polynomial() {
    let want = "R^2 + 4*R + P*R + Q*R + 1\n";
    for route in ["ast", "det", "operator"] {
        assert_eq!(
            bin(&["gf", route, "--n", "2", "--l", "4"]).1,
            want,
            "{route}"
        );
    }
    for route in ["cssp", "paths"] {
        for d in ["0", "1", "2", "3"] {
            assert_eq!(
                bin(&["gf", route, "--n", "2", "--l", "4", "--d", d]).1,
                want,
                "{route} d={d}"
            );
        }
    }
}

#[test]
fn usage_errors() {
    let (code, _, err) = bin(&["gf"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(bin(&["count", "--n", "2"]).0, 2);
    assert_eq!(bin(&["gf", "det", "--n", "2", "--l", "4", "--k", "1"]).0, 2);
    assert_eq!(
        bin(&[
            "enumerate",
            "ast",
            "--n",
            "2",
            "--l",
            "4",
            "--format",
            "svg"
        ])
        .0,
        2
    );
}

#[test]
fn trapezoid_json_round_trips() {
    let (code, out, _) = bin(&[
        "enumerate",
        "ast",
        "--n",
        "3",
        "--l",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let records: Vec<TrapezoidRecord> = serde_json::from_str(&out).unwrap();
    let direct = trapezoid::enumerate(3, 4);
    assert_eq!(records.len(), direct.len());
    for (rec, tr) in records.iter().zip(&direct) {
        assert_eq!(&rec.trapezoid, tr);
        assert_eq!(rec, &tr.record());
    }
}

#[test]
fn sttree_json_round_trips() {
    let args = [
        "enumerate",
        "sttree",
        "--n",
        "3",
        "--s",
        "1",
        "--t",
        "1",
        "--b",
        "-1,0,3",
        "--format",
        "json",
    ];
    let (code, out, _) = bin(&args);
    assert_eq!(code, 0);
    let trees: Vec<SttTree> = serde_json::from_str(&out).unwrap();
    assert!(!trees.is_empty());
    for t in &trees {
        assert_eq!(t.validate(), Ok(()));
    }
    assert_eq!(serde_json::to_string_pretty(&trees).unwrap() + "\n", out);
}

#[test]
fn output_is_reproducible() {
    let base = ["verify", "truncated", "--seed", "9", "--samples", "60"];
    let one = bin(&[&base[..], &["--jobs", "1"]].concat());
    let four = bin(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.0, 0);
    assert_eq!(one.1, four.1);
    let asym = ["verify", "asym", "--seed", "3", "--samples", "20"];
    assert_eq!(bin(&asym).1, bin(&asym).1);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("trapezoids-sheet-{}.svg", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = bin(&[
        "svg", "paths", "--n", "3", "--l", "3", "--d", "1", "--out", p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 42);
    let (_, single, _) = bin(&["svg", "paths", "--n", "3", "--l", "3", "--index", "41"]);
    assert_eq!(single.matches("<polyline").count(), 3);
}

#[test]
fn tpoly_prints_both_bases() {
    let (code, out, _) = bin(&["tpoly", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("monomial: l + 4"));
    assert!(out.contains("falling factorial: (l)_1 + 4"));
    assert!(out.contains("t(3)=7"));
}
