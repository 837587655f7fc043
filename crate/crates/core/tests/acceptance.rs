//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! show up in `cargo test` output.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::Value;
use trapezoids::exactalg::{BigInt, BigRational};
use trapezoids::operatorform::{self, label_vectors};
use trapezoids::pathfam::{self, PathWeight};
use trapezoids::{cli, cssp, detform, sttree, trapezoid};

type Outcome = Result<String, String>;
type StatsTable = Vec<(Vec<Vec<u64>>, [(u64, u64, u64); 3])>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("trapezoids")
        .chain(args.iter().copied())
        .collect();
    let code = cli::run(argv, &mut out, &mut err);
    ensure(code == 0, || {
        format!(
            "{args:?} exited with {code}: {}",
            String::from_utf8_lossy(&err)
        )
    })?;
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn num(v: &Value, key: &str) -> u64 {
    v[key].as_u64().unwrap_or(u64::MAX)
}

/// The eight (2,4)-trapezoids and the class-3 plane partitions with first
/// row of length at most 2.
fn examples() -> Outcome {
    let records = cli_json(&[
        "enumerate",
        "ast",
        "--n",
        "2",
        "--l",
        "4",
        "--format",
        "json",
    ])?;
    let records = records.as_array().ok_or("expected a JSON array")?;
    ensure(records.len() == 8, || {
        format!("{} trapezoids instead of 8", records.len())
    })?;
    let mut got: Vec<(u64, u64, u64)> = records
        .iter()
        .map(|r| (num(r, "p"), num(r, "q"), num(r, "r")))
        .collect();
    let mut want = vec![
        (0, 0, 2),
        (0, 0, 1),
        (0, 0, 1),
        (0, 0, 1),
        (0, 0, 1),
        (1, 0, 1),
        (0, 1, 1),
        (0, 0, 0),
    ];
    got.sort();
    want.sort();
    ensure(got == want, || format!("(p,q,r) multiset {got:?}"))?;

    let table: StatsTable = vec![
        (vec![], [(0, 0, 0); 3]),
        (vec![vec![4]], [(0, 0, 1); 3]),
        (vec![vec![5, 1]], [(0, 1, 1); 3]),
        (vec![vec![5, 2]], [(1, 0, 1), (0, 0, 1), (0, 0, 1)]),
        (vec![vec![5, 3]], [(0, 0, 1), (1, 0, 1), (0, 0, 1)]),
        (vec![vec![5, 4]], [(0, 0, 1), (0, 0, 1), (1, 0, 1)]),
        (vec![vec![5, 5]], [(0, 0, 1); 3]),
        (vec![vec![5, 5], vec![4]], [(0, 0, 2); 3]),
    ];
    let records = cli_json(&[
        "enumerate",
        "cssp",
        "--k",
        "3",
        "--n",
        "2",
        "--format",
        "json",
    ])?;
    let records = records.as_array().ok_or("expected a JSON array")?;
    ensure(records.len() == 8, || {
        format!("{} plane partitions instead of 8", records.len())
    })?;
    let mut got = BTreeMap::new();
    for r in records {
        let rows: Vec<Vec<u64>> =
            serde_json::from_value(r["rows"].clone()).map_err(|e| e.to_string())?;
        let stats: Vec<(u64, u64, u64)> = r["stats"]
            .as_array()
            .ok_or("missing stats")?
            .iter()
            .map(|s| (num(s, "p"), num(s, "q"), num(s, "r")))
            .collect();
        got.insert(rows, stats);
    }
    for (rows, stats) in &table {
        ensure(got.get(rows) == Some(&stats.to_vec()), || {
            format!("{rows:?}: got {:?}, want {stats:?}", got.get(rows))
        })?;
    }
    Ok("8 trapezoids and 8 plane partitions match".into())
}

fn main_sweep() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for l in 1..=5 {
            let ast = trapezoid::gf(n, l);
            for d in 0..l as u32 {
                let other = cssp::gf(l as u32 - 1, n, d).map_err(|e| e.to_string())?;
                ensure(ast == other, || {
                    format!("n={n} l={l} d={d}: {ast} vs {other}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, l, d) tuples equal"))
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn determinant_route() -> Outcome {
    for n in 1..=4 {
        for l in 2..=5 {
            let det = detform::gf_det(n, l);
            let ast = trapezoid::gf(n, l);
            ensure(det == ast, || {
                format!("n={n} l={l}: det {det} vs trapezoids {ast}")
            })?;
            for d in 0..l as u32 {
                let c = cssp::gf(l as u32 - 1, n, d).map_err(|e| e.to_string())?;
                ensure(det == c, || {
                    format!("n={n} l={l} d={d}: det {det} vs partitions {c}")
                })?;
            }
        }
    }
    let mut counts = Vec::new();
    for n in 1..=4 {
        let c = detform::count(n, 3);
        let num = (0..=n).fold(BigInt::from(1), |acc, i| acc * factorial(3 * i + 1));
        let den = (0..=n).fold(BigInt::from(1), |acc, i| acc * factorial(n + 1 + i));
        let formula = BigRational::new(num, den);
        ensure(BigRational::from_integer(c.clone()) == formula, || {
            format!("n={n}: {c} vs {formula}")
        })?;
        ensure(c == BigInt::from(trapezoid::enumerate(n, 3).len()), || {
            format!("n={n}: count {c} vs enumeration")
        })?;
        counts.push(c.to_string());
    }
    Ok(format!(
        "n<=4, l in 2..5; count(n,3) = {}",
        counts.join(", ")
    ))
}

fn operator_route() -> Outcome {
    for n in 1..=3 {
        for l in 2..=5 {
            let op = operatorform::gf_ast_via_operator(n, l as i64).map_err(|e| e.to_string())?;
            let ast = trapezoid::gf(n, l);
            ensure(op == ast, || {
                format!("n={n} l={l}: operator {op} vs enumeration {ast}")
            })?;
        }
    }
    Ok("n<=3, l in 2..5".into())
}

fn truncated() -> Outcome {
    let instances = sttree::random_instances(2024, 250, 4);
    for inst in &instances {
        let formula = operatorform::count_sttrees_formula(inst.n, &inst.s, &inst.t, &inst.b)
            .map_err(|e| e.to_string())?;
        let brute = sttree::enumerate_sttrees(inst.n, &inst.s, &inst.t, &inst.b)
            .map_err(|e| e.to_string())?;
        ensure(formula == BigInt::from(brute.len()), || {
            format!("{inst:?}: formula {formula}, brute force {}", brute.len())
        })?;
    }
    let nontrivial = instances
        .iter()
        .filter(|i| !i.s.is_empty() || !i.t.is_empty())
        .count();
    Ok(format!(
        "{} instances ({nontrivial} truncated) agree",
        instances.len()
    ))
}

fn qast() -> Outcome {
    let mut vanishing = 0;
    for n in 1..=4 {
        let t = operatorform::t_polynomial(n);
        let quasi = trapezoid::enumerate(n, 1).len();
        ensure(t.eval_int(1) == BigInt::from(quasi), || {
            format!("n={n}: t(1) = {}, quasi count {quasi}", t.eval_int(1))
        })?;
        for j in label_vectors(n) {
            let m = j.iter().filter(|&&v| v < 0).count();
            if m == 0 || m == n || j[m - 1] >= -1 || j[m] <= 1 {
                continue;
            }
            let c = operatorform::count_ast_prescribed(n, 1, &j).map_err(|e| e.to_string())?;
            ensure(c == BigInt::from(0), || format!("n={n} j={j:?}: {c}"))?;
            vanishing += 1;
        }
    }
    Ok(format!(
        "t_n(1) matches for n<=4; {vanishing} label vectors vanish"
    ))
}

fn bijections() -> Outcome {
    let mut objects = 0;
    for n in 1..=4 {
        for l in 1..=5 {
            if l >= 2 {
                for tr in trapezoid::enumerate(n, l) {
                    let tree = sttree::ast_to_sttree(&tr).map_err(|e| e.to_string())?;
                    let back = sttree::sttree_to_ast(&tree, n, l).map_err(|e| e.to_string())?;
                    ensure(back == tr, || format!("{tr:?} came back as {back:?}"))?;
                    objects += 1;
                }
            }
            for c in cssp::enumerate(l as u32 - 1, n) {
                let f = pathfam::cssp_to_paths(&c);
                let back = pathfam::paths_to_cssp(&f).map_err(|e| e.to_string())?;
                ensure(back == c, || format!("{c:?} came back as {back:?}"))?;
                for d in 0..l as u32 {
                    let lgv = f.weight(PathWeight::Line(d)).map_err(|e| e.to_string())?;
                    let w = c.weight(d).map_err(|e| e.to_string())?;
                    ensure(lgv == w, || {
                        format!("{c:?} d={d}: paths {lgv}, partition {w}")
                    })?;
                }
                objects += 1;
            }
        }
    }
    Ok(format!(
        "{objects} objects round trip with matching weights"
    ))
}

fn identities() -> Outcome {
    let mut points = 0;
    for n in 1..=3u32 {
        for code in 0..4u32.pow(n) {
            let x: Vec<u32> = (0..n).map(|i| code / 4u32.pow(i) % 4).collect();
            let c = operatorform::verify_asym_m(&x).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("x={x:?}: {} vs {}", c.left, c.right))?;
            points += 1;
        }
    }
    for n in 1..=3 {
        operatorform::verify_asym_lemma(n, 100, 11).map_err(|bad| {
            format!(
                "n={n} at {:?}: {} vs {}",
                bad.point, bad.sides.left, bad.sides.right
            )
        })?;
    }
    for n in 1..=4 {
        for l in 2..=6 {
            let check = detform::verify_coeff_route(n, l);
            ensure(check.holds(), || format!("n={n} l={l}: {check:?}"))?;
        }
    }
    Ok(format!(
        "{points} constant-term points, 300 antisymmetrizer samples, 20 coefficient matrices"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 example objects and statistics",
            Duration::from_secs(1),
            examples,
        ),
        (
            "2 trapezoids = plane partitions, all d",
            Duration::from_secs(600),
            main_sweep,
        ),
        (
            "3 determinant route",
            Duration::from_secs(60),
            determinant_route,
        ),
        ("4 operator route", Duration::from_secs(600), operator_route),
        (
            "5 truncated tree formula",
            Duration::from_secs(300),
            truncated,
        ),
        ("6 quasi trapezoids", Duration::from_secs(300), qast),
        (
            "7 bijections and weight transport",
            Duration::from_secs(300),
            bijections,
        ),
        (
            "8 identity verifications",
            Duration::from_secs(300),
            identities,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => {
                Err(format!("{msg}, but took {elapsed:.2?} (limit {limit:?})"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
