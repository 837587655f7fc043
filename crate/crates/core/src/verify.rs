//! Cross-route checks over parameter ranges. Each check yields one
//! [`CheckResult`] per parameter tuple, in tuple order.

use std::fmt::Display;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactalg::BigInt;
use crate::operatorform::{self, label_vectors};
use crate::{cssp, detform, pathfam, sttree, trapezoid};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub params: String,
    pub pass: bool,
    pub left: String,
    pub right: String,
}

impl CheckResult {
    fn compare<T: PartialEq + Display>(check: &str, params: String, left: T, right: T) -> Self {
        CheckResult {
            check: check.to_string(),
            params,
            pass: left == right,
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

/// Trapezoid generating function against the plane partition one, every
/// `d`, for `1 <= n <= n_max`, `1 <= l <= l_max`.
pub fn main_sweep(n_max: usize, l_max: usize) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=l_max).map(move |l| (n, l)))
        .collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(n, l)| {
            let ast = trapezoid::gf(n, l);
            (0..l as u32)
                .map(|d| {
                    let cssp = cssp::gf(l as u32 - 1, n, d).expect("d within class");
                    CheckResult::compare("main", format!("n={n} l={l} d={d}"), ast.clone(), cssp)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `prod_{i=0}^{n} (3i+1)! / (n+1+i)!`.
pub fn asm_number(n: usize) -> BigInt {
    let fact = |m: usize| (1..=m).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k));
    let num = (0..=n).fold(BigInt::from(1), |acc, i| acc * fact(3 * i + 1));
    let den = (0..=n).fold(BigInt::from(1), |acc, i| acc * fact(n + 1 + i));
    num / den
}

/// Determinant against both enumerations for `l >= 2`, plus the `l = 3`
/// count against the product formula.
pub fn det_route(n_max: usize, l_max: usize) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (2..=l_max).map(move |l| (n, l)))
        .collect();
    let mut out: Vec<CheckResult> = pairs
        .par_iter()
        .flat_map_iter(|&(n, l)| {
            let det = detform::gf_det(n, l);
            let mut rows = vec![CheckResult::compare(
                "det-ast",
                format!("n={n} l={l}"),
                det.clone(),
                trapezoid::gf(n, l),
            )];
            for d in 0..l as u32 {
                let cssp = cssp::gf(l as u32 - 1, n, d).expect("d within class");
                rows.push(CheckResult::compare(
                    "det-cssp",
                    format!("n={n} l={l} d={d}"),
                    det.clone(),
                    cssp,
                ));
            }
            rows
        })
        .collect();
    for n in 1..=n_max {
        out.push(CheckResult::compare(
            "count-asm",
            format!("n={n} l=3"),
            detform::count(n, 3),
            asm_number(n),
        ));
    }
    out
}

/// Operator formula summed over 1-column labels against enumeration.
pub fn operator_route(n_max: usize, l_max: usize) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (2..=l_max).map(move |l| (n, l)))
        .collect();
    pairs
        .par_iter()
        .map(|&(n, l)| {
            let op = operatorform::gf_ast_via_operator(n, l as i64).expect("valid labels");
            CheckResult::compare("operator", format!("n={n} l={l}"), op, trapezoid::gf(n, l))
        })
        .collect()
}

/// Operator count against brute-force tree enumeration on seeded random
/// admissible instances.
pub fn truncated(seed: u64, count: usize, n_max: usize) -> Vec<CheckResult> {
    sttree::random_instances(seed, count, n_max)
        .par_iter()
        .map(|inst| {
            let formula = operatorform::count_sttrees_formula(inst.n, &inst.s, &inst.t, &inst.b)
                .expect("consistent lengths");
            let brute = sttree::enumerate_sttrees(inst.n, &inst.s, &inst.t, &inst.b)
                .expect("admissible instance")
                .len();
            CheckResult::compare(
                "truncated",
                format!("n={} s={:?} t={:?} b={:?}", inst.n, inst.s, inst.t, inst.b),
                formula,
                BigInt::from(brute),
            )
        })
        .collect()
}

/// `t_n(1)` against the number of quasi trapezoids, then the vanishing of
/// every label vector with no label at `-1` or `1` next to the sign change.
pub fn qast(n_max: usize) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            CheckResult::compare(
                "qast",
                format!("n={n}"),
                operatorform::t_polynomial(n).eval_int(1),
                BigInt::from(trapezoid::enumerate(n, 1).len()),
            )
        })
        .collect();
    for n in 1..=n_max {
        let nonzero: Vec<String> = label_vectors(n)
            .into_iter()
            .filter(|j| {
                let m = j.iter().filter(|&&v| v < 0).count();
                let left_far = m == 0 || j[m - 1] < -1;
                let right_far = m == n || j[m] > 1;
                left_far && right_far
            })
            .filter(|j| {
                operatorform::count_ast_prescribed(n, 1, j).expect("valid labels")
                    != BigInt::from(0)
            })
            .map(|j| format!("{j:?}"))
            .collect();
        out.push(CheckResult {
            check: "qast-vanishing".into(),
            params: format!("n={n}"),
            pass: nonzero.is_empty(),
            left: if nonzero.is_empty() {
                "none".into()
            } else {
                nonzero.join(" ")
            },
            right: "none".into(),
        });
    }
    out
}

/// Constant-term formula for `M_n` on every `x` in `{0..=x_max}^n`.
pub fn asym_m(n_max: usize, x_max: u32) -> Vec<CheckResult> {
    let mut points: Vec<Vec<u32>> = Vec::new();
    for n in 1..=n_max {
        let mut x = vec![0u32; n];
        loop {
            points.push(x.clone());
            let Some(k) = (0..n).rev().find(|&k| x[k] < x_max) else {
                break;
            };
            x[k] += 1;
            x[k + 1..].iter_mut().for_each(|v| *v = 0);
        }
    }
    points
        .par_iter()
        .map(|x| match operatorform::verify_asym_m(x) {
            Ok(c) => CheckResult::compare("asymm", format!("x={x:?}"), c.left, c.right),
            Err(e) => CheckResult {
                check: "asymm".into(),
                params: format!("x={x:?}"),
                pass: false,
                left: e.to_string(),
                right: String::new(),
            },
        })
        .collect()
}

/// Antisymmetrizer identity at `samples` seeded random points per `n`.
pub fn asym(n_max: usize, samples: usize, seed: u64) -> Vec<CheckResult> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let params = format!("n={n} samples={samples} seed={seed}");
            match operatorform::verify_asym_lemma(n, samples, seed) {
                Ok(()) => CheckResult {
                    check: "asym".into(),
                    params,
                    pass: true,
                    left: "all agree".into(),
                    right: "all agree".into(),
                },
                Err(bad) => {
                    let c = bad.sides;
                    let xs: Vec<String> = bad.point.iter().map(|v| v.to_string()).collect();
                    CheckResult {
                        check: "asym".into(),
                        params: format!("{params} at X=({})", xs.join(", ")),
                        pass: false,
                        left: c.left.to_string(),
                        right: c.right.to_string(),
                    }
                }
            }
        })
        .collect()
}

/// Closed-form coefficients against series expansion, and the coefficient
/// determinant against the binomial determinant.
pub fn coeff(n_max: usize, l_max: usize) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (2..=l_max).map(move |l| (n, l)))
        .collect();
    pairs
        .par_iter()
        .map(|&(n, l)| {
            let check = detform::verify_coeff_route(n, l);
            let params = format!("n={n} l={l}");
            match check.series_mismatch {
                Some((i, j, closed, series)) => CheckResult {
                    check: "coeff".into(),
                    params: format!("{params} at X^{i} Y^{j}"),
                    pass: false,
                    left: closed.to_string(),
                    right: series.to_string(),
                },
                None => CheckResult::compare("coeff", params, check.det.left, check.det.right),
            }
        })
        .collect()
}

/// Round trips trapezoid -> tree -> trapezoid (`l >= 2`) and plane
/// partition -> paths -> plane partition, with the path weight equal to
/// `W_d` for every `d`.
pub fn bijections(n_max: usize, l_max: usize) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=l_max).map(move |l| (n, l)))
        .collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(n, l)| {
            let mut rows = Vec::new();
            if l >= 2 {
                let all = trapezoid::enumerate(n, l);
                let res = all.iter().try_for_each(|tr| {
                    let tree = sttree::ast_to_sttree(tr).map_err(|e| format!("{tr:?}: {e}"))?;
                    let back =
                        sttree::sttree_to_ast(&tree, n, l).map_err(|e| format!("{tree:?}: {e}"))?;
                    if &back == tr {
                        Ok(())
                    } else {
                        Err(format!("{tr:?} came back as {back:?}"))
                    }
                });
                rows.push(result_row(
                    "ast-sttree",
                    format!("n={n} l={l} objects={}", all.len()),
                    res,
                ));
            }
            let all = cssp::enumerate(l as u32 - 1, n);
            let res = all.iter().try_for_each(|c| {
                let f = pathfam::cssp_to_paths(c);
                let back = pathfam::paths_to_cssp(&f).map_err(|e| format!("{c:?}: {e}"))?;
                if &back != c {
                    return Err(format!("{c:?} came back as {back:?}"));
                }
                for d in 0..l as u32 {
                    let lgv = f
                        .weight(pathfam::PathWeight::Line(d))
                        .map_err(|e| e.to_string())?;
                    let w = c.weight(d).map_err(|e| e.to_string())?;
                    if lgv != w {
                        return Err(format!(
                            "{c:?} d={d}: path weight {lgv}, partition weight {w}"
                        ));
                    }
                }
                Ok(())
            });
            rows.push(result_row(
                "cssp-paths",
                format!("n={n} l={l} objects={}", all.len()),
                res,
            ));
            rows
        })
        .collect()
}

fn result_row(check: &str, params: String, res: Result<(), String>) -> CheckResult {
    match res {
        Ok(()) => CheckResult {
            check: check.into(),
            params,
            pass: true,
            left: "round trip".into(),
            right: "round trip".into(),
        },
        Err(msg) => CheckResult {
            check: check.into(),
            params,
            pass: false,
            left: msg,
            right: "round trip".into(),
        },
    }
}
