//! Command-line front end. [`run`] parses arguments, writes the requested
//! output and returns the process exit code: 0 on success, 1 if any check
//! fails, 2 on argument errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cssp::{self, Cssp, CsspStats};
use crate::exactalg::Gf;
use crate::pathfam::{self, PathFamily};
use crate::trapezoid::{self, TrapezoidRecord};
use crate::verify::{self, CheckResult};
use crate::{detform, operatorform, sttree};

#[derive(Parser, Debug)]
#[command(
    name = "trapezoids",
    version,
    about = "Alternating sign trapezoids, plane partitions and their generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every object of a family.
    Enumerate {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        opts: Opts,
    },
    /// Generating function in P, Q, R by one route.
    Gf {
        #[arg(value_enum)]
        route: Route,
        #[command(flatten)]
        opts: Opts,
    },
    /// Number of (n, l)-trapezoids.
    Count {
        #[command(flatten)]
        opts: Opts,
    },
    /// The polynomial t_n(l) in the monomial and falling-factorial bases.
    Tpoly {
        #[command(flatten)]
        opts: Opts,
    },
    /// Cross-route checks; one PASS/FAIL line per parameter tuple.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        opts: Opts,
    },
    /// Lattice path pictures.
    Svg {
        #[arg(value_enum)]
        what: SvgKind,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug, Clone)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Offset of the diagonal line for the plane partition statistics.
    #[arg(long)]
    d: Option<u32>,
    /// Class of the plane partitions (`l - 1`).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long = "l-max")]
    l_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sample or instance count for the randomized checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Worker threads for the sweeps (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Truncation of the leftmost NE-diagonals, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Vec<u32>,
    /// Truncation of the rightmost SE-diagonals, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<u32>,
    /// Bottom entries of the designated diagonals, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<i64>,
    /// Pick a single family (0-based) for `svg paths`.
    #[arg(long)]
    index: Option<usize>,
    /// Also print the matrix for `gf det`.
    #[arg(long)]
    show_matrix: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Ast,
    Cssp,
    Sttree,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Route {
    Ast,
    Cssp,
    Det,
    Operator,
    Paths,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    Main,
    Det,
    Operator,
    Truncated,
    Qast,
    Asymm,
    Asym,
    Coeff,
    Bijections,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SvgKind {
    Paths,
}

/// Failure that is reported on standard error with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Output, UsageError>;

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let opts = match &cli.command {
        Command::Enumerate { opts, .. }
        | Command::Gf { opts, .. }
        | Command::Count { opts }
        | Command::Tpoly { opts }
        | Command::Verify { opts, .. }
        | Command::Svg { opts, .. } => opts.clone(),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let result = pool.install(|| dispatch(&cli.command));
    match result {
        Ok(output) => {
            let written = match &opts.out {
                Some(path) => fs::write(path, &output.text).map_err(|e| e.to_string()),
                None => out
                    .write_all(output.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            i32::from(output.failed)
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Enumerate { family, opts } => match family {
            Family::Ast => enumerate_ast(opts),
            Family::Cssp => enumerate_cssp(opts),
            Family::Sttree => enumerate_sttree(opts),
        },
        Command::Gf { route, opts } => gf(*route, opts),
        Command::Count { opts } => count(opts),
        Command::Tpoly { opts } => tpoly(opts),
        Command::Verify { check, opts } => run_verify(*check, opts),
        Command::Svg { opts, .. } => svg_paths(opts),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("missing --{flag}")))
}

fn need_n(opts: &Opts, min: usize) -> Result<usize, UsageError> {
    let n = need(opts.n, "n")?;
    if n < min {
        return Err(UsageError(format!("--n must be at least {min}")));
    }
    Ok(n)
}

/// `--l`, or `--k + 1` when only the class is given.
fn need_l(opts: &Opts, min: usize) -> Result<usize, UsageError> {
    let l = match (opts.l, opts.k) {
        (Some(l), Some(k)) if l != k as usize + 1 => {
            return Err(UsageError(format!(
                "--l {l} and --k {k} disagree (k = l - 1)"
            )))
        }
        (Some(l), _) => l,
        (None, Some(k)) => k as usize + 1,
        (None, None) => return Err(UsageError("missing --l (or --k)".into())),
    };
    if l < min {
        return Err(UsageError(format!("--l must be at least {min}")));
    }
    Ok(l)
}

fn line_offset(opts: &Opts, l: usize) -> Result<u32, UsageError> {
    let d = opts.d.unwrap_or(if l >= 2 { 1 } else { 0 });
    if d as usize >= l {
        return Err(UsageError(format!("--d {d} out of range 0..={}", l - 1)));
    }
    Ok(d)
}

fn reject_svg(opts: &Opts) -> Result<(), UsageError> {
    if opts.format == Format::Svg {
        return Err(UsageError(
            "--format svg is only available for `svg paths`".into(),
        ));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, UsageError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn enumerate_ast(opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n = need_n(opts, 1)?;
    let l = need_l(opts, 1)?;
    let all = trapezoid::enumerate(n, l);
    if opts.format == Format::Json {
        let records: Vec<TrapezoidRecord> = all.iter().map(|t| t.record()).collect();
        return Ok(Output::ok(to_json(&records)?));
    }
    let mut s = String::new();
    for (i, tr) in all.iter().enumerate() {
        let rec = tr.record();
        match rec.stats {
            Some(st) => s.push_str(&format!(
                "# {} p={} q={} r={} weight={}\n",
                i + 1,
                st.p,
                st.q,
                st.r,
                rec.weight
            )),
            None => s.push_str(&format!("# {} weight={}\n", i + 1, rec.weight)),
        }
        s.push_str(&tr.to_text());
        s.push('\n');
    }
    s.push_str(&format!("total {}\n", all.len()));
    Ok(Output::ok(s))
}

#[derive(Serialize)]
struct CsspRecord {
    #[serde(flatten)]
    cssp: Cssp,
    stats: Vec<CsspStats>,
    weight_0: String,
}

fn enumerate_cssp(opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n = need(opts.n, "n")?;
    let k = need_l(opts, 1)? as u32 - 1;
    let ds: Vec<u32> = match opts.d {
        Some(d) if d > k => return Err(UsageError(format!("--d {d} out of range 0..={k}"))),
        Some(d) if d >= 1 => vec![d],
        Some(_) => Vec::new(),
        None => (1..=k).collect(),
    };
    let all = cssp::enumerate(k, n);
    let records: Vec<CsspRecord> = all
        .into_iter()
        .map(|c| CsspRecord {
            stats: ds.iter().map(|&d| c.stats(d)).collect(),
            weight_0: c.weight(0).expect("d = 0 is always admissible").to_string(),
            cssp: c,
        })
        .collect();
    if opts.format == Format::Json {
        return Ok(Output::ok(to_json(&records)?));
    }
    let mut s = String::new();
    for (i, rec) in records.iter().enumerate() {
        let stats: Vec<String> = rec
            .stats
            .iter()
            .map(|st| format!("d={}: p={} q={} r={}", st.d, st.p, st.q, st.r))
            .collect();
        s.push_str(&format!(
            "# {} {} | W_0={}\n",
            i + 1,
            stats.join(" | "),
            rec.weight_0
        ));
        s.push_str(&rec.cssp.to_text());
        s.push('\n');
    }
    s.push_str(&format!("total {}\n", records.len()));
    Ok(Output::ok(s))
}

fn enumerate_sttree(opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n = need_n(opts, 1)?;
    let trees = sttree::enumerate_sttrees(n, &opts.s, &opts.t, &opts.b)?;
    if opts.format == Format::Json {
        return Ok(Output::ok(to_json(&trees)?));
    }
    let mut s = String::new();
    for (i, tree) in trees.iter().enumerate() {
        s.push_str(&format!("# {}\n", i + 1));
        for (r, row) in tree.rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map_or_else(|| ".".to_string(), |x| x.to_string()))
                .map(|c| format!("{c:>3}"))
                .collect();
            s.push_str(&" ".repeat(2 * (n - 1 - r)));
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s.push('\n');
    }
    s.push_str(&format!("total {}\n", trees.len()));
    Ok(Output::ok(s))
}

#[derive(Serialize)]
struct GfRecord {
    route: String,
    n: usize,
    l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
    gf: String,
}

fn gf(route: Route, opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let mut d = None;
    let (n, l, g): (usize, usize, Gf) = match route {
        Route::Ast => {
            let (n, l) = (need_n(opts, 1)?, need_l(opts, 1)?);
            (n, l, trapezoid::gf(n, l))
        }
        Route::Cssp | Route::Paths => {
            let (n, l) = (need(opts.n, "n")?, need_l(opts, 1)?);
            let dd = line_offset(opts, l)?;
            d = Some(dd);
            let g = if let Route::Cssp = route {
                cssp::gf(l as u32 - 1, n, dd)?
            } else {
                pathfam::gf_via_paths(n, l, dd)?
            };
            (n, l, g)
        }
        Route::Det => {
            let (n, l) = (need(opts.n, "n")?, need_l(opts, 2)?);
            (n, l, detform::gf_det(n, l))
        }
        Route::Operator => {
            let (n, l) = (need_n(opts, 1)?, need_l(opts, 2)?);
            (n, l, operatorform::gf_ast_via_operator(n, l as i64)?)
        }
    };
    let route_name = format!("{route:?}").to_lowercase();
    if opts.format == Format::Json {
        return Ok(Output::ok(to_json(&GfRecord {
            route: route_name,
            n,
            l,
            d,
            gf: g.to_string(),
        })?));
    }
    let mut s = String::new();
    if opts.show_matrix {
        if let Route::Det = route {
            s.push_str(&detform::det_matrix(n, l).to_string());
        }
    }
    s.push_str(&format!("{g}\n"));
    Ok(Output::ok(s))
}

fn count(opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n = need(opts.n, "n")?;
    let l = need_l(opts, 1)?;
    let c = if l >= 2 {
        detform::count(n, l)
    } else {
        need_n(opts, 1)?;
        trapezoid::enumerate(n, l).len().into()
    };
    if opts.format == Format::Json {
        return Ok(Output::ok(format!(
            "{{\"n\": {n}, \"l\": {l}, \"count\": \"{c}\"}}\n"
        )));
    }
    Ok(Output::ok(format!("{c}\n")))
}

fn tpoly(opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n = need_n(opts, 1)?;
    if n > 5 {
        return Err(UsageError(
            "--n above 5 is out of the supported range".into(),
        ));
    }
    let t = operatorform::t_polynomial(n);
    let values: Vec<String> = (1..=6)
        .map(|l| format!("t({l})={}", t.eval_int(l)))
        .collect();
    if opts.format == Format::Json {
        #[derive(Serialize)]
        struct T {
            n: usize,
            monomial: String,
            falling_factorial: String,
            values: Vec<String>,
        }
        return Ok(Output::ok(to_json(&T {
            n,
            monomial: t.display_monomial(),
            falling_factorial: t.display_falling(),
            values,
        })?));
    }
    Ok(Output::ok(format!(
        "monomial: {}\nfalling factorial: {}\n{}\n",
        t.display_monomial(),
        t.display_falling(),
        values.join(" ")
    )))
}

fn run_verify(check: Check, opts: &Opts) -> CmdResult {
    reject_svg(opts)?;
    let n_max = |default: usize| opts.n_max.unwrap_or(default);
    let l_max = |default: usize| opts.l_max.unwrap_or(default);
    let rows = match check {
        Check::Main => verify::main_sweep(n_max(4), l_max(5)),
        Check::Det => verify::det_route(n_max(4), l_max(5)),
        Check::Operator => verify::operator_route(n_max(3), l_max(5)),
        Check::Truncated => verify::truncated(opts.seed, opts.samples.unwrap_or(200), n_max(4)),
        Check::Qast => verify::qast(n_max(4)),
        Check::Asymm => verify::asym_m(n_max(3), 3),
        Check::Asym => verify::asym(n_max(3), opts.samples.unwrap_or(100), opts.seed),
        Check::Coeff => verify::coeff(n_max(4), l_max(6)),
        Check::Bijections => verify::bijections(n_max(4), l_max(5)),
    };
    let failed = rows.iter().filter(|r| !r.pass).count();
    if opts.format == Format::Json {
        return Ok(Output {
            text: to_json(&rows)?,
            failed: failed > 0,
        });
    }
    Ok(Output {
        text: render_checks(&rows),
        failed: failed > 0,
    })
}

fn render_checks(rows: &[CheckResult]) -> String {
    let mut s = String::new();
    for r in rows {
        if r.pass {
            s.push_str(&format!("PASS {} {}\n", r.check, r.params));
        } else {
            s.push_str(&format!(
                "FAIL {} {}\n  left:  {}\n  right: {}\n",
                r.check, r.params, r.left, r.right
            ));
        }
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    s.push_str(&format!(
        "summary: {} passed, {} failed\n",
        rows.len() - failed,
        failed
    ));
    s
}

fn svg_paths(opts: &Opts) -> CmdResult {
    if opts.format == Format::Json {
        return Err(UsageError("`svg paths` writes SVG only".into()));
    }
    let n = need(opts.n, "n")?;
    let l = need_l(opts, 1)?;
    let d = line_offset(opts, l)?;
    let families: Vec<PathFamily> = cssp::enumerate(l as u32 - 1, n)
        .iter()
        .map(pathfam::cssp_to_paths)
        .collect();
    if let Some(i) = opts.index {
        let f = families.get(i).ok_or_else(|| {
            UsageError(format!("--index {i} out of range (0..{})", families.len()))
        })?;
        return Ok(Output::ok(f.to_svg(Some(d))));
    }
    Ok(Output::ok(svg_sheet(&families, d, n, l)))
}

/// All families side by side, at most six per row.
fn svg_sheet(families: &[PathFamily], d: u32, n: usize, l: usize) -> String {
    const UNIT: usize = 40;
    const PAD: usize = 30;
    const PER_ROW: usize = 6;
    let w = 2 * PAD + n.saturating_sub(1).max(1) * UNIT;
    let h = 2 * PAD + (n + l).saturating_sub(2).max(1) * UNIT;
    let cols = families.len().clamp(1, PER_ROW);
    let rows = families.len().div_ceil(PER_ROW).max(1);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
        cols * w,
        rows * h
    );
    for (i, f) in families.iter().enumerate() {
        let (x, y) = ((i % PER_ROW) * w, (i / PER_ROW) * h);
        s.push_str(&format!("<g transform=\"translate({x},{y})\">\n"));
        s.push_str(&f.to_svg(Some(d)));
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
