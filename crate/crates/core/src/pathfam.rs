//! Families of non-intersecting north/west lattice paths from `(u, 0)` to
//! `(0, u + l - 1)`, in bijection with column strict shifted plane
//! partitions of class `l - 1`.
//!
//! A row `c_1 > c_2 > ... > c_{u+1}` becomes the path that takes its west
//! step from `x` to `x - 1` at height `c_{x+1} - 1`; the first part is one
//! more than the height of the end point.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cssp::{Cssp, CsspError};
use crate::exactalg::Gf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("paths from ({0}, 0) and ({1}, 0) intersect")]
    Intersecting(u32, u32),
    #[error("not in the image of the plane partition correspondence: {0}")]
    NotInImage(String),
    #[error("line offset d = {d} out of range for l = {l}")]
    OutOfRange { d: u32, l: usize },
}

/// Path from `(u, 0)` to `(0, u + l - 1)` as a string over `N` and `W`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    pub u: u32,
    pub steps: String,
}

impl LatticePath {
    /// Lattice points visited, starting point first.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut p = (self.u as i64, 0i64);
        let mut out = vec![p];
        for c in self.steps.chars() {
            match c {
                'N' => p.1 += 1,
                'W' => p.0 -= 1,
                _ => {}
            }
            out.push(p);
        }
        out
    }

    pub fn validate(&self, l: usize) -> Result<(), PathError> {
        if let Some(c) = self.steps.chars().find(|&c| c != 'N' && c != 'W') {
            return Err(PathError::InvalidPath(format!("unknown step {c:?}")));
        }
        let west = self.steps.chars().filter(|&c| c == 'W').count();
        let north = self.steps.len() - west;
        if west != self.u as usize || north + 1 != self.u as usize + l {
            return Err(PathError::InvalidPath(format!(
                "{west} west and {north} north steps cannot join ({}, 0) to (0, {})",
                self.u,
                self.u as usize + l - 1
            )));
        }
        Ok(())
    }

    /// Heights of the west steps, ordered from `x = u` down to `x = 1`.
    fn west_heights(&self) -> Vec<i64> {
        let pts = self.points();
        self.steps
            .chars()
            .enumerate()
            .filter(|&(_, c)| c == 'W')
            .map(|(k, _)| pts[k].1)
            .collect()
    }

    /// The unique lattice point on `y = x + d` (for `0 <= d <= l - 1`) and
    /// whether the path enters it by a west step. `None` for a path that
    /// starts on the line.
    fn line_arrival(&self, d: i64) -> Option<((i64, i64), bool)> {
        let pts = self.points();
        let k = pts.iter().position(|&(x, y)| y == x + d)?;
        (k > 0).then(|| (pts[k], self.steps.as_bytes()[k - 1] == b'W'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathFamily {
    pub l: usize,
    /// Ordered by decreasing `u`.
    pub paths: Vec<LatticePath>,
}

/// How a family is weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathWeight {
    /// `R^{#paths} Q^{#west steps at height 0}`.
    POne,
    /// The weight attached to the line `y = x + d`.
    Line(u32),
}

impl PathFamily {
    pub fn validate(&self) -> Result<(), PathError> {
        for p in &self.paths {
            p.validate(self.l)?;
        }
        if self.paths.windows(2).any(|w| w[0].u <= w[1].u) {
            return Err(PathError::InvalidPath(
                "start points not strictly decreasing".into(),
            ));
        }
        for (a, pa) in self.paths.iter().enumerate() {
            let pts = pa.points();
            for pb in &self.paths[a + 1..] {
                if pb.points().iter().any(|q| pts.contains(q)) {
                    return Err(PathError::Intersecting(pa.u, pb.u));
                }
            }
        }
        Ok(())
    }

    pub fn weight(&self, mode: PathWeight) -> Result<Gf, PathError> {
        if let PathWeight::Line(d) = mode {
            if d as usize >= self.l.max(1) {
                return Err(PathError::OutOfRange { d, l: self.l });
            }
        }
        let mut w = Gf::r().pow(self.paths.len() as u32);
        for path in &self.paths {
            w = &w * &path_weight(path, mode);
        }
        Ok(w)
    }

    /// Picture of the family with the line `y = x + d`.
    pub fn to_svg(&self, d: Option<u32>) -> String {
        const UNIT: i64 = 40;
        const PAD: i64 = 30;
        const COLORS: [&str; 6] = [
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
        ];
        let max_u = self.paths.iter().map(|p| p.u as i64).max().unwrap_or(0);
        let w = max_u.max(1);
        let h = max_u + self.l as i64 - 1;
        let h = h.max(1);
        let px = |x: i64| PAD + x * UNIT;
        let py = |y: i64| PAD + (h - y) * UNIT;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            2 * PAD + w * UNIT,
            2 * PAD + h * UNIT,
            2 * PAD + w * UNIT,
            2 * PAD + h * UNIT
        );
        let _ = writeln!(s, r##"<g stroke="#ccc" stroke-width="1">"##);
        for x in 0..=w {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                px(x),
                py(0),
                px(x),
                py(h)
            );
        }
        for y in 0..=h {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                px(0),
                py(y),
                px(w),
                py(y)
            );
        }
        let _ = writeln!(s, "</g>");
        if let Some(d) = d {
            let d = d as i64;
            let top = (h - d).min(w);
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="1.5" stroke-dasharray="6,4"/>"##,
                px(0),
                py(d),
                px(top),
                py(top + d)
            );
        }
        for (k, path) in self.paths.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let pts = path.points();
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{},{}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="3"/>"#,
                coords.join(" ")
            );
            let (sx, sy) = pts[0];
            let (ex, ey) = pts[pts.len() - 1];
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="5" fill="{color}"/>"#,
                px(sx),
                py(sy)
            );
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="10" height="10" fill="{color}"/>"#,
                px(ex) - 5,
                py(ey) - 5
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn path_weight(path: &LatticePath, mode: PathWeight) -> Gf {
    let pts = path.points();
    let ground: Vec<(i64, i64)> = path
        .steps
        .chars()
        .enumerate()
        .filter(|&(k, c)| c == 'W' && pts[k].1 == 0)
        .map(|(k, _)| pts[k + 1])
        .collect();
    match mode {
        PathWeight::POne => Gf::q().pow(ground.len() as u32),
        PathWeight::Line(0) => {
            let mut w = Gf::q().pow(ground.iter().filter(|&&e| e != (0, 0)).count() as u32);
            match path.line_arrival(0) {
                Some(((0, 0), true)) => w = &w * &Gf::p_plus_q_minus_one(),
                Some((_, true)) => w = &w * &Gf::p(),
                _ => {}
            }
            w
        }
        PathWeight::Line(d) => {
            let (_, west) = path
                .line_arrival(d as i64)
                .expect("every path meets the line y = x + d");
            let w = Gf::q().pow(ground.len() as u32);
            if west {
                &w * &Gf::p()
            } else {
                w
            }
        }
    }
}

pub fn cssp_to_paths(c: &Cssp) -> PathFamily {
    let l = c.class as usize + 1;
    let paths = c
        .rows
        .iter()
        .map(|row| {
            let u = row.len() - 1;
            let mut steps = String::new();
            let mut y = 0;
            for x in (1..=u).rev() {
                let h = row[x] as usize - 1;
                steps.extend(std::iter::repeat_n('N', h - y));
                steps.push('W');
                y = h;
            }
            steps.extend(std::iter::repeat_n('N', u + l - 1 - y));
            LatticePath { u: u as u32, steps }
        })
        .collect();
    PathFamily { l, paths }
}

pub fn paths_to_cssp(f: &PathFamily) -> Result<Cssp, PathError> {
    f.validate()?;
    if f.l == 0 {
        return Err(PathError::InvalidPath("l must be at least 1".into()));
    }
    let rows = f
        .paths
        .iter()
        .map(|p| {
            let mut row = vec![p.u + f.l as u32];
            row.extend(p.west_heights().iter().rev().map(|&h| h as u32 + 1));
            row
        })
        .collect();
    Cssp::new(f.l as u32 - 1, rows).map_err(|e: CsspError| PathError::NotInImage(e.to_string()))
}

/// All north/west paths from `(u, 0)` to `(0, u + l - 1)`.
pub fn all_paths(u: u32, l: usize) -> Vec<LatticePath> {
    let north = u as usize + l - 1;
    let mut out = Vec::new();
    fn rec(w: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
        if w == 0 && n == 0 {
            out.push(cur.clone());
            return;
        }
        if n > 0 {
            cur.push('N');
            rec(w, n - 1, cur, out);
            cur.pop();
        }
        if w > 0 {
            cur.push('W');
            rec(w - 1, n, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(u as usize, north, &mut String::new(), &mut raw);
    out.extend(raw.into_iter().map(|steps| LatticePath { u, steps }));
    out
}

/// Every non-intersecting family with start points in `{0, ..., n-1}`.
pub fn enumerate_families(n: usize, l: usize) -> Vec<PathFamily> {
    let per_u: Vec<Vec<LatticePath>> = (0..n as u32).map(|u| all_paths(u, l)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<LatticePath> = Vec::new();
    fn rec(
        u: usize,
        per_u: &[Vec<LatticePath>],
        l: usize,
        chosen: &mut Vec<LatticePath>,
        used: &mut Vec<(i64, i64)>,
        out: &mut Vec<PathFamily>,
    ) {
        if u == 0 {
            out.push(PathFamily {
                l,
                paths: chosen.clone(),
            });
            return;
        }
        let u = u - 1;
        rec(u, per_u, l, chosen, used, out);
        for p in &per_u[u] {
            let pts = p.points();
            if pts.iter().any(|q| used.contains(q)) {
                continue;
            }
            let mark = used.len();
            used.extend(pts);
            chosen.push(p.clone());
            rec(u, per_u, l, chosen, used, out);
            chosen.pop();
            used.truncate(mark);
        }
    }
    rec(n, &per_u, l, &mut chosen, &mut Vec::new(), &mut out);
    out
}

/// Sum of family weights for the line `y = x + d`.
pub fn gf_via_paths(n: usize, l: usize, d: u32) -> Result<Gf, PathError> {
    enumerate_families(n, l)
        .iter()
        .map(|f| f.weight(PathWeight::Line(d)))
        .sum()
}
