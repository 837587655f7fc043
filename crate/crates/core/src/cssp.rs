//! Column strict shifted plane partitions of a fixed class.
//!
//! Row `i` (1-based) of the shifted diagram starts in column `i`, so the
//! part at position `t` of row `i` sits in column `j = i + t - 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Gf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CsspError {
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("row lengths are not strictly decreasing at row {row}")]
    NotStrict { row: usize },
    #[error("part at row {row}, position {pos} is not positive")]
    NonPositive { row: usize, pos: usize },
    #[error("row {row} increases at position {pos}")]
    RowIncrease { row: usize, pos: usize },
    #[error("column is not strictly decreasing at row {row}, position {pos}")]
    ColumnNotStrict { row: usize, pos: usize },
    #[error("not of class {class}: row {row} starts with {first}, expected {expected}")]
    WrongClass {
        class: u32,
        row: usize,
        first: u32,
        expected: u32,
    },
    #[error("weight parameter d = {d} out of range for class {class}")]
    OutOfRange { d: u32, class: u32 },
}

impl CsspError {
    /// True when the filling is a column strict shifted plane partition but
    /// fails the class condition.
    pub fn is_class_violation(&self) -> bool {
        matches!(self, CsspError::WrongClass { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cssp {
    pub class: u32,
    pub rows: Vec<Vec<u32>>,
}

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct CsspStats {
    pub d: u32,
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

/// Checks shape strictness and the row/column monotonicity of a shifted
/// filling, independent of any class.
pub fn validate_filling(rows: &[Vec<u32>]) -> Result<(), CsspError> {
    for (i, row) in rows.iter().enumerate() {
        let row1 = i + 1;
        if row.is_empty() {
            return Err(CsspError::EmptyRow { row: row1 });
        }
        if i > 0 && row.len() >= rows[i - 1].len() {
            return Err(CsspError::NotStrict { row: row1 });
        }
        for (t, &v) in row.iter().enumerate() {
            if v == 0 {
                return Err(CsspError::NonPositive {
                    row: row1,
                    pos: t + 1,
                });
            }
            if t > 0 && v > row[t - 1] {
                return Err(CsspError::RowIncrease {
                    row: row1,
                    pos: t + 1,
                });
            }
            // the cell above sits one position further right in the row above
            if i > 0 && v >= rows[i - 1][t + 1] {
                return Err(CsspError::ColumnNotStrict {
                    row: row1,
                    pos: t + 1,
                });
            }
        }
    }
    Ok(())
}

/// The class `k` of a valid filling, if every row satisfies
/// `first part = length + k`. The empty filling has every class; `None`
/// is returned for it as well as for fillings without a class.
pub fn class_of(rows: &[Vec<u32>]) -> Option<u32> {
    let mut class = None;
    for row in rows {
        let k = row[0].checked_sub(row.len() as u32)?;
        match class {
            None => class = Some(k),
            Some(c) if c != k => return None,
            _ => {}
        }
    }
    class
}

impl Cssp {
    pub fn new(class: u32, rows: Vec<Vec<u32>>) -> Result<Self, CsspError> {
        let c = Cssp { class, rows };
        c.validate()?;
        Ok(c)
    }

    pub fn empty(class: u32) -> Self {
        Cssp {
            class,
            rows: Vec::new(),
        }
    }

    /// Shape `λ`.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn validate(&self) -> Result<(), CsspError> {
        validate_filling(&self.rows)?;
        for (i, row) in self.rows.iter().enumerate() {
            let expected = row.len() as u32 + self.class;
            if row[0] != expected {
                return Err(CsspError::WrongClass {
                    class: self.class,
                    row: i + 1,
                    first: row[0],
                    expected,
                });
            }
        }
        Ok(())
    }

    /// `r` = rows, `q` = parts equal to 1, `p_d` = parts equal to
    /// `j - i + d` (position `t` holding `t - 1 + d`).
    pub fn stats(&self, d: u32) -> CsspStats {
        let mut s = CsspStats {
            d,
            r: self.rows.len() as u32,
            ..CsspStats::default()
        };
        for row in &self.rows {
            for (t, &v) in row.iter().enumerate() {
                if v == 1 {
                    s.q += 1;
                }
                if v == t as u32 + d {
                    s.p += 1;
                }
            }
        }
        s
    }

    /// `W_d` for `1 <= d <= class`, and `W_0` for `d = 0`.
    pub fn weight(&self, d: u32) -> Result<Gf, CsspError> {
        if d > self.class {
            return Err(CsspError::OutOfRange {
                d,
                class: self.class,
            });
        }
        if d >= 1 {
            let s = self.stats(d);
            return Ok(Gf::monomial(s.p, s.q, s.r));
        }
        let (mut p, mut q) = (0, 0);
        for row in &self.rows {
            for (t, &v) in row.iter().enumerate() {
                if v > 1 && v == t as u32 {
                    p += 1;
                }
                if v == 1 && t >= 2 {
                    q += 1;
                }
            }
        }
        let w = Gf::monomial(p, q, self.rows.len() as u32);
        let second_is_one = self.rows.last().is_some_and(|row| row.get(1) == Some(&1));
        Ok(if second_is_one {
            &w * &Gf::p_plus_q_minus_one()
        } else {
            w
        })
    }

    /// Indented layout as in the shifted diagram.
    pub fn to_text(&self) -> String {
        if self.rows.is_empty() {
            return "(empty)\n".to_string();
        }
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&" ".repeat((width + 1) * i));
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// All class-`k` fillings whose first row has at most `n` parts, ordered by
/// number of rows, then shape, then entries (row-major, ascending).
pub fn enumerate(k: u32, n: usize) -> Vec<Cssp> {
    let mut out = Vec::new();
    for r in 0..=n {
        let mut shapes = Vec::new();
        strict_partitions(n, r, &mut Vec::new(), &mut shapes);
        shapes.sort();
        for shape in shapes {
            let mut rows: Vec<Vec<u32>> = shape
                .iter()
                .map(|&len| {
                    let mut row = vec![0; len];
                    row[0] = len as u32 + k;
                    row
                })
                .collect();
            fill(&mut rows, 0, 1, k, &mut out);
        }
    }
    out
}

/// Strict partitions with `parts` parts, each at most `max`, largest first.
fn strict_partitions(max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == parts {
        out.push(cur.clone());
        return;
    }
    let remaining = parts - cur.len();
    let top = cur.last().map_or(max, |&last| last - 1);
    for v in remaining..=top {
        cur.push(v);
        strict_partitions(max, parts, cur, out);
        cur.pop();
    }
}

fn fill(rows: &mut Vec<Vec<u32>>, i: usize, t: usize, k: u32, out: &mut Vec<Cssp>) {
    if i == rows.len() {
        out.push(Cssp {
            class: k,
            rows: rows.clone(),
        });
        return;
    }
    if t == rows[i].len() {
        // first part of the next row is forced; check it against the cell above
        if i + 1 < rows.len() && rows[i + 1][0] >= rows[i][1] {
            return;
        }
        fill(rows, i + 1, 1, k, out);
        return;
    }
    let mut hi = rows[i][t - 1];
    if i > 0 {
        hi = hi.min(rows[i - 1][t + 1] - 1);
    }
    for v in 1..=hi {
        rows[i][t] = v;
        fill(rows, i, t + 1, k, out);
    }
    rows[i][t] = 0;
}

/// Sum of `W_d` over `enumerate(k, n)`.
pub fn gf(k: u32, n: usize, d: u32) -> Result<Gf, CsspError> {
    if d > k {
        return Err(CsspError::OutOfRange { d, class: k });
    }
    enumerate(k, n)
        .iter()
        .map(|c| c.weight(d))
        .sum::<Result<Gf, CsspError>>()
}
