//! `(n, l)`-alternating sign trapezoids.
//!
//! Row `i` (0-based) of an `(n, l)`-trapezoid has `2n + l - 2 - 2i` entries
//! and occupies the absolute columns `i ..= 2n + l - 3 - i` of a grid of
//! width `2n + l - 2`. For `l = 1` the objects are the quasi variant whose
//! bottom row may sum to `0` or `1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Gf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrapezoidError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("entry {value} at row {row}, column {col} is not -1, 0 or 1")]
    Entry { row: usize, col: usize, value: i8 },
    #[error("condition (1): non-zero entries do not alternate in row {row} (at column {col})")]
    RowAlternation { row: usize, col: usize },
    #[error("condition (1): non-zero entries do not alternate in column {col} (at row {row})")]
    ColumnAlternation { row: usize, col: usize },
    #[error("condition (2): row {row} sums to {sum}")]
    RowSum { row: usize, sum: i32 },
    #[error("condition (3): topmost non-zero entry of column {col} (row {row}) is -1")]
    TopEntry { row: usize, col: usize },
    #[error("condition (4): middle column {col} sums to {sum}")]
    MiddleColumnSum { col: usize, sum: i32 },
    #[error("middle column {col} is a 1-column")]
    MiddleOneColumn { col: usize },
}

/// Rows are stored without padding; coordinates in errors are 1-based with
/// absolute columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Trapezoid {
    pub n: usize,
    pub l: usize,
    pub rows: Vec<Vec<i8>>,
}

/// Signed column labels. For `l >= 2` the `n` leftmost columns are
/// `-n..=-1` and the `n` rightmost are `1..=n`; middle columns carry no
/// label. For `l = 1` the `2n - 1` columns are labelled `-(n-1)..=n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColumnLabeling {
    pub n: usize,
    pub l: usize,
}

impl ColumnLabeling {
    pub fn new(n: usize, l: usize) -> Self {
        ColumnLabeling { n, l }
    }

    pub fn width(&self) -> usize {
        2 * self.n + self.l - 2
    }

    /// Label of the 0-based absolute column `c`.
    pub fn label(&self, c: usize) -> Option<i32> {
        let (n, l) = (self.n as i32, self.l as i32);
        let c = c as i32;
        if c >= self.width() as i32 {
            return None;
        }
        if self.l == 1 {
            return Some(c - (n - 1));
        }
        if c < n {
            Some(c - n)
        } else if c >= n + l - 2 {
            Some(c - (n + l - 2) + 1)
        } else {
            None
        }
    }

    pub fn column(&self, label: i32) -> Option<usize> {
        (0..self.width()).find(|&c| self.label(c) == Some(label))
    }

    /// Whether column `c` belongs to "the `n` leftmost columns" (for `l = 1`
    /// this includes the central column).
    pub fn is_left(&self, c: usize) -> bool {
        c < self.n
    }

    /// Whether column `c` is one of the middle `l - 2` columns.
    pub fn is_middle(&self, c: usize) -> bool {
        self.l >= 3 && c >= self.n && c < self.n + self.l - 2
    }
}

/// `p`: 10-columns among the `n` leftmost columns, `q`: among the `n`
/// rightmost, `r`: 1-columns among the `n` leftmost.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct AstStats {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

/// JSON record: the trapezoid with its statistics (for `l >= 2`) and its
/// weight in canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapezoidRecord {
    #[serde(flatten)]
    pub trapezoid: Trapezoid,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<AstStats>,
    pub weight: String,
}

impl Trapezoid {
    pub fn new(n: usize, l: usize, rows: Vec<Vec<i8>>) -> Result<Self, TrapezoidError> {
        let t = Trapezoid { n, l, rows };
        t.check_shape()?;
        Ok(t)
    }

    pub fn width(&self) -> usize {
        2 * self.n + self.l - 2
    }

    pub fn labeling(&self) -> ColumnLabeling {
        ColumnLabeling::new(self.n, self.l)
    }

    /// Number of rows containing absolute column `c`.
    pub fn column_height(&self, c: usize) -> usize {
        (c.min(self.width() - 1 - c) + 1).min(self.n)
    }

    /// Entry at 0-based row `i`, absolute column `c`.
    pub fn get(&self, i: usize, c: usize) -> Option<i8> {
        if c < i || c + i >= self.width() {
            return None;
        }
        self.rows.get(i)?.get(c - i).copied()
    }

    pub fn column_sum(&self, c: usize) -> i32 {
        (0..self.column_height(c))
            .map(|i| self.get(i, c).unwrap_or(0) as i32)
            .sum()
    }

    pub fn bottom_entry(&self, c: usize) -> i8 {
        self.get(self.column_height(c) - 1, c).unwrap_or(0)
    }

    fn check_shape(&self) -> Result<(), TrapezoidError> {
        if self.n == 0 || self.l == 0 {
            return Err(TrapezoidError::Shape(format!(
                "n = {} and l = {} must both be at least 1",
                self.n, self.l
            )));
        }
        if self.rows.len() != self.n {
            return Err(TrapezoidError::Shape(format!(
                "expected {} rows, found {}",
                self.n,
                self.rows.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let expected = self.width() - 2 * i;
            if row.len() != expected {
                return Err(TrapezoidError::Shape(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    expected
                )));
            }
        }
        Ok(())
    }

    /// Checks the defining conditions, scanning cells in row-major order and
    /// reporting the first violation found.
    pub fn validate(&self) -> Result<(), TrapezoidError> {
        self.check_shape()?;
        let width = self.width();
        let mut col_last = vec![0i8; width];
        for (i, row) in self.rows.iter().enumerate() {
            let mut row_last = 0i8;
            let mut sum = 0i32;
            for (k, &v) in row.iter().enumerate() {
                let c = i + k;
                let (row1, col1) = (i + 1, c + 1);
                if !(-1..=1).contains(&v) {
                    return Err(TrapezoidError::Entry {
                        row: row1,
                        col: col1,
                        value: v,
                    });
                }
                if v == 0 {
                    continue;
                }
                if col_last[c] == 0 && v == -1 {
                    return Err(TrapezoidError::TopEntry {
                        row: row1,
                        col: col1,
                    });
                }
                if col_last[c] == v {
                    return Err(TrapezoidError::ColumnAlternation {
                        row: row1,
                        col: col1,
                    });
                }
                if row_last == v {
                    return Err(TrapezoidError::RowAlternation {
                        row: row1,
                        col: col1,
                    });
                }
                col_last[c] = v;
                row_last = v;
                sum += v as i32;
            }
            let bottom_quasi = self.l == 1 && i + 1 == self.n;
            let ok = if bottom_quasi {
                sum == 0 || sum == 1
            } else {
                sum == 1
            };
            if !ok {
                return Err(TrapezoidError::RowSum { row: i + 1, sum });
            }
        }
        let labels = self.labeling();
        for c in 0..width {
            if labels.is_middle(c) {
                let sum = self.column_sum(c);
                if sum != 0 {
                    return Err(TrapezoidError::MiddleColumnSum { col: c + 1, sum });
                }
            }
        }
        Ok(())
    }

    /// Statistics `(p, q, r)`; meaningful for `l >= 2`.
    pub fn stats(&self) -> AstStats {
        let labels = self.labeling();
        let mut s = AstStats::default();
        for c in 0..self.width() {
            if self.column_sum(c) != 1 || labels.label(c).is_none() {
                continue;
            }
            let ten = self.bottom_entry(c) == 0;
            if labels.is_left(c) {
                s.r += 1;
                if ten {
                    s.p += 1;
                }
            } else if ten {
                s.q += 1;
            }
        }
        s
    }

    /// `P^p Q^q R^r` for `l >= 2`; for `l = 1` the central 10-column
    /// contributes a factor `P + Q - 1` instead.
    pub fn weight(&self) -> Gf {
        if self.l >= 2 {
            let s = self.stats();
            return Gf::monomial(s.p, s.q, s.r);
        }
        let centre = self.n - 1;
        let (mut p, mut q, mut r) = (0, 0, 0);
        let mut centre_ten = false;
        for c in 0..self.width() {
            if self.column_sum(c) != 1 {
                continue;
            }
            let ten = self.bottom_entry(c) == 0;
            if c <= centre {
                r += 1;
            }
            if !ten {
                continue;
            }
            match c.cmp(&centre) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => centre_ten = true,
            }
        }
        let w = Gf::monomial(p, q, r);
        if centre_ten {
            &w * &Gf::p_plus_q_minus_one()
        } else {
            w
        }
    }

    /// Replaces every entry by the sum of its column from the top down to
    /// it. For a valid trapezoid all results are 0 or 1.
    pub fn column_partial_sums(&self) -> Vec<Vec<u8>> {
        let mut acc = vec![0i32; self.width()];
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, &v)| {
                        acc[i + k] += v as i32;
                        acc[i + k] as u8
                    })
                    .collect()
            })
            .collect()
    }

    /// Sorted labels of the 1-columns.
    pub fn one_column_positions(&self) -> Result<Vec<i32>, TrapezoidError> {
        let labels = self.labeling();
        let mut out = Vec::new();
        for c in 0..self.width() {
            if self.column_sum(c) != 1 {
                continue;
            }
            match labels.label(c) {
                Some(j) => out.push(j),
                None => return Err(TrapezoidError::MiddleOneColumn { col: c + 1 }),
            }
        }
        Ok(out)
    }

    pub fn record(&self) -> TrapezoidRecord {
        TrapezoidRecord {
            trapezoid: self.clone(),
            stats: (self.l >= 2).then(|| self.stats()),
            weight: self.weight().to_string(),
        }
    }

    /// Centered text layout, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            out.push_str(&" ".repeat(3 * i));
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// All `(n, l)`-trapezoids in lexicographic order of their concatenated
/// rows (`-1 < 0 < 1`).
///
/// Depth-first over cells in row-major order. Column partial sums stay in
/// `{0, 1}` (topmost non-zero is `1`, alternation), so a cell may hold `1`
/// only over a column sum of `0` and `-1` only over a column sum of `1`.
/// Row alternation is tracked by the sign of the last non-zero in the row.
pub fn enumerate(n: usize, l: usize) -> Vec<Trapezoid> {
    assert!(n >= 1 && l >= 1, "enumerate needs n >= 1 and l >= 1");
    let mut search = Search {
        n,
        l,
        width: 2 * n + l - 2,
        rows: (0..n).map(|i| vec![0; 2 * n + l - 2 - 2 * i]).collect(),
        col_sum: vec![0; 2 * n + l - 2],
        out: Vec::new(),
    };
    search.cell(0, 0, 0, 0);
    search.out
}

struct Search {
    n: usize,
    l: usize,
    width: usize,
    rows: Vec<Vec<i8>>,
    col_sum: Vec<i8>,
    out: Vec<Trapezoid>,
}

impl Search {
    fn cell(&mut self, i: usize, k: usize, row_last: i8, row_sum: i8) {
        if i == self.n {
            let labels = ColumnLabeling::new(self.n, self.l);
            if (0..self.width).all(|c| !labels.is_middle(c) || self.col_sum[c] == 0) {
                self.out.push(Trapezoid {
                    n: self.n,
                    l: self.l,
                    rows: self.rows.clone(),
                });
            }
            return;
        }
        let len = self.rows[i].len();
        if k == len {
            let ok = if self.l == 1 && i + 1 == self.n {
                row_sum == 0 || row_sum == 1
            } else {
                row_sum == 1
            };
            if ok {
                self.cell(i + 1, 0, 0, 0);
            }
            return;
        }
        let c = i + k;
        for v in [-1i8, 0, 1] {
            let allowed = match v {
                0 => true,
                1 => self.col_sum[c] == 0 && row_last != 1,
                _ => self.col_sum[c] == 1 && row_last != -1,
            };
            if !allowed {
                continue;
            }
            self.rows[i][k] = v;
            self.col_sum[c] += v;
            let last = if v == 0 { row_last } else { v };
            self.cell(i, k + 1, last, row_sum + v);
            self.col_sum[c] -= v;
            self.rows[i][k] = 0;
        }
    }
}

/// Sum of the weights of all `(n, l)`-trapezoids.
pub fn gf(n: usize, l: usize) -> Gf {
    enumerate(n, l).iter().map(Trapezoid::weight).sum()
}
