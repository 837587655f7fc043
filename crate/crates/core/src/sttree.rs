//! Monotone triangles and `(s, t)`-trees.
//!
//! Entries are `m[i][j]` with `1 <= j <= i <= n` (1-based in the API
//! documentation, 0-based in storage). `m[i+1][j]` is the south-west and
//! `m[i+1][j+1]` the south-east neighbour of `m[i][j]`. The `j`-th
//! NE-diagonal is `{m[i][j] : i >= j}`, and the `k`-th SE-diagonal (counted
//! from the left) is `{m[i][j] : i - j = n - k}`. Both end in the bottom-row
//! cell `m[n][k]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trapezoid::{Trapezoid, TrapezoidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SttError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not in the image of the trapezoid correspondence: {0}")]
    NotInImage(String),
}

impl From<TrapezoidError> for SttError {
    fn from(e: TrapezoidError) -> Self {
        SttError::NotInImage(e.to_string())
    }
}

/// Truncation data: `s` for the NE-diagonals `1..=s.len()`, `t` for the
/// SE-diagonals `n - t.len() + 1 ..= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SttShape {
    pub n: usize,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

/// The designated diagonal whose bottom entry is prescribed as `b_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    NorthEast(usize),
    SouthEast(usize),
}

impl SttShape {
    /// Admissible shapes: `s` weakly decreasing, `t` weakly increasing, at
    /// most `n` truncated diagonals, and every designated diagonal keeps a
    /// bottom cell of its own that survives both truncations.
    pub fn new(n: usize, s: Vec<u32>, t: Vec<u32>) -> Result<Self, SttError> {
        let shape = SttShape { n, s, t };
        shape.check()?;
        Ok(shape)
    }

    /// Plain monotone triangle of order `n`.
    pub fn triangle(n: usize) -> Self {
        SttShape {
            n,
            s: Vec::new(),
            t: Vec::new(),
        }
    }

    fn r(&self) -> usize {
        self.t.len()
    }

    fn s_at(&self, j: usize) -> u32 {
        if j >= 1 && j <= self.s.len() {
            self.s[j - 1]
        } else {
            0
        }
    }

    fn t_at(&self, k: usize) -> u32 {
        let first = self.n - self.r() + 1;
        if k >= first && k <= self.n {
            self.t[k - first]
        } else {
            0
        }
    }

    fn deleted_by_s(&self, i: usize, j: usize) -> bool {
        j <= self.s.len() && i + (self.s_at(j) as usize) > self.n
    }

    fn deleted_by_t(&self, i: usize, j: usize) -> bool {
        let k = self.n - (i - j);
        k + self.r() > self.n && i + (self.t_at(k) as usize) > self.n
    }

    /// Whether cell `(i, j)` (1-based) is removed by the truncation.
    pub fn is_deleted(&self, i: usize, j: usize) -> bool {
        self.deleted_by_s(i, j) || self.deleted_by_t(i, j)
    }

    /// Bottom cell of the diagonal that carries `b_idx` (1-based), or `None`
    /// when that diagonal is deleted entirely.
    pub fn bottom_cell(&self, idx: usize) -> Option<(usize, usize)> {
        match self.designated(idx) {
            Diagonal::NorthEast(j) => {
                let i = self.n.checked_sub(self.s_at(j) as usize)?;
                (i >= j).then_some((i, j))
            }
            Diagonal::SouthEast(k) => {
                let t = self.t_at(k) as usize;
                (k > t).then(|| (self.n - t, k - t))
            }
        }
    }

    pub fn designated(&self, idx: usize) -> Diagonal {
        if idx + self.r() <= self.n {
            Diagonal::NorthEast(idx)
        } else {
            Diagonal::SouthEast(idx)
        }
    }

    /// A regular cell has both lower neighbours.
    pub fn is_regular(&self, i: usize, j: usize) -> bool {
        i < self.n && !self.is_deleted(i + 1, j) && !self.is_deleted(i + 1, j + 1)
    }

    fn check(&self) -> Result<(), SttError> {
        let n = self.n;
        if self.s.len() + self.r() > n {
            return Err(SttError::InvalidShape(format!(
                "{} + {} truncated diagonals exceed order {n}",
                self.s.len(),
                self.r()
            )));
        }
        if self.s.windows(2).any(|w| w[0] < w[1]) {
            return Err(SttError::InvalidShape("s is not weakly decreasing".into()));
        }
        if self.t.windows(2).any(|w| w[0] > w[1]) {
            return Err(SttError::InvalidShape("t is not weakly increasing".into()));
        }
        for idx in 1..=n {
            match self.bottom_cell(idx) {
                None => {
                    return Err(SttError::InvalidShape(format!(
                        "designated diagonal {idx} is truncated completely"
                    )))
                }
                Some((i, j)) if self.is_deleted(i, j) => {
                    return Err(SttError::InvalidShape(format!(
                        "bottom cell ({i}, {j}) of designated diagonal {idx} is truncated"
                    )))
                }
                _ => {}
            }
        }
        for a in 1..=n {
            for b in a + 1..=n {
                if let (Some(x), Some(y)) = (self.bottom_cell(a), self.bottom_cell(b)) {
                    if x == y {
                        return Err(SttError::InvalidShape(format!(
                            "diagonals {a} and {b} share their bottom cell {x:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SttTree {
    pub n: usize,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    /// `rows[i]` has `i + 1` slots; `None` marks a truncated cell.
    pub rows: Vec<Vec<Option<i64>>>,
}

impl SttTree {
    pub fn shape(&self) -> SttShape {
        SttShape {
            n: self.n,
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.rows.get(i - 1)?.get(j - 1).copied().flatten()
    }

    /// Bottom entries of the designated diagonals.
    pub fn bottoms(&self) -> Vec<Option<i64>> {
        let shape = self.shape();
        (1..=self.n)
            .map(|idx| shape.bottom_cell(idx).and_then(|(i, j)| self.get(i, j)))
            .collect()
    }

    /// Checks cell presence against the shape and the two monotonicity
    /// conditions on regular entries.
    pub fn validate(&self) -> Result<(), SttError> {
        let shape = self.shape();
        shape.check()?;
        if self.rows.len() != self.n || self.rows.iter().enumerate().any(|(i, r)| r.len() != i + 1)
        {
            return Err(SttError::ShapeMismatch(
                "rows do not form a triangle".into(),
            ));
        }
        for i in 1..=self.n {
            for j in 1..=i {
                let present = self.get(i, j).is_some();
                if present == shape.is_deleted(i, j) {
                    return Err(SttError::ShapeMismatch(format!(
                        "cell ({i}, {j}) presence disagrees with the truncation"
                    )));
                }
            }
        }
        for i in 1..self.n {
            for j in 1..=i {
                if !shape.is_regular(i, j) {
                    continue;
                }
                let v = self.get(i, j).unwrap_or_default();
                let sw = self.get(i + 1, j).unwrap_or_default();
                let se = self.get(i + 1, j + 1).unwrap_or_default();
                if !(sw <= v && v <= se) {
                    return Err(SttError::InvalidShape(format!(
                        "entry ({i}, {j}) = {v} not between {sw} and {se}"
                    )));
                }
                if j > 1 && shape.is_regular(i, j - 1) && self.get(i, j - 1) == Some(v) {
                    return Err(SttError::InvalidShape(format!(
                        "adjacent regular entries at ({i}, {}) and ({i}, {j}) coincide",
                        j - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All `(s, t)`-trees of order `n` whose designated diagonals end in `b`.
///
/// Every surviving cell is either regular or the bottom of a designated
/// diagonal. Regular entries are sandwiched between their lower neighbours,
/// so filling rows bottom-up and letting each regular entry range over
/// `[south-west, south-east]` is exhaustive; in particular every entry lies
/// in `[min b, max b]`.
pub fn enumerate_sttrees(
    n: usize,
    s: &[u32],
    t: &[u32],
    b: &[i64],
) -> Result<Vec<SttTree>, SttError> {
    let shape = SttShape::new(n, s.to_vec(), t.to_vec())?;
    if b.len() != n {
        return Err(SttError::ShapeMismatch(format!(
            "{} bottom entries for order {n}",
            b.len()
        )));
    }
    let mut fixed: Vec<Vec<Option<i64>>> = (0..n).map(|i| vec![None; i + 1]).collect();
    for (idx, &value) in b.iter().enumerate() {
        if let Some((i, j)) = shape.bottom_cell(idx + 1) {
            fixed[i - 1][j - 1] = Some(value);
        }
    }
    for i in 1..=n {
        for j in 1..=i {
            if !shape.is_deleted(i, j) && !shape.is_regular(i, j) && fixed[i - 1][j - 1].is_none() {
                return Err(SttError::InvalidShape(format!(
                    "cell ({i}, {j}) is neither regular nor a prescribed bottom entry"
                )));
            }
        }
    }
    let mut filler = Filler {
        shape: &shape,
        fixed: &fixed,
        rows: fixed.clone(),
        out: Vec::new(),
    };
    filler.cell(n, 1);
    Ok(filler.out)
}

struct Filler<'a> {
    shape: &'a SttShape,
    fixed: &'a [Vec<Option<i64>>],
    rows: Vec<Vec<Option<i64>>>,
    out: Vec<SttTree>,
}

impl Filler<'_> {
    fn cell(&mut self, i: usize, j: usize) {
        if i == 0 {
            self.out.push(SttTree {
                n: self.shape.n,
                s: self.shape.s.clone(),
                t: self.shape.t.clone(),
                rows: self.rows.clone(),
            });
            return;
        }
        if j > i {
            self.cell(i - 1, 1);
            return;
        }
        if self.shape.is_deleted(i, j) {
            self.rows[i - 1][j - 1] = None;
            self.cell(i, j + 1);
            return;
        }
        if !self.shape.is_regular(i, j) {
            self.rows[i - 1][j - 1] = self.fixed[i - 1][j - 1];
            self.cell(i, j + 1);
            return;
        }
        let sw = self.rows[i][j - 1].expect("south-west neighbour present");
        let se = self.rows[i][j].expect("south-east neighbour present");
        let left = (j > 1 && self.shape.is_regular(i, j - 1))
            .then(|| self.rows[i - 1][j - 2])
            .flatten();
        for v in sw..=se {
            if Some(v) == left {
                continue;
            }
            self.rows[i - 1][j - 1] = Some(v);
            self.cell(i, j + 1);
        }
        self.rows[i - 1][j - 1] = None;
    }
}

/// Truncation and bottom row for one `(s, t)`-tree count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeInstance {
    pub n: usize,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    pub b: Vec<i64>,
}

/// `count` admissible instances drawn from a seeded generator: order up to
/// `n_max`, bottom entries in `[-3, 3]` (sorted), truncations at most 2.
/// Inadmissible draws are discarded.
pub fn random_instances(seed: u64, count: usize, n_max: usize) -> Vec<TreeInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=n_max);
        let left = rng.gen_range(0..=n);
        let right = rng.gen_range(0..=n - left);
        let mut s: Vec<u32> = (0..left).map(|_| rng.gen_range(0..=2)).collect();
        s.sort_by(|a, b| b.cmp(a));
        let mut t: Vec<u32> = (0..right).map(|_| rng.gen_range(0..=2)).collect();
        t.sort();
        let mut b: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        b.sort();
        if SttShape::new(n, s.clone(), t.clone()).is_ok() {
            out.push(TreeInstance { n, s, t, b });
        }
    }
    out
}

/// Prescribed bottom entries for a trapezoid with 1-columns at `j`:
/// `j_i` on the left, `j_i + l - 3` on the right.
pub fn bottoms_for(j: &[i32], l: usize) -> Vec<i64> {
    j.iter()
        .map(|&v| {
            if v < 0 {
                v as i64
            } else {
                v as i64 + l as i64 - 3
            }
        })
        .collect()
}

/// Truncation `s = (-j_i - 1)` for negative labels and `t = (j_i - 1)` for
/// positive ones.
pub fn truncation_for(j: &[i32]) -> (Vec<u32>, Vec<u32>) {
    let s = j
        .iter()
        .filter(|&&v| v < 0)
        .map(|&v| (-v - 1) as u32)
        .collect();
    let t = j
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| (v - 1) as u32)
        .collect();
    (s, t)
}

/// Column partial sums, then the positions of the 1's row by row, with
/// columns indexed `-n ..= n + l - 3`.
pub fn ast_to_sttree(tr: &Trapezoid) -> Result<SttTree, SttError> {
    tr.validate()?;
    if tr.l < 2 {
        return Err(SttError::ShapeMismatch(
            "the correspondence needs l >= 2".into(),
        ));
    }
    let n = tr.n;
    let j = tr.one_column_positions()?;
    let (s, t) = truncation_for(&j);
    let shape = SttShape::new(n, s.clone(), t.clone())?;
    let ps = tr.column_partial_sums();
    let mut rows = Vec::with_capacity(n);
    for (i, row) in ps.iter().enumerate() {
        let mut ones = row
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == 1)
            .map(|(k, _)| (i + k) as i64 - n as i64);
        let mut out = vec![None; i + 1];
        for (jj, slot) in out.iter_mut().enumerate() {
            if !shape.is_deleted(i + 1, jj + 1) {
                *slot = Some(ones.next().ok_or_else(|| {
                    SttError::NotInImage(format!("row {} has too few 1's", i + 1))
                })?);
            }
        }
        if ones.next().is_some() {
            return Err(SttError::NotInImage(format!(
                "row {} has too many 1's",
                i + 1
            )));
        }
        rows.push(out);
    }
    Ok(SttTree { n, s, t, rows })
}

/// Inverse of [`ast_to_sttree`].
pub fn sttree_to_ast(tree: &SttTree, n: usize, l: usize) -> Result<Trapezoid, SttError> {
    if tree.n != n || tree.rows.len() != n {
        return Err(SttError::ShapeMismatch(format!(
            "tree of order {} for n = {n}",
            tree.n
        )));
    }
    if l < 2 {
        return Err(SttError::ShapeMismatch(
            "the correspondence needs l >= 2".into(),
        ));
    }
    let width = 2 * n + l - 2;
    let mut prev = vec![0i8; width];
    let mut rows = Vec::with_capacity(n);
    for (i, tree_row) in tree.rows.iter().enumerate() {
        let mut ps = vec![0i8; width];
        for v in tree_row.iter().flatten() {
            let c = v + n as i64;
            if c < i as i64 || c >= (width - i) as i64 {
                return Err(SttError::NotInImage(format!(
                    "entry {v} lies outside row {}",
                    i + 1
                )));
            }
            if ps[c as usize] == 1 {
                return Err(SttError::NotInImage(format!(
                    "repeated entry {v} in row {}",
                    i + 1
                )));
            }
            ps[c as usize] = 1;
        }
        rows.push((i..width - i).map(|c| ps[c] - prev[c]).collect());
        prev = ps;
    }
    let tr = Trapezoid::new(n, l, rows)?;
    tr.validate()?;
    if &ast_to_sttree(&tr)? != tree {
        return Err(SttError::NotInImage(
            "the trapezoid maps back to a different tree".into(),
        ));
    }
    Ok(tr)
}
