//! Difference operators acting on `M_n(x)`, the polynomial counting
//! monotone triangles with prescribed bottom row, and the counts and
//! generating functions obtained from it.
//!
//! All polynomials here share one variable layout: `P`, `Q`, `R`, `l` at
//! indices 0 to 3, then `x_1, x_2, ...` (see [`x_var`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{rat, AlgebraError, BigInt, BigRational, Gf, MPoly, Monomial, VarRegistry};

pub const P_VAR: usize = 0;
pub const Q_VAR: usize = 1;
pub const R_VAR: usize = 2;
pub const L_VAR: usize = 3;

/// Index of `x_i`, 1-based.
pub fn x_var(i: usize) -> usize {
    L_VAR + i
}

/// Names for the shared layout with `n` x-variables.
pub fn registry(n: usize) -> VarRegistry {
    let mut names: Vec<String> = ["P", "Q", "R", "l"].iter().map(|s| s.to_string()).collect();
    names.extend((1..=n).map(|i| format!("x{i}")));
    VarRegistry::new(names)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid 1-column labels {0:?}: need strictly increasing non-zero integers")]
    InvalidLabels(Vec<i32>),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Linear operator on polynomials built from shifts and differences.
#[derive(Clone, Debug)]
pub enum DiffOp {
    Id,
    /// `E_x^k`.
    Shift {
        var: usize,
        by: i64,
    },
    /// `E_x - Id`.
    Forward(usize),
    /// `Id - E_x^{-1}`.
    Backward(usize),
    /// Multiplication by a fixed polynomial.
    Mul(MPoly),
    Sum(Vec<DiffOp>),
    /// Written order: the last factor acts first.
    Compose(Vec<DiffOp>),
    Pow(Box<DiffOp>, u32),
}

impl DiffOp {
    pub fn scalar(c: i64) -> DiffOp {
        DiffOp::Mul(MPoly::from_int(c))
    }

    pub fn negated(self) -> DiffOp {
        DiffOp::Compose(vec![DiffOp::scalar(-1), self])
    }

    pub fn pow(self, e: u32) -> DiffOp {
        DiffOp::Pow(Box::new(self), e)
    }

    pub fn apply(&self, f: &MPoly) -> MPoly {
        match self {
            DiffOp::Id => f.clone(),
            DiffOp::Shift { var, by } => f.shift_var(*var, &rat(*by)),
            DiffOp::Forward(var) => &f.shift_var(*var, &rat(1)) - f,
            DiffOp::Backward(var) => f - &f.shift_var(*var, &rat(-1)),
            DiffOp::Mul(g) => g * f,
            DiffOp::Sum(ops) => ops
                .iter()
                .fold(MPoly::zero(), |acc, op| &acc + &op.apply(f)),
            DiffOp::Compose(ops) => ops.iter().rev().fold(f.clone(), |acc, op| op.apply(&acc)),
            DiffOp::Pow(op, e) => (0..*e).fold(f.clone(), |acc, _| op.apply(&acc)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MnPolynomial {
    pub n: usize,
    pub poly: MPoly,
}

impl MnPolynomial {
    pub fn eval_at(&self, x: &[BigRational]) -> BigRational {
        self.poly.eval(&point(x))
    }
}

/// Evaluation point in the shared layout, with `P = Q = R = l = 0`.
fn point(x: &[BigRational]) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); L_VAR + 1];
    p.extend(x.iter().cloned());
    p
}

/// `M_n(x) = prod_{p<q} (1 + D_q + D_p D_q) prod_{i<j} (x_j - x_i)/(j - i)`
/// with `D` the forward difference. Computed once per `n` and cached.
pub fn compute_mn(n: usize) -> Arc<MnPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MnPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache poisoned").get(&n) {
        return m.clone();
    }
    let mut f = MPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let diff = &MPoly::var(x_var(j)) - &MPoly::var(x_var(i));
            f = &f * &diff.scale(&BigRational::new(1.into(), BigInt::from(j - i)));
        }
    }
    for p in 1..=n {
        for q in p + 1..=n {
            let op = DiffOp::Sum(vec![
                DiffOp::Id,
                DiffOp::Forward(x_var(q)),
                DiffOp::Compose(vec![DiffOp::Forward(x_var(p)), DiffOp::Forward(x_var(q))]),
            ]);
            f = op.apply(&f);
        }
    }
    let m = Arc::new(MnPolynomial { n, poly: f });
    cache.lock().expect("cache poisoned").insert(n, m.clone());
    m
}

fn to_integer(v: BigRational) -> BigInt {
    assert!(v.is_integer(), "count evaluated to the non-integer {v}");
    v.to_integer()
}

/// Number of `(s, t)`-trees of order `n` whose designated diagonals have
/// bottom entries `b`, via `prod (-D_i)^{s_i} prod B_k^{t_k} M_n` at `x = b`
/// (`D` forward, `B` backward difference).
pub fn count_sttrees_formula(
    n: usize,
    s: &[u32],
    t: &[u32],
    b: &[i64],
) -> Result<BigInt, OperatorError> {
    if s.len() + t.len() > n || b.len() != n {
        return Err(OperatorError::ShapeMismatch(format!(
            "order {n} with |s| = {}, |t| = {}, |b| = {}",
            s.len(),
            t.len(),
            b.len()
        )));
    }
    let mut ops = Vec::new();
    for (i, &si) in s.iter().enumerate() {
        ops.push(DiffOp::Forward(x_var(i + 1)).negated().pow(si));
    }
    let first = n - t.len() + 1;
    for (k, &tk) in t.iter().enumerate() {
        ops.push(DiffOp::Backward(x_var(first + k)).pow(tk));
    }
    let f = DiffOp::Compose(ops).apply(&compute_mn(n).poly);
    let x: Vec<BigRational> = b.iter().map(|&v| rat(v)).collect();
    Ok(to_integer(f.eval(&point(&x))))
}

fn check_labels(n: usize, j: &[i32]) -> Result<usize, OperatorError> {
    if j.len() != n {
        return Err(OperatorError::ShapeMismatch(format!(
            "{} labels for n = {n}",
            j.len()
        )));
    }
    if j.contains(&0) || j.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OperatorError::InvalidLabels(j.to_vec()));
    }
    Ok(j.iter().filter(|&&v| v < 0).count())
}

/// Evaluation point for labels `j`: `j_i` on the left, `j_i + l - 3` on the
/// right.
fn label_point(j: &[i32], l: i64) -> Vec<BigRational> {
    point(
        &j.iter()
            .map(|&v| {
                if v < 0 {
                    rat(v as i64)
                } else {
                    rat(v as i64 + l - 3)
                }
            })
            .collect::<Vec<_>>(),
    )
}

/// `prod_{i<=m} (-D_i)^{-j_i-1} prod_{i>m} B_i^{j_i-1} M_n`, unevaluated.
fn prescribed_poly(n: usize, j: &[i32]) -> MPoly {
    let ops = j
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < 0 {
                DiffOp::Forward(x_var(i + 1)).negated().pow((-v - 1) as u32)
            } else {
                DiffOp::Backward(x_var(i + 1)).pow((v - 1) as u32)
            }
        })
        .collect();
    DiffOp::Compose(ops).apply(&compute_mn(n).poly)
}

/// The operator evaluation without the range shortcut; used to confirm that
/// labels beyond `[-n, n]` really contribute nothing.
pub fn prescribed_value(n: usize, l: i64, j: &[i32]) -> Result<BigInt, OperatorError> {
    check_labels(n, j)?;
    Ok(to_integer(prescribed_poly(n, j).eval(&label_point(j, l))))
}

/// Number of `(n, l)`-trapezoids whose 1-columns carry the labels `j`.
/// For `l = 1` this is the value of the same polynomial expression.
pub fn count_ast_prescribed(n: usize, l: i64, j: &[i32]) -> Result<BigInt, OperatorError> {
    check_labels(n, j)?;
    if j[0] < -(n as i32) || j[n - 1] > n as i32 {
        return Ok(BigInt::zero());
    }
    prescribed_value(n, l, j)
}

/// `P^{#10-columns left} Q^{#10-columns right}` summed over trapezoids with
/// 1-columns at `j`, by the operator
/// `prod_{i<=m} E_i (1 - P B_i)(-D_i)^{-j_i-1} prod_{i>m} E_i^{-1} (1 + Q D_i) B_i^{j_i-1}`.
pub fn gf_ast_prescribed(n: usize, l: i64, j: &[i32]) -> Result<Gf, OperatorError> {
    check_labels(n, j)?;
    if j[0] < -(n as i32) || j[n - 1] > n as i32 {
        return Ok(Gf::zero());
    }
    let p = MPoly::var(P_VAR);
    let q = MPoly::var(Q_VAR);
    let mut ops = Vec::new();
    for (i, &v) in j.iter().enumerate() {
        let x = x_var(i + 1);
        if v < 0 {
            ops.push(DiffOp::Shift { var: x, by: 1 });
            ops.push(DiffOp::Sum(vec![
                DiffOp::Id,
                DiffOp::Compose(vec![DiffOp::Mul(-&p), DiffOp::Backward(x)]),
            ]));
            ops.push(DiffOp::Forward(x).negated().pow((-v - 1) as u32));
        } else {
            ops.push(DiffOp::Shift { var: x, by: -1 });
            ops.push(DiffOp::Sum(vec![
                DiffOp::Id,
                DiffOp::Compose(vec![DiffOp::Mul(q.clone()), DiffOp::Forward(x)]),
            ]));
            ops.push(DiffOp::Backward(x).pow((v - 1) as u32));
        }
    }
    let mut f = DiffOp::Compose(ops).apply(&compute_mn(n).poly);
    let pt = label_point(j, l);
    for i in 1..=n {
        f = f.substitute_value(x_var(i), &pt[x_var(i)]);
    }
    Ok(f.to_gf(P_VAR, Q_VAR, R_VAR)?)
}

/// All label vectors `-n <= j_1 < ... < j_n <= n` avoiding 0.
pub fn label_vectors(n: usize) -> Vec<Vec<i32>> {
    let pool: Vec<i32> = (-(n as i32)..=n as i32).filter(|&v| v != 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(pool: &[i32], start: usize, n: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..pool.len() {
            cur.push(pool[k]);
            rec(pool, k + 1, n, cur, out);
            cur.pop();
        }
    }
    rec(&pool, 0, n, &mut cur, &mut out);
    out
}

/// `sum_j R^m gf_ast_prescribed(n, l, j)`, `m` the number of negative labels.
pub fn gf_ast_via_operator(n: usize, l: i64) -> Result<Gf, OperatorError> {
    compute_mn(n);
    label_vectors(n)
        .par_iter()
        .map(|j| {
            let m = j.iter().filter(|&&v| v < 0).count() as u32;
            Ok(&Gf::r().pow(m) * &gf_ast_prescribed(n, l, j)?)
        })
        .collect::<Result<Vec<Gf>, OperatorError>>()
        .map(|parts| parts.into_iter().sum())
}

/// Polynomial in one variable `l` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPolynomial {
    /// `coeffs[k]` is the coefficient of `l^k`.
    pub coeffs: Vec<BigRational>,
}

impl TPolynomial {
    fn from_mpoly(f: &MPoly) -> Self {
        let deg = f.degree_in(L_VAR) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in f.terms() {
            coeffs[m.exp(L_VAR) as usize] += c;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, l: i64) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * rat(l) + c)
    }

    /// Integer value at `l`; panics if the value is not an integer.
    pub fn eval_int(&self, l: i64) -> BigInt {
        to_integer(self.eval(l))
    }

    /// Coefficients `c_k` with `t(l) = sum_k c_k l(l-1)...(l-k+1)`, i.e.
    /// `c_k = (forward difference)^k t (0) / k!`.
    pub fn falling_factorial_coeffs(&self) -> Vec<BigRational> {
        let mut vals: Vec<BigRational> = (0..=self.degree() as i64).map(|l| self.eval(l)).collect();
        let mut out = Vec::with_capacity(vals.len());
        let mut fact = BigInt::one();
        for k in 0..vals.len() {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            out.push(&vals[0] / BigRational::from_integer(fact.clone()));
            vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    pub fn display_monomial(&self) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero());
        crate::exactalg::format_terms(terms.map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{k}"),
            };
            (mono, c.clone())
        }))
    }

    /// Falling-factorial basis, `(l)_k = l(l-1)...(l-k+1)`.
    pub fn display_falling(&self) -> String {
        let coeffs = self.falling_factorial_coeffs();
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero());
        crate::exactalg::format_terms(terms.map(|(k, c)| {
            let mono = if k == 0 {
                String::new()
            } else {
                format!("(l)_{k}")
            };
            (mono, c.clone())
        }))
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_monomial())
    }
}

/// `t_n(l)`: the prescribed-column expression summed over all label vectors,
/// with `x_i = l + j_i - 3` on the right kept symbolic in `l`.
pub fn t_polynomial(n: usize) -> TPolynomial {
    compute_mn(n);
    let total = label_vectors(n)
        .par_iter()
        .map(|j| {
            let mut f = prescribed_poly(n, j);
            for (i, &v) in j.iter().enumerate() {
                let value = if v < 0 {
                    MPoly::from_int(v as i64)
                } else {
                    &MPoly::var(L_VAR) + &MPoly::from_int(v as i64 - 3)
                };
                f = f.substitute(x_var(i + 1), &value);
            }
            f
        })
        .reduce(MPoly::zero, |a, b| &a + &b);
    TPolynomial::from_mpoly(&total)
}

/// Left and right side of an identity evaluated at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison<T> {
    pub left: T,
    pub right: T,
}

impl<T: PartialEq> Comparison<T> {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in signed_permutations(n - 1) {
        // inserting n-1 at position k creates n-1-k inversions
        for k in 0..n {
            let mut p = perm.clone();
            p.insert(k, n - 1);
            let flips = (n - 1 - k) as i64;
            out.push((p, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// `sum_sigma sgn(sigma) f(Y_sigma(1), ..., Y_sigma(n))` with `Y_i` at
/// variable index `i - 1`.
pub fn antisymmetrize(f: &MPoly, n: usize) -> MPoly {
    signed_permutations(n)
        .into_iter()
        .map(|(perm, sign)| f.permute_vars(&perm).scale(&rat(sign)))
        .fold(MPoly::zero(), |acc, g| &acc + &g)
}

fn vandermonde(n: usize) -> MPoly {
    let mut v = MPoly::one();
    for i in 0..n {
        for j in i + 1..n {
            v = &v * &(&MPoly::var(j) - &MPoly::var(i));
        }
    }
    v
}

/// Compares `M_n(x)` with the constant term of
/// `ASym_Y[prod (1+Y_i)^{x_i} prod_{i<j} (1 + Y_j + Y_i Y_j)] / prod_{i<j} (Y_j - Y_i)`.
pub fn verify_asym_m(x: &[u32]) -> Result<Comparison<BigRational>, OperatorError> {
    let n = x.len();
    let one = MPoly::one();
    let mut f = MPoly::one();
    for (i, &e) in x.iter().enumerate() {
        f = &f * &(&one + &MPoly::var(i)).pow(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let yj = MPoly::var(j);
            f = &f * &(&(&one + &yj) + &(&MPoly::var(i) * &yj));
        }
    }
    let quotient = antisymmetrize(&f, n).exact_divide(&vandermonde(n))?;
    let xs: Vec<BigRational> = x.iter().map(|&v| rat(v as i64)).collect();
    Ok(Comparison {
        left: compute_mn(n).eval_at(&xs),
        right: quotient.constant_term(),
    })
}

fn prod<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigRational {
    it.fold(BigRational::one(), |acc, v| acc * v)
}

/// Both sides of the antisymmetrizer identity
/// `ASym_X[prod_{i<j}(1+X_j+X_i X_j) prod_i X_i^{i-1} / (1 - X_i ... X_n)]
///  = prod_i 1/(1-X_i) prod_{i<j} (1+X_i+X_j)(X_j-X_i)/(1-X_i X_j)`,
/// or `None` if the point hits a pole of either side.
pub fn asym_lemma_sides(x: &[BigRational]) -> Option<Comparison<BigRational>> {
    let n = x.len();
    let one = BigRational::one();
    for mask in 1u32..(1 << n) {
        if prod((0..n).filter(|i| mask >> i & 1 == 1).map(|i| &x[i])) == one {
            return None;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if x[i] == x[j] || &x[i] * &x[j] == one {
                return None;
            }
        }
    }
    let mut left = BigRational::zero();
    for (perm, sign) in signed_permutations(n) {
        let y: Vec<&BigRational> = perm.iter().map(|&p| &x[p]).collect();
        let mut term = rat(sign);
        for i in 0..n {
            for j in i + 1..n {
                term *= &one + y[j] + y[i] * y[j];
            }
            term *= num_traits::pow(y[i].clone(), i);
            term /= &one - prod(y[i..].iter().copied());
        }
        left += term;
    }
    let mut right = BigRational::one();
    for i in 0..n {
        right /= &one - &x[i];
        for j in i + 1..n {
            right *= (&one + &x[i] + &x[j]) * (&x[j] - &x[i]) / (&one - &x[i] * &x[j]);
        }
    }
    Some(Comparison { left, right })
}

/// A point where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Vec<BigRational>,
    pub sides: Comparison<BigRational>,
}

/// Random-point check of the antisymmetrizer identity with exact rationals.
/// Points hitting a pole are redrawn. Returns the first failing point.
pub fn verify_asym_lemma(n: usize, samples: usize, seed: u64) -> Result<(), Box<Counterexample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let x: Vec<BigRational> = (0..n)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.gen_range(-12i64..=12)),
                    BigInt::from(rng.gen_range(1i64..=7)),
                )
            })
            .collect();
        let Some(cmp) = asym_lemma_sides(&x) else {
            continue;
        };
        if !cmp.holds() {
            return Err(Box::new(Counterexample {
                point: x,
                sides: cmp,
            }));
        }
        done += 1;
    }
    Ok(())
}

/// The monomial `x_i^e` in the shared layout.
pub fn x_monomial(i: usize, e: u32) -> Monomial {
    Monomial::var(x_var(i), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sttree;
    use crate::trapezoid;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn small_mn() {
        assert_eq!(compute_mn(1).poly, MPoly::one());
        let m2 = &(&MPoly::var(x_var(2)) - &MPoly::var(x_var(1))) + &MPoly::one();
        assert_eq!(compute_mn(2).poly, m2);
        assert_eq!(compute_mn(2).poly.display(&registry(2)), "-x1 + x2 + 1");
        assert_eq!(compute_mn(3).eval_at(&ints(&[1, 2, 3])), rat(7));
        for n in 1..=4 {
            assert_eq!(
                compute_mn(n).poly.total_degree(),
                Some((n * (n - 1) / 2) as u32)
            );
        }
    }

    #[test]
    fn mn_counts_monotone_triangles() {
        for b in [vec![1, 2, 3, 4], vec![0, 2, 3, 7], vec![-1, 0, 0, 2]] {
            let trees = sttree::enumerate_sttrees(4, &[], &[], &b).unwrap();
            assert_eq!(compute_mn(4).eval_at(&ints(&b)), rat(trees.len() as i64));
        }
    }

    #[test]
    fn mn_translation_invariance() {
        for n in 1..=4 {
            let m = compute_mn(n);
            let base: Vec<i64> = (0..n as i64).map(|i| 2 * i - 1).collect();
            let v = m.eval_at(&ints(&base));
            for c in -3..=3 {
                let shifted: Vec<i64> = base.iter().map(|x| x + c).collect();
                assert_eq!(m.eval_at(&ints(&shifted)), v);
            }
        }
    }

    #[test]
    fn sttree_formula_examples() {
        assert_eq!(
            count_sttrees_formula(3, &[], &[], &[1, 2, 3]).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(
            count_sttrees_formula(1, &[0], &[], &[5]).unwrap(),
            BigInt::from(1)
        );
        let brute = sttree::enumerate_sttrees(5, &[1, 0], &[0, 1, 2], &[-2, -1, 2, 3, 4])
            .unwrap()
            .len();
        assert_eq!(
            count_sttrees_formula(5, &[1, 0], &[0, 1, 2], &[-2, -1, 2, 3, 4]).unwrap(),
            BigInt::from(brute)
        );
        assert!(matches!(
            count_sttrees_formula(2, &[0], &[], &[1]),
            Err(OperatorError::ShapeMismatch(_))
        ));
    }

    fn listed_by_labels() -> BTreeMap<Vec<i32>, Gf> {
        let mut out: BTreeMap<Vec<i32>, Gf> = BTreeMap::new();
        for (rows, _) in trapezoid::tests::list_2_4() {
            let tr = trapezoid::Trapezoid::new(2, 4, rows).unwrap();
            let s = tr.stats();
            let slot = out.entry(tr.one_column_positions().unwrap()).or_default();
            *slot = &*slot + &Gf::monomial(s.p, s.q, 0);
        }
        out
    }

    #[test]
    fn prescribed_examples() {
        assert_eq!(
            count_ast_prescribed(2, 4, &[-1, 1]).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            count_ast_prescribed(2, 4, &[-2, -1]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ast_prescribed(2, 4, &[-3, 1]).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            gf_ast_prescribed(2, 4, &[-1, 1]).unwrap().to_string(),
            "2 + P + Q"
        );
        assert_eq!(gf_ast_prescribed(2, 4, &[-2, -1]).unwrap(), Gf::one());
        assert_eq!(gf_ast_prescribed(2, 4, &[1, 2]).unwrap(), Gf::one());
        let listed = listed_by_labels();
        for j in label_vectors(2) {
            let want = listed.get(&j).cloned().unwrap_or_default();
            assert_eq!(gf_ast_prescribed(2, 4, &j).unwrap(), want, "j={j:?}");
        }
        assert!(matches!(
            count_ast_prescribed(2, 4, &[1, -1]),
            Err(OperatorError::InvalidLabels(_))
        ));
    }

    #[test]
    fn vanishing_just_outside_range() {
        for n in 1..=3 {
            for l in 1..=5 {
                for j in label_vectors(n) {
                    let mut out = j.clone();
                    if j[0] == -(n as i32) {
                        out[0] -= 1;
                    } else if j[n - 1] == n as i32 {
                        out[n - 1] += 1;
                    } else {
                        continue;
                    }
                    assert!(prescribed_value(n, l, &out).unwrap().is_zero(), "j={out:?}");
                }
            }
        }
    }

    #[test]
    fn operator_route_small() {
        assert_eq!(
            gf_ast_via_operator(2, 4).unwrap().to_string(),
            "R^2 + 4*R + P*R + Q*R + 1"
        );
        for l in 2..=5 {
            assert_eq!(gf_ast_via_operator(1, l).unwrap().to_string(), "R + 1");
        }
        assert_eq!(gf_ast_via_operator(2, 3).unwrap().total(), BigInt::from(7));
    }

    #[test]
    fn t_polynomials() {
        let t1 = t_polynomial(1);
        assert_eq!(t1.coeffs, vec![rat(2)]);
        let t2 = t_polynomial(2);
        assert_eq!(t2.eval_int(3), BigInt::from(7));
        assert_eq!(t2.eval_int(4), BigInt::from(8));
        for n in 1..=3 {
            let t = t_polynomial(n);
            for l in 1..=5 {
                assert_eq!(
                    t.eval_int(l),
                    BigInt::from(trapezoid::enumerate(n, l as usize).len()),
                    "n={n} l={l}"
                );
            }
        }
        let ff = t2.falling_factorial_coeffs();
        let back: BigRational = ff
            .iter()
            .enumerate()
            .map(|(k, c)| c * (0..k as i64).fold(rat(1), |acc, i| acc * rat(6 - i)))
            .sum();
        assert_eq!(back, t2.eval(6));
        assert_eq!(
            TPolynomial {
                coeffs: vec![rat(2)]
            }
            .display_falling(),
            "2"
        );
    }

    #[test]
    fn qast_vanishing() {
        for n in 1..=4 {
            for j in label_vectors(n) {
                let m = j.iter().filter(|&&v| v < 0).count();
                let left_far = m == 0 || j[m - 1] < -1;
                let right_far = m == n || j[m] > 1;
                if left_far && right_far {
                    assert!(count_ast_prescribed(n, 1, &j).unwrap().is_zero(), "j={j:?}");
                }
            }
        }
    }

    #[test]
    fn asym_m_identity() {
        assert!(verify_asym_m(&[4]).unwrap().holds());
        let c = verify_asym_m(&[0, 0]).unwrap();
        assert!(c.holds());
        assert_eq!(c.left, rat(1));
        let c = verify_asym_m(&[1, 2, 3]).unwrap();
        assert!(c.holds());
        assert_eq!(c.left, rat(7));
    }

    #[test]
    fn asym_lemma() {
        let x = [BigRational::new(1.into(), 3.into())];
        let c = asym_lemma_sides(&x).unwrap();
        assert_eq!(c.left, BigRational::new(3.into(), 2.into()));
        assert!(c.holds());
        for n in 1..=3 {
            assert!(verify_asym_lemma(n, 30, 7).is_ok());
        }
        assert!(asym_lemma_sides(&[rat(1)]).is_none());
    }

    #[test]
    fn signs_of_permutations() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert!(perms.contains(&(vec![1, 0, 2], -1)));
        assert!(perms.contains(&(vec![1, 2, 0], 1)));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..=5), 0..6).prop_map(|ts| {
            ts.into_iter()
                .map(|((a, b, c), k)| {
                    MPoly::term(
                        x_monomial(1, a)
                            .mul(&x_monomial(2, b))
                            .mul(&Monomial::var(P_VAR, c)),
                        rat(k),
                    )
                })
                .fold(MPoly::zero(), |acc, t| &acc + &t)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn differences_commute(f in arb_poly()) {
            let a = DiffOp::Compose(vec![DiffOp::Forward(x_var(1)), DiffOp::Backward(x_var(2))]);
            let b = DiffOp::Compose(vec![DiffOp::Backward(x_var(2)), DiffOp::Forward(x_var(1))]);
            prop_assert_eq!(a.apply(&f), b.apply(&f));
        }

        #[test]
        fn forward_is_shifted_backward(f in arb_poly()) {
            let shifted = DiffOp::Compose(vec![DiffOp::Shift { var: x_var(1), by: 1 }, DiffOp::Backward(x_var(1))]);
            prop_assert_eq!(DiffOp::Forward(x_var(1)).apply(&f), shifted.apply(&f));
        }
    }
}
