use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{binomial, AlgebraError, Gf};

/// Exponent vector with trailing zeros trimmed, so that polynomials over
/// different numbers of variables compare equal when they should.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(idx: usize, exp: u32) -> Self {
        let mut v = vec![0; idx + 1];
        v[idx] = exp;
        Monomial::new(v)
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0.get(idx).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let v = (0..len).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.exp(i))
    }

    /// `other / self`; caller guarantees `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            (0..other.0.len())
                .map(|i| other.exp(i) - self.exp(i))
                .collect(),
        )
    }

    pub fn with_exp(&self, idx: usize, exp: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= idx {
            v.resize(idx + 1, 0);
        }
        v[idx] = exp;
        Monomial::new(v)
    }

    /// Moves the exponent of variable `i` to variable `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let len = perm
            .iter()
            .copied()
            .max()
            .map_or(0, |m| m + 1)
            .max(self.0.len());
        let mut v = vec![0; len];
        for (i, &e) in self.0.iter().enumerate() {
            let target = perm.get(i).copied().unwrap_or(i);
            v[target] += e;
        }
        Monomial::new(v)
    }

    /// Graded lexicographic comparison (degree first, then variable 0 most
    /// significant).
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names(i)),
                _ => parts.push(format!("{}^{}", names(i), e)),
            }
        }
        parts.join("*")
    }
}

/// Ordered list of variable names. Index `i` of every exponent vector refers
/// to `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarRegistry {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, idx: usize) -> String {
        self.names
            .get(idx)
            .cloned()
            .unwrap_or_else(|| format!("v{idx}"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        MPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(idx: usize) -> Self {
        MPoly::term(Monomial::var(idx, 1), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant term (evaluation at the origin).
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        let max = self.degree_in(var);
        let mut powers = vec![MPoly::one()];
        for i in 1..=max as usize {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let rest = m.with_exp(var, 0);
            for (pm, pc) in &powers[e as usize].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        out
    }

    pub fn substitute_value(&self, var: usize, value: &BigRational) -> MPoly {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    /// `p(.., x, ..) -> p(.., x + shift, ..)`.
    pub fn shift_var(&self, var: usize, shift: &BigRational) -> MPoly {
        if shift.is_zero() {
            return self.clone();
        }
        let max = self.degree_in(var) as usize;
        let mut shift_pows = vec![BigRational::one()];
        for i in 1..=max {
            shift_pows.push(&shift_pows[i - 1] * shift);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var) as i64;
            for k in 0..=e {
                let b = BigRational::from_integer(binomial(e, k));
                let coeff = c * b * &shift_pows[(e - k) as usize];
                out.add_term(m.with_exp(var, k as u32), coeff);
            }
        }
        out
    }

    /// Evaluates every variable; `point[i]` is the value of variable `i`.
    /// Variables beyond the end of `point` must not occur.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            assert!(
                m.exponents().len() <= point.len(),
                "evaluation point too short for monomial {m:?}"
            );
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Applies the variable permutation `i -> perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.permuted(perm), c.clone());
        }
        out
    }

    /// Exact division in the polynomial ring. A single polynomial is a Gröbner
    /// basis of the ideal it generates, so a non-zero remainder under the lex
    /// division algorithm proves non-divisibility.
    pub fn exact_divide(&self, divisor: &MPoly) -> Result<MPoly, AlgebraError> {
        let Some((lm, lc)) = divisor.terms.last_key_value() else {
            return Err(AlgebraError::NonDivisible {
                remainder: "division by zero".into(),
            });
        };
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let mut stuck = MPoly::zero();
        while let Some((m, c)) = rem.terms.last_key_value() {
            if lm.divides(m) {
                let qm = lm.quotient_of(m);
                let qc = c / lc;
                for (dm, dc) in &divisor.terms {
                    rem.add_term(qm.mul(dm), -(&qc * dc));
                }
                quot.add_term(qm, qc);
            } else {
                let (m, c) = rem.terms.pop_last().expect("non-empty");
                stuck.add_term(m, c);
            }
        }
        if stuck.is_zero() {
            Ok(quot)
        } else {
            Err(AlgebraError::NonDivisible {
                remainder: stuck.to_string(),
            })
        }
    }

    /// Reads the polynomial as an integer generating function, with `P`,
    /// `Q`, `R` at the given variable indices. Fails if any other variable
    /// occurs or a coefficient is not an integer.
    pub fn to_gf(&self, p: usize, q: usize, r: usize) -> Result<Gf, AlgebraError> {
        let mut gf = Gf::zero();
        for (m, c) in &self.terms {
            let foreign = m
                .exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && i != p && i != q && i != r);
            if foreign || !c.is_integer() {
                return Err(AlgebraError::NotAGeneratingFunction(self.to_string()));
            }
            gf.add_term([m.exp(p), m.exp(q), m.exp(r)], c.to_integer());
        }
        Ok(gf)
    }

    pub fn from_gf(gf: &Gf, p: usize, q: usize, r: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (&[a, b, c], coeff) in gf.terms() {
            let m = Monomial::var(p, a)
                .mul(&Monomial::var(q, b))
                .mul(&Monomial::var(r, c));
            out.add_term(m, BigRational::from_integer(coeff.clone()));
        }
        out
    }

    /// Canonical text: terms in descending graded-lex order.
    pub fn display(&self, vars: &VarRegistry) -> String {
        self.render(&|i| vars.name(i))
    }

    fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.grlex_cmp(a.0));
        format_terms(
            terms
                .into_iter()
                .map(|(m, c)| (m.fmt_with(names), c.clone())),
        )
    }
}

/// Joins `(monomial text, coefficient)` pairs into `a*X + b*Y - c` form.
pub(crate) fn format_terms<C>(terms: impl Iterator<Item = (String, C)>) -> String
where
    C: Signed + fmt::Display + One + PartialEq,
{
    let mut out = String::new();
    for (i, (mono, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|i| format!("v{i}")))
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use proptest::prelude::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn shift_var_example() {
        // (x2 - x1) with x2 -> x2 + 1
        let p = &x(1) - &x(0);
        let shifted = p.shift_var(1, &rat(1));
        assert_eq!(shifted, &(&x(1) - &x(0)) + &MPoly::one());
    }

    #[test]
    fn exact_divide_example() {
        let a = &x(1) - &x(0);
        let b = &x(1) + &x(0);
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&a).unwrap(), b);
    }

    #[test]
    fn exact_divide_reports_remainder() {
        let p = &(&x(0) * &x(0)) + &MPoly::one();
        let err = p.exact_divide(&x(0)).unwrap_err();
        assert!(matches!(err, AlgebraError::NonDivisible { .. }));
    }

    #[test]
    fn substitute_example() {
        // x1 * l with l := 3
        let p = &x(0) * &x(4);
        assert_eq!(p.substitute_value(4, &rat(3)), x(0).scale(&rat(3)));
    }

    #[test]
    fn substitute_polynomial() {
        // (x0 + 1)^2 with x0 := x1 - 1 gives x1^2
        let p = (&x(0) + &MPoly::one()).pow(2);
        let q = p.substitute(0, &(&x(1) - &MPoly::one()));
        assert_eq!(q, x(1).pow(2));
    }

    #[test]
    fn display_orders_by_degree() {
        let vars = VarRegistry::new(["x1", "x2"]);
        let p = &(&x(1) - &x(0)) + &MPoly::one();
        assert_eq!(p.display(&vars), "-x1 + x2 + 1");
        let q = &x(0).pow(2).scale(&rat(3)) - &MPoly::from_int(2);
        assert_eq!(q.display(&vars), "3*x1^2 - 2");
        assert_eq!(MPoly::zero().display(&vars), "0");
    }

    #[test]
    fn trailing_zero_exponents_are_trimmed() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0, 1));
        let p = &x(3) - &x(3);
        assert!(p.is_zero());
        assert_eq!(p, MPoly::zero());
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
            let mut p = MPoly::zero();
            for ((a, b, c), k) in terms {
                p.add_term(Monomial::new(vec![a, b, c]), rat(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn exact_divide_inverts_multiplication(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.exact_divide(&q).unwrap(), p);
        }

        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn shift_then_unshift(p in arb_poly(), c in -4i64..=4) {
            let s = p.shift_var(1, &rat(c)).shift_var(1, &rat(-c));
            prop_assert_eq!(s, p);
        }
    }
}
