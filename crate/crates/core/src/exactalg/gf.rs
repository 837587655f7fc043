use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mpoly::format_terms;
use super::AlgebraError;

/// Integer polynomial in `P`, `Q`, `R`, keyed by `[deg P, deg Q, deg R]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gf {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl Gf {
    pub fn zero() -> Self {
        Gf::default()
    }

    pub fn one() -> Self {
        Gf::monomial(0, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        let mut g = Gf::zero();
        g.add_term([0, 0, 0], BigInt::from(c));
        g
    }

    /// `P^p Q^q R^r`.
    pub fn monomial(p: u32, q: u32, r: u32) -> Self {
        let mut g = Gf::zero();
        g.add_term([p, q, r], BigInt::one());
        g
    }

    pub fn p() -> Self {
        Gf::monomial(1, 0, 0)
    }

    pub fn q() -> Self {
        Gf::monomial(0, 1, 0)
    }

    pub fn r() -> Self {
        Gf::monomial(0, 0, 1)
    }

    /// `P + Q - 1`.
    pub fn p_plus_q_minus_one() -> Self {
        &(&Gf::p() + &Gf::q()) - &Gf::one()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: u32, q: u32, r: u32) -> BigInt {
        self.terms.get(&[p, q, r]).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, key: [u32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Gf {
        let mut out = Gf::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Gf {
        (0..e).fold(Gf::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, p: &BigInt, q: &BigInt, r: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&[a, b, c], v)| {
                v * num_traits::pow(p.clone(), a as usize)
                    * num_traits::pow(q.clone(), b as usize)
                    * num_traits::pow(r.clone(), c as usize)
            })
            .sum()
    }

    /// Value at `P = Q = R = 1`.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `P = 1`.
    pub fn at_p_one(&self) -> Gf {
        let mut out = Gf::zero();
        for (&[_, b, c], v) in &self.terms {
            out.add_term([0, b, c], v.clone());
        }
        out
    }

    /// Returns true when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| v >= &BigInt::zero())
    }

    /// Exact division over `Z[P, Q, R]`.
    pub fn exact_divide(&self, divisor: &Gf) -> Result<Gf, AlgebraError> {
        let Some((&lm, lc)) = divisor.terms.last_key_value() else {
            return Err(AlgebraError::NonDivisible {
                remainder: "division by zero".into(),
            });
        };
        let mut rem = self.clone();
        let mut quot = Gf::zero();
        while let Some((&m, c)) = rem.terms.last_key_value() {
            let divides = (0..3).all(|i| lm[i] <= m[i]);
            let (qc, r) = c.div_rem(lc);
            if !divides || !r.is_zero() {
                return Err(AlgebraError::NonDivisible {
                    remainder: rem.to_string(),
                });
            }
            let qm = [m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]];
            for (dm, dc) in &divisor.terms {
                rem.add_term([qm[0] + dm[0], qm[1] + dm[1], qm[2] + dm[2]], -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Term order of the canonical text form: descending `R` degree, then
    /// ascending combined `P`/`Q` degree, then `P` before `Q`.
    fn display_cmp(a: &[u32; 3], b: &[u32; 3]) -> Ordering {
        b[2].cmp(&a[2])
            .then_with(|| (a[0] + a[1]).cmp(&(b[0] + b[1])))
            .then_with(|| b[0].cmp(&a[0]))
    }
}

fn monomial_text(k: &[u32; 3]) -> String {
    let mut parts = Vec::new();
    for (name, e) in ["P", "Q", "R"].iter().zip(k) {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| Gf::display_cmp(a.0, b.0));
        f.write_str(&format_terms(
            keys.into_iter().map(|(k, v)| (monomial_text(k), v.clone())),
        ))
    }
}

impl Add<&Gf> for &Gf {
    type Output = Gf;
    fn add(self, rhs: &Gf) -> Gf {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub<&Gf> for &Gf {
    type Output = Gf;
    fn sub(self, rhs: &Gf) -> Gf {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl Mul<&Gf> for &Gf {
    type Output = Gf;
    fn mul(self, rhs: &Gf) -> Gf {
        let mut out = Gf::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }
}

impl Neg for &Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        self.scale(&BigInt::from(-1))
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        &self + &rhs
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        &self - &rhs
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        &self * &rhs
    }
}

impl std::iter::Sum for Gf {
    fn sum<I: Iterator<Item = Gf>>(iter: I) -> Gf {
        iter.fold(Gf::zero(), |acc, g| &acc + &g)
    }
}
