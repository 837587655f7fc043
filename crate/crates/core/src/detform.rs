//! Binomial determinant for the joint generating function, the coefficient
//! matrix of the two-variable series it comes from, and the unitriangular
//! matrix `K(n)` that connects them.

use std::fmt;

use crate::exactalg::{binomial, det_fraction_free, BigInt, Gf, MPoly, Monomial};
use crate::operatorform::Comparison;

/// Square matrix of generating functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    pub entries: Vec<Vec<Gf>>,
}

impl GfMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Gf) -> Self {
        GfMatrix {
            entries: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GfMatrix::from_fn(n, |i, j| if i == j { Gf::one() } else { Gf::zero() })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> Gf {
        det_fraction_free(&self.entries)
    }

    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        let n = self.size();
        GfMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| &self.entries[i][k] * &other.entries[k][j])
                .sum()
        })
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|g| g.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn binom(a: i64, k: i64) -> BigInt {
    binomial(a, k)
}

fn delta(i: usize, j: usize) -> Gf {
    if i == j {
        Gf::one()
    } else {
        Gf::zero()
    }
}

/// `a_ij = R sum_{k=0}^{i} Q^{i-k} (C(k+j+l-3, k) + P C(k+j+l-3, k-1)) + delta_ij`
/// for `0 <= i, j < n`.
pub fn det_matrix(n: usize, l: usize) -> GfMatrix {
    let l = l as i64;
    GfMatrix::from_fn(n, |i, j| {
        let mut sum = Gf::zero();
        for k in 0..=i as i64 {
            let top = k + j as i64 + l - 3;
            let inner = &Gf::one().scale(&binom(top, k)) + &Gf::p().scale(&binom(top, k - 1));
            sum = &sum + &(&Gf::q().pow(i as u32 - k as u32) * &inner);
        }
        &(&Gf::r() * &sum) + &delta(i, j)
    })
}

/// Determinant of [`det_matrix`].
pub fn gf_det(n: usize, l: usize) -> Gf {
    det_matrix(n, l).det()
}

/// `det(C(i+j+l-1, i) + delta_ij)`, the value at `P = Q = R = 1`.
pub fn count(n: usize, l: usize) -> BigInt {
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| binom((i + j + l) as i64 - 1, i as i64) + BigInt::from((i == j) as i64))
                .collect()
        })
        .collect();
    det_fraction_free(&m)
}

/// `[X^i Y^j] F(X, Y)` in closed form, where
/// `F = R(1 + X - PX)/(1 + X + Y) + (1 + X)^{l-2}(1 + QX)/(1 - XY)`.
pub fn behrend_coeff(i: usize, j: usize, l: usize) -> Gf {
    let (i, j, l) = (i as i64, j as i64, l as i64);
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let first = &Gf::one().scale(&binom(-j, i)) - &Gf::p().scale(&binom(-j - 1, i - 1));
    let first = (&Gf::r() * &first).scale(&BigInt::from(sign));
    let second = &Gf::one().scale(&binom(l - 2, i - j)) + &Gf::q().scale(&binom(l - 2, i - j - 1));
    &first + &second
}

pub fn coeff_matrix(n: usize, l: usize) -> GfMatrix {
    GfMatrix::from_fn(n, |i, j| behrend_coeff(i, j, l))
}

/// `K(n) = (delta_ij - Q delta_{i,j+1})`.
pub fn k_matrix(n: usize) -> GfMatrix {
    GfMatrix::from_fn(n, |i, j| {
        if i == j {
            Gf::one()
        } else if i == j + 1 {
            -&Gf::q()
        } else {
            Gf::zero()
        }
    })
}

/// `K(n)^{-1} = (Q^{i-j})_{i >= j}`.
pub fn k_inverse(n: usize) -> GfMatrix {
    GfMatrix::from_fn(n, |i, j| {
        if i >= j {
            Gf::q().pow((i - j) as u32)
        } else {
            Gf::zero()
        }
    })
}

const P_IDX: usize = 0;
const Q_IDX: usize = 1;
const R_IDX: usize = 2;
const X_IDX: usize = 3;
const Y_IDX: usize = 4;

/// Coefficients `[X^i Y^j] F` for `i, j <= max` by expanding the two
/// geometric factors of `F` as truncated series.
pub fn series_coeffs(max: usize, l: usize) -> Vec<Vec<Gf>> {
    let x = MPoly::var(X_IDX);
    let y = MPoly::var(Y_IDX);
    let one = MPoly::one();
    let trunc = |f: MPoly| -> MPoly {
        f.terms()
            .filter(|(m, _)| m.exp(X_IDX) as usize <= max && m.exp(Y_IDX) as usize <= max)
            .fold(MPoly::zero(), |acc, (m, c)| {
                &acc + &MPoly::term(m.clone(), c.clone())
            })
    };
    // 1/(1 + X + Y) = sum_m (-(X + Y))^m; total degree 2 max suffices
    let minus_xy = -&(&x + &y);
    let mut geo = MPoly::zero();
    let mut power = MPoly::one();
    for _ in 0..=2 * max {
        geo = &geo + &power;
        power = trunc(&power * &minus_xy);
    }
    let p = MPoly::var(P_IDX);
    let q = MPoly::var(Q_IDX);
    let r = MPoly::var(R_IDX);
    let first = trunc(&(&r * &(&(&one + &x) - &(&p * &x))) * &geo);
    let xy = &x * &y;
    let mut geo2 = MPoly::zero();
    for k in 0..=max as u32 {
        geo2 = &geo2 + &xy.pow(k);
    }
    let second = trunc(&(&(&one + &x).pow(l as u32 - 2) * &(&one + &(&q * &x))) * &geo2);
    let f = &first + &second;
    let mut out = vec![vec![Gf::zero(); max + 1]; max + 1];
    for (m, c) in f.terms() {
        let (i, j) = (m.exp(X_IDX) as usize, m.exp(Y_IDX) as usize);
        let rest = Monomial::var(P_IDX, m.exp(P_IDX))
            .mul(&Monomial::var(Q_IDX, m.exp(Q_IDX)))
            .mul(&Monomial::var(R_IDX, m.exp(R_IDX)));
        let g = MPoly::term(rest, c.clone())
            .to_gf(P_IDX, Q_IDX, R_IDX)
            .expect("series coefficients are integer polynomials");
        out[i][j] = &out[i][j] + &g;
    }
    out
}

/// Outcome of the coefficient-matrix route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRouteCheck {
    /// First `(i, j)` where the closed form differs from the series, with
    /// closed form and series value.
    pub series_mismatch: Option<(usize, usize, Gf, Gf)>,
    /// `det` of the coefficient matrix against `det` of [`det_matrix`].
    pub det: Comparison<Gf>,
}

impl CoeffRouteCheck {
    pub fn holds(&self) -> bool {
        self.series_mismatch.is_none() && self.det.holds()
    }
}

pub fn verify_coeff_route(n: usize, l: usize) -> CoeffRouteCheck {
    let series = series_coeffs(n.saturating_sub(1), l);
    let mut series_mismatch = None;
    'outer: for (i, row) in series.iter().enumerate().take(n) {
        for (j, value) in row.iter().enumerate().take(n) {
            let closed = behrend_coeff(i, j, l);
            if &closed != value {
                series_mismatch = Some((i, j, closed, value.clone()));
                break 'outer;
            }
        }
    }
    CoeffRouteCheck {
        series_mismatch,
        det: Comparison {
            left: coeff_matrix(n, l).det(),
            right: gf_det(n, l),
        },
    }
}
