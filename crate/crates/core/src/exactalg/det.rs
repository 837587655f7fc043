use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, Gf, MPoly};

/// Integral domain with exact division, as needed by Bareiss elimination.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError>;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(AlgebraError::NonDivisible {
                remainder: r.to_string(),
            })
        }
    }
}

impl Ring for Gf {
    fn zero() -> Self {
        Gf::zero()
    }
    fn one() -> Self {
        Gf::one()
    }
    fn is_zero(&self) -> bool {
        Gf::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.exact_divide(divisor)
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.exact_divide(divisor)
    }
}

/// Determinant by Bareiss fraction-free elimination. Every division along
/// the way is exact in the ring, so an `Err` from `exact_div` is a bug and
/// panics.
pub fn det_fraction_free<R: Ring>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    if n == 0 {
        return R::one();
    }
    let mut a: Vec<Vec<R>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return R::zero();
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant by Laplace expansion along the first row. Exponential time;
/// kept as an independent reference for small matrices.
pub fn det_cofactor<R: Ring>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::one();
    }
    let mut acc = R::zero();
    for col in 0..n {
        let minor: Vec<Vec<R>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = matrix[0][col].mul(&det_cofactor(&minor));
        acc = if col % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn identity_and_empty() {
        let id = int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(det_fraction_free(&id), BigInt::from(1));
        let empty: Vec<Vec<BigInt>> = Vec::new();
        assert_eq!(det_fraction_free(&empty), BigInt::from(1));
    }

    #[test]
    fn equal_rows_vanish() {
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(det_fraction_free(&m), BigInt::from(0));
    }

    #[test]
    fn needs_pivoting() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_fraction_free(&m), BigInt::from(-1));
        let m = int_matrix(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(det_fraction_free(&m), BigInt::from(-6));
    }

    #[test]
    fn two_by_two_generating_function() {
        // [[R+1, R], [R(P+Q+2), R(P+Q+3)+1]]
        let r = Gf::r();
        let s = &(&Gf::p() + &Gf::q());
        let m = vec![
            vec![&r + &Gf::one(), r.clone()],
            vec![
                &r * &(s + &Gf::from_int(2)),
                &(&r * &(s + &Gf::from_int(3))) + &Gf::one(),
            ],
        ];
        let expected = det_cofactor(&m);
        assert_eq!(expected.to_string(), "R^2 + 4*R + P*R + Q*R + 1");
        assert_eq!(det_fraction_free(&m), expected);
    }

    fn arb_gf() -> impl Strategy<Value = Gf> {
        prop::collection::vec(((0u32..2, 0u32..2, 0u32..2), -3i64..=3), 0..4).prop_map(|ts| {
            ts.into_iter()
                .map(|((a, b, c), k)| Gf::monomial(a, b, c).scale(&BigInt::from(k)))
                .sum()
        })
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<Gf>>> {
        (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(arb_gf(), n), n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bareiss_matches_cofactor(m in arb_matrix()) {
            prop_assert_eq!(det_fraction_free(&m), det_cofactor(&m));
        }

        #[test]
        fn bareiss_matches_cofactor_int(
            m in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
        ) {
            let m: Vec<Vec<BigInt>> = m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            prop_assert_eq!(det_fraction_free(&m), det_cofactor(&m));
        }
    }
}
