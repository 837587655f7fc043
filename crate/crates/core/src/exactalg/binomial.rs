use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Generalized binomial coefficient `a(a-1)...(a-k+1)/k!`, valid for upper
/// indices of either sign. Zero for `k < 0`.
pub fn binomial(a: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // For 0 <= a < k the falling factorial passes through zero.
    if a >= 0 && k > a {
        return BigInt::zero();
    }
    // Symmetry keeps the product short for large non-negative uppers.
    let k = if a >= 0 && k > a - k { a - k } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(a - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(-3, 0), BigInt::from(1));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn pascal_and_negation_rules() {
        for a in -20i64..=20 {
            for k in -2i64..=20 {
                assert_eq!(
                    binomial(a, k),
                    binomial(a - 1, k) + binomial(a - 1, k - 1),
                    "pascal at ({a},{k})"
                );
                if k >= 0 {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    assert_eq!(
                        binomial(a, k),
                        binomial(k - a - 1, k) * sign,
                        "negation at ({a},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn agrees_with_falling_factorial() {
        for a in -8i64..=8 {
            for k in 0i64..=8 {
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for i in 0..k {
                    num *= a - i;
                    den *= i + 1;
                }
                assert_eq!(binomial(a, k), num / den);
            }
        }
    }
}
