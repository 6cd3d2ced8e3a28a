//! Exact truncated power series in `q` and in `(x, q)`.
//!
//! Every coefficient is an exact rational. A [`QExpansion`] stores
//! `q^rho * sum_{n <= N} c_n q^n`; a [`BiExpansion`] stores the same shape with
//! coefficients that are themselves truncated Laurent series in `x` (the
//! variable `2 pi i z`). [`ZetaSeries`] keeps an explicit `zeta^alpha`
//! exponent and is only used while building the bivariate objects; the
//! conversion to `BiExpansion` substitutes `zeta^alpha = exp(alpha x)`.

mod biexp;
mod qexp;
mod zeta;

pub use biexp::{BiExpansion, MAX_X_POLE_ORDER};
pub use qexp::QExpansion;
pub use zeta::ZetaSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p / q` as a rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses the `"p/q"` / `"p"` wire format.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Domain(format!("cannot parse rational {s:?}: {e}")))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `alpha^k / k!` for the substitution `zeta^alpha = exp(alpha x)`.
pub(crate) fn exp_coefficient(alpha: &Rational, k: usize) -> Rational {
    let mut num = Rational::one();
    for _ in 0..k {
        num *= alpha;
    }
    num / Rational::from_integer(factorial(k))
}

/// Largest absolute value in a list of rationals (zero for an empty list).
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        assert_eq!(format_rational(&ratio(-1, 24)), "-1/24");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert!(parse_rational("1/x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(8, 3), BigInt::from(56));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(exp_coefficient(&ratio(1, 2), 3), ratio(1, 48));
    }
}
