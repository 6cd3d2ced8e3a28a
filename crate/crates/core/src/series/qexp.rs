use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Truncated power series `q^rho * sum_{n=0}^{N} c_n q^n` with exact
/// rational coefficients.
///
/// Coefficients are valid for degrees `0..=order`. Binary operations return
/// the minimum order of their inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    prefactor: Rational,
    coeffs: Vec<Rational>,
}

impl QExpansion {
    pub fn zero(order: usize) -> Self {
        Self {
            prefactor: Rational::zero(),
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^degree`, which is the zero series when `degree > order`.
    pub fn monomial(c: Rational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Dense constructor; `coeffs[n]` is the coefficient of `q^n` and the
    /// order is `coeffs.len() - 1`.
    pub fn from_coeffs(prefactor: Rational, coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { prefactor, coeffs }
    }

    /// Sparse constructor. Terms beyond `order` are dropped.
    pub fn from_terms(
        prefactor: Rational,
        order: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut s = Self::zero(order);
        s.prefactor = prefactor;
        for (n, c) in terms {
            if n <= order {
                s.coeffs[n] += c;
            }
        }
        s
    }

    /// Build from integer coefficients with zero prefactor.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            Rational::zero(),
            coeffs.iter().map(|&c| super::rat(c)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    pub fn with_prefactor(mut self, prefactor: Rational) -> Self {
        self.prefactor = prefactor;
        self
    }

    /// Coefficient of `q^n` (relative to the prefactor). Panics when
    /// `n > order`; see [`QExpansion::try_coeff`].
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn try_coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::Index {
            index: n as i64,
            min: 0,
            max: self.order() as i64,
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(degree, coefficient)` pairs with non-zero coefficient, ascending.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `order`. Fails when asked to extend.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Truncation(format!(
                "cannot extend a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(Self {
            prefactor: self.prefactor.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_prefactors(&self, other: &Self, op: &str) -> Result<()> {
        if self.prefactor != other.prefactor {
            return Err(Error::Domain(format!(
                "{op} needs equal prefactors, got q^{} and q^{}",
                self.prefactor, other.prefactor
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_prefactors(other, "add")?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        Ok(Self::from_coeffs(self.prefactor.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_prefactors(other, "sub")?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        Ok(Self::from_coeffs(self.prefactor.clone(), coeffs))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(&self.prefactor + &other.prefactor, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            prefactor: self.prefactor.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order()).with_prefactor(Rational::zero());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lowest degree with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicative inverse. A leading zero block `q^v` is moved into the
    /// prefactor, so the result has prefactor `-rho - v` and order `N - v`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| {
            Error::SingularDivisor(format!(
                "series vanishes identically to order {}",
                self.order()
            ))
        })?;
        let b = &self.coeffs[v..];
        let order = b.len() - 1;
        let inv_lead = Rational::one() / &b[0];
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = inv_lead.clone();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !b[k].is_zero() {
                    acc += &b[k] * &out[n - k];
                }
            }
            out[n] = -acc * &inv_lead;
        }
        let prefactor = -&self.prefactor - Rational::from_integer(v.into());
        Ok(Self::from_coeffs(prefactor, out))
    }

    /// `self / other`, i.e. multiplication by the truncated inverse.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `D = q d/dq`; degree `n` is multiplied by `n + rho`.
    pub fn dq(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (&self.prefactor + Rational::from_integer(n.into())))
            .collect();
        Self::from_coeffs(self.prefactor.clone(), coeffs)
    }

    /// Truncated exponential; needs prefactor 0 and constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.prefactor.is_zero() || !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "exp needs prefactor 0 and constant term 0".into(),
            ));
        }
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = Rational::one();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * Rational::from_integer(k.into()) * &out[n - k];
                }
            }
            out[n] = acc / Rational::from_integer(n.into());
        }
        Ok(Self::from_coeffs(Rational::zero(), out))
    }

    /// Truncated logarithm; needs prefactor 0 and constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.prefactor.is_zero() || !self.coeffs[0].is_one() {
            return Err(Error::Domain(
                "log needs prefactor 0 and constant term 1".into(),
            ));
        }
        let quotient = self.dq().mul(&self.inverse()?);
        let coeffs = quotient
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    Rational::zero()
                } else {
                    c / Rational::from_integer(n.into())
                }
            })
            .collect();
        Ok(Self::from_coeffs(Rational::zero(), coeffs))
    }

    /// Largest |coefficient|, used for exact residual reports.
    pub fn max_abs_coeff(&self) -> Rational {
        super::max_abs(self.coeffs.iter())
    }

    /// Renders `c_0 + c_1 q + ... + O(q^{N+1})`, with the prefactor shown as a
    /// leading `q^rho * (...)` when non-zero.
    pub fn to_display_string(&self) -> String {
        let mut body = String::new();
        for (n, c) in self.nonzero_terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if body.is_empty() {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let mag_s = format_rational(&mag);
            match n {
                0 => body.push_str(&mag_s),
                _ => {
                    if !mag.is_one() {
                        body.push_str(&mag_s);
                        if !mag.is_integer() {
                            body.push(' ');
                        }
                    }
                    body.push('q');
                    if n > 1 {
                        body.push_str(&format!("^{n}"));
                    }
                }
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        body.push_str(&format!(" + O(q^{})", self.order() + 1));
        if self.prefactor.is_zero() {
            body
        } else {
            format!("q^({}) * ({body})", format_rational(&self.prefactor))
        }
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display_string())
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;
    /// Panics on prefactor mismatch; use [`QExpansion::try_add`] to handle it.
    fn add(self, rhs: Self) -> QExpansion {
        self.try_add(rhs).expect("prefactor mismatch in +")
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;
    fn sub(self, rhs: Self) -> QExpansion {
        self.try_sub(rhs).expect("prefactor mismatch in -")
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;
    fn mul(self, rhs: Self) -> QExpansion {
        QExpansion::mul(self, rhs)
    }
}

impl Neg for &QExpansion {
    type Output = QExpansion;
    fn neg(self) -> QExpansion {
        self.scale(&-Rational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct QExpansionRepr {
    prefactor: String,
    order: usize,
    coeffs: Vec<(usize, String)>,
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QExpansionRepr {
            prefactor: format_rational(&self.prefactor),
            order: self.order(),
            coeffs: self
                .nonzero_terms()
                .map(|(n, c)| (n, format_rational(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QExpansionRepr::deserialize(deserializer)?;
        let prefactor = parse_rational(&repr.prefactor).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for (n, c) in repr.coeffs {
            if n > repr.order {
                return Err(D::Error::custom(format!(
                    "coefficient degree {n} exceeds order {}",
                    repr.order
                )));
            }
            terms.push((n, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(Self::from_terms(prefactor, repr.order, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    fn geometric(order: usize) -> QExpansion {
        QExpansion::from_coeffs(Rational::zero(), vec![rat(1); order + 1])
    }

    #[test]
    fn telescoping_product() {
        let one_minus_q = QExpansion::from_integers(&[1, -1]);
        let prod = geometric(12).mul(&one_minus_q);
        assert_eq!(prod.order(), 1);
        assert_eq!(prod, QExpansion::one(1));
        // with matching orders every higher coefficient cancels
        let mut padded = vec![0i64; 13];
        padded[0] = 1;
        padded[1] = -1;
        let prod = geometric(12).mul(&QExpansion::from_integers(&padded));
        assert_eq!(prod, QExpansion::one(12));
    }

    #[test]
    fn cancellation() {
        let a = QExpansion::from_integers(&[1, 1]);
        let b = QExpansion::from_integers(&[1, -1]);
        assert_eq!(&a + &b, QExpansion::from_integers(&[2, 0]));
    }

    #[test]
    fn inverse_of_euler_product_counts_partitions() {
        let order = 10;
        let mut prod = QExpansion::one(order);
        for n in 1..=order {
            prod = prod.mul(&QExpansion::from_terms(
                Rational::zero(),
                order,
                [(0, rat(1)), (n, rat(-1))],
            ));
        }
        let inv = prod.inverse().unwrap();
        // p(n) for n = 0..10, from an independent count in partitions::tests
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(inv, QExpansion::from_integers(&expected));
    }

    #[test]
    fn mercator() {
        let order = 9;
        let log = QExpansion::from_integers(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0])
            .log()
            .unwrap();
        for n in 1..=order {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(log.coeff(n), &ratio(sign, n as i64));
        }
    }

    #[test]
    fn dq_rules() {
        let m = QExpansion::monomial(rat(3), 4, 6);
        assert_eq!(m.dq(), QExpansion::monomial(rat(12), 4, 6));
        assert!(QExpansion::constant(rat(5), 4).dq().is_zero());
        let shifted = QExpansion::one(2).with_prefactor(ratio(1, 24));
        assert_eq!(shifted.dq().coeff(0), &ratio(1, 24));
    }

    #[test]
    fn domain_errors() {
        let f = QExpansion::from_integers(&[2, 1]);
        assert!(matches!(f.log(), Err(Error::Domain(_))));
        assert!(matches!(f.exp(), Err(Error::Domain(_))));
        assert!(matches!(
            QExpansion::zero(3).inverse(),
            Err(Error::SingularDivisor(_))
        ));
        let g = QExpansion::one(2).with_prefactor(ratio(1, 8));
        assert!(f.try_add(&g).is_err());
        assert!(matches!(f.try_coeff(5), Err(Error::Index { .. })));
        assert!(f.truncate(4).is_err());
    }

    #[test]
    fn division_moves_leading_zeros_into_prefactor() {
        let q = QExpansion::from_integers(&[0, 1, 1]);
        let inv = q.inverse().unwrap();
        assert_eq!(inv.prefactor(), &rat(-1));
        assert_eq!(inv.order(), 1);
        assert_eq!(inv.coeffs(), &[rat(1), rat(-1)]);
    }

    #[test]
    fn json_shape() {
        let s = QExpansion::from_terms(ratio(1, 24), 3, [(0, rat(1)), (2, ratio(-1, 2))]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"prefactor":"1/24","order":3,"coeffs":[[0,"1"],[2,"-1/2"]]}"#
        );
        let back: QExpansion = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn display() {
        let s = QExpansion::from_terms(
            Rational::zero(),
            3,
            [(0, ratio(-1, 2)), (1, rat(1)), (3, rat(-2))],
        );
        assert_eq!(s.to_string(), "-1/2 + q - 2q^3 + O(q^4)");
    }
}
