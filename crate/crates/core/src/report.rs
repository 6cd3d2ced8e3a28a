use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::{format_rational, parse_rational, BiExpansion, QExpansion, Rational};

/// Outcome of an exact identity check: the largest absolute coefficient of
/// `lhs - rhs` over the checked range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub identity: String,
    pub order: usize,
    #[serde(with = "rational_string")]
    pub residual: Rational,
    pub pass: bool,
}

impl RecursionReport {
    pub fn from_residual(identity: impl Into<String>, order: usize, residual: Rational) -> Self {
        let pass = residual.is_zero();
        Self {
            identity: identity.into(),
            order,
            residual,
            pass,
        }
    }

    /// Compares two `q`-series up to `order`.
    pub fn compare(
        identity: impl Into<String>,
        order: usize,
        lhs: &QExpansion,
        rhs: &QExpansion,
    ) -> Result<Self> {
        let diff = lhs.truncate(order)?.try_sub(&rhs.truncate(order)?)?;
        Ok(Self::from_residual(identity, order, diff.max_abs_coeff()))
    }

    /// Compares two bivariate series over the box `(x_order, q_order)`.
    pub fn compare_bi(
        identity: impl Into<String>,
        x_order: usize,
        q_order: usize,
        lhs: &BiExpansion,
        rhs: &BiExpansion,
    ) -> Result<Self> {
        let l = lhs.trim_poles().truncate(x_order as i64, q_order)?;
        let r = rhs.trim_poles().truncate(x_order as i64, q_order)?;
        let diff = l.try_sub(&r)?;
        Ok(Self::from_residual(identity, q_order, diff.max_abs_coeff()))
    }

    /// Merges several reports into one named report with the worst residual.
    pub fn combine(identity: impl Into<String>, parts: &[RecursionReport]) -> Self {
        let order = parts.iter().map(|r| r.order).max().unwrap_or(0);
        let residual = crate::series::max_abs(parts.iter().map(|r| &r.residual));
        let mut out = Self::from_residual(identity, order, residual);
        out.pass = parts.iter().all(|r| r.pass);
        out
    }

    pub fn to_line(&self) -> String {
        format!(
            "{} {} (order {}, residual {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.order,
            format_rational(&self.residual)
        )
    }
}

pub(crate) mod rational_string {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    #[test]
    fn json_shape() {
        let r = RecursionReport::from_residual("x", 3, ratio(-1, 2));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"identity":"x","order":3,"residual":"-1/2","pass":false}"#
        );
        let back: RecursionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
