use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{BiExpansion, QExpansion, Rational};

/// Truncated series `sum_n (sum_alpha c_{alpha,n} zeta^alpha) q^n` with
/// rational `zeta`-exponents, used while assembling theta-type objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    rows: Vec<BTreeMap<Rational, Rational>>,
}

impl ZetaSeries {
    pub fn zero(q_order: usize) -> Self {
        Self {
            rows: vec![BTreeMap::new(); q_order + 1],
        }
    }

    pub fn one(q_order: usize) -> Self {
        Self::monomial(Rational::one(), Rational::zero(), 0, q_order)
    }

    /// `c * zeta^alpha * q^n`; empty when `n` exceeds the order.
    pub fn monomial(c: Rational, alpha: Rational, n: usize, q_order: usize) -> Self {
        let mut s = Self::zero(q_order);
        s.add_term(c, alpha, n);
        s
    }

    pub fn q_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Adds `c * zeta^alpha * q^n`, ignoring degrees beyond the order.
    pub fn add_term(&mut self, c: Rational, alpha: Rational, n: usize) {
        if n > self.q_order() || c.is_zero() {
            return;
        }
        let row = &mut self.rows[n];
        let entry = row.entry(alpha).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            row.retain(|_, v| !v.is_zero());
        }
    }

    /// Coefficient of `zeta^alpha q^n`.
    pub fn coeff(&self, alpha: &Rational, n: usize) -> Rational {
        self.rows[n]
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Non-zero `(alpha, c)` pairs of the `q^n` row in increasing `alpha`.
    pub fn row(&self, n: usize) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.rows[n].iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let q_order = self.q_order().min(other.q_order());
        let mut out = Self::zero(q_order);
        for n in 0..=q_order {
            for (a, c) in self.row(n).chain(other.row(n)) {
                out.add_term(c.clone(), a.clone(), n);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.q_order());
        for n in 0..=self.q_order() {
            for (a, v) in self.row(n) {
                out.add_term(v * c, a.clone(), n);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q_order = self.q_order().min(other.q_order());
        let mut out = Self::zero(q_order);
        for na in 0..=q_order {
            for (aa, ca) in self.row(na) {
                for nb in 0..=(q_order - na) {
                    for (ab, cb) in other.row(nb) {
                        out.add_term(ca * cb, aa + ab, na + nb);
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `zeta^alpha q^j`.
    pub fn shift(&self, alpha: &Rational, j: usize) -> Self {
        let mut out = Self::zero(self.q_order());
        for n in 0..=self.q_order().saturating_sub(j) {
            if n + j > self.q_order() {
                break;
            }
            for (a, c) in self.row(n) {
                out.add_term(c.clone(), a + alpha, n + j);
            }
        }
        out
    }

    /// Divides by `1 - zeta^alpha q^j`, `j >= 1`, through
    /// `out_n = self_n + zeta^alpha out_{n-j}`.
    pub fn div_one_minus(&self, alpha: &Rational, j: usize) -> Self {
        assert!(j >= 1, "divisor must have a positive q-degree");
        let mut out = Self::zero(self.q_order());
        for n in 0..=self.q_order() {
            let mut row = self.rows[n].clone();
            if n >= j {
                for (a, c) in &out.rows[n - j] {
                    let e = row.entry(a + alpha).or_insert_with(Rational::zero);
                    *e += c;
                }
                row.retain(|_, v| !v.is_zero());
            }
            out.rows[n] = row;
        }
        out
    }

    /// `1 / (1 - zeta^alpha q^j)` as a geometric series, `j >= 1`.
    pub fn inverse_one_minus(alpha: &Rational, j: usize, q_order: usize) -> Self {
        assert!(j >= 1, "geometric expansion needs a positive q-degree");
        let mut out = Self::zero(q_order);
        let mut power = Rational::zero();
        for r in 0..=q_order / j {
            out.add_term(Rational::one(), power.clone(), r * j);
            power += alpha;
        }
        out
    }

    /// Substitutes `zeta^alpha = exp(alpha x)` and truncates at `x^x_order`.
    pub fn to_biexpansion(&self, x_order: usize) -> BiExpansion {
        let q_order = self.q_order();
        let mut acc: Vec<Vec<Rational>> = vec![vec![Rational::zero(); x_order + 1]; q_order + 1];
        for (n, slot) in acc.iter_mut().enumerate() {
            for (alpha, c) in self.row(n) {
                let mut term = c.clone();
                for (k, v) in slot.iter_mut().enumerate() {
                    if k > 0 {
                        term = term * alpha / Rational::from_integer(k.into());
                    }
                    *v += &term;
                }
            }
        }
        BiExpansion::from_fn(x_order, q_order, |k, n| acc[n][k].clone())
    }

    /// The `q`-series at `zeta = 1`.
    pub fn at_zeta_one(&self) -> QExpansion {
        let coeffs = self
            .rows
            .iter()
            .map(|row| row.values().fold(Rational::zero(), |acc, v| acc + v))
            .collect();
        QExpansion::from_coeffs(Rational::zero(), coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    #[test]
    fn geometric_inverse() {
        let a = ZetaSeries::inverse_one_minus(&rat(1), 2, 7);
        let one_minus = ZetaSeries::one(7).sub(&ZetaSeries::monomial(rat(1), rat(1), 2, 7));
        assert_eq!(a.mul(&one_minus), ZetaSeries::one(7));
        let b = ZetaSeries::monomial(rat(3), ratio(1, 2), 1, 7).add(&ZetaSeries::one(7));
        let minus = ZetaSeries::one(7).sub(&ZetaSeries::monomial(rat(1), rat(-1), 3, 7));
        assert_eq!(b.div_one_minus(&rat(-1), 3).mul(&minus), b);
        assert_eq!(b.shift(&rat(1), 2).coeff(&ratio(3, 2), 3), rat(3));
    }

    #[test]
    fn half_exponent_conversion() {
        let s = ZetaSeries::monomial(rat(1), ratio(1, 2), 0, 0).to_biexpansion(3);
        assert_eq!(s.coeff(3, 0), &ratio(1, 48));
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = ZetaSeries::monomial(rat(2), rat(-1), 1, 3);
        let b = a.sub(&a);
        assert_eq!(b.row(1).count(), 0);
        assert_eq!(b.at_zeta_one(), QExpansion::zero(3));
    }
}
