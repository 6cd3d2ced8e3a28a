use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{QExpansion, Rational};
use crate::error::{Error, Result};

/// Largest number of negative `x`-powers a [`BiExpansion`] may carry.
pub const MAX_X_POLE_ORDER: usize = 4;

/// Truncated series `q^rho * sum c_{k,n} x^k q^n` with `-pole <= k <= x_order`
/// and `0 <= n <= q_order`.
///
/// `x` stands for `2 pi i z`. Truncation is a box: a coefficient is exact iff
/// both degrees are within the stored orders. Products of series with
/// `x`-poles lose `x`-precision: the order of `a * b` is
/// `min(Ka - pole_b, Kb - pole_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiExpansion {
    prefactor: Rational,
    pole: usize,
    x_order: i64,
    q_order: usize,
    // row-major: coeffs[n * width + (k + pole)]
    coeffs: Vec<Rational>,
}

impl BiExpansion {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        Self::zero_with_pole(0, x_order as i64, q_order)
    }

    fn zero_with_pole(pole: usize, x_order: i64, q_order: usize) -> Self {
        assert!(x_order >= -(pole as i64), "x_order below the pole order");
        let width = (x_order + pole as i64 + 1) as usize;
        Self {
            prefactor: Rational::zero(),
            pole,
            x_order,
            q_order,
            coeffs: vec![Rational::zero(); width * (q_order + 1)],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(x_order, q_order);
        s.set(0, 0, Rational::one());
        s
    }

    /// Fills every coefficient `(k, n)` with `k >= 0` from `f(k, n)`.
    pub fn from_fn(
        x_order: usize,
        q_order: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Self {
        let mut s = Self::zero(x_order, q_order);
        for n in 0..=q_order {
            for k in 0..=x_order {
                s.set(k as i64, n, f(k, n));
            }
        }
        s
    }

    /// A `q`-series viewed as constant in `x`.
    pub fn lift_q(series: &QExpansion, x_order: usize) -> Self {
        let mut s = Self::zero(x_order, series.order());
        s.prefactor = series.prefactor().clone();
        for (n, c) in series.nonzero_terms() {
            s.set(0, n, c.clone());
        }
        s
    }

    /// An `x`-series (coefficients of `x^0..`) viewed as constant in `q`.
    pub fn lift_x(x_coeffs: &[Rational], q_order: usize) -> Self {
        assert!(!x_coeffs.is_empty());
        let mut s = Self::zero(x_coeffs.len() - 1, q_order);
        for (k, c) in x_coeffs.iter().enumerate() {
            s.set(k as i64, 0, c.clone());
        }
        s
    }

    /// `exp(alpha x)` truncated at `x^x_order`, constant in `q`.
    pub fn exp_linear(alpha: &Rational, x_order: usize, q_order: usize) -> Self {
        let coeffs: Vec<Rational> = (0..=x_order)
            .map(|k| super::exp_coefficient(alpha, k))
            .collect();
        Self::lift_x(&coeffs, q_order)
    }

    pub fn x_order(&self) -> i64 {
        self.x_order
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn pole_order(&self) -> usize {
        self.pole
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    pub fn with_prefactor(mut self, prefactor: Rational) -> Self {
        self.prefactor = prefactor;
        self
    }

    fn width(&self) -> usize {
        (self.x_order + self.pole as i64 + 1) as usize
    }

    fn idx(&self, k: i64, n: usize) -> usize {
        debug_assert!(k >= -(self.pole as i64) && k <= self.x_order && n <= self.q_order);
        n * self.width() + (k + self.pole as i64) as usize
    }

    /// Coefficient of `x^k q^n`. Panics when out of range.
    pub fn coeff(&self, k: i64, n: usize) -> &Rational {
        assert!(
            k >= -(self.pole as i64) && k <= self.x_order && n <= self.q_order,
            "coefficient (x^{k}, q^{n}) outside the stored box"
        );
        &self.coeffs[self.idx(k, n)]
    }

    fn set(&mut self, k: i64, n: usize, c: Rational) {
        let i = self.idx(k, n);
        self.coeffs[i] = c;
    }

    fn add_to(&mut self, k: i64, n: usize, c: &Rational) {
        let i = self.idx(k, n);
        self.coeffs[i] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The `q`-series multiplying `x^k`, carrying the `q`-prefactor.
    pub fn coeff_x(&self, k: i64) -> Result<QExpansion> {
        if k < -(self.pole as i64) || k > self.x_order {
            return Err(Error::Index {
                index: k,
                min: -(self.pole as i64),
                max: self.x_order,
            });
        }
        let coeffs = (0..=self.q_order)
            .map(|n| self.coeff(k, n).clone())
            .collect();
        Ok(QExpansion::from_coeffs(self.prefactor.clone(), coeffs))
    }

    /// Restricts to a smaller box. Fails when asked to extend.
    pub fn truncate(&self, x_order: i64, q_order: usize) -> Result<Self> {
        if x_order > self.x_order || q_order > self.q_order || x_order < -(self.pole as i64) {
            return Err(Error::Truncation(format!(
                "cannot truncate box (x<={}, q<={}) to (x<={x_order}, q<={q_order})",
                self.x_order, self.q_order
            )));
        }
        let mut out = Self::zero_with_pole(self.pole, x_order, q_order);
        out.prefactor = self.prefactor.clone();
        for n in 0..=q_order {
            for k in -(self.pole as i64)..=x_order {
                out.set(k, n, self.coeff(k, n).clone());
            }
        }
        Ok(out)
    }

    /// Re-expresses with a different pole allowance; fails if a non-zero
    /// coefficient would be dropped.
    pub fn with_pole_order(&self, pole: usize) -> Result<Self> {
        let lowest = -(pole as i64);
        for n in 0..=self.q_order {
            for k in -(self.pole as i64)..lowest.min(self.x_order + 1) {
                if !self.coeff(k, n).is_zero() {
                    return Err(Error::Domain(format!(
                        "non-zero coefficient at x^{k} q^{n} below pole order {pole}"
                    )));
                }
            }
        }
        let x_order = self.x_order.max(lowest);
        let mut out = Self::zero_with_pole(pole, x_order, self.q_order);
        out.prefactor = self.prefactor.clone();
        for n in 0..=self.q_order {
            for k in (-(self.pole as i64)).max(lowest)..=self.x_order {
                out.set(k, n, self.coeff(k, n).clone());
            }
        }
        Ok(out)
    }

    /// Drops negative-power columns that vanish identically.
    pub fn trim_poles(&self) -> Self {
        let mut pole = self.pole;
        while pole > 0 {
            let k = -(pole as i64);
            if (0..=self.q_order).all(|n| self.coeff(k, n).is_zero()) {
                pole -= 1;
            } else {
                break;
            }
        }
        self.with_pole_order(pole)
            .expect("only vanishing columns dropped")
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

    fn combine(&self, other: &Self, sign: &Rational) -> Self {
        let pole = self.pole.max(other.pole);
        let x_order = self.x_order.min(other.x_order);
        let q_order = self.q_order.min(other.q_order);
        let mut out = Self::zero_with_pole(pole, x_order, q_order);
        out.prefactor = self.prefactor.clone();
        for n in 0..=q_order {
            for k in -(pole as i64)..=x_order {
                let mut c = Rational::zero();
                if k >= -(self.pole as i64) {
                    c += self.coeff(k, n);
                }
                if k >= -(other.pole as i64) {
                    c += other.coeff(k, n) * sign;
                }
                out.set(k, n, c);
            }
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_prefactors(other, "add")?;
        Ok(self.combine(other, &Rational::one()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_prefactors(other, "sub")?;
        Ok(self.combine(other, &-Rational::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let pole = self.pole + other.pole;
        if pole > MAX_X_POLE_ORDER {
            return Err(Error::Truncation(format!(
                "product pole order {pole} exceeds {MAX_X_POLE_ORDER}"
            )));
        }
        let x_order = (self.x_order - other.pole as i64).min(other.x_order - self.pole as i64);
        if x_order < -(pole as i64) {
            return Err(Error::Truncation(
                "x-orders too small for the pole orders of the factors".into(),
            ));
        }
        let q_order = self.q_order.min(other.q_order);
        let mut out = Self::zero_with_pole(pole, x_order, q_order);
        out.prefactor = &self.prefactor + &other.prefactor;
        let (ap, bp) = (self.pole as i64, other.pole as i64);
        for na in 0..=q_order {
            for ka in -ap..=self.x_order {
                let a = self.coeff(ka, na);
                if a.is_zero() || ka - bp > x_order {
                    continue;
                }
                for nb in 0..=(q_order - na) {
                    for kb in -bp..=(x_order - ka).min(other.x_order) {
                        let b = other.coeff(kb, nb);
                        if !b.is_zero() {
                            out.add_to(ka + kb, na + nb, &(a * b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v *= c;
        }
        out
    }

    /// Substitutes `x -> factor * x`.
    pub fn scale_x(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        for n in 0..=self.q_order {
            for k in -(self.pole as i64)..=self.x_order {
                let p = if k >= 0 {
                    num_traits::pow(factor.clone(), k as usize)
                } else {
                    num_traits::pow(Rational::one() / factor, (-k) as usize)
                };
                let i = out.idx(k, n);
                out.coeffs[i] = self.coeff(k, n) * p;
            }
        }
        out
    }

    /// Lowest `x`-degree with a non-zero coefficient.
    pub fn x_valuation(&self) -> Option<i64> {
        (-(self.pole as i64)..=self.x_order)
            .find(|&k| (0..=self.q_order).any(|n| !self.coeff(k, n).is_zero()))
    }

    /// Inverse for series whose `(x-valuation, q^0)` coefficient is non-zero.
    /// A leading `x^v` with `v > 0` turns into a pole of order `v`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.x_valuation().ok_or_else(|| {
            Error::SingularDivisor("bivariate series vanishes in its whole box".into())
        })?;
        let lead = self.coeff(v, 0).clone();
        if lead.is_zero() {
            return Err(Error::SingularDivisor(format!(
                "leading x^{v} coefficient has no q^0 term"
            )));
        }
        if v < 0 {
            return Err(Error::SingularDivisor(
                "inverting a series with a pole is not supported".into(),
            ));
        }
        let v_us = v as usize;
        let pole = self.pole.max(v_us);
        let _ = pole;
        if v_us > MAX_X_POLE_ORDER {
            return Err(Error::Truncation(format!(
                "inverse pole order {v} exceeds {MAX_X_POLE_ORDER}"
            )));
        }
        // b = x^v * unit; invert the unit with a regular box recursion
        let unit_x_order = (self.x_order - v) as usize;
        let unit = Self::from_fn(unit_x_order, self.q_order, |k, n| {
            self.coeff(k as i64 + v, n).clone()
        });
        let inv_lead = Rational::one() / &lead;
        let mut inv = Self::zero(unit_x_order, self.q_order);
        for n in 0..=self.q_order {
            for k in 0..=unit_x_order {
                if n == 0 && k == 0 {
                    inv.set(0, 0, inv_lead.clone());
                    continue;
                }
                let mut acc = Rational::zero();
                for nb in 0..=n {
                    for kb in 0..=k {
                        if nb == 0 && kb == 0 {
                            continue;
                        }
                        let b = unit.coeff(kb as i64, nb);
                        if !b.is_zero() {
                            acc += b * inv.coeff((k - kb) as i64, n - nb);
                        }
                    }
                }
                inv.set(k as i64, n, -acc * &inv_lead);
            }
        }
        inv.prefactor = -&self.prefactor;
        Ok(inv.shift_x(-v))
    }

    /// Multiplies by `x^s`.
    pub fn shift_x(&self, s: i64) -> Self {
        let lowest = -(self.pole as i64) + s;
        let pole = (-lowest).max(0) as usize;
        let x_order = self.x_order + s;
        let mut out = Self::zero_with_pole(pole, x_order.max(-(pole as i64)), self.q_order);
        out.prefactor = self.prefactor.clone();
        for n in 0..=self.q_order {
            for k in -(self.pole as i64)..=self.x_order {
                let c = self.coeff(k, n);
                if k + s >= -(pole as i64) {
                    out.set(k + s, n, c.clone());
                } else {
                    debug_assert!(c.is_zero() || k + s >= -(pole as i64));
                }
            }
        }
        out
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    fn require_regular(&self, what: &str) -> Result<()> {
        if self.pole != 0 && self.x_valuation().is_some_and(|v| v < 0) {
            return Err(Error::Domain(format!(
                "{what} needs a series without x-poles"
            )));
        }
        if !self.prefactor.is_zero() {
            return Err(Error::Domain(format!("{what} needs prefactor 0")));
        }
        Ok(())
    }

    /// Truncated exponential; needs constant term `(x^0, q^0)` equal to 0.
    pub fn exp(&self) -> Result<Self> {
        self.require_regular("exp")?;
        let a = self.with_pole_order(0)?;
        if !a.coeff(0, 0).is_zero() {
            return Err(Error::Domain("exp needs constant term 0".into()));
        }
        let (kx, nq) = (a.x_order as usize, a.q_order);
        let mut g = Self::zero(kx, nq);
        // (k + n) g_{k,n} = sum (k' + n') a_{k',n'} g_{k-k',n-n'}
        for n in 0..=nq {
            for k in 0..=kx {
                if n == 0 && k == 0 {
                    g.set(0, 0, Rational::one());
                    continue;
                }
                let mut acc = Rational::zero();
                for na in 0..=n {
                    for ka in 0..=k {
                        if na == 0 && ka == 0 {
                            continue;
                        }
                        let c = a.coeff(ka as i64, na);
                        if !c.is_zero() {
                            acc += c
                                * Rational::from_integer((ka + na).into())
                                * g.coeff((k - ka) as i64, n - na);
                        }
                    }
                }
                g.set(k as i64, n, acc / Rational::from_integer((k + n).into()));
            }
        }
        Ok(g)
    }

    /// Truncated logarithm; needs constant term `(x^0, q^0)` equal to 1.
    pub fn log(&self) -> Result<Self> {
        self.require_regular("log")?;
        let f = self.with_pole_order(0)?;
        if !f.coeff(0, 0).is_one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        // Euler operator E = x d/dx + q d/dq, log f = E^{-1}(E f / f)
        let (kx, nq) = (f.x_order as usize, f.q_order);
        let ef = Self::from_fn(kx, nq, |k, n| {
            f.coeff(k as i64, n) * Rational::from_integer((k + n).into())
        });
        let quotient = ef.try_div(&f)?;
        Ok(Self::from_fn(kx, nq, |k, n| {
            if k + n == 0 {
                Rational::zero()
            } else {
                quotient.coeff(k as i64, n) / Rational::from_integer((k + n).into())
            }
        }))
    }

    /// `q d/dq`, degree `n` weighted by `n + rho`.
    pub fn dq(&self) -> Self {
        let mut out = self.clone();
        for n in 0..=self.q_order {
            let w = &self.prefactor + Rational::from_integer(n.into());
            for k in -(self.pole as i64)..=self.x_order {
                let i = out.idx(k, n);
                out.coeffs[i] = self.coeff(k, n) * &w;
            }
        }
        out
    }

    /// `x d/dx`.
    pub fn x_dx(&self) -> Self {
        let mut out = self.clone();
        for n in 0..=self.q_order {
            for k in -(self.pole as i64)..=self.x_order {
                let i = out.idx(k, n);
                out.coeffs[i] = self.coeff(k, n) * Rational::from_integer(k.into());
            }
        }
        out
    }

    /// Largest |coefficient| over the stored box.
    pub fn max_abs_coeff(&self) -> Rational {
        super::max_abs(self.coeffs.iter())
    }
}

impl Add for &BiExpansion {
    type Output = BiExpansion;
    fn add(self, rhs: Self) -> BiExpansion {
        self.try_add(rhs).expect("prefactor mismatch in +")
    }
}

impl Sub for &BiExpansion {
    type Output = BiExpansion;
    fn sub(self, rhs: Self) -> BiExpansion {
        self.try_sub(rhs).expect("prefactor mismatch in -")
    }
}

impl Mul for &BiExpansion {
    type Output = BiExpansion;
    /// Panics when the pole bound is exceeded; see [`BiExpansion::try_mul`].
    fn mul(self, rhs: Self) -> BiExpansion {
        self.try_mul(rhs).expect("pole bound exceeded in *")
    }
}

impl Neg for &BiExpansion {
    type Output = BiExpansion;
    fn neg(self) -> BiExpansion {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    #[test]
    fn exp_half_x_coefficient() {
        let e = BiExpansion::exp_linear(&ratio(1, 2), 4, 0);
        assert_eq!(e.coeff_x(1).unwrap().coeff(0), &ratio(1, 2));
        assert!(matches!(e.coeff_x(5), Err(Error::Index { .. })));
        assert!(matches!(e.coeff_x(-1), Err(Error::Index { .. })));
    }

    #[test]
    fn exp_log_roundtrip_and_additivity() {
        let a = BiExpansion::from_fn(4, 5, |k, n| {
            if k + n == 0 {
                Rational::zero()
            } else {
                ratio((k as i64 * 3 - n as i64) % 5, (n + 1) as i64)
            }
        });
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
        let b = a.scale_x(&rat(2));
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &e * &b.exp().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_by_linear_vanishing_series() {
        // s = e^{x/2} - e^{-x/2} vanishes linearly in x
        let s = &BiExpansion::exp_linear(&ratio(1, 2), 6, 3)
            - &BiExpansion::exp_linear(&ratio(-1, 2), 6, 3);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.pole_order(), 1);
        assert_eq!(inv.x_order(), 4);
        assert_eq!(inv.coeff(-1, 0), &rat(1));
        let back = (&s * &inv).trim_poles();
        assert_eq!(back.pole_order(), 0);
        assert_eq!(back.x_order(), 4);
        assert_eq!(back, BiExpansion::one(4, 3));
    }

    #[test]
    fn singular_divisor() {
        let z = BiExpansion::zero(3, 3);
        assert!(matches!(z.inverse(), Err(Error::SingularDivisor(_))));
        let q_only = BiExpansion::from_fn(2, 2, |k, n| {
            if k == 0 && n == 1 {
                rat(1)
            } else {
                Rational::zero()
            }
        });
        assert!(matches!(q_only.inverse(), Err(Error::SingularDivisor(_))));
    }

    #[test]
    fn scale_x_doubles() {
        let e = BiExpansion::exp_linear(&rat(1), 5, 0).scale_x(&rat(2));
        assert_eq!(e, BiExpansion::exp_linear(&rat(2), 5, 0));
    }
}
