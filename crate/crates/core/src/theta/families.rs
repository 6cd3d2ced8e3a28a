use num_traits::{One, Zero};

use super::modular::{eisenstein_g, euler_product};
use super::FamilyId;
use crate::error::Result;
use crate::series::{
    exp_coefficient, factorial, rat, ratio, BiExpansion, QExpansion, Rational, ZetaSeries,
};

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// `sum_{n>=0} (-1)^n zeta^{n+1/2} q^{n(n+1)/2}`.
pub fn partial_theta_zeta(order: usize) -> ZetaSeries {
    let mut s = ZetaSeries::zero(order);
    for n in (0..).take_while(|&n| triangular(n) <= order as i64) {
        s.add_term(sign(n), rat(n) + ratio(1, 2), triangular(n) as usize);
    }
    s
}

/// `sum_{n>=0} (-1)^n zeta^{3n+1/2} q^{n(3n+1)/2}
///  + sum_{m>=1} (-1)^m zeta^{3m-1/2} q^{m(3m-1)/2}`.
pub fn false_theta_zeta(order: usize) -> ZetaSeries {
    let mut s = ZetaSeries::zero(order);
    for n in (0..).take_while(|&n| n * (3 * n + 1) / 2 <= order as i64) {
        s.add_term(
            sign(n),
            rat(3 * n) + ratio(1, 2),
            (n * (3 * n + 1) / 2) as usize,
        );
    }
    for m in (1..).take_while(|&m| m * (3 * m - 1) / 2 <= order as i64) {
        s.add_term(
            sign(m),
            rat(3 * m) - ratio(1, 2),
            (m * (3 * m - 1) / 2) as usize,
        );
    }
    s
}

/// `sum_{n>=0} q^n / ((zeta q)_n (zeta^{-1} q)_n)`.
pub fn unimodal_zeta(order: usize) -> ZetaSeries {
    let mut total = ZetaSeries::one(order);
    let mut term = ZetaSeries::one(order);
    for n in 1..=order {
        term = term
            .shift(&rat(0), 1)
            .div_one_minus(&rat(1), n)
            .div_one_minus(&rat(-1), n);
        total = total.add(&term);
    }
    total
}

/// `-sum_{n in Z} (-1)^n q^{n(n+1)/2} zeta^{n+1/2}`.
pub fn jacobi_theta_sum_zeta(order: usize) -> ZetaSeries {
    let mut s = ZetaSeries::zero(order);
    let top = (0..)
        .take_while(|&n| triangular(n) <= order as i64)
        .last()
        .unwrap_or(0);
    for n in -(top + 1)..=top {
        s.add_term(-sign(n), rat(n) + ratio(1, 2), triangular(n) as usize);
    }
    s
}

/// `zeta^{-1/2} (q)_inf (1 - zeta) prod_{j>=1} (1 - zeta q^j)(1 - zeta^{-1} q^j)`.
pub fn jacobi_theta_product_zeta(order: usize) -> ZetaSeries {
    let one = || ZetaSeries::one(order);
    let binom =
        |alpha: i64, j: usize| one().sub(&ZetaSeries::monomial(rat(1), rat(alpha), j, order));
    let mut s = ZetaSeries::monomial(rat(1), ratio(-1, 2), 0, order).mul(&binom(1, 0));
    for j in 1..=order {
        s = s.mul(&binom(0, j)).mul(&binom(1, j)).mul(&binom(-1, j));
    }
    s
}

/// `-x prod(1-q^n)^3 exp(-2 sum_k G_k x^k / k!)`.
pub fn jacobi_theta_eisenstein(x_order: usize, q_order: usize) -> Result<BiExpansion> {
    let mut exponent = BiExpansion::zero(x_order, q_order);
    for k in 2..=x_order {
        let g = eisenstein_g(k, q_order);
        let scale = rat(-2) / Rational::from_integer(factorial(k));
        let col = BiExpansion::from_fn(x_order, q_order, |kk, n| {
            if kk == k {
                g.coeff(n) * &scale
            } else {
                Rational::zero()
            }
        });
        exponent = &exponent + &col;
    }
    let p3 = BiExpansion::lift_q(&euler_product(q_order).pow(3), x_order);
    let body = exponent.exp()?.try_mul(&p3)?;
    body.shift_x(1)
        .scale(&-Rational::one())
        .truncate(x_order as i64, q_order)
}

/// `sinh(x/2)/(x/2) = sum_m x^{2m} / (4^m (2m+1)!)`.
pub fn sinc_factor(x_order: usize, q_order: usize) -> BiExpansion {
    let coeffs: Vec<Rational> = (0..=x_order)
        .map(|k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                exp_coefficient(&ratio(1, 2), k) * Rational::from_integer(factorial(k))
                    / Rational::from_integer(factorial(k + 1))
            }
        })
        .collect();
    BiExpansion::lift_x(&coeffs, q_order)
}

/// The stored bivariate object for `which` to orders `(x_order, q_order)`.
pub fn family_bivar(which: FamilyId, x_order: usize, q_order: usize) -> Result<BiExpansion> {
    Ok(match which {
        FamilyId::PartialTheta => partial_theta_zeta(q_order).to_biexpansion(x_order),
        FamilyId::FalseTheta => false_theta_zeta(q_order).to_biexpansion(x_order),
        FamilyId::UnimodalRank => unimodal_zeta(q_order).to_biexpansion(x_order),
        FamilyId::JacobiThetaSum => jacobi_theta_sum_zeta(q_order).to_biexpansion(x_order),
        FamilyId::JacobiThetaProduct => jacobi_theta_product_zeta(q_order).to_biexpansion(x_order),
        FamilyId::JacobiThetaEisenstein => jacobi_theta_eisenstein(x_order, q_order)?,
    })
}

/// `sum_{n>=0} (-1)^n q^{n(n+1)/2}`, the `x^0` slice of the partial theta object.
pub fn t0_series(order: usize) -> QExpansion {
    partial_theta_zeta(order).at_zeta_one()
}

/// `U(1; q) = sum_n q^n / (q)_n^2`.
pub fn unimodal_at_one(order: usize) -> QExpansion {
    let mut total = QExpansion::one(order);
    let mut denom = QExpansion::one(order);
    for n in 1..=order {
        let factor = QExpansion::one(order)
            .try_sub(&QExpansion::monomial(rat(1), n, order))
            .expect("equal prefactors");
        denom = denom.mul(&factor).mul(&factor);
        let term = QExpansion::monomial(rat(1), n, order)
            .try_div(&denom)
            .expect("unit constant term");
        total = total.try_add(&term).expect("equal prefactors");
    }
    total
}
