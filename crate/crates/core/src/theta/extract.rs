use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::families::{family_bivar, sinc_factor, t0_series};
use super::modular::euler_product;
use super::FamilyId;
use crate::error::{Error, Result};
use crate::partitions::{a_row, b_row};
use crate::report::RecursionReport;
use crate::series::{factorial, rat, ratio, BiExpansion, QExpansion, Rational};

/// The three Taylor-coefficient families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaylorFamily {
    /// `g_k` from the partial theta function.
    G,
    /// `h_k` from the false theta function.
    H,
    /// `u_k` from the unimodal rank generating function.
    U,
}

fn x_coeff_scaled(l: &BiExpansion, k: usize, scale: &Rational) -> Result<QExpansion> {
    Ok(l.coeff_x(k as i64)?.scale(scale))
}

/// `g_1..g_{k_max}`, `h_1..` or `u_1..` by expanding the logarithm of the
/// bivariate object in `x`. `k_max = 0` gives an empty list.
pub fn extract_coeffs(which: TaylorFamily, k_max: usize, order: usize) -> Result<Vec<QExpansion>> {
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let (log, factor): (BiExpansion, Rational) = match which {
        TaylorFamily::G => {
            let t = family_bivar(FamilyId::PartialTheta, k_max, order)?;
            let slice = BiExpansion::lift_q(&t.coeff_x(0)?, k_max);
            (t.try_div(&slice)?.log()?, -Rational::one())
        }
        TaylorFamily::H => {
            let h = family_bivar(FamilyId::FalseTheta, k_max, order)?;
            let slice = BiExpansion::lift_q(&h.coeff_x(0)?, k_max);
            (h.try_div(&slice)?.log()?, -Rational::one())
        }
        TaylorFamily::U => {
            let u = family_bivar(FamilyId::UnimodalRank, k_max, order)?;
            let slice = BiExpansion::lift_q(&u.coeff_x(0)?, k_max);
            let denom = slice.try_mul(&sinc_factor(k_max, order))?;
            (u.try_div(&denom)?.log()?, ratio(1, 2))
        }
    };
    (1..=k_max)
        .map(|k| {
            let scale = &factor * Rational::from_integer(factorial(k));
            x_coeff_scaled(&log, k, &scale)
        })
        .collect()
}

/// `-delta_{k,1}/2 + sum_n sum_m c_{n,m} m^{k-1} q^n` for `k = 1..=k_max`,
/// with `c = a` for `G` and `c = b` for `H`.
pub fn closed_form_family(
    which: TaylorFamily,
    k_max: usize,
    order: usize,
) -> Result<Vec<QExpansion>> {
    let rows: Vec<Vec<BigInt>> = match which {
        TaylorFamily::G => (1..=order).map(a_row).collect::<Result<_>>()?,
        TaylorFamily::H => (1..=order).map(b_row).collect::<Result<_>>()?,
        TaylorFamily::U => return Err(Error::Domain("no closed form is available for u_k".into())),
    };
    Ok((1..=k_max)
        .map(|k| {
            let mut coeffs = vec![Rational::zero(); order + 1];
            if k == 1 {
                coeffs[0] = ratio(-1, 2);
            }
            for (i, row) in rows.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * num_traits::pow(BigInt::from(j + 1), k - 1);
                    }
                }
                coeffs[i + 1] = Rational::from_integer(acc);
            }
            QExpansion::from_coeffs(Rational::zero(), coeffs)
        })
        .collect())
}

/// Single member of [`closed_form_family`].
pub fn closed_form(which: TaylorFamily, k: usize, order: usize) -> Result<QExpansion> {
    if k == 0 {
        return Err(Error::Domain("closed forms are indexed from k = 1".into()));
    }
    Ok(closed_form_family(which, k, order)?.pop().expect("k >= 1"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductIdentity {
    /// `log T_0 = -sum a_{n,m}/m q^n`.
    T0,
    /// `log prod(1 - q^n) = -sum b_{n,m}/m q^n`.
    Eta,
}

/// Per-coefficient residuals of a product identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIdentityReport {
    pub report: RecursionReport,
    #[serde(serialize_with = "ser_rationals")]
    pub residuals: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::series::format_rational))
}

/// Checks a product identity coefficientwise up to `order`.
pub fn product_identity_check(
    which: ProductIdentity,
    order: usize,
) -> Result<ProductIdentityReport> {
    let (log, rows, name): (QExpansion, Vec<Vec<BigInt>>, &str) = match which {
        ProductIdentity::T0 => (
            t0_series(order).log()?,
            (1..=order).map(a_row).collect::<Result<_>>()?,
            "log T0 = -sum a_nm/m q^n",
        ),
        ProductIdentity::Eta => (
            euler_product(order).log()?,
            (1..=order).map(b_row).collect::<Result<_>>()?,
            "log prod(1-q^n) = -sum b_nm/m q^n",
        ),
    };
    let mut residuals = vec![log.coeff(0).clone()];
    for (i, row) in rows.iter().enumerate() {
        let rhs = row
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, c)| {
                acc - Rational::new(c.clone(), BigInt::from(j + 1))
            });
        residuals.push(log.coeff(i + 1) - rhs);
    }
    let residual = crate::series::max_abs(residuals.iter());
    Ok(ProductIdentityReport {
        report: RecursionReport::from_residual(name, order, residual),
        residuals,
    })
}

/// The three theta constructions agree on the box `(x_order, q_order)`.
pub fn triple_product_check(x_order: usize, q_order: usize) -> Result<RecursionReport> {
    let sum = family_bivar(FamilyId::JacobiThetaSum, x_order, q_order)?;
    let product = family_bivar(FamilyId::JacobiThetaProduct, x_order, q_order)?;
    let eisenstein = family_bivar(FamilyId::JacobiThetaEisenstein, x_order, q_order)?;
    Ok(RecursionReport::combine(
        "theta: sum = product = Eisenstein exponential",
        &[
            RecursionReport::compare_bi("sum = product", x_order, q_order, &sum, &product)?,
            RecursionReport::compare_bi("sum = exponential", x_order, q_order, &sum, &eisenstein)?,
        ],
    ))
}

/// `U(x) = -s (P T(2x)/Theta + H)` with `s = e^{x/2} - e^{-x/2}`, `P` the
/// Euler product and `Theta` the normalized Jacobi theta function, checked on
/// the box `(x_order, q_order)`.
pub fn master_identity_check(x_order: usize, q_order: usize) -> Result<RecursionReport> {
    let k = x_order + 2;
    let u = family_bivar(FamilyId::UnimodalRank, k, q_order)?;
    let t2 = family_bivar(FamilyId::PartialTheta, k, q_order)?.scale_x(&rat(2));
    let theta = family_bivar(FamilyId::JacobiThetaSum, k, q_order)?;
    let h = family_bivar(FamilyId::FalseTheta, k, q_order)?;
    let p = BiExpansion::lift_q(&euler_product(q_order), k);
    let s = &BiExpansion::exp_linear(&ratio(1, 2), k, q_order)
        - &BiExpansion::exp_linear(&ratio(-1, 2), k, q_order);
    let quotient = p.try_mul(&t2)?.try_div(&theta)?;
    let rhs = s.try_mul(&quotient.try_add(&h)?)?.scale(&-Rational::one());
    RecursionReport::compare_bi("U = -s (P T(2x)/theta + H)", x_order, q_order, &u, &rhs)
}

/// `U(1; q) prod(1 - q^n)^2 = T_0`.
pub fn unimodal_at_one_check(order: usize) -> Result<RecursionReport> {
    let u0 = family_bivar(FamilyId::UnimodalRank, 0, order)?.coeff_x(0)?;
    let lhs = u0.mul(&euler_product(order).pow(2));
    RecursionReport::compare("U(1;q) prod(1-q^n)^2 = T0", order, &lhs, &t0_series(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_for_zero_k() {
        assert!(extract_coeffs(TaylorFamily::G, 0, 5).unwrap().is_empty());
    }

    #[test]
    fn first_coefficients() {
        let g = extract_coeffs(TaylorFamily::G, 2, 8).unwrap();
        let expected: Vec<Rational> = [
            ratio(-1, 2),
            rat(1),
            rat(1),
            rat(-1),
            rat(-2),
            rat(-3),
            rat(1),
            rat(4),
            rat(8),
        ]
        .to_vec();
        assert_eq!(g[0].coeffs(), expected.as_slice());
        let h = extract_coeffs(TaylorFamily::H, 3, 2).unwrap();
        assert_eq!(h[0].coeff(1), &rat(2));
        assert_eq!(h[2].coeff(2), &rat(59));
    }

    #[test]
    fn closed_form_small() {
        let g4 = closed_form(TaylorFamily::G, 4, 8).unwrap();
        assert_eq!(
            g4,
            QExpansion::from_integers(&[0, 1, 8, 11, -17, -131, -200, -72, 680])
        );
        assert_eq!(
            closed_form(TaylorFamily::H, 1, 8).unwrap().coeff(8),
            &rat(42)
        );
    }

    #[test]
    fn product_identities_small() {
        assert!(
            product_identity_check(ProductIdentity::T0, 8)
                .unwrap()
                .report
                .pass
        );
        assert!(
            product_identity_check(ProductIdentity::Eta, 8)
                .unwrap()
                .report
                .pass
        );
    }

    #[test]
    fn structural_identities_small() {
        assert!(triple_product_check(4, 5).unwrap().pass);
        assert!(master_identity_check(3, 5).unwrap().pass);
        assert!(unimodal_at_one_check(8).unwrap().pass);
    }
}
