use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sets::{lambda_by_length, omega_by_m};
use super::Partition;
use crate::error::{Error, Result};
use crate::series::{factorial, Rational};

/// Multinomial coefficient `top! / prod(parts_i!)`.
///
/// Every call also checks that `top / gcd(parts)` divides the result and
/// reports a violation as [`Error::Invariant`].
pub fn multinomial(top: usize, parts: &[usize]) -> Result<BigInt> {
    let sum: usize = parts.iter().sum();
    if sum != top {
        return Err(Error::Domain(format!(
            "multinomial blocks sum to {sum}, expected {top}"
        )));
    }
    let value = parts
        .iter()
        .fold(factorial(top), |acc, &p| acc / factorial(p));
    let g = parts.iter().fold(0usize, |g, &p| g.gcd(&p));
    if let Some(quotient) = top.checked_div(g) {
        let divisor = BigInt::from(quotient);
        if !value.is_multiple_of(&divisor) {
            return Err(Error::Invariant(format!(
                "{top}/gcd{parts:?} = {divisor} does not divide multinomial {value}"
            )));
        }
    }
    Ok(value)
}

/// `ceil((sqrt(8n+1) - 1)/2)`, the least `m` with `m(m+1)/2 >= n`.
pub fn a_threshold(n: usize) -> usize {
    (0..)
        .find(|m| m * (m + 1) / 2 >= n)
        .expect("unbounded search")
}

/// `floor((sqrt(24n+1) - 1)/2)`, the largest `m` with `m(m+1) <= 6n`.
pub fn b_threshold(n: usize) -> usize {
    (0..)
        .take_while(|m| m * (m + 1) <= 6 * n)
        .last()
        .unwrap_or(0)
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn finish_integral(total: Rational, what: &str) -> Result<BigInt> {
    if !total.is_integer() {
        return Err(Error::Invariant(format!(
            "{what} = {total} is not an integer"
        )));
    }
    Ok(total.to_integer())
}

fn lambda_term(p: &Partition, m: usize) -> Result<Rational> {
    let m1 = p.multiplicity(1);
    let blocks: Vec<usize> = (1..=p.largest_part())
        .map(|j| p.multiplicity(j) - p.multiplicity(j + 1))
        .collect();
    let c = multinomial(m1, &blocks)? * sign(m + m1) * BigInt::from(m);
    Ok(Rational::new(c, BigInt::from(m1)))
}

fn omega_term(p: &Partition, m: usize) -> Result<Rational> {
    let (m1, m2) = (p.multiplicity(1), p.multiplicity(2));
    let chain = |start: usize| {
        (start..=p.largest_part())
            .step_by(3)
            .map(|j| p.multiplicity(j) - p.multiplicity(j + 3))
            .collect::<Vec<_>>()
    };
    let mut blocks = chain(2);
    blocks.extend(chain(1));
    let c = multinomial(m1 + m2, &blocks)? * sign(m + m2) * BigInt::from(m);
    Ok(Rational::new(c, BigInt::from(m1 + m2)))
}

/// `a_{n,m}` as the signed sum over Lambda(n, m).
pub fn a_nm(n: usize, m: usize) -> Result<BigInt> {
    let set = super::lambda_nm(n, m);
    sum_terms(&set, m, lambda_term, &format!("a_({n},{m})"))
}

/// `b_{n,m}` as the signed sum over Omega(n, m).
pub fn b_nm(n: usize, m: usize) -> Result<BigInt> {
    let set = super::omega_nm(n, m);
    sum_terms(&set, m, omega_term, &format!("b_({n},{m})"))
}

fn sum_terms(
    set: &[Partition],
    m: usize,
    term: fn(&Partition, usize) -> Result<Rational>,
    what: &str,
) -> Result<BigInt> {
    let mut total = Rational::zero();
    for p in set {
        total += term(p, m)?;
    }
    finish_integral(total, what)
}

/// `(a_{n,1}, ..., a_{n,n})`; entry `m - 1` holds `a_{n,m}`.
pub fn a_row(n: usize) -> Result<Vec<BigInt>> {
    let sets = lambda_by_length(n);
    (1..=n)
        .map(|m| {
            let set = sets.get(&m).map(Vec::as_slice).unwrap_or(&[]);
            sum_terms(set, m, lambda_term, &format!("a_({n},{m})"))
        })
        .collect()
}

/// `(b_{n,1}, ..., b_{n,2n})`; entry `m - 1` holds `b_{n,m}`.
pub fn b_row(n: usize) -> Result<Vec<BigInt>> {
    let sets = omega_by_m(n);
    (1..=2 * n)
        .map(|m| {
            let set = sets.get(&m).map(Vec::as_slice).unwrap_or(&[]);
            sum_terms(set, m, omega_term, &format!("b_({n},{m})"))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    A,
    B,
}

/// One non-zero coefficient with the vanishing threshold for its `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub m: usize,
    #[serde(with = "bigint_string")]
    pub value: BigInt,
    pub threshold: usize,
}

/// All non-zero `(n, m, value)` with `1 <= n <= n_max`.
pub fn coefficient_table(kind: CoefficientKind, n_max: usize) -> Result<Vec<CoefficientRow>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let (row, threshold) = match kind {
            CoefficientKind::A => (a_row(n)?, a_threshold(n)),
            CoefficientKind::B => (b_row(n)?, b_threshold(n)),
        };
        for (i, value) in row.into_iter().enumerate() {
            if !value.is_zero() {
                out.push(CoefficientRow {
                    n,
                    m: i + 1,
                    value,
                    threshold,
                });
            }
        }
    }
    Ok(out)
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
