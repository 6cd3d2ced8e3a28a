use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{binomial, ratio, QExpansion, Rational};

/// `B_0, ..., B_n` from `sum_{k<=n} C(n+1, k) B_k = 0`, so `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let acc = (0..m).fold(Rational::zero(), |acc, k| {
            acc + Rational::from_integer(binomial(m + 1, k)) * &b[k]
        });
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `sigma_s(n) = sum_{d | n} d^s`.
pub fn divisor_sigma(s: u32, n: usize) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| num_traits::pow(BigInt::from(d), s as usize))
        .sum()
}

/// `G_k = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n` for even `k`, zero for odd `k`.
pub fn eisenstein_g(k: usize, order: usize) -> QExpansion {
    assert!(k >= 1, "Eisenstein series are indexed from 1");
    if k % 2 == 1 {
        return QExpansion::zero(order);
    }
    let b = &bernoulli_numbers(k)[k];
    let mut coeffs = vec![-b / ratio(2 * k as i64, 1)];
    coeffs.extend((1..=order).map(|n| Rational::from_integer(divisor_sigma(k as u32 - 1, n))));
    QExpansion::from_coeffs(Rational::zero(), coeffs)
}

/// `prod_{n>=1} (1 - q^n)` truncated at `order`.
pub fn euler_product(order: usize) -> QExpansion {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for n in 1..=order {
        for d in (n..=order).rev() {
            let prev = c[d - n].clone();
            c[d] -= prev;
        }
    }
    QExpansion::from_coeffs(
        Rational::zero(),
        c.into_iter().map(Rational::from_integer).collect(),
    )
}

/// `eta = q^{1/24} prod_{n>=1} (1 - q^n)`.
pub fn eta_product(order: usize) -> QExpansion {
    euler_product(order).with_prefactor(ratio(1, 24))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[2], ratio(1, 6));
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[6], ratio(1, 42));
        assert_eq!(b[8], ratio(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn eisenstein_examples() {
        let g2 = eisenstein_g(2, 5);
        let expected: Vec<Rational> = vec![ratio(-1, 24), rat(1), rat(3), rat(4), rat(7), rat(6)];
        assert_eq!(g2.coeffs(), expected.as_slice());
        assert!(eisenstein_g(3, 5).is_zero());
        assert_eq!(eisenstein_g(4, 2).coeff(0), &ratio(1, 240));
        assert_eq!(eisenstein_g(6, 1).coeff(0), &ratio(-1, 504));
    }

    #[test]
    fn pentagonal_pattern() {
        let p = euler_product(15);
        let expected = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1];
        assert_eq!(p, QExpansion::from_integers(&expected));
        let eta = eta_product(4);
        assert_eq!(eta.prefactor(), &ratio(1, 24));
        assert_eq!(eta.pow(3).coeff(0), &rat(1));
        assert_eq!(eta.pow(3).prefactor(), &ratio(1, 8));
    }
}
