use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{partitions_of, Partition};
use crate::error::{Error, Result};
use crate::series::{factorial, QExpansion, Rational};

/// A rational weight on partitions.
#[derive(Clone, Copy)]
pub struct TraceWeight {
    name: &'static str,
    eval: fn(&Partition) -> Rational,
}

impl TraceWeight {
    pub fn new(name: &'static str, eval: fn(&Partition) -> Rational) -> Self {
        Self { name, eval }
    }

    /// `prod_j 2^{m_j} / (j!^{m_j} m_j!)`.
    pub fn phi_weight() -> Self {
        Self::new("phi_weight", |p| {
            factorial_weight(p, &Rational::from_integer(2.into()))
        })
    }

    /// `prod_j (-1)^{m_j} / (j!^{m_j} m_j!)`.
    pub fn psi_weight() -> Self {
        Self::new("psi_weight", |p| factorial_weight(p, &-Rational::one()))
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn eval(&self, p: &Partition) -> Rational {
        (self.eval)(p)
    }
}

impl std::fmt::Debug for TraceWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("TraceWeight").field(&self.name).finish()
    }
}

fn factorial_weight(p: &Partition, base: &Rational) -> Rational {
    let mut num = Rational::one();
    let mut den = BigInt::one();
    for (i, &m) in p.multiplicities().iter().enumerate() {
        num *= num_traits::pow(base.clone(), m);
        den *= num_traits::pow(factorial(i + 1), m) * factorial(m);
    }
    num / Rational::from_integer(den)
}

/// `Tr_n(w, f) = sum_{lambda |- n} w(lambda) prod_j f_j^{m_j}`, with
/// `family[j - 1] = f_j`. The empty partition contributes `1`.
pub fn partition_trace(
    weight: &TraceWeight,
    family: &[QExpansion],
    n: usize,
    order: usize,
) -> Result<QExpansion> {
    if family.len() < n {
        return Err(Error::Domain(format!(
            "trace of size {n} needs {n} family members, got {}",
            family.len()
        )));
    }
    let mut total = QExpansion::zero(order);
    for p in partitions_of(n) {
        let w = weight.eval(&p);
        if w.is_zero() {
            continue;
        }
        let mut term = QExpansion::constant(w, order);
        for (i, &m) in p.multiplicities().iter().enumerate() {
            if m > 0 {
                term = term.mul(&family[i].pow(m as u32));
            }
        }
        total = total.try_add(&term)?;
    }
    Ok(total)
}

/// Both sides of `sum_{k <= K} sum_{lambda |- k} prod_j x_j^{m_j}/m_j! w^k =
/// exp(sum_{k <= K} x_k w^k)` as power series in `w`, `K = xs.len()`.
pub fn cycle_index_check(xs: &[Rational]) -> Result<(QExpansion, QExpansion)> {
    let order = xs.len();
    let mut lhs = vec![Rational::zero(); order + 1];
    for (k, slot) in lhs.iter_mut().enumerate() {
        for p in partitions_of(k) {
            let mut term = Rational::one();
            for (i, &m) in p.multiplicities().iter().enumerate() {
                term *= num_traits::pow(xs[i].clone(), m) / Rational::from_integer(factorial(m));
            }
            *slot += term;
        }
    }
    let mut exponent = vec![Rational::zero()];
    exponent.extend(xs.iter().cloned());
    let rhs = QExpansion::from_coeffs(Rational::zero(), exponent).exp()?;
    Ok((QExpansion::from_coeffs(Rational::zero(), lhs), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    #[test]
    fn weights_on_small_partitions() {
        let phi = TraceWeight::phi_weight();
        assert_eq!(phi.eval(&Partition::from_parts(&[1])), rat(2));
        assert_eq!(phi.eval(&Partition::from_parts(&[1, 1])), rat(2));
        assert_eq!(phi.eval(&Partition::from_parts(&[2])), rat(1));
        let psi = TraceWeight::psi_weight();
        assert_eq!(psi.eval(&Partition::from_parts(&[2, 1])), ratio(1, 2));
        assert_eq!(psi.eval(&Partition::empty()), rat(1));
    }

    #[test]
    fn traces_of_small_sizes() {
        let f1 = QExpansion::from_integers(&[1, 2, 0, 1]);
        let f2 = QExpansion::from_integers(&[0, 1, 1, 0]);
        let fam = vec![f1.clone(), f2.clone()];
        let phi = TraceWeight::phi_weight();
        assert_eq!(
            partition_trace(&phi, &fam, 0, 3).unwrap(),
            QExpansion::one(3)
        );
        assert_eq!(
            partition_trace(&phi, &fam, 1, 3).unwrap(),
            f1.scale(&rat(2))
        );
        let expected = f1.mul(&f1).scale(&rat(2)).try_add(&f2).unwrap();
        assert_eq!(partition_trace(&phi, &fam, 2, 3).unwrap(), expected);
        assert!(matches!(
            partition_trace(&phi, &fam, 3, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cycle_index_small() {
        let xs: Vec<Rational> = (1..=6).map(|i| ratio(i, i + 2)).collect();
        let (l, r) = cycle_index_check(&xs).unwrap();
        assert_eq!(l, r);
    }
}
