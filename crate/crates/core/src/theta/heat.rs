use num_traits::{One, Zero};
use serde::Serialize;

use super::families::{false_theta_zeta, partial_theta_zeta};
use super::FamilyId;
use crate::error::{Error, Result};
use crate::series::{rat, ratio, Rational, ZetaSeries};

/// One term `sign * zeta^alpha * q^beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub sign: i8,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Finite list of theta-type terms with non-decreasing `beta <= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTermList {
    pub terms: Vec<ThetaTerm>,
    pub cutoff: Rational,
}

impl ThetaTermList {
    /// Terms of `T(z; tau)`: `alpha = n + 1/2`, `beta = alpha^2/2`, sign `(-1)^n`.
    pub fn partial_theta(cutoff: &Rational) -> Self {
        let mut terms = Vec::new();
        for n in 0i64.. {
            let alpha = rat(n) + ratio(1, 2);
            let beta = &alpha * &alpha / rat(2);
            if &beta > cutoff {
                break;
            }
            terms.push(ThetaTerm {
                sign: if n % 2 == 0 { 1 } else { -1 },
                alpha,
                beta,
            });
        }
        Self::sorted(terms, cutoff)
    }

    /// Terms of the false theta function scaled by `2i q^{1/24}`:
    /// `alpha = 3n + 1/2` with sign `(-1)^n` and `alpha = 3n + 5/2` with sign
    /// `(-1)^{n+1}`, both with `beta = alpha^2/6`.
    pub fn false_theta(cutoff: &Rational) -> Self {
        let mut terms = Vec::new();
        for n in 0i64.. {
            let a1 = rat(3 * n) + ratio(1, 2);
            let a2 = rat(3 * n) + ratio(5, 2);
            let b1 = &a1 * &a1 / rat(6);
            if &b1 > cutoff {
                break;
            }
            let s = if n % 2 == 0 { 1 } else { -1 };
            let b2 = &a2 * &a2 / rat(6);
            terms.push(ThetaTerm {
                sign: s,
                alpha: a1,
                beta: b1,
            });
            if &b2 <= cutoff {
                terms.push(ThetaTerm {
                    sign: -s,
                    alpha: a2,
                    beta: b2,
                });
            }
        }
        Self::sorted(terms, cutoff)
    }

    fn sorted(mut terms: Vec<ThetaTerm>, cutoff: &Rational) -> Self {
        terms.sort_by(|a, b| a.beta.cmp(&b.beta));
        Self {
            terms,
            cutoff: cutoff.clone(),
        }
    }
}

/// Result of the termwise heat-operator check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeatReport {
    pub family: String,
    pub terms_checked: usize,
    pub annihilated: bool,
    pub matches_series: bool,
    pub pass: bool,
}

/// Checks `4 m beta - alpha^2 = 0` on every term with `beta <= cutoff`
/// (`m = 1/2` for the partial, `m = 3/2` for the false theta function), and
/// that the term list reproduces the stored `zeta`-series once the
/// `q^{1/8}` resp. `q^{1/24}` prefactor is removed.
pub fn heat_annihilation_check(which: FamilyId, cutoff: &Rational) -> Result<HeatReport> {
    let (list, m, shift, series): (_, _, _, fn(usize) -> ZetaSeries) = match which {
        FamilyId::PartialTheta => (
            ThetaTermList::partial_theta(cutoff),
            ratio(1, 2),
            ratio(1, 8),
            partial_theta_zeta,
        ),
        FamilyId::FalseTheta => (
            ThetaTermList::false_theta(cutoff),
            ratio(3, 2),
            ratio(1, 24),
            false_theta_zeta,
        ),
        other => {
            return Err(Error::Domain(format!(
                "heat check is defined for the partial and false theta families, not {other:?}"
            )))
        }
    };
    let four_m = rat(4) * &m;
    let annihilated = list
        .terms
        .iter()
        .all(|t| (&four_m * &t.beta - &t.alpha * &t.alpha).is_zero());

    let top = (cutoff - &shift).floor().to_integer();
    let order: usize = top.try_into().unwrap_or(0);
    let mut rebuilt = ZetaSeries::zero(order);
    let mut integral = true;
    for t in &list.terms {
        let d = &t.beta - &shift;
        if !d.is_integer() {
            integral = false;
            continue;
        }
        let sign = if t.sign > 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let deg: usize = d.to_integer().try_into().unwrap_or(usize::MAX);
        rebuilt.add_term(sign, t.alpha.clone(), deg);
    }
    let matches_series = integral && rebuilt == series(order);
    Ok(HeatReport {
        family: format!("{which:?}"),
        terms_checked: list.terms.len(),
        annihilated,
        matches_series,
        pass: annihilated && matches_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let p = ThetaTermList::partial_theta(&rat(1));
        assert_eq!(p.terms[0].beta, ratio(1, 8));
        let f = ThetaTermList::false_theta(&rat(2));
        assert_eq!(f.terms[0].beta, ratio(1, 24));
        assert_eq!(f.terms[1].alpha, ratio(5, 2));
        assert_eq!(f.terms[1].sign, -1);
    }

    #[test]
    fn both_families_pass() {
        for which in [FamilyId::PartialTheta, FamilyId::FalseTheta] {
            let r = heat_annihilation_check(which, &rat(100)).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.terms_checked > 10);
        }
        assert!(heat_annihilation_check(FamilyId::UnimodalRank, &rat(5)).is_err());
    }
}
