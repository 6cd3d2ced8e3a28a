use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::RecursionReport;
use crate::error::Result;
use crate::series::{binomial, ratio, QExpansion, Rational};
use crate::theta::{extract_coeffs, TaylorFamily};

/// Polynomial in `g_1, g_2, ...` with rational coefficients, keyed by
/// exponent vectors (entry `j - 1` is the exponent of `g_j`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GPolynomial {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trimmed(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl GPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, exponents: &[u32]) -> Self {
        let mut p = Self::zero();
        p.add_term(trimmed(exponents.to_vec()), c);
        p
    }

    /// The variable `g_j`.
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j];
        e[j - 1] = 1;
        Self::monomial(Rational::one(), &e)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let len = ea.len().max(eb.len());
                let e: Vec<u32> = (0..len)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Largest index `j` with `g_j` present.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// `D(g_k) = g_{k+2}/2 - (1/2) sum_{d=0}^k C(k,d) g_{d+1} g_{k-d+1}`.
    pub fn d_var(k: usize) -> Self {
        let mut out = Self::var(k + 2).scale(&ratio(1, 2));
        for d in 0..=k {
            let c = -Rational::from_integer(binomial(k, d)) / Rational::from_integer(2.into());
            out = out.add(&Self::var(d + 1).mul(&Self::var(k - d + 1)).scale(&c));
        }
        out
    }

    /// `D` extended to polynomials by the Leibniz rule.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut rest = e.clone();
                rest[i] -= 1;
                let factor = Self::monomial(c * Rational::from_integer(k.into()), &rest);
                out = out.add(&factor.mul(&Self::d_var(i + 1)));
            }
        }
        out
    }

    /// Substitutes `g_j -> values[j - 1]`.
    pub fn evaluate(&self, values: &[QExpansion], order: usize) -> QExpansion {
        let mut total = QExpansion::zero(order);
        for (e, c) in &self.terms {
            let mut term = QExpansion::constant(c.clone(), order);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&values[i].pow(k));
                }
            }
            total = total.try_add(&term).expect("prefactor 0");
        }
        total
    }
}

/// Exponent vectors of the monomials used by [`closure_witness`].
pub const CLOSURE_MONOMIALS: [&[u32]; 10] = [
    &[1],
    &[0, 1],
    &[0, 0, 1],
    &[0, 0, 0, 0, 0, 1],
    &[2],
    &[1, 1],
    &[0, 1, 1],
    &[3],
    &[1, 0, 0, 1],
    &[2, 0, 0, 0, 1],
];

/// `D(m(g))` evaluated as a `q`-series equals the polynomial `D m` evaluated
/// at the extracted `g_j`, for every monomial in [`CLOSURE_MONOMIALS`].
pub fn closure_witness(order: usize) -> Result<RecursionReport> {
    let polys: Vec<GPolynomial> = CLOSURE_MONOMIALS
        .iter()
        .map(|e| GPolynomial::monomial(Rational::one(), e))
        .collect();
    let derived: Vec<GPolynomial> = polys.iter().map(GPolynomial::derivative).collect();
    let needed = derived
        .iter()
        .map(GPolynomial::max_index)
        .max()
        .unwrap_or(1);
    let g = extract_coeffs(TaylorFamily::G, needed, order)?;
    let parts = polys
        .iter()
        .zip(&derived)
        .enumerate()
        .map(|(i, (p, dp))| {
            let lhs = p.evaluate(&g, order).dq();
            let rhs = dp.evaluate(&g, order);
            RecursionReport::compare(format!("closure monomial {}", i + 1), order, &lhs, &rhs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecursionReport::combine("D-closure witness", &parts))
}
