//! Differential recursions for `g_k`, `h_k`, the partition-trace recursion
//! for `u_k` and the structural identities tying them to `G_k`, `eta`, `T_0`.
//!
//! Seeds (`g_1`, `g_2`, `h_1`, `h_2`) come from extraction; every comparison
//! is exact.

mod closure;

pub use crate::report::RecursionReport;
pub use closure::{closure_witness, GPolynomial, CLOSURE_MONOMIALS};

use crate::error::{Error, Result};
use crate::partitions::{partition_trace, partitions_of, Partition, TraceWeight};
use crate::series::{binomial, factorial, rat, ratio, QExpansion, Rational};
use crate::theta::{eisenstein_g, euler_product, extract_coeffs, t0_series, TaylorFamily};

fn combine_sum(terms: impl IntoIterator<Item = QExpansion>, order: usize) -> QExpansion {
    terms.into_iter().fold(QExpansion::zero(order), |acc, t| {
        acc.try_add(&t).expect("prefactor 0")
    })
}

/// `D G_2 = -2 G_2^2 + 5/6 G_4`, `D G_4 = -8 G_2 G_4 + 7/10 G_6`,
/// `D G_6 = -12 G_2 G_6 + 400/7 G_4^2`.
pub fn verify_ramanujan(order: usize) -> Result<RecursionReport> {
    let g2 = eisenstein_g(2, order);
    let g4 = eisenstein_g(4, order);
    let g6 = eisenstein_g(6, order);
    let r2 = g2
        .mul(&g2)
        .scale(&rat(-2))
        .try_add(&g4.scale(&ratio(5, 6)))?;
    let r4 = g2
        .mul(&g4)
        .scale(&rat(-8))
        .try_add(&g6.scale(&ratio(7, 10)))?;
    let r6 = g2
        .mul(&g6)
        .scale(&rat(-12))
        .try_add(&g4.mul(&g4).scale(&ratio(400, 7)))?;
    Ok(RecursionReport::combine(
        "Ramanujan system",
        &[
            RecursionReport::compare("D G2", order, &g2.dq(), &r2)?,
            RecursionReport::compare("D G4", order, &g4.dq(), &r4)?,
            RecursionReport::compare("D G6", order, &g6.dq(), &r6)?,
        ],
    ))
}

/// `c D(f_k) + sum_{d=0}^k C(k,d) f_{d+1} f_{k-d+1}`, the next member
/// `f_{k+2}` of a closure recursion with constant `c`.
fn closure_step(fam: &[QExpansion], k: usize, c: i64, order: usize) -> QExpansion {
    let conv = combine_sum(
        (0..=k).map(|d| {
            fam[d]
                .mul(&fam[k - d])
                .scale(&Rational::from_integer(binomial(k, d)))
        }),
        order,
    );
    fam[k - 1]
        .dq()
        .scale(&rat(c))
        .try_add(&conv)
        .expect("prefactor 0")
}

fn run_closure(seeds: [QExpansion; 2], c: i64, k_max: usize, order: usize) -> Vec<QExpansion> {
    let mut fam: Vec<QExpansion> = seeds.to_vec();
    for k in 1..=k_max.saturating_sub(2) {
        let next = closure_step(&fam, k, c, order);
        fam.push(next);
    }
    fam.truncate(k_max);
    fam
}

fn require_k_max(k_max: usize) -> Result<()> {
    if k_max < 3 {
        return Err(Error::Domain(format!(
            "recursions need k_max >= 3, got {k_max}"
        )));
    }
    Ok(())
}

fn compare_families(
    name: &str,
    order: usize,
    lhs: &[QExpansion],
    rhs: &[QExpansion],
) -> Result<Vec<RecursionReport>> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (a, b))| RecursionReport::compare(format!("{name}_{}", i + 1), order, a, b))
        .collect()
}

/// `g_{k+2} = 2 D(g_k) + sum_d C(k,d) g_{d+1} g_{k-d+1}` from the extracted
/// `g_1, g_2`, compared with extraction, plus `D(Log T_0) = -g_2/2 + g_1^2/2`.
pub fn g_recursion(k_max: usize, order: usize) -> Result<(Vec<QExpansion>, RecursionReport)> {
    require_k_max(k_max)?;
    let extracted = extract_coeffs(TaylorFamily::G, k_max, order)?;
    let fam = run_closure(
        [extracted[0].clone(), extracted[1].clone()],
        2,
        k_max,
        order,
    );
    let mut parts = compare_families("g", order, &fam, &extracted)?;
    parts.push(log_t0_derivative_check(
        &extracted[0],
        &extracted[1],
        order,
    )?);
    let report = RecursionReport::combine("g closure recursion", &parts);
    Ok((fam, report))
}

/// `D(Log T_0) = 1/8 + D log T_0-series` against `-g_2/2 + g_1^2/2`.
pub fn log_t0_derivative_check(
    g1: &QExpansion,
    g2: &QExpansion,
    order: usize,
) -> Result<RecursionReport> {
    let lhs = t0_series(order)
        .log()?
        .dq()
        .try_add(&QExpansion::constant(ratio(1, 8), order))?;
    let rhs = g1
        .mul(g1)
        .scale(&ratio(1, 2))
        .try_sub(&g2.scale(&ratio(1, 2)))?;
    RecursionReport::compare("D Log T0 = -g2/2 + g1^2/2", order, &lhs, &rhs)
}

/// `h_{k+2} = 6 D(h_k) + sum_d C(k,d) h_{d+1} h_{k-d+1}` from the extracted
/// `h_1, h_2`, compared with extraction, plus `h_2 = 6 G_2 + h_1^2`.
pub fn h_recursion(k_max: usize, order: usize) -> Result<(Vec<QExpansion>, RecursionReport)> {
    require_k_max(k_max)?;
    let extracted = extract_coeffs(TaylorFamily::H, k_max, order)?;
    let fam = run_closure(
        [extracted[0].clone(), extracted[1].clone()],
        6,
        k_max,
        order,
    );
    let mut parts = compare_families("h", order, &fam, &extracted)?;
    parts.push(h2_identity_check(&extracted[0], &extracted[1], order)?);
    let report = RecursionReport::combine("h closure recursion", &parts);
    Ok((fam, report))
}

/// `h_2 = 6 G_2 + h_1^2`.
pub fn h2_identity_check(
    h1: &QExpansion,
    h2: &QExpansion,
    order: usize,
) -> Result<RecursionReport> {
    let rhs = eisenstein_g(2, order).scale(&rat(6)).try_add(&h1.mul(h1))?;
    RecursionReport::compare("h2 = 6 G2 + h1^2", order, h2, &rhs)
}

/// `D Log eta = 1/24 + D log prod(1 - q^n) = -G_2`.
pub fn eta_log_derivative_check(order: usize) -> Result<RecursionReport> {
    let lhs = euler_product(order)
        .log()?
        .dq()
        .try_add(&QExpansion::constant(ratio(1, 24), order))?;
    let rhs = eisenstein_g(2, order).scale(&rat(-1));
    RecursionReport::compare("D Log eta = -G2", order, &lhs, &rhs)
}

/// `2 g_1 T_0 = -prod(1 - q^n)^3` and `D g_1 = g_1 (-3 G_2 + g_2/2 - g_1^2/2)`.
pub fn g1_identity_check(order: usize) -> Result<RecursionReport> {
    let g = extract_coeffs(TaylorFamily::G, 2, order)?;
    let (g1, g2) = (&g[0], &g[1]);
    let lhs = g1.mul(&t0_series(order)).scale(&rat(2));
    let rhs = euler_product(order).pow(3).scale(&rat(-1));
    let first = RecursionReport::compare("2 g1 T0 = -prod(1-q^n)^3", order, &lhs, &rhs)?;
    let factor = eisenstein_g(2, order)
        .scale(&rat(-3))
        .try_add(&g2.scale(&ratio(1, 2)))?
        .try_sub(&g1.mul(g1).scale(&ratio(1, 2)))?;
    let second = RecursionReport::compare(
        "D g1 = g1 (-3 G2 + g2/2 - g1^2/2)",
        order,
        &g1.dq(),
        &g1.mul(&factor),
    )?;
    Ok(RecursionReport::combine("g1 identities", &[first, second]))
}

/// Normalization of the `Tr_k(phi, gamma)` term in the `u_k` recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceVariant {
    /// `Tr_k(phi, gamma)` with coefficient 1.
    Literal,
    /// `Tr_k(phi, gamma)` with coefficient `k!/2`, matching the other two terms.
    HalfFactorial,
}

impl TraceVariant {
    pub const ALL: [TraceVariant; 2] = [TraceVariant::Literal, TraceVariant::HalfFactorial];

    pub fn name(self) -> &'static str {
        match self {
            TraceVariant::Literal => "literal",
            TraceVariant::HalfFactorial => "k!/2",
        }
    }

    fn gamma_scale(self, k: usize) -> Rational {
        match self {
            TraceVariant::Literal => rat(1),
            TraceVariant::HalfFactorial => half_factorial(k),
        }
    }
}

fn half_factorial(k: usize) -> Rational {
    Rational::from_integer(factorial(k)) / rat(2)
}

/// Inputs of the trace recursion, indexed from 1 (`entry j - 1`).
#[derive(Clone, Debug)]
pub struct TraceInputs {
    pub g: Vec<QExpansion>,
    pub h: Vec<QExpansion>,
    pub gamma: Vec<QExpansion>,
    pub order: usize,
}

impl TraceInputs {
    /// Extracted `g_j`, `h_j` and `gamma_j = G_j - 2^{j-1} g_j` for `j <= k_max`.
    pub fn extracted(k_max: usize, order: usize) -> Result<Self> {
        let g = extract_coeffs(TaylorFamily::G, k_max, order)?;
        let h = extract_coeffs(TaylorFamily::H, k_max, order)?;
        let gamma = g
            .iter()
            .enumerate()
            .map(|(i, gj)| {
                let j = i + 1;
                eisenstein_g(j, order).try_sub(&gj.scale(&rat(1 << (j - 1))))
            })
            .collect::<Result<_>>()?;
        Ok(Self { g, h, gamma, order })
    }
}

/// Right-hand side of the recursion for `u_k` given `u_1..u_{k-1}` (entries
/// beyond `k - 1` are ignored):
/// `-(k!/2) sum_{lambda |- k, lambda != (k)} phi(lambda) u_lambda
///  + c_k Tr_k(phi, gamma) + k! g_1 Tr_{k-1}(psi, h)`.
pub fn trace_rhs(
    variant: TraceVariant,
    k: usize,
    u_lower: &[QExpansion],
    inputs: &TraceInputs,
) -> Result<QExpansion> {
    let order = inputs.order;
    if k == 0 || inputs.g.len() < k || inputs.h.len() + 1 < k || u_lower.len() + 1 < k {
        return Err(Error::Domain(format!(
            "trace recursion at k = {k} lacks inputs"
        )));
    }
    let phi = TraceWeight::phi_weight();
    let psi = TraceWeight::psi_weight();
    let single = Partition::from_parts(&[k]);
    let mut lower = QExpansion::zero(order);
    for p in partitions_of(k).filter(|p| *p != single) {
        let mut term = QExpansion::constant(phi.eval(&p), order);
        for (i, &m) in p.multiplicities().iter().enumerate() {
            if m > 0 {
                term = term.mul(&u_lower[i].pow(m as u32));
            }
        }
        lower = lower.try_add(&term)?;
    }
    let lower = lower.scale(&-half_factorial(k));
    let gamma_trace =
        partition_trace(&phi, &inputs.gamma, k, order)?.scale(&variant.gamma_scale(k));
    let h_trace = partition_trace(&psi, &inputs.h, k - 1, order)?;
    let last = inputs.g[0]
        .mul(&h_trace)
        .scale(&Rational::from_integer(factorial(k)));
    lower.try_add(&gamma_trace)?.try_add(&last)
}

/// `u_1..u_{k_max}` built bottom-up from the trace recursion, compared with
/// extraction; odd members must vanish.
pub fn u_from_recursion(
    variant: TraceVariant,
    k_max: usize,
    order: usize,
) -> Result<(Vec<QExpansion>, RecursionReport)> {
    let inputs = TraceInputs::extracted(k_max, order)?;
    let extracted = extract_coeffs(TaylorFamily::U, k_max, order)?;
    let mut fam: Vec<QExpansion> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let next = trace_rhs(variant, k, &fam, &inputs)?;
        fam.push(next);
    }
    let mut parts = compare_families("u", order, &fam, &extracted)?;
    for (i, u) in fam.iter().enumerate().filter(|(i, _)| i % 2 == 0) {
        parts.push(RecursionReport::from_residual(
            format!("u_{} = 0", i + 1),
            order,
            u.max_abs_coeff(),
        ));
    }
    let report =
        RecursionReport::combine(format!("u trace recursion ({})", variant.name()), &parts);
    Ok((fam, report))
}

/// Substitutes the extracted `u_j` into the recursion and compares with the
/// extracted `u_k` for every `k <= k_max`.
pub fn trace_consistency(
    variant: TraceVariant,
    k_max: usize,
    order: usize,
) -> Result<RecursionReport> {
    let inputs = TraceInputs::extracted(k_max, order)?;
    let u = extract_coeffs(TaylorFamily::U, k_max, order)?;
    let parts = (1..=k_max)
        .map(|k| {
            let rhs = trace_rhs(variant, k, &u[..k - 1], &inputs)?;
            RecursionReport::compare(format!("u_{k} trace identity"), order, &u[k - 1], &rhs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecursionReport::combine(
        format!("u trace identity, extracted inputs ({})", variant.name()),
        &parts,
    ))
}

/// The recursion's right-hand side vanishes for each odd `k` in `ks`.
pub fn odd_k_relations(
    variant: TraceVariant,
    ks: &[usize],
    order: usize,
) -> Result<RecursionReport> {
    let k_max = ks.iter().copied().max().unwrap_or(1);
    let inputs = TraceInputs::extracted(k_max, order)?;
    let u = extract_coeffs(TaylorFamily::U, k_max, order)?;
    let parts = ks
        .iter()
        .map(|&k| {
            let rhs = trace_rhs(variant, k, &u[..k - 1], &inputs)?;
            Ok(RecursionReport::from_residual(
                format!("odd relation k = {k}"),
                order,
                rhs.max_abs_coeff(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecursionReport::combine(
        format!("odd-k relations ({})", variant.name()),
        &parts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramanujan_small() {
        assert!(verify_ramanujan(10).unwrap().pass);
    }

    #[test]
    fn closure_recursions_small() {
        let (g, r) = g_recursion(4, 8).unwrap();
        assert!(r.pass, "{r:?}");
        let g3: Vec<Rational> = [0, 1, 4, 1, -11].iter().map(|&c| rat(c)).collect();
        assert_eq!(&g[2].coeffs()[..5], g3.as_slice());
        let (h, r) = h_recursion(4, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(h[3].coeff(2), &rat(209));
        assert!(matches!(g_recursion(2, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn structural_small() {
        assert!(eta_log_derivative_check(10).unwrap().pass);
        assert!(g1_identity_check(10).unwrap().pass);
    }

    #[test]
    fn u_variants_small() {
        let (u, lit) = u_from_recursion(TraceVariant::Literal, 4, 6).unwrap();
        assert!(!lit.pass);
        assert!(!u[0].is_zero());
        let (u, half) = u_from_recursion(TraceVariant::HalfFactorial, 4, 6).unwrap();
        assert!(half.pass, "{half:?}");
        assert!(u[0].is_zero());
    }
}
