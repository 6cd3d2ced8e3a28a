//! The identity suites behind `qeis verify`: every exact check and the seeded
//! numeric suite, flattened into one line per identity.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{run_numeric_suite, NumericSuite, NumericSuiteConfig, TransformLaw};
use crate::partitions::{
    a_row, a_threshold, b_row, b_threshold, cycle_index_check, partitions_into_pentagonal,
    partitions_into_triangular, partitions_of, pentagonal_from_partition, pentagonal_to_partition,
    triangular_from_partition, triangular_to_partition,
};
use crate::recursions::{
    closure_witness, eta_log_derivative_check, g1_identity_check, g_recursion, h_recursion,
    odd_k_relations, u_from_recursion, verify_ramanujan, RecursionReport, TraceVariant,
};
use crate::series::{format_rational, ratio, QExpansion, Rational};
use crate::theta::{
    closed_form_family, extract_coeffs, heat_annihilation_check, master_identity_check,
    product_identity_check, triple_product_check, unimodal_at_one_check, unimodal_bruteforce,
    unimodal_from_series, FamilyId, ProductIdentity, TaylorFamily,
};

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Numeric,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Suite::Exact),
            "numeric" => Ok(Suite::Numeric),
            "all" => Ok(Suite::All),
            _ => Err(Error::Domain(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One identity's outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub suite: String,
    pub identity: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn exact(report: &RecursionReport) -> Self {
        Self {
            suite: "exact".into(),
            identity: report.identity.clone(),
            pass: report.pass,
            detail: format!(
                "order {}, residual {}",
                report.order,
                format_rational(&report.residual)
            ),
        }
    }

    fn flag(
        suite: &str,
        identity: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            suite: suite.into(),
            identity: identity.into(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn to_line(&self) -> String {
        format!(
            "{} {} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub order: usize,
    pub k_max: usize,
    pub tol: f64,
    pub seed: u64,
    /// Perturbs one closed-form coefficient so that route agreement fails.
    pub tamper: bool,
}

impl VerifyConfig {
    pub fn new(order: usize, k_max: usize, tol: f64, seed: u64) -> Self {
        Self {
            order,
            k_max,
            tol,
            seed,
            tamper: false,
        }
    }
}

type Recursion = fn(usize, usize) -> Result<(Vec<QExpansion>, RecursionReport)>;

/// Extraction, closed form and closure recursion for `g` or `h` agree for
/// `k <= k_max` (the recursion needs at least three members).
pub fn route_agreement(
    which: TaylorFamily,
    k_max: usize,
    order: usize,
    tamper: bool,
) -> Result<RecursionReport> {
    let (name, recursion): (&str, Recursion) = match which {
        TaylorFamily::G => ("g", g_recursion),
        TaylorFamily::H => ("h", h_recursion),
        TaylorFamily::U => return Err(Error::Domain("u has no closed form".into())),
    };
    let k = k_max.max(3);
    let extracted = extract_coeffs(which, k, order)?;
    let mut closed = closed_form_family(which, k, order)?;
    if tamper {
        let mut coeffs = closed[0].coeffs().to_vec();
        coeffs[1] += Rational::one();
        closed[0] = QExpansion::from_coeffs(Rational::zero(), coeffs);
    }
    let (recursed, recursion_report) = recursion(k, order)?;
    let mut parts = Vec::new();
    for i in 0..k {
        parts.push(RecursionReport::compare(
            format!("{name}_{} extraction = closed form", i + 1),
            order,
            &extracted[i],
            &closed[i],
        )?);
        parts.push(RecursionReport::compare(
            format!("{name}_{} extraction = recursion", i + 1),
            order,
            &extracted[i],
            &recursed[i],
        )?);
    }
    parts.push(recursion_report);
    Ok(RecursionReport::combine(
        format!("{name}: extraction = closed form = recursion"),
        &parts,
    ))
}

/// `a_{n,m} = 0` below the triangular threshold and `b_{n,m} = 0` below the
/// pentagonal threshold, for `1 <= n <= n_max`.
pub fn threshold_check(kind_a: bool, n_max: usize) -> Result<(bool, usize)> {
    let mut checked = 0;
    for n in 1..=n_max {
        let (row, t) = if kind_a {
            (a_row(n)?, a_threshold(n))
        } else {
            (b_row(n)?, b_threshold(n))
        };
        for value in row.iter().take(t.saturating_sub(1)) {
            checked += 1;
            if !value.is_zero() {
                return Ok((false, checked));
            }
        }
    }
    Ok((true, checked))
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Both part-count bijections are mutually inverse on every `n <= n_max`;
/// returns the number of objects checked.
pub fn bijection_check(n_max: usize) -> (bool, usize) {
    let mut ok = true;
    let mut checked = 0;
    for n in 0..=n_max {
        for c in partitions_into_triangular(n) {
            let p = triangular_to_partition(&c);
            ok &= p.size() == n && triangular_from_partition(&p).map(trim) == Some(trim(c));
            checked += 1;
        }
        for c in partitions_into_pentagonal(n) {
            let p = pentagonal_to_partition(&c);
            let back = pentagonal_from_partition(&p);
            ok &= p.size() == n
                && back
                    .as_ref()
                    .map(|b| (trim(b.plus.clone()), trim(b.minus.clone())))
                    == Some((trim(c.plus.clone()), trim(c.minus.clone())));
            checked += 1;
        }
        for p in partitions_of(n) {
            if let Some(c) = triangular_from_partition(&p) {
                ok &= triangular_to_partition(&c) == p;
                checked += 1;
            }
            if let Some(c) = pentagonal_from_partition(&p) {
                ok &= pentagonal_to_partition(&c) == p;
                checked += 1;
            }
        }
    }
    (ok, checked)
}

/// Random rationals `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn random_rationals(count: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
        .collect()
}

/// Trace recursion for `u_k`: each normalization is run, and the check passes
/// iff exactly one of them reproduces the extracted `u_k`.
pub fn trace_variant_lines(k_max: usize, order: usize) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let mut valid = Vec::new();
    for variant in TraceVariant::ALL {
        let (_, report) = u_from_recursion(variant, k_max, order)?;
        let odd: Vec<usize> = (1..=k_max).filter(|k| k % 2 == 1).collect();
        let odd_report = odd_k_relations(variant, &odd, order)?;
        let both = RecursionReport::combine(report.identity.clone(), &[report, odd_report]);
        if both.pass {
            valid.push(variant.name());
        }
        let mut line = CheckLine::exact(&both);
        line.identity = format!("candidate: {}", line.identity);
        line.pass = true;
        line.detail = format!(
            "{}, {}",
            line.detail,
            if both.pass { "validates" } else { "rejected" }
        );
        lines.push(line);
    }
    lines.push(CheckLine::flag(
        "exact",
        "u trace recursion: exactly one normalization validates",
        valid.len() == 1,
        format!("validating: [{}]", valid.join(", ")),
    ));
    Ok(lines)
}

/// Every exact identity at the configured order.
pub fn exact_checks(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let (order, k_max) = (cfg.order, cfg.k_max);
    let mut out = Vec::new();
    let exact = |r: &RecursionReport| CheckLine::exact(r);

    out.push(exact(&route_agreement(
        TaylorFamily::G,
        k_max,
        order,
        cfg.tamper,
    )?));
    out.push(exact(&route_agreement(
        TaylorFamily::H,
        k_max,
        order,
        false,
    )?));
    out.push(exact(
        &product_identity_check(ProductIdentity::T0, order)?.report,
    ));
    out.push(exact(
        &product_identity_check(ProductIdentity::Eta, order)?.report,
    ));

    for (kind_a, name) in [(true, "a_nm"), (false, "b_nm")] {
        let (ok, checked) = threshold_check(kind_a, order)?;
        out.push(CheckLine::flag(
            "exact",
            format!("{name} vanishes below its threshold"),
            ok,
            format!("n <= {order}, {checked} coefficients"),
        ));
    }
    out.push(CheckLine::flag(
        "exact",
        "multinomial divisibility",
        true,
        format!("every multinomial in a_nm, b_nm for n <= {order}"),
    ));

    for which in [FamilyId::PartialTheta, FamilyId::FalseTheta] {
        let r = heat_annihilation_check(which, &Rational::from_integer(100.into()))?;
        out.push(CheckLine::flag(
            "exact",
            format!("heat annihilation {}", r.family),
            r.pass,
            format!("{} terms with beta <= 100", r.terms_checked),
        ));
    }

    let xs = random_rationals(8, cfg.seed);
    let (lhs, rhs) = cycle_index_check(&xs)?;
    out.push(exact(&RecursionReport::compare(
        "cycle index",
        8,
        &lhs,
        &rhs,
    )?));

    let n_bij = order.min(25);
    let (ok, checked) = bijection_check(n_bij);
    out.push(CheckLine::flag(
        "exact",
        "triangular and pentagonal bijections are mutually inverse",
        ok,
        format!("n <= {n_bij}, {checked} objects"),
    ));

    out.push(exact(&verify_ramanujan(order)?));
    out.push(exact(&eta_log_derivative_check(order)?));
    out.push(exact(&g1_identity_check(order)?));
    out.push(exact(&unimodal_at_one_check(order)?));
    out.push(exact(&triple_product_check(8, order)?));
    out.push(exact(&master_identity_check(6, order)?));
    out.push(exact(&closure_witness(order)?));

    let n_uni = order.min(12);
    let series = unimodal_from_series(n_uni)?;
    let mut agree = true;
    for (n, h) in series.iter().enumerate() {
        agree &= *h == unimodal_bruteforce(n)?;
    }
    out.push(CheckLine::flag(
        "exact",
        "unimodal ranks: series = enumeration",
        agree,
        format!("n <= {n_uni}"),
    ));

    out.extend(trace_variant_lines(k_max.max(2), order)?);
    Ok(out)
}

fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

/// Flattens a numeric suite into lines.
pub fn numeric_lines(suite: &NumericSuite, cfg: &NumericSuiteConfig) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for law in TransformLaw::ALL {
        let count = suite
            .transforms
            .iter()
            .filter(|r| r.name == law.name())
            .count();
        out.push(CheckLine::flag(
            "numeric",
            law.name(),
            suite.transforms_pass(law),
            format!(
                "{count} samples, worst residual {}",
                sci(suite.worst_residual(law))
            ),
        ));
    }
    out.push(CheckLine::flag(
        "numeric",
        "chi^2 = 1",
        suite.chi.pass,
        format!(
            "{} samples: {} plus, {} minus, {} off +-1",
            suite.chi.samples, suite.chi.plus, suite.chi.minus, suite.chi.branch_errors
        ),
    ));
    let worst_nu = suite
        .nu_eta
        .iter()
        .map(|r| r.max_deviation)
        .fold(0.0, f64::max);
    out.push(CheckLine::flag(
        "numeric",
        "nu_eta is independent of tau",
        suite.nu_eta.iter().all(|r| r.pass),
        format!(
            "{} matrices, worst deviation {}",
            suite.nu_eta.len(),
            sci(worst_nu)
        ),
    ));
    for r in &suite.limits {
        let gaps: Vec<String> = r.gaps.iter().map(|g| sci(*g)).collect();
        out.push(CheckLine::flag(
            "numeric",
            format!("{} limit", r.name),
            r.pass,
            format!(
                "t = {:?}: gaps [{}], monotone {}, tol {}",
                r.ladder,
                gaps.join(", "),
                r.monotone,
                sci(cfg.limit_tol)
            ),
        ));
    }
    let mut names: Vec<&str> = suite.bridge.iter().map(|r| r.name.as_str()).collect();
    names.dedup();
    for name in names {
        let rows: Vec<_> = suite.bridge.iter().filter(|r| r.name == name).collect();
        let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
        out.push(CheckLine::flag(
            "numeric",
            format!("exact series = numeric {name}"),
            rows.iter().all(|r| r.pass),
            format!("{} samples, worst difference {}", rows.len(), sci(worst)),
        ));
    }
    out
}

pub fn numeric_checks(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let ncfg = NumericSuiteConfig::new(cfg.seed, cfg.tol);
    let suite = run_numeric_suite(&ncfg)?;
    Ok(numeric_lines(&suite, &ncfg))
}

/// Runs the selected suites.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Exact | Suite::All) {
        out.extend(exact_checks(cfg)?);
    }
    if matches!(suite, Suite::Numeric | Suite::All) {
        out.extend(numeric_checks(cfg)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_suite_passes() {
        let lines = exact_checks(&VerifyConfig::new(5, 4, 1e-8, 7)).unwrap();
        for l in &lines {
            assert!(l.pass, "{}", l.to_line());
        }
    }

    #[test]
    fn tamper_is_caught() {
        let r = route_agreement(TaylorFamily::G, 3, 4, true).unwrap();
        assert!(!r.pass);
        assert!(route_agreement(TaylorFamily::G, 3, 4, false).unwrap().pass);
    }

    #[test]
    fn bijections_small() {
        let (ok, checked) = bijection_check(10);
        assert!(ok && checked > 50);
    }

    #[test]
    fn suite_names() {
        for s in [Suite::Exact, Suite::Numeric, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
