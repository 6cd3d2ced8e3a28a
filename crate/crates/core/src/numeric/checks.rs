use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::functions::{
    eta, false_theta_h, frak_h_hat, partial_theta_t, psi, psihat, q_power, t_hat, theta,
    zeta_power, ComplexSample,
};
use super::matrix::{sample_matrices, MoebiusMatrix};
use super::multiplier::{chi, nu_eta, nu_gamma0_3, BASE_POINT};
use crate::error::{Error, Result};
use crate::series::{QExpansion, Rational, ZetaSeries};
use crate::theta::{eta_product, false_theta_zeta, jacobi_theta_sum_zeta, partial_theta_zeta};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Truncation order of exact series evaluated at `q = e^{2 pi i tau}`.
pub const BRIDGE_ORDER: usize = 40;

/// Gaps closer than this are treated as equal when testing monotone decay.
pub const MONOTONE_SLACK: f64 = 1e-14;

const SUITE_TERMS: usize = 20_000;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

/// `q^rho sum_n c_n q^n` at `q = e^{2 pi i tau}`.
pub fn eval_qexpansion(f: &QExpansion, tau: Complex64) -> Complex64 {
    let q = q_power(tau, 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in f.coeffs().iter().rev() {
        acc = acc * q + to_f64(c);
    }
    acc * q_power(tau, to_f64(f.prefactor()))
}

/// `sum_n sum_alpha c zeta^alpha q^n` at `zeta = e^{2 pi i z}`, `q = e^{2 pi i tau}`.
pub fn eval_zeta_series(f: &ZetaSeries, z: Complex64, tau: Complex64) -> Complex64 {
    (0..=f.q_order())
        .map(|n| {
            let row: Complex64 = f
                .row(n)
                .map(|(a, c)| zeta_power(z, to_f64(a)) * to_f64(c))
                .sum();
            row * q_power(tau, n as f64)
        })
        .sum()
}

/// `T(z; tau) = 2i q^{1/8} sum_{n>=0} (-1)^n zeta^{n+1/2} q^{n(n+1)/2}` from the exact series.
pub fn partial_theta_from_series(z: Complex64, tau: Complex64) -> Complex64 {
    2.0 * I * q_power(tau, 0.125) * eval_zeta_series(&partial_theta_zeta(BRIDGE_ORDER), z, tau)
}

/// `h(zeta; q) = (zeta^{-1/2} - zeta^{1/2}) H(zeta; q)` from the exact series.
pub fn false_theta_from_series(z: Complex64, tau: Complex64) -> Complex64 {
    (zeta_power(z, -0.5) - zeta_power(z, 0.5))
        * eval_zeta_series(&false_theta_zeta(BRIDGE_ORDER), z, tau)
}

/// `theta(z; tau) = -i q^{1/8} (normalized sum)` from the exact series.
pub fn jacobi_theta_from_series(z: Complex64, tau: Complex64) -> Complex64 {
    -I * q_power(tau, 0.125) * eval_zeta_series(&jacobi_theta_sum_zeta(BRIDGE_ORDER), z, tau)
}

/// `(z, tau, w)` as `[re, im]` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub z: [f64; 2],
    pub tau: [f64; 2],
    pub w: Option<[f64; 2]>,
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

impl From<&ComplexSample> for SampleRecord {
    fn from(s: &ComplexSample) -> Self {
        Self {
            z: pair(s.z),
            tau: pair(s.tau),
            w: s.w.map(pair),
        }
    }
}

/// `|lhs - rhs| / (|lhs| + |rhs| + 1)`.
pub fn relative_residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0)
}

/// The transformation laws under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformLaw {
    ThetaModular,
    ThetaElliptic,
    PsihatModular,
    PsihatElliptic,
    ThatModular,
    FrakHhatModular,
}

impl TransformLaw {
    pub const ALL: [Self; 6] = [
        Self::ThetaModular,
        Self::ThetaElliptic,
        Self::PsihatModular,
        Self::PsihatElliptic,
        Self::ThatModular,
        Self::FrakHhatModular,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::ThetaModular => "theta_modular",
            Self::ThetaElliptic => "theta_elliptic",
            Self::PsihatModular => "psihat_modular",
            Self::PsihatElliptic => "psihat_elliptic",
            Self::ThatModular => "That_modular",
            Self::FrakHhatModular => "frakHhat_modular",
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, Self::ThetaElliptic | Self::PsihatElliptic)
    }

    fn needs_w(&self) -> bool {
        !matches!(self, Self::ThetaModular | Self::ThetaElliptic)
    }
}

impl fmt::Display for TransformLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown transformation law {s:?}")))
    }
}

/// A modular substitution or a lattice shift `z -> z + m tau + n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Matrix(MoebiusMatrix),
    Shift { m: i64, n: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<MoebiusMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shift: Option<[i64; 2]>,
    pub sample: SampleRecord,
    pub residual: f64,
    pub pass: bool,
}

/// Compares both sides of `law` at the sample; the residual is relative.
pub fn check_transform(
    law: TransformLaw,
    transform: Transform,
    s: &ComplexSample,
) -> Result<TransformReport> {
    s.validate()?;
    let (z, tau, n) = (s.z, s.tau, s.terms);
    let w = if law.needs_w() {
        s.w.ok_or_else(|| Error::Domain(format!("{law} needs w")))?
    } else {
        tau
    };
    let (lhs, rhs, gamma, shift) = match (law.is_elliptic(), transform) {
        (true, Transform::Shift { m, n: k }) => {
            let moved = z + tau * m as f64 + k as f64;
            let f = |zz| match law {
                TransformLaw::ThetaElliptic => theta(zz, tau, n),
                _ => psihat(zz, tau, w, n),
            };
            let sign = if (m + k).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            let factor = sign * q_power(tau, -((m * m) as f64) / 2.0) * zeta_power(z, -(m as f64));
            (f(moved)?, factor * f(z)?, None, Some([m, k]))
        }
        (false, Transform::Matrix(g)) => {
            let j = g.automorphy(tau);
            let (z1, tau1, w1) = (z / j, g.act(tau), g.act(w));
            let weight = j.sqrt();
            let c = g.c() as f64;
            let (lhs, rhs) = match law {
                TransformLaw::ThetaModular => {
                    let factor =
                        nu_eta(&g, BASE_POINT)?.powu(3) * weight * (PI * I * c * z * z / j).exp();
                    (theta(z1, tau1, n)?, factor * theta(z, tau, n)?)
                }
                TransformLaw::PsihatModular => {
                    let x = chi(&g, tau, w)? as f64;
                    let factor =
                        nu_eta(&g, BASE_POINT)?.powu(3) * weight * (PI * I * c * z * z / j).exp();
                    (psihat(z1, tau1, w1, n)?, x * factor * psihat(z, tau, w, n)?)
                }
                TransformLaw::ThatModular => {
                    let x = chi(&g, tau, w)? as f64;
                    let factor =
                        nu_eta(&g, BASE_POINT)?.powu(3) * weight * (PI * I * c * z * z / j).exp();
                    (
                        t_hat(z1, tau1, w1, n)?,
                        x * factor * t_hat(x * z, tau, w, n)?,
                    )
                }
                TransformLaw::FrakHhatModular => {
                    let x = chi(&g, tau, w)? as f64;
                    let factor = nu_gamma0_3(&g)? * weight * (3.0 * PI * I * c * z * z / j).exp();
                    (
                        frak_h_hat(z1, tau1, w1, n)?,
                        factor * frak_h_hat(x * z, tau, w, n)?,
                    )
                }
                _ => unreachable!("elliptic laws handled above"),
            };
            (lhs, rhs, Some(g), None)
        }
        _ => {
            return Err(Error::Domain(format!(
                "{law} takes a {}",
                if law.is_elliptic() {
                    "lattice shift"
                } else {
                    "matrix"
                }
            )))
        }
    };
    let residual = relative_residual(lhs, rhs);
    Ok(TransformReport {
        name: law.name().to_string(),
        gamma,
        shift,
        sample: s.into(),
        residual,
        pass: residual < s.tol,
    })
}

/// Completed functions with a `t -> infinity` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitFamily {
    PsiHat,
    That,
    Hhat,
}

impl LimitFamily {
    pub const ALL: [Self; 3] = [Self::PsiHat, Self::That, Self::Hhat];

    pub fn name(&self) -> &'static str {
        match self {
            Self::PsiHat => "psihat",
            Self::That => "That",
            Self::Hhat => "Hhat",
        }
    }
}

impl FromStr for LimitFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown limit family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub name: String,
    pub sample: SampleRecord,
    pub eps: f64,
    pub ladder: Vec<f64>,
    pub gaps: Vec<f64>,
    pub monotone: bool,
    pub pass: bool,
}

impl LimitReport {
    pub fn final_gap(&self) -> f64 {
        self.gaps.last().copied().unwrap_or(f64::NAN)
    }
}

/// Gaps `|completed(z; tau, tau + i t + eps) - limit(z; tau)|` along the
/// ladder. Targets: `psi` for `psihat`, the exact partial theta series for
/// `That` and the exact false theta series for `Hhat`. Passes iff the gaps
/// from the second entry on are non-increasing and the last is below `s.tol`.
pub fn check_limit(
    family: LimitFamily,
    s: &ComplexSample,
    eps: f64,
    ladder: &[f64],
) -> Result<LimitReport> {
    s.validate()?;
    let ratio = s.z.im / s.tau.im;
    if !(-0.5 < ratio && ratio < 0.5) {
        return Err(Error::Domain(format!(
            "z_2/tau_2 = {ratio} is outside (-1/2, 1/2)"
        )));
    }
    if !(eps > 0.0) || ladder.is_empty() || ladder.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::Domain(
            "need eps > 0 and a non-empty ladder of positive t".into(),
        ));
    }
    let (z, tau, n) = (s.z, s.tau, s.terms);
    let target = match family {
        LimitFamily::PsiHat => psi(z, tau, n)?,
        LimitFamily::That => partial_theta_from_series(z, tau),
        LimitFamily::Hhat => false_theta_from_series(z, tau),
    };
    let gaps = ladder
        .iter()
        .map(|&t| {
            let w = tau + I * t + eps;
            let v = match family {
                LimitFamily::PsiHat => psihat(z, tau, w, n)?,
                LimitFamily::That => t_hat(z, tau, w, n)?,
                LimitFamily::Hhat => super::functions::h_hat(z, tau, w, n)?,
            };
            Ok((v - target).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let monotone = gaps
        .iter()
        .skip(1)
        .zip(gaps.iter().skip(2))
        .all(|(a, b)| *b <= *a + MONOTONE_SLACK);
    let pass = monotone && gaps.last().is_some_and(|g| *g < s.tol);
    Ok(LimitReport {
        name: family.name().to_string(),
        sample: s.into(),
        eps,
        ladder: ladder.to_vec(),
        gaps,
        monotone,
        pass,
    })
}

/// Exact objects compared with their floating-point counterparts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeObject {
    Eta,
    Theta,
    PartialTheta,
    FalseTheta,
}

impl BridgeObject {
    pub const ALL: [Self; 4] = [Self::Eta, Self::Theta, Self::PartialTheta, Self::FalseTheta];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Eta => "eta",
            Self::Theta => "theta",
            Self::PartialTheta => "T",
            Self::FalseTheta => "h",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub name: String,
    pub sample: SampleRecord,
    pub exact: [f64; 2],
    pub numeric: [f64; 2],
    pub residual: f64,
    pub pass: bool,
}

/// Exact series at `q = e^{2 pi i tau}` against the numeric evaluator; the
/// residual is the absolute difference.
pub fn check_bridge(object: BridgeObject, s: &ComplexSample) -> Result<BridgeReport> {
    s.validate()?;
    let (z, tau, n) = (s.z, s.tau, s.terms);
    let (exact, numeric) = match object {
        BridgeObject::Eta => (
            eval_qexpansion(&eta_product(BRIDGE_ORDER), tau),
            eta(tau, n)?,
        ),
        BridgeObject::Theta => (jacobi_theta_from_series(z, tau), theta(z, tau, n)?),
        BridgeObject::PartialTheta => (
            partial_theta_from_series(z, tau),
            partial_theta_t(z, tau, n)?,
        ),
        BridgeObject::FalseTheta => (false_theta_from_series(z, tau), false_theta_h(z, tau, n)?),
    };
    let residual = (exact - numeric).norm();
    Ok(BridgeReport {
        name: object.name().to_string(),
        sample: s.into(),
        exact: pair(exact),
        numeric: pair(numeric),
        residual,
        pass: residual < s.tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiReport {
    pub samples: usize,
    pub plus: usize,
    pub minus: usize,
    pub branch_errors: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuEtaReport {
    pub gamma: MoebiusMatrix,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Settings of the seeded numeric suite.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSuiteConfig {
    pub seed: u64,
    pub tol: f64,
    pub matrices: usize,
    pub points: usize,
    pub chi_samples: usize,
    pub nu_tol: f64,
    pub limit_tol: f64,
    pub ladder: Vec<f64>,
}

impl NumericSuiteConfig {
    pub fn new(seed: u64, tol: f64) -> Self {
        Self {
            seed,
            tol,
            matrices: 20,
            points: 5,
            chi_samples: 200,
            nu_tol: 1e-9,
            limit_tol: tol,
            ladder: vec![1.0, 3.0, 10.0, 30.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSuite {
    pub transforms: Vec<TransformReport>,
    pub chi: ChiReport,
    pub nu_eta: Vec<NuEtaReport>,
    pub limits: Vec<LimitReport>,
    pub bridge: Vec<BridgeReport>,
}

impl NumericSuite {
    pub fn transforms_pass(&self, law: TransformLaw) -> bool {
        self.transforms
            .iter()
            .filter(|r| r.name == law.name())
            .all(|r| r.pass)
    }

    pub fn worst_residual(&self, law: TransformLaw) -> f64 {
        self.transforms
            .iter()
            .filter(|r| r.name == law.name())
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.transforms.iter().all(|r| r.pass)
            && self.chi.pass
            && self.nu_eta.iter().all(|r| r.pass)
            && self.limits.iter().all(|r| r.pass)
            && self.bridge.iter().all(|r| r.pass)
    }
}

fn random_upper(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5))
}

fn random_z(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
        if (1.0 - zeta_power(z, 1.0)).norm() > 0.1 {
            return z;
        }
    }
}

/// Samples `(z, tau, w)` with `tau_2, w_2 in [0.8, 1.5)`.
pub fn sample_points(count: usize, seed: u64, tol: f64) -> Vec<ComplexSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z = random_z(&mut rng);
            let tau = random_upper(&mut rng);
            let w = random_upper(&mut rng);
            ComplexSample::new(z, tau)
                .with_w(w)
                .with_tol(tol)
                .with_terms(SUITE_TERMS)
        })
        .collect()
}

/// The documented limit samples: `psihat` at `z = 0.1`, `tau = i`;
/// `That` at `z = 0`, `tau = i`; `Hhat` at `z = 0.13`, `tau = 1.2 i`; all with `eps = 1/2`.
pub fn limit_samples(tol: f64) -> [(LimitFamily, ComplexSample, f64); 3] {
    let s = |z: f64, tau2: f64| {
        ComplexSample::new(Complex64::new(z, 0.0), Complex64::new(0.0, tau2)).with_tol(tol)
    };
    [
        (LimitFamily::PsiHat, s(0.1, 1.0), 0.5),
        (LimitFamily::That, s(0.0, 1.0), 0.5),
        (LimitFamily::Hhat, s(0.13, 1.2), 0.5),
    ]
}

/// Runs every transformation law over the seeded matrices and points, the
/// `chi` and `nu_eta` invariants, the documented limits and the bridge.
pub fn run_numeric_suite(cfg: &NumericSuiteConfig) -> Result<NumericSuite> {
    let full = sample_matrices(cfg.matrices, false, cfg.seed)?;
    let level3 = sample_matrices(cfg.matrices, true, cfg.seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let shifts: Vec<Transform> = (0..cfg.matrices)
        .map(|_| Transform::Shift {
            m: rng.gen_range(-2..=2),
            n: rng.gen_range(-2..=2),
        })
        .collect();

    let mut transforms = Vec::new();
    for (i, law) in TransformLaw::ALL.into_iter().enumerate() {
        let family: Vec<Transform> = match law {
            TransformLaw::ThetaElliptic | TransformLaw::PsihatElliptic => shifts.clone(),
            TransformLaw::FrakHhatModular => {
                level3.iter().copied().map(Transform::Matrix).collect()
            }
            _ => full.iter().copied().map(Transform::Matrix).collect(),
        };
        for (j, t) in family.into_iter().enumerate() {
            let seed = cfg
                .seed
                .wrapping_mul(1_000_003)
                .wrapping_add((i * 1000 + j) as u64);
            for s in sample_points(cfg.points, seed, cfg.tol) {
                transforms.push(check_transform(law, t, &s)?);
            }
        }
    }

    let chi_report = {
        let gammas = sample_matrices(cfg.matrices, false, cfg.seed.wrapping_add(1))?;
        let points = sample_points(cfg.chi_samples, cfg.seed.wrapping_add(2), cfg.tol);
        let (mut plus, mut minus, mut branch_errors) = (0, 0, 0);
        for (k, s) in points.iter().enumerate() {
            match chi(&gammas[k % gammas.len()], s.tau, s.w.expect("sampled w")) {
                Ok(1) => plus += 1,
                Ok(_) => minus += 1,
                Err(Error::Branch { .. }) => branch_errors += 1,
                Err(e) => return Err(e),
            }
        }
        ChiReport {
            samples: points.len(),
            plus,
            minus,
            branch_errors,
            pass: branch_errors == 0,
        }
    };

    let bases = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.5, 2.0),
        Complex64::new(-0.3, 0.9),
        Complex64::new(0.2, 1.4),
        Complex64::new(0.45, 0.8),
    ];
    let nu_reports = full
        .iter()
        .map(|g| {
            let values = bases
                .iter()
                .map(|&b| nu_eta(g, b))
                .collect::<Result<Vec<_>>>()?;
            let mut max_deviation: f64 = 0.0;
            for (i, a) in values.iter().enumerate() {
                for b in &values[i + 1..] {
                    max_deviation = max_deviation.max((a - b).norm());
                }
            }
            Ok(NuEtaReport {
                gamma: *g,
                max_deviation,
                pass: max_deviation < cfg.nu_tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let limits = limit_samples(cfg.limit_tol)
        .iter()
        .map(|(family, s, eps)| check_limit(*family, s, *eps, &cfg.ladder))
        .collect::<Result<Vec<_>>>()?;

    let mut bridge = Vec::new();
    for s in sample_points(cfg.points, cfg.seed.wrapping_add(3), cfg.tol) {
        for object in BridgeObject::ALL {
            bridge.push(check_bridge(object, &s)?);
        }
    }

    Ok(NumericSuite {
        transforms,
        chi: chi_report,
        nu_eta: nu_reports,
        limits,
        bridge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn documented_transform_examples() {
        let s = ComplexSample::new(c(0.2, 0.1), c(0.0, 1.0));
        let r = check_transform(
            TransformLaw::ThetaModular,
            Transform::Matrix(MoebiusMatrix::T),
            &s,
        )
        .unwrap();
        assert!(r.residual < 1e-10, "{r:?}");
        let r = check_transform(
            TransformLaw::ThetaElliptic,
            Transform::Shift { m: 1, n: 0 },
            &s,
        )
        .unwrap();
        assert!(r.residual < 1e-10, "{r:?}");
        let g = MoebiusMatrix::new(1, 0, 3, 1).unwrap();
        let s = ComplexSample::new(c(0.07, 0.0), c(0.1, 0.8)).with_w(c(-0.2, 1.3));
        let r = check_transform(TransformLaw::FrakHhatModular, Transform::Matrix(g), &s).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn mismatched_transform_is_rejected() {
        let s = ComplexSample::new(c(0.2, 0.1), c(0.0, 1.0));
        assert!(check_transform(
            TransformLaw::ThetaModular,
            Transform::Shift { m: 1, n: 0 },
            &s
        )
        .is_err());
        assert!(check_transform(
            TransformLaw::PsihatModular,
            Transform::Matrix(MoebiusMatrix::S),
            &s
        )
        .is_err());
    }

    #[test]
    fn bridge_agrees() {
        for s in sample_points(3, 11, 1e-8) {
            for object in BridgeObject::ALL {
                let r = check_bridge(object, &s).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn psihat_limit() {
        let s = ComplexSample::new(c(0.1, 0.0), c(0.0, 1.0));
        let r = check_limit(LimitFamily::PsiHat, &s, 0.5, &[1.0, 3.0, 10.0, 30.0]).unwrap();
        assert!(r.pass, "{r:?}");
        // at t = 20 the two central erfc tails still contribute about 1.8e-8
        let r = check_limit(LimitFamily::PsiHat, &s, 0.3, &[20.0]).unwrap();
        assert!((r.final_gap() - 1.806_083e-8).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn hhat_limit_converges_slowly() {
        let [_, _, (family, s, eps)] = limit_samples(1e-7);
        let r = check_limit(family, &s, eps, &[10.0, 30.0, 100.0]).unwrap();
        assert!((r.gaps[1] - 2.331_45e-5).abs() < 1e-9, "{r:?}");
        assert!(r.gaps[2] < 1e-12 && r.monotone);
    }

    #[test]
    fn limit_window_enforced() {
        let s = ComplexSample::new(c(0.1, 0.6), c(0.0, 1.0));
        assert!(check_limit(LimitFamily::PsiHat, &s, 0.5, &[1.0]).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let s = ComplexSample::new(c(0.2, 0.1), c(0.0, 1.0)).with_w(c(0.1, 1.2));
        let r = check_transform(
            TransformLaw::PsihatModular,
            Transform::Matrix(MoebiusMatrix::S),
            &s,
        )
        .unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text
            .starts_with(r#"{"name":"psihat_modular","gamma":[0,-1,1,0],"sample":{"z":[0.2,0.1]"#));
        let back: TransformReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
