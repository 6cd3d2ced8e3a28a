use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::erf::erf_times_exp;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Summation stops once both outer terms are below this fraction of the
/// largest term seen.
pub const TAIL_RATIO: f64 = 1e-20;

/// Default number of lattice terms on each side of the peak.
pub const DEFAULT_TERMS: usize = 400;

/// Evaluation point for the numeric layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSample {
    pub z: Complex64,
    pub tau: Complex64,
    pub w: Option<Complex64>,
    /// Cap on the lattice terms summed on each side of the peak.
    pub terms: usize,
    /// Pass threshold for residuals computed from this sample.
    pub tol: f64,
}

impl ComplexSample {
    pub fn new(z: Complex64, tau: Complex64) -> Self {
        Self {
            z,
            tau,
            w: None,
            terms: DEFAULT_TERMS,
            tol: 1e-8,
        }
    }

    pub fn with_w(mut self, w: Complex64) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.terms = terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.im > 0.0) {
            return Err(Error::Domain(format!(
                "tau = {} is not in the upper half plane",
                self.tau
            )));
        }
        if let Some(w) = self.w {
            if !(w.im > 0.0) {
                return Err(Error::Domain(format!(
                    "w = {w} is not in the upper half plane"
                )));
            }
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!(
                "tolerance {} must be positive",
                self.tol
            )));
        }
        Ok(())
    }

    fn require_w(&self) -> Result<Complex64> {
        self.w.ok_or_else(|| {
            Error::Domain("this function needs the second modular variable w".into())
        })
    }
}

/// The functions available to [`eval_function`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericFunction {
    Theta,
    Psi,
    PsiHat,
    That,
    Hhat,
    FrakHhat,
    Eta,
}

impl NumericFunction {
    pub const ALL: [Self; 7] = [
        Self::Theta,
        Self::Psi,
        Self::PsiHat,
        Self::That,
        Self::Hhat,
        Self::FrakHhat,
        Self::Eta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Theta => "theta",
            Self::Psi => "psi",
            Self::PsiHat => "psihat",
            Self::That => "That",
            Self::Hhat => "Hhat",
            Self::FrakHhat => "frakHhat",
            Self::Eta => "eta",
        }
    }
}

impl fmt::Display for NumericFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NumericFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "psi_false" {
            return Ok(Self::Psi);
        }
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown function {s:?}")))
    }
}

/// `q^alpha = e^{2 pi i tau alpha}`.
pub fn q_power(tau: Complex64, alpha: f64) -> Complex64 {
    (2.0 * PI * I * tau * alpha).exp()
}

/// `zeta^alpha = e^{2 pi i z alpha}`.
pub fn zeta_power(z: Complex64, alpha: f64) -> Complex64 {
    (2.0 * PI * I * z * alpha).exp()
}

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sums `f(n)` over `n in Z` outward from `center`. `f` returns the term and
/// an upper bound for its modulus.
fn lattice_sum(
    center: f64,
    terms: usize,
    f: impl Fn(i64) -> (Complex64, f64),
) -> Result<Complex64> {
    let n0 = center.round() as i64;
    let (mut sum, mut largest) = f(n0);
    for k in 1..=terms as i64 {
        let (up, bu) = f(n0 + k);
        let (down, bd) = f(n0 - k);
        sum += up + down;
        largest = largest.max(bu).max(bd);
        if !sum.is_finite() {
            return Err(Error::Accuracy(format!(
                "lattice sum overflowed after {k} terms"
            )));
        }
        if k >= 2 && bu.max(bd) <= TAIL_RATIO * largest {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy(format!(
        "tail still above {TAIL_RATIO:e} of the peak after {terms} terms on each side"
    )))
}

/// `pi i tau r^2 + 2 pi i z r`, the exponent of `q^{r^2/2} zeta^r`.
fn theta_exponent(z: Complex64, tau: Complex64, r: f64) -> Complex64 {
    PI * I * (tau * r * r + 2.0 * z * r)
}

fn peak(z: Complex64, tau: Complex64) -> f64 {
    -z.im / tau.im - 0.5
}

/// `theta(z; tau) = i sum_n (-1)^n q^{(n+1/2)^2/2} zeta^{n+1/2}`.
pub fn theta(z: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    let s = lattice_sum(peak(z, tau), terms, |n| {
        let e = theta_exponent(z, tau, n as f64 + 0.5).exp();
        (e * sign(n), e.norm())
    })?;
    Ok(I * s)
}

/// `psi(z; tau) = i sum_n sgn(n+1/2) (-1)^n zeta^{n+1/2} q^{(n+1/2)^2/2}`.
pub fn psi(z: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    let s = lattice_sum(peak(z, tau), terms, |n| {
        let e = theta_exponent(z, tau, n as f64 + 0.5).exp();
        let sgn = if n >= 0 { 1.0 } else { -1.0 };
        (e * sign(n) * sgn, e.norm())
    })?;
    Ok(I * s)
}

/// `psihat(z; tau, w) = i sum_n erf(-i sqrt(pi i (w - tau)) (n + 1/2 + z_2/tau_2))
///  (-1)^n q^{(n+1/2)^2/2} zeta^{n+1/2}`, principal square root.
pub fn psihat(z: Complex64, tau: Complex64, w: Complex64, terms: usize) -> Result<Complex64> {
    let root = (PI * I * (w - tau)).sqrt();
    let shift = z.im / tau.im;
    let s = lattice_sum(peak(z, tau), terms, |n| {
        let r = n as f64 + 0.5;
        let u = -I * root * (r + shift);
        let (v, bound) = erf_times_exp(u, theta_exponent(z, tau, r));
        (v * sign(n), bound)
    })?;
    Ok(I * s)
}

/// `That = theta + psihat`.
pub fn t_hat(z: Complex64, tau: Complex64, w: Complex64, terms: usize) -> Result<Complex64> {
    Ok(theta(z, tau, terms)? + psihat(z, tau, w, terms)?)
}

/// `T = theta + psi = 2i sum_{n>=0} (-1)^n zeta^{n+1/2} q^{(n+1/2)^2/2}`.
pub fn partial_theta_t(z: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    Ok(theta(z, tau, terms)? + psi(z, tau, terms)?)
}

/// `(i/2)(zeta^{1/2} - zeta^{-1/2}) q^{1/8} sum_{+-} -+ zeta^{+-1} F(3z +- tau; 3 tau)`.
fn h_combination(
    z: Complex64,
    tau: Complex64,
    f: impl Fn(Complex64, Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let plus = f(3.0 * z + tau, 3.0 * tau)?;
    let minus = f(3.0 * z - tau, 3.0 * tau)?;
    let inner = -zeta_power(z, 1.0) * plus + zeta_power(z, -1.0) * minus;
    Ok(I / 2.0 * (zeta_power(z, 0.5) - zeta_power(z, -0.5)) * q_power(tau, 0.125) * inner)
}

/// `Hhat(z; tau, w)` built from `That(3z +- tau; 3 tau, 3 w)`.
pub fn h_hat(z: Complex64, tau: Complex64, w: Complex64, terms: usize) -> Result<Complex64> {
    h_combination(z, tau, |zz, tt| t_hat(zz, tt, 3.0 * w, terms))
}

/// The holomorphic counterpart `h(zeta; q)`, built from `T(3z +- tau; 3 tau)`.
pub fn false_theta_h(z: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    h_combination(z, tau, |zz, tt| partial_theta_t(zz, tt, terms))
}

/// `2 i zeta^{1/2} q^{1/24} / (1 - zeta) Hhat`; undefined at `zeta = 1`.
pub fn frak_h_hat(z: Complex64, tau: Complex64, w: Complex64, terms: usize) -> Result<Complex64> {
    let one_minus = 1.0 - zeta_power(z, 1.0);
    if one_minus.norm() < 1e-12 {
        return Err(Error::Domain(format!("zeta = 1 at z = {z}")));
    }
    let factor = 2.0 * I * zeta_power(z, 0.5) * q_power(tau, 1.0 / 24.0) / one_minus;
    Ok(factor * h_hat(z, tau, w, terms)?)
}

/// `eta(tau) = q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}`.
pub fn eta(tau: Complex64, terms: usize) -> Result<Complex64> {
    let s = lattice_sum(0.0, terms, |k| {
        let e = (PI * I * tau * (k * (3 * k - 1)) as f64).exp();
        (e * sign(k), e.norm())
    })?;
    Ok(q_power(tau, 1.0 / 24.0) * s)
}

/// Evaluates `name` at the sample.
pub fn eval_function(name: NumericFunction, s: &ComplexSample) -> Result<Complex64> {
    s.validate()?;
    let n = s.terms;
    match name {
        NumericFunction::Theta => theta(s.z, s.tau, n),
        NumericFunction::Psi => psi(s.z, s.tau, n),
        NumericFunction::PsiHat => psihat(s.z, s.tau, s.require_w()?, n),
        NumericFunction::That => t_hat(s.z, s.tau, s.require_w()?, n),
        NumericFunction::Hhat => h_hat(s.z, s.tau, s.require_w()?, n),
        NumericFunction::FrakHhat => frak_h_hat(s.z, s.tau, s.require_w()?, n),
        NumericFunction::Eta => eta(s.tau, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_is_odd() {
        let tau = c(0.0, 1.0);
        assert!(theta(c(0.0, 0.0), tau, 100).unwrap().norm() < 1e-15);
        let z = c(0.2, 0.1);
        let d = theta(z, tau, 100).unwrap() + theta(-z, tau, 100).unwrap();
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn eta_at_i() {
        // Gamma(1/4) / (2 pi^{3/4})
        let closed = 3.625_609_908_221_908 / (2.0 * PI.powf(0.75));
        let q = (-2.0 * PI).exp();
        let product: f64 = (1..60).map(|n| 1.0 - q.powi(n)).product();
        let oracle = (-2.0 * PI / 24.0).exp() * product;
        let v = eta(c(0.0, 1.0), 100).unwrap();
        assert!((v.re - oracle).abs() < 1e-14 && v.im.abs() < 1e-15);
        assert!((oracle - closed).abs() < 1e-14);
        assert!((v.re - 0.768_225).abs() < 1e-6);
    }

    #[test]
    fn partial_theta_is_one_sided() {
        let (z, tau) = (c(0.13, 0.05), c(0.1, 0.9));
        let direct: Complex64 = (0..40)
            .map(|n| {
                let r = n as f64 + 0.5;
                2.0 * I * sign(n) * zeta_power(z, r) * q_power(tau, r * r / 2.0)
            })
            .sum();
        assert!((partial_theta_t(z, tau, 100).unwrap() - direct).norm() < 1e-14);
    }

    #[test]
    fn psihat_is_even_and_reflection() {
        let (z, tau, w) = (c(0.11, 0.07), c(0.05, 1.1), c(-0.2, 1.4));
        let a = psihat(z, tau, w, 200).unwrap();
        let b = psihat(-z, tau, w, 200).unwrap();
        assert!((a - b).norm() < 1e-13);
        let reflected = t_hat(-z, tau, w, 200).unwrap();
        let expected = -theta(z, tau, 200).unwrap() + a;
        assert!((reflected - expected).norm() < 1e-13);
    }

    #[test]
    fn frak_h_hat_is_difference_of_shifts() {
        let (z, tau, w) = (c(0.07, 0.02), c(0.1, 0.8), c(-0.2, 1.3));
        let f = |s: f64| {
            q_power(tau, 1.0 / 6.0)
                * zeta_power(z, s)
                * t_hat(3.0 * z + s * tau, 3.0 * tau, 3.0 * w, 200).unwrap()
        };
        let expected = f(-1.0) - f(1.0);
        let v = frak_h_hat(z, tau, w, 200).unwrap();
        assert!((v - expected).norm() < 1e-12 * expected.norm());
        assert!(frak_h_hat(c(0.0, 0.0), tau, w, 200).is_err());
    }

    #[test]
    fn accuracy_error_when_terms_too_few() {
        let r = theta(c(0.1, 0.0), c(0.0, 0.01), 5);
        assert!(matches!(r, Err(Error::Accuracy(_))));
    }

    #[test]
    fn names_round_trip() {
        for f in NumericFunction::ALL {
            assert_eq!(f.name().parse::<NumericFunction>().unwrap(), f);
        }
        assert_eq!(
            "psi_false".parse::<NumericFunction>().unwrap(),
            NumericFunction::Psi
        );
        let s = ComplexSample::new(c(0.1, 0.0), c(0.0, 1.0));
        assert!(eval_function(NumericFunction::PsiHat, &s).is_err());
        assert!(eval_function(
            NumericFunction::Theta,
            &ComplexSample::new(c(0.1, 0.0), c(0.0, -1.0))
        )
        .is_err());
    }
}
