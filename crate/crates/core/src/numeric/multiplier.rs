use std::f64::consts::PI;

use num_complex::Complex64;

use super::functions::eta;
use super::matrix::MoebiusMatrix;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Base point used when a multiplier is needed independently of the sample.
pub const BASE_POINT: Complex64 = Complex64::new(0.0, 1.0);

/// Allowed distance of `chi` from `+-1`.
pub const CHI_TOLERANCE: f64 = 1e-10;

const ETA_TERMS: usize = 20_000;

/// `eta(gamma tau) / (sqrt(c tau + d) eta(tau))`.
pub fn nu_eta(gamma: &MoebiusMatrix, tau: Complex64) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!(
            "tau = {tau} is not in the upper half plane"
        )));
    }
    let top = eta(gamma.act(tau), ETA_TERMS)?;
    let bottom = gamma.automorphy(tau).sqrt() * eta(tau, ETA_TERMS)?;
    Ok(top / bottom)
}

/// `sqrt(i(w - tau) / ((c tau + d)(c w + d))) sqrt(c tau + d) sqrt(c w + d) / sqrt(i(w - tau))`
/// with principal roots; returns its sign.
pub fn chi(gamma: &MoebiusMatrix, tau: Complex64, w: Complex64) -> Result<i8> {
    if !(tau.im > 0.0 && w.im > 0.0) {
        return Err(Error::Domain(
            "tau and w must lie in the upper half plane".into(),
        ));
    }
    if tau == w {
        return Err(Error::Domain("chi needs tau != w".into()));
    }
    let (jt, jw) = (gamma.automorphy(tau), gamma.automorphy(w));
    let iwt = I * (w - tau);
    let v = (iwt / (jt * jw)).sqrt() * jt.sqrt() * jw.sqrt() / iwt.sqrt();
    if (v - 1.0).norm() < CHI_TOLERANCE {
        Ok(1)
    } else if (v + 1.0).norm() < CHI_TOLERANCE {
        Ok(-1)
    } else {
        Err(Error::Branch { re: v.re, im: v.im })
    }
}

/// Multiplier of the completed false theta function on `Gamma_0(3)`:
/// `(-1)^{b + (a - l)/3} e^{pi i a b/3} l nu_eta^3((a, 3b; c/3, d))` with
/// `a = l mod 3`, `l in {1, -1}`.
pub fn nu_gamma0_3(gamma: &MoebiusMatrix) -> Result<Complex64> {
    if !gamma.in_gamma0_3() {
        return Err(Error::Domain(format!("{gamma} is not in Gamma_0(3)")));
    }
    let (a, b, c, d) = (gamma.a(), gamma.b(), gamma.c(), gamma.d());
    let l = if a.rem_euclid(3) == 1 { 1 } else { -1 };
    let sign = if (b + (a - l) / 3).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let conj = MoebiusMatrix::new(a, 3 * b, c / 3, d)?;
    let phase = (PI * I * (a * b) as f64 / 3.0).exp();
    Ok(phase * (sign * l as f64) * nu_eta(&conj, BASE_POINT)?.powu(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Dedekind sum `s(d, c)` for `c > 0`.
    fn dedekind_sum(d: i64, c: i64) -> f64 {
        let saw = |x: f64| {
            if x.fract() == 0.0 {
                0.0
            } else {
                x - x.floor() - 0.5
            }
        };
        (1..c)
            .map(|k| saw(k as f64 / c as f64) * saw((d * k) as f64 / c as f64))
            .sum()
    }

    /// Classical closed form of the eta multiplier, normalized to the
    /// principal `sqrt(c tau + d)`.
    fn nu_eta_closed(g: &MoebiusMatrix) -> Complex64 {
        let (a, b, cc, d) = (g.a(), g.b(), g.c(), g.d());
        if cc == 0 {
            let phase = (PI * I * (b * d) as f64 / 12.0).exp();
            return if d == 1 { phase } else { phase / I };
        }
        if cc < 0 {
            let neg = MoebiusMatrix::new(-a, -b, -cc, -d).unwrap();
            return I * nu_eta_closed(&neg);
        }
        let e = PI * I * ((a + d) as f64 / (12.0 * cc as f64) - dedekind_sum(d, cc));
        e.exp() * (-PI * I / 4.0).exp()
    }

    #[test]
    fn translation_and_identity() {
        let id = nu_eta(&MoebiusMatrix::IDENTITY, c(0.0, 1.0)).unwrap();
        assert!((id - 1.0).norm() < 1e-14);
        let t = nu_eta(&MoebiusMatrix::T, c(0.0, 1.0)).unwrap();
        assert!((t - (PI * I / 12.0).exp()).norm() < 1e-14);
    }

    #[test]
    fn independent_of_tau_and_matches_closed_form() {
        for g in super::super::matrix::sample_matrices(20, false, 3).unwrap() {
            let a = nu_eta(&g, c(0.0, 1.0)).unwrap();
            let b = nu_eta(&g, c(0.5, 2.0)).unwrap();
            assert!((a - b).norm() < 1e-10, "{g}");
            assert!((a.norm() - 1.0).abs() < 1e-12);
            assert!(
                (a - nu_eta_closed(&g)).norm() < 1e-10,
                "{g}: {a} vs {}",
                nu_eta_closed(&g)
            );
        }
    }

    #[test]
    fn chi_values() {
        let (tau, w) = (c(0.0, 0.5), c(0.0, 2.0));
        assert_eq!(chi(&MoebiusMatrix::IDENTITY, tau, w).unwrap(), 1);
        // i(w - tau) is negative real here, so the sign depends on the side
        // from which the cut is approached
        assert_eq!(chi(&MoebiusMatrix::S, tau, w).unwrap(), 1);
        for (dt, dw) in [
            (c(-1e-3, 0.0), c(0.0, 1e-3)),
            (c(-1e-3, 1e-3), c(2e-3, 0.0)),
        ] {
            assert_eq!(chi(&MoebiusMatrix::S, tau + dt, w + dw).unwrap(), 1);
            assert_eq!(chi(&MoebiusMatrix::S, tau - dt, w - dw).unwrap(), -1);
        }
        assert!(chi(&MoebiusMatrix::S, tau, tau).is_err());
    }

    #[test]
    fn nu_needs_gamma0_3() {
        assert!(nu_gamma0_3(&MoebiusMatrix::S).is_err());
        let v = nu_gamma0_3(&MoebiusMatrix::T).unwrap();
        // (-1)^1 e^{pi i/3} nu_eta((1 3; 0 1))^3 = -e^{pi i/3} e^{3 pi i/4}
        let expected = -(PI * I / 3.0).exp() * (3.0 * PI * I / 4.0).exp();
        assert!((v - expected).norm() < 1e-12);
    }
}
