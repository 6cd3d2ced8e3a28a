//! Theta-type families as exact series, Taylor-coefficient extraction, closed
//! forms and the structural identities between them.
//!
//! Every object is stored in a normalized form with rational coefficients.
//! With `x = 2 pi i z`, `zeta = e^x` and `P = prod_{n>=1} (1 - q^n)`:
//!
//! | analytic object              | stored series                                 |
//! |------------------------------|-----------------------------------------------|
//! | `T(z; tau)`                  | `2i q^{1/8}` times `PartialTheta`             |
//! | `T_0(tau)`                   | `2i q^{1/8}` times [`t0_series`]              |
//! | `h(zeta; q)`                 | `(zeta^{-1/2} - zeta^{1/2})` times `FalseTheta` |
//! | false theta `2i q^{1/24} H`  | `FalseTheta`, `x^0` slice equal to `P`        |
//! | `eta(tau)`                   | `q^{1/24} P`                                  |
//! | `theta(z; tau)`              | `-i q^{1/8}` times each `JacobiTheta*` tag    |
//! | `2 pi z`                     | `-i x`                                        |
//! | `sin(pi z)`                  | `(e^{x/2} - e^{-x/2}) / (2i)`                 |
//! | `U(zeta; q)`                 | `UnimodalRank` (no prefactor)                 |
//!
//! Identities are implemented between the stored series; the factors `2i`,
//! `-i` and `q^rho` cancel or are accounted for in each check.

mod extract;
mod families;
mod heat;
mod modular;
mod unimodal;

pub use extract::{
    closed_form, closed_form_family, extract_coeffs, master_identity_check, product_identity_check,
    triple_product_check, unimodal_at_one_check, ProductIdentity, ProductIdentityReport,
    TaylorFamily,
};
pub use families::{
    false_theta_zeta, family_bivar, jacobi_theta_eisenstein, jacobi_theta_product_zeta,
    jacobi_theta_sum_zeta, partial_theta_zeta, sinc_factor, t0_series, unimodal_at_one,
    unimodal_zeta,
};
pub use heat::{heat_annihilation_check, HeatReport, ThetaTerm, ThetaTermList};
pub use modular::{bernoulli_numbers, divisor_sigma, eisenstein_g, eta_product, euler_product};
pub use unimodal::{
    unimodal_bruteforce, unimodal_bruteforce_capped, unimodal_from_series, RankHistogram,
    UNIMODAL_CAP,
};

/// The bivariate objects built by [`family_bivar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    PartialTheta,
    FalseTheta,
    UnimodalRank,
    JacobiThetaSum,
    JacobiThetaProduct,
    JacobiThetaEisenstein,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::PartialTheta,
        FamilyId::FalseTheta,
        FamilyId::UnimodalRank,
        FamilyId::JacobiThetaSum,
        FamilyId::JacobiThetaProduct,
        FamilyId::JacobiThetaEisenstein,
    ];
}
