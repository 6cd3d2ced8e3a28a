//! Floating-point evaluation of the theta functions, their completions and
//! `eta`, with numerical checks of the transformation laws, of the
//! `t -> infinity` limits and of agreement with the exact series.
//!
//! Conventions: `q^a = e^{2 pi i tau a}`, `zeta^a = e^{2 pi i z a}`, `z_2`
//! and `tau_2` are imaginary parts, and every square root is principal.

mod checks;
mod erf;
mod functions;
mod matrix;
mod multiplier;

pub use checks::{
    check_bridge, check_limit, check_transform, eval_qexpansion, eval_zeta_series,
    false_theta_from_series, jacobi_theta_from_series, limit_samples, partial_theta_from_series,
    relative_residual, run_numeric_suite, sample_points, BridgeObject, BridgeReport, ChiReport,
    LimitFamily, LimitReport, NuEtaReport, NumericSuite, NumericSuiteConfig, SampleRecord,
    Transform, TransformLaw, TransformReport, BRIDGE_ORDER, MONOTONE_SLACK,
};
pub use erf::{cerf, erfcx};
pub use functions::{
    eta, eval_function, false_theta_h, frak_h_hat, h_hat, partial_theta_t, psi, psihat, q_power,
    t_hat, theta, zeta_power, ComplexSample, NumericFunction, DEFAULT_TERMS, TAIL_RATIO,
};
pub use matrix::{sample_matrices, MoebiusMatrix, MAX_WORD_LENGTH};
pub use multiplier::{chi, nu_eta, nu_gamma0_3, BASE_POINT, CHI_TOLERANCE};
