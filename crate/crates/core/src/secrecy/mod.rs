//! Secrecy function, weak and strong secrecy gains, the even-FSD (Gleason)
//! decomposition and the optimality checks built on it.

mod conditions;
mod function;
mod gleason;
mod report;

pub use conditions::{
    compare_scores, derivative_sign_analysis, necessary_condition_score, phi, sufficient_condition_check,
    CertifiedMin, DerivativeAnalysis, DerivativeVerdict, ScoreComparison, SufficientCheck, SufficientVerdict,
};
pub use function::{
    f_c, f_c_f64_ln, ln_f_c, secrecy_curve, secrecy_function, secrecy_function_scaled, strong_secrecy_gain,
    symmetry_check, weak_secrecy_gain, GainOptions, StrongGain, LOG_DOMAIN_MIN_N,
};
pub use gleason::{gleason_decompose, GleasonCoeffs};
pub use report::{analyze, ConjectureStatus, ReportOptions, SecrecyReport, DEFAULT_SYMMETRY_TAUS};

use crate::highreal::HighReal;

/// 1/sqrt(2), the image of tau = 1 under t(tau).
pub fn symmetry_point() -> HighReal {
    HighReal::from_u64(2).sqrt().recip()
}
