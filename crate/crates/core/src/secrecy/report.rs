use super::conditions::{
    derivative_sign_analysis, necessary_condition_score, sufficient_condition_check, DerivativeAnalysis,
    DerivativeVerdict, SufficientCheck, SufficientVerdict,
};
use super::function::{strong_secrecy_gain, symmetry_check, GainOptions};
use super::gleason::{gleason_decompose, GleasonCoeffs};
use crate::code::WeightEnumerator;
use crate::error::Result;
use crate::highreal::HighReal;
use crate::poly::Q;
use serde_json::{json, Value};

pub const DEFAULT_SYMMETRY_TAUS: [f64; 4] = [0.3, 0.7, 1.5, 3.0];

/// How far the claim "the maximum of Xi sits at tau = 1" is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureStatus {
    CertifiedBySufficientCondition,
    GridVerified,
    Inconclusive,
}

impl ConjectureStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConjectureStatus::CertifiedBySufficientCondition => "certified",
            ConjectureStatus::GridVerified => "grid-verified",
            ConjectureStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub gain: GainOptions,
    pub symmetry_taus: Vec<f64>,
    /// Run the Gleason decomposition and the sufficient condition (even codes only).
    pub gleason: bool,
    /// Run the derivative sign analysis.
    pub derivative: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { gain: GainOptions::default(), symmetry_taus: DEFAULT_SYMMETRY_TAUS.to_vec(), gleason: true, derivative: false }
    }
}

#[derive(Clone, Debug)]
pub struct SecrecyReport {
    pub name: String,
    pub n: usize,
    pub weak_gain: HighReal,
    pub strong_gain: HighReal,
    pub t_star: HighReal,
    pub tau_star: Option<HighReal>,
    pub conjecture_verified: bool,
    pub symmetry_residuals: Vec<(f64, HighReal)>,
    pub gleason: Option<GleasonCoeffs>,
    pub sufficient: Option<SufficientCheck>,
    pub derivative: Option<DerivativeAnalysis>,
    pub necessary_score: Q,
    pub status: ConjectureStatus,
}

impl SecrecyReport {
    pub fn symmetry_max_residual(&self) -> Option<&HighReal> {
        self.symmetry_residuals.iter().map(|(_, r)| r).fold(None, |m, r| match m {
            Some(x) if x >= r => Some(x),
            _ => Some(r),
        })
    }

    pub fn to_json(&self) -> Value {
        let sufficient = match &self.sufficient {
            None => Value::Null,
            Some(s) => {
                let verdict = match s.verdict {
                    SufficientVerdict::Certified => "certified",
                    SufficientVerdict::NotCertified => "not-certified",
                    SufficientVerdict::NotApplicable => "not-applicable",
                };
                let min = s.minimum.as_ref().map(|m| match m.exact() {
                    Some(v) => json!({ "exact": v.to_string() }),
                    None => json!({ "lower": m.lower.to_string(), "upper": m.upper.to_string() }),
                });
                json!({ "verdict": verdict, "polynomial": format!("{:?}", s.polynomial), "minimum": min })
            }
        };
        let mut v = json!({
            "name": self.name,
            "n": self.n,
            "weak_gain": self.weak_gain.to_string_digits(20),
            "strong_gain": self.strong_gain.to_string_digits(20),
            "t_star": self.t_star.to_string_digits(20),
            "tau_star": self.tau_star.as_ref().map(|t| t.to_string_digits(20)),
            "conjecture_verified": self.conjecture_verified,
            "status": self.status.as_str(),
            "sufficient_condition": sufficient,
            "necessary_score": self.necessary_score.to_string(),
            "symmetry_max_residual": self.symmetry_max_residual().map(|r| r.to_string_digits(6)),
        });
        if let Some(g) = &self.gleason {
            v["gleason"] = json!(g.a.iter().map(|a| a.to_string()).collect::<Vec<_>>());
        }
        if let Some(d) = &self.derivative {
            v["derivative"] = match &d.verdict {
                DerivativeVerdict::Confirmed { root } => json!({ "verdict": "confirmed", "root": root }),
                DerivativeVerdict::Refuted { roots } => json!({ "verdict": "refuted", "roots": roots }),
                DerivativeVerdict::Inconclusive { interval } => {
                    json!({ "verdict": "inconclusive", "interval": [interval.0, interval.1] })
                }
            };
        }
        v
    }
}

/// Full secrecy analysis of a code with 2^(n/2) words.
pub fn analyze(name: &str, w: &WeightEnumerator, opts: &ReportOptions) -> Result<SecrecyReport> {
    let g = strong_secrecy_gain(w, &opts.gain)?;
    let tau_star = g.tau_star();
    let symmetry_residuals = symmetry_check(w, &opts.symmetry_taus, None)?;
    let (gleason, sufficient) = if opts.gleason && w.is_even() {
        match gleason_decompose(w) {
            Ok(c) => {
                let s = sufficient_condition_check(&c);
                (Some(c), Some(s))
            }
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    let derivative = opts.derivative.then(|| derivative_sign_analysis(w));
    let status = if sufficient.as_ref().is_some_and(|s| s.verdict == SufficientVerdict::Certified) {
        ConjectureStatus::CertifiedBySufficientCondition
    } else if g.conjecture_verified {
        ConjectureStatus::GridVerified
    } else {
        ConjectureStatus::Inconclusive
    };
    Ok(SecrecyReport {
        name: name.to_string(),
        n: w.n(),
        weak_gain: g.weak,
        strong_gain: g.xi,
        t_star: g.t_star,
        tau_star,
        conjecture_verified: g.conjecture_verified,
        symmetry_residuals,
        gleason,
        sufficient,
        derivative,
        necessary_score: necessary_condition_score(w),
        status,
    })
}
