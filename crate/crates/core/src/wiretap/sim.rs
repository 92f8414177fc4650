use super::scheme::CosetScheme;
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::par;
use crate::theta::theta_construction_a_numeric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

pub const MAX_SIM_N: usize = 8;
pub const MIN_TRIALS: u64 = 10_000;
const CHUNK: u64 = 4096;
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WiretapResult {
    pub sigma_e: f64,
    pub bound: f64,
    pub empirical_pce: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub half_width: f64,
    pub trials: u64,
    pub correct: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SimOptions {
    pub parallel: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { parallel: par::DEFAULT_PARALLEL }
    }
}

/// Upper bound on Eve's probability of a correct decision:
/// vol(Λ_b) (2πσ²)^(-n/2) Θ_Γe(iτ), τ = 1/(2πσ²), vol(Λ_b) = 2^(n/2)/|A|.
pub fn eve_bound(scheme: &CosetScheme, sigma_e: f64) -> Result<HighReal> {
    if !(sigma_e > 0.0 && sigma_e.is_finite()) {
        return Err(Error::Domain(format!("sigma_e must be positive, got {sigma_e}")));
    }
    let n = scheme.n();
    let s = HighReal::from_f64(sigma_e);
    let two_pi_s2 = HighReal::from_u64(2) * HighReal::pi() * &s * &s;
    let tau = two_pi_s2.recip();
    let w = scheme.c.weight_enumerator()?;
    let theta = theta_construction_a_numeric(w, &tau)?;
    let vol = HighReal::from_u64(2).powf(&HighReal::from_f64(n as f64 / 2.0))
        / HighReal::from_biguint(&scheme.a.size());
    let scale = two_pi_s2.powf(&HighReal::from_f64(-(n as f64) / 2.0));
    Ok(vol * scale * theta)
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Cumulative table of the integer offsets z in r_i = c_i + 2z, weighted by
/// exp(-(c_i + 2z)^2 / (4σ²)) and truncated at 6 standard deviations per
/// coordinate (tail mass below 10^-8 each).
fn offset_table(bit: i64, sigma: f64) -> (i64, Vec<f64>) {
    let sd = sigma * std::f64::consts::SQRT_2;
    let half = ((6.0 * sd) / 2.0).ceil() as i64 + 1;
    let mut acc = 0.0;
    let mut cdf = Vec::with_capacity((2 * half + 1) as usize);
    for z in -half..=half {
        let r = (bit + 2 * z) as f64;
        let b = bit as f64;
        acc += (-(r * r - b * b) / (4.0 * sigma * sigma)).exp();
        cdf.push(acc);
    }
    for v in &mut cdf {
        *v /= acc;
    }
    (-half, cdf)
}

fn draw(table: &(i64, Vec<f64>), u: f64) -> i64 {
    table.0 + table.1.partition_point(|&c| c < u).min(table.1.len() - 1) as i64
}

/// Monte Carlo estimate of Eve's correct-decision probability.
///
/// Coordinates are kept unscaled (C + 2Z^n), so the channel noise has standard
/// deviation σ√2 per coordinate. Eve decodes to the nearest point of A + 2Z^n
/// by rounding against every a ∈ A and reports the B-part of its class mod 2.
pub fn simulate_wiretap(scheme: &CosetScheme, sigma_e: f64, trials: u64, seed: u64, opts: SimOptions) -> Result<WiretapResult> {
    let n = scheme.n();
    if n > MAX_SIM_N {
        return Err(Error::Precondition(format!("simulation supports n <= {MAX_SIM_N}, got {n}")));
    }
    if trials < MIN_TRIALS {
        return Err(Error::Precondition(format!("at least {MIN_TRIALS} trials are required, got {trials}")));
    }
    let bound = eve_bound(scheme, sigma_e)?.to_f64();
    let noise_sd = sigma_e * std::f64::consts::SQRT_2;
    let tables = [offset_table(0, sigma_e), offset_table(1, sigma_e)];
    let a_words = scheme.a.codewords()?;
    let chunks = trials.div_ceil(CHUNK);

    let counts = par::map_range(chunks as usize, opts.parallel, |ci| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ci as u64);
        let len = CHUNK.min(trials - ci as u64 * CHUNK);
        let mut y = [0f64; MAX_SIM_N];
        let mut hits = 0u64;
        for _ in 0..len {
            let j = rng.random_range(0..scheme.b_words.len());
            let c = scheme.c_words[rng.random_range(0..scheme.c_words.len())];
            let x = scheme.b_words[j] ^ c;
            for (i, yi) in y.iter_mut().enumerate().take(n) {
                let bit = ((x >> i) & 1) as i64;
                let cbit = ((c >> i) & 1) as usize;
                // r_i = c_i + 2z and the transmitted coordinate is (b ⊕ c)_i + 2z.
                let z = draw(&tables[cbit], rng.random::<f64>());
                let e: f64 = rng.sample(StandardNormal);
                *yi = (bit + 2 * z) as f64 + noise_sd * e;
            }
            let mut best = (f64::INFINITY, 0);
            for &a in &a_words {
                let mut d = 0.0;
                for (i, &yi) in y.iter().enumerate().take(n) {
                    let ai = ((a >> i) & 1) as f64;
                    let p = ai + 2.0 * ((yi - ai) / 2.0).round();
                    d += (yi - p) * (yi - p);
                }
                if d < best.0 {
                    best = (d, a);
                }
            }
            if scheme.secret_of(best.1) == Some(j) {
                hits += 1;
            }
        }
        hits
    });
    let correct: u64 = counts.into_iter().sum();
    let (ci_low, ci_high) = wilson_interval(correct, trials);
    let p = correct as f64 / trials as f64;
    Ok(WiretapResult {
        sigma_e,
        bound,
        empirical_pce: p,
        ci_low,
        ci_high,
        half_width: (ci_high - ci_low) / 2.0,
        trials,
        correct,
    })
}
