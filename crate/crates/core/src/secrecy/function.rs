use super::symmetry_point;
use crate::code::WeightEnumerator;
use crate::error::{Error, Result};
use crate::highreal::{CompensatedSum, HighReal};
use crate::optimize::golden_section;
use crate::par;
use crate::theta::{jacobi_theta, t_of_tau, tau_of_t, theta_construction_a_numeric, ThetaKind};

/// From this length on, f_C is summed in the log domain.
pub const LOG_DOMAIN_MIN_N: usize = 60;

fn check_open(t: &HighReal) -> Result<()> {
    if !(t.is_positive() && *t < HighReal::one()) {
        return Err(Error::Domain(format!("t must lie strictly inside (0, 1), got {t}")));
    }
    Ok(())
}

/// f_C(t) = sum_w A_w (1+t)^((n-w)/2) (1-t)^(w/2).
pub fn f_c(w: &WeightEnumerator, t: &HighReal) -> Result<HighReal> {
    check_open(t)?;
    Ok(f_closed(w, t))
}

/// ln f_C(t), summed as max + ln(sum exp(L_w - max)).
pub fn ln_f_c(w: &WeightEnumerator, t: &HighReal) -> Result<HighReal> {
    check_open(t)?;
    Ok(ln_f_closed(w, t))
}

/// f_C on the closed interval [0, 1].
pub(crate) fn f_closed(w: &WeightEnumerator, t: &HighReal) -> HighReal {
    if w.n() >= LOG_DOMAIN_MIN_N {
        return ln_f_closed(w, t).exp();
    }
    let s = (HighReal::one() + t).sqrt();
    let r = (HighReal::one() - t).sqrt();
    crate::theta::homogeneous_eval(w, &s, &r)
}

pub(crate) fn ln_f_closed(w: &WeightEnumerator, t: &HighReal) -> HighReal {
    let n = w.n();
    let two = HighReal::from_u64(2);
    let ls = (HighReal::one() + t).ln() / &two;
    let at_one = *t >= HighReal::one();
    let lr = if at_one { HighReal::zero() } else { (HighReal::one() - t).ln() / &two };
    let logs: Vec<HighReal> = w
        .support()
        .filter(|(wt, _)| !(at_one && *wt > 0))
        .map(|(wt, c)| {
            HighReal::from_biguint(c).ln() + &ls * HighReal::from_u64((n - wt) as u64) + &lr * HighReal::from_u64(wt as u64)
        })
        .collect();
    let max = logs.iter().skip(1).fold(logs[0].clone(), |m, x| m.max(x));
    let mut acc = CompensatedSum::default();
    for l in &logs {
        acc.add(&(l - &max).exp());
    }
    max + acc.value().ln()
}

/// ln f_C(t) in double precision, for coarse grids.
pub fn f_c_f64_ln(counts: &[f64], t: f64) -> f64 {
    let n = counts.len() - 1;
    let ls = 0.5 * (1.0 + t).ln();
    let lr = 0.5 * (1.0 - t).ln();
    let mut max = f64::NEG_INFINITY;
    let terms: Vec<f64> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0.0)
        .map(|(wt, &c)| {
            let l = c.ln() + (n - wt) as f64 * ls + if wt > 0 { wt as f64 * lr } else { 0.0 };
            max = max.max(l);
            l
        })
        .collect();
    max + terms.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}

fn half_n_ln2(n: usize) -> HighReal {
    HighReal::ln2() * HighReal::from_u64(n as u64) / HighReal::from_u64(2)
}

/// 2^(n/2) / f_C(t), via logarithms for large n.
fn xi_from_t(w: &WeightEnumerator, t: &HighReal) -> HighReal {
    let n = w.n();
    if n >= LOG_DOMAIN_MIN_N {
        (half_n_ln2(n) - ln_f_closed(w, t)).exp()
    } else {
        HighReal::from_u64(2).powi(n as u32 / 2) / f_closed(w, t)
    }
}

fn require_unit_volume(w: &WeightEnumerator) -> Result<()> {
    if !w.has_unit_volume() {
        return Err(Error::Normalization { n: w.n(), m: w.size().to_string() });
    }
    Ok(())
}

/// Xi(tau) = 2^(n/2) / f_C(t(tau)) for a code with 2^(n/2) words.
pub fn secrecy_function(w: &WeightEnumerator, tau: &HighReal) -> Result<HighReal> {
    require_unit_volume(w)?;
    let t = t_of_tau(tau)?;
    Ok(xi_from_t(w, &t))
}

/// Xi(tau) = theta3(i nu^2 tau)^n / Theta(i tau) for any code, with
/// nu^n = 2^(n/2) / M the volume of the packing.
pub fn secrecy_function_scaled(w: &WeightEnumerator, tau: &HighReal) -> Result<HighReal> {
    let nu2 = nu_squared(w);
    let num = jacobi_theta(ThetaKind::Three, &(&nu2 * tau))?.value.powi(w.n() as u32);
    Ok(num / theta_construction_a_numeric(w, tau)?)
}

/// nu^2 = (2^(n/2) / M)^(2/n).
fn nu_squared(w: &WeightEnumerator) -> HighReal {
    let n = HighReal::from_u64(w.n() as u64);
    let ln_vol = half_n_ln2(w.n()) - HighReal::from_biguint(&w.size()).ln();
    (ln_vol * HighReal::from_u64(2) / n).exp()
}

/// chi = Xi(1) = 2^(n/2) / f_C(1/sqrt 2).
pub fn weak_secrecy_gain(w: &WeightEnumerator) -> Result<HighReal> {
    require_unit_volume(w)?;
    Ok(xi_from_t(w, &symmetry_point()))
}

/// Relative residuals |Xi(tau0 tau) - Xi(tau0 / tau)| / Xi(tau0 tau) with tau0 = nu^-2.
///
/// With `nu = None` a code of size 2^(n/2) uses the t-form (tau0 = 1); any
/// other code uses the volume-derived nu.
pub fn symmetry_check(w: &WeightEnumerator, taus: &[f64], nu: Option<&HighReal>) -> Result<Vec<(f64, HighReal)>> {
    let unit = nu.is_none() && w.has_unit_volume();
    let tau0 = match nu {
        Some(v) => (v * v).recip(),
        None => nu_squared(w).recip(),
    };
    taus.iter()
        .map(|&tau| {
            if !(tau > 0.0) {
                return Err(Error::Domain(format!("tau must be positive, got {tau}")));
            }
            let t = HighReal::from_f64(tau);
            let (a, b) = if unit {
                (secrecy_function(w, &t)?, secrecy_function(w, &t.recip())?)
            } else {
                (
                    scaled_with(w, &(&tau0 * &t), nu)?,
                    scaled_with(w, &(&tau0 / &t), nu)?,
                )
            };
            Ok((tau, (&a - &b).abs() / a))
        })
        .collect()
}

fn scaled_with(w: &WeightEnumerator, tau: &HighReal, nu: Option<&HighReal>) -> Result<HighReal> {
    match nu {
        None => secrecy_function_scaled(w, tau),
        Some(v) => {
            let num = jacobi_theta(ThetaKind::Three, &(v * v * tau))?.value.powi(w.n() as u32);
            Ok(num / theta_construction_a_numeric(w, tau)?)
        }
    }
}

/// Samples of Xi on a grid of tau in decibels: returns (tau_db, Xi).
pub fn secrecy_curve(w: &WeightEnumerator, db_min: f64, db_max: f64, points: usize, parallel: bool) -> Result<Vec<(f64, f64)>> {
    require_unit_volume(w)?;
    if points < 2 || !(db_max > db_min) {
        return Err(Error::Domain("curve needs at least two points and db_max > db_min".into()));
    }
    par::map_range(points, parallel, |i| {
        let db = db_min + (db_max - db_min) * i as f64 / (points - 1) as f64;
        let tau = if db == 0.0 { HighReal::one() } else { HighReal::from_u64(10).powf(&HighReal::from_f64(db / 10.0)) };
        Ok((db, secrecy_function(w, &tau)?.to_f64()))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug)]
pub struct GainOptions {
    pub grid: usize,
    /// Golden-section stops below this bracket width in t.
    pub tol: f64,
    pub parallel: bool,
}

impl Default for GainOptions {
    fn default() -> Self {
        GainOptions { grid: 1024, tol: 1e-14, parallel: par::DEFAULT_PARALLEL }
    }
}

#[derive(Clone, Debug)]
pub struct StrongGain {
    pub xi: HighReal,
    pub weak: HighReal,
    pub t_star: HighReal,
    pub conjecture_verified: bool,
    /// f_C is constant on the grid; every t is a minimizer.
    pub flat: bool,
    /// Local-minimum basins found on the grid.
    pub basins: usize,
}

impl StrongGain {
    /// tau* = tau_of_t(t*); `None` when t* sits at an end of (0, 1).
    pub fn tau_star(&self) -> Option<HighReal> {
        tau_of_t(&self.t_star).ok()
    }
}

/// xi = sup Xi, found by minimizing f_C over (0, 1): a coarse grid locates
/// every local basin, each is refined by golden-section search.
pub fn strong_secrecy_gain(w: &WeightEnumerator, opts: &GainOptions) -> Result<StrongGain> {
    require_unit_volume(w)?;
    let g = opts.grid.max(8);
    let counts = w.counts_f64();
    let ts: Vec<f64> = (0..=g + 1).map(|i| i as f64 / (g + 1) as f64).collect();
    let lf: Vec<f64> = (1..=g).map(|i| f_c_f64_ln(&counts, ts[i])).collect();

    let sym = symmetry_point();
    let weak = xi_from_t(w, &sym);
    let (lo, hi) = lf.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if hi - lo < 1e-13 {
        return Ok(StrongGain { xi: weak.clone(), weak, t_star: sym, conjecture_verified: true, flat: true, basins: 1 });
    }

    // lf[j] is the value at ts[j + 1]
    let mut brackets = Vec::new();
    let mut j = 0;
    while j < g {
        let left = if j == 0 { f64::INFINITY } else { lf[j - 1] };
        let right = if j + 1 == g { f64::INFINITY } else { lf[j + 1] };
        if lf[j] <= left && lf[j] <= right {
            let mut k = j;
            while k + 1 < g && lf[k + 1] == lf[j] {
                k += 1;
            }
            brackets.push((ts[j], ts[k + 2]));
            j = k + 1;
        } else {
            j += 1;
        }
    }

    let tol = HighReal::from_f64(opts.tol);
    let refined = par::map_slice(&brackets, opts.parallel, |&(a, b)| {
        golden_section(|t| Ok(f_closed(w, t)), &HighReal::from_f64(a), &HighReal::from_f64(b), &tol)
    });
    let mut best_t = sym.clone();
    let mut best_f = f_closed(w, &sym);
    for r in refined {
        let (t, f) = r?;
        if f < best_f {
            best_f = f;
            best_t = t;
        }
    }
    let xi = xi_from_t(w, &best_t).max(&weak);
    let conjecture_verified = (&best_t - &sym).abs().to_f64() < 1e-8;
    Ok(StrongGain { xi, weak, t_star: best_t, conjecture_verified, flat: false, basins: brackets.len() })
}
