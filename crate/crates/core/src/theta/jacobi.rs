use crate::error::{Error, Result};
use crate::highreal::{HighReal, PREC};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Two,
    Three,
    Four,
}

impl ThetaKind {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            2 => Ok(ThetaKind::Two),
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            _ => Err(Error::Domain(format!("theta kind must be 2, 3 or 4, got {k}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub value: HighReal,
    /// Bound on the relative truncation error of the series.
    pub tail_bound: f64,
    /// Number of series terms summed.
    pub terms: usize,
}

/// Terms below 2^-(PREC + 16) of the leading term are dropped.
fn cutoff() -> HighReal {
    HighReal::from_u64(2).powi(PREC as u32 + 16).recip()
}

/// Direct q-series at nome q = e^(-pi tau), intended for tau >= 1 where q <= e^-pi.
/// Returns (theta2, theta3, theta4) together with the largest relative tail bound.
fn direct(tau: &HighReal) -> ([HighReal; 3], f64, usize) {
    let quarter = (-(HighReal::pi() * tau) / HighReal::from_u64(4)).exp();
    let q = quarter.powi(4);
    let q2 = &q * &q;
    let eps = cutoff();
    let one_minus_q = (HighReal::one() - &q).to_f64();

    // sum_{m>=1} q^(m^2) and its alternating twin
    let mut s3 = HighReal::zero();
    let mut s4 = HighReal::zero();
    let mut term = q.clone();
    let mut ratio = &q * &q2; // q^(2m+1) for m = 1
    let mut m = 1usize;
    while term > eps {
        s3 = &s3 + &term;
        if m % 2 == 1 {
            s4 = &s4 - &term;
        } else {
            s4 = &s4 + &term;
        }
        term = &term * &ratio;
        ratio = &ratio * &q2;
        m += 1;
    }
    let tail34 = 2.0 * term.to_f64() / one_minus_q;
    let two = HighReal::from_u64(2);
    let th3 = HighReal::one() + &two * &s3;
    let th4 = HighReal::one() + &two * &s4;

    // theta2 = 2 q^(1/4) sum_{m>=0} q^(m(m+1))
    let mut s2 = HighReal::zero();
    let mut t2 = HighReal::one();
    let mut r2 = q2.clone(); // q^(2(m+1)) for m = 0
    let mut m2 = 0usize;
    while t2 > eps {
        s2 = &s2 + &t2;
        t2 = &t2 * &r2;
        r2 = &r2 * &q2;
        m2 += 1;
    }
    let tail2 = t2.to_f64() / one_minus_q;
    let th2 = two * quarter * s2;

    let rel4 = tail34 / th4.to_f64();
    ([th2, th3, th4], tail2.max(tail34).max(rel4), m.max(m2))
}

fn check_tau(tau: &HighReal) -> Result<()> {
    if !tau.is_positive() || !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be positive and finite, got {tau}")));
    }
    Ok(())
}

/// (theta2, theta3, theta4) at z = i tau. Below tau = 1 the modular relations
/// theta3(i tau) = tau^(-1/2) theta3(i/tau), theta2 <-> theta4 are used so the
/// nome never exceeds e^-pi.
fn triple(tau: &HighReal) -> Result<([HighReal; 3], f64, usize)> {
    check_tau(tau)?;
    if *tau >= HighReal::one() {
        return Ok(direct(tau));
    }
    let inv = tau.recip();
    let ([t2, t3, t4], bound, terms) = direct(&inv);
    let f = tau.sqrt().recip();
    Ok(([&f * &t4, &f * &t3, &f * &t2], bound, terms))
}

pub fn jacobi_theta(kind: ThetaKind, tau: &HighReal) -> Result<ThetaValue> {
    let (vals, tail_bound, terms) = triple(tau)?;
    let [t2, t3, t4] = vals;
    let value = match kind {
        ThetaKind::Two => t2,
        ThetaKind::Three => t3,
        ThetaKind::Four => t4,
    };
    Ok(ThetaValue { value, tail_bound, terms })
}

/// (theta3(i tau), theta4(i tau)) from one shared series evaluation.
pub fn theta_pair_34(tau: &HighReal) -> Result<(HighReal, HighReal)> {
    let ([_, t3, t4], _, _) = triple(tau)?;
    Ok((t3, t4))
}

/// s(tau) = theta4(i tau) / theta3(i tau).
pub fn s_of_tau(tau: &HighReal) -> Result<HighReal> {
    let (t3, t4) = theta_pair_34(tau)?;
    Ok(t4 / t3)
}

/// t(tau) = s(tau)^2.
pub fn t_of_tau(tau: &HighReal) -> Result<HighReal> {
    let s = s_of_tau(tau)?;
    Ok(&s * &s)
}

/// Low-precision check value: s(tau) = prod_{m>=1} tanh^2((m - 1/2) pi tau), returned squared.
pub fn t_product_form(tau: f64) -> Result<f64> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let mut p = 1.0f64;
    let mut m = 1.0f64;
    loop {
        let th = ((m - 0.5) * std::f64::consts::PI * tau).tanh();
        p *= th * th;
        if 1.0 - th * th < 1e-18 || m > 1e7 {
            break;
        }
        m += 1.0;
    }
    Ok(p * p)
}

/// Inverse of `t_of_tau` by bisection in log tau; the bracket is closed to
/// 1e-20 absolute (relative for tau > 1).
pub fn tau_of_t(t: &HighReal) -> Result<HighReal> {
    if !(t.is_positive() && *t < HighReal::one()) {
        return Err(Error::Domain(format!("t must lie strictly inside (0, 1), got {t}")));
    }
    let two = HighReal::from_u64(2);
    let mut lo = HighReal::one();
    while t_of_tau(&lo)? >= *t {
        lo = &lo / &two;
        if lo.to_f64() < 1e-6 {
            return Err(Error::Domain(format!("t = {t} is too close to 0")));
        }
    }
    let mut hi = HighReal::one();
    while t_of_tau(&hi)? <= *t {
        hi = &hi * &two;
        if hi.to_f64() > 1e6 {
            return Err(Error::Domain(format!("t = {t} is too close to 1")));
        }
    }
    let tol = HighReal::parse("1e-20").expect("literal");
    loop {
        let width = &hi - &lo;
        let scale = if hi > HighReal::one() { hi.clone() } else { HighReal::one() };
        if width <= &tol * &scale {
            break;
        }
        // geometric midpoint while the bracket is wide, arithmetic afterwards
        let mid = if (&hi / &lo).to_f64() > 1.5 { (&hi * &lo).sqrt() } else { (&hi + &lo) / &two };
        if t_of_tau(&mid)? < *t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highreal::close;

    fn hr(x: f64) -> HighReal {
        HighReal::from_f64(x)
    }

    #[test]
    fn domain_errors() {
        assert!(jacobi_theta(ThetaKind::Three, &hr(0.0)).is_err());
        assert!(jacobi_theta(ThetaKind::Three, &hr(-1.0)).is_err());
        assert!(tau_of_t(&hr(1.0)).is_err());
        assert!(tau_of_t(&hr(0.0)).is_err());
    }

    #[test]
    fn theta3_over_theta4_at_i() {
        let t3 = jacobi_theta(ThetaKind::Three, &HighReal::one()).unwrap();
        let t4 = jacobi_theta(ThetaKind::Four, &HighReal::one()).unwrap();
        let r = &t3.value / &t4.value;
        let q = HighReal::from_u64(2).sqrt().sqrt();
        assert!(close(&r, &q, 1e-60));
        assert!(t3.tail_bound < 1e-40);
    }

    #[test]
    fn continuous_across_switch() {
        let a = jacobi_theta(ThetaKind::Four, &hr(0.999999)).unwrap().value;
        let b = jacobi_theta(ThetaKind::Four, &hr(1.000001)).unwrap().value;
        assert!((a - b).abs().to_f64() < 1e-5);
    }

    #[test]
    fn product_form_agrees() {
        for &tau in &[0.3, 1.0, 2.5] {
            let t = t_of_tau(&hr(tau)).unwrap().to_f64();
            assert!((t - t_product_form(tau).unwrap()).abs() < 1e-13, "tau = {tau}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let tau = hr(0.37);
        let t = t_of_tau(&tau).unwrap();
        let back = tau_of_t(&t).unwrap();
        assert!(close(&back, &tau, 1e-18));
    }
}
