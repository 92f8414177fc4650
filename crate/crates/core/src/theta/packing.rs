use super::jacobi::{jacobi_theta, ThetaKind};
use super::qseries::QSeries;
use crate::code::WeightEnumerator;
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default series order in half-units (exponents below 32).
pub const DEFAULT_ORDER: usize = 64;

/// theta3(2z) = sum q^(2 m^2) and theta2(2z) = sum q^(2 (m + 1/2)^2) in half-units.
fn theta_pair_2z(order: usize) -> Result<(QSeries, QSeries)> {
    let mut a = QSeries::zero(order)?;
    let mut b = QSeries::zero(order)?;
    let two = BigInt::from(2);
    a.add_term(0, &BigInt::one());
    let mut m = 1usize;
    while 4 * m * m < order {
        a.add_term(4 * m * m, &two);
        m += 1;
    }
    let mut m = 0usize;
    while (2 * m + 1) * (2 * m + 1) < order {
        b.add_term((2 * m + 1) * (2 * m + 1), &two);
        m += 1;
    }
    Ok((a, b))
}

/// Exact theta series W(theta3(2z), theta2(2z)) of the Construction A packing,
/// truncated to exponents below `order / 2`.
pub fn theta_construction_a_series(w: &WeightEnumerator, order: usize) -> Result<QSeries> {
    let (a, b) = theta_pair_2z(order)?;
    let n = w.n();
    let mut apow = vec![QSeries::one(order)?];
    for i in 1..=n {
        let next = &apow[i - 1] * &a;
        apow.push(next);
    }
    let mut total = QSeries::zero(order)?;
    let mut bpow = QSeries::one(order)?;
    let mut bdeg = 0usize;
    for (wt, count) in w.support() {
        if wt >= order {
            break;
        }
        while bdeg < wt {
            bpow = &bpow * &b;
            bdeg += 1;
        }
        let term = (&apow[n - wt] * &bpow).scale(&BigInt::from(count.clone()));
        total = &total + &term;
    }
    if total.is_zero() {
        return Err(Error::Series(format!("order {order} is too small to contain any nonzero term")));
    }
    Ok(total)
}

/// W(theta3(2 i tau), theta2(2 i tau)).
pub fn theta_construction_a_numeric(w: &WeightEnumerator, tau: &HighReal) -> Result<HighReal> {
    let tau2 = tau * HighReal::from_u64(2);
    let x = jacobi_theta(ThetaKind::Three, &tau2)?.value;
    let y = jacobi_theta(ThetaKind::Two, &tau2)?.value;
    Ok(homogeneous_eval(w, &x, &y))
}

/// sum_w A_w x^(n-w) y^w.
pub(crate) fn homogeneous_eval(w: &WeightEnumerator, x: &HighReal, y: &HighReal) -> HighReal {
    let n = w.n();
    let mut xp = vec![HighReal::one()];
    let mut yp = vec![HighReal::one()];
    for i in 1..=n {
        xp.push(&xp[i - 1] * x);
        yp.push(&yp[i - 1] * y);
    }
    let mut acc = HighReal::zero();
    for (wt, c) in w.support() {
        acc = acc + HighReal::from_biguint(c) * &xp[n - wt] * &yp[wt];
    }
    acc
}

/// Gamma = s * (union_j (u_j + c Z^n)), with s^2 = `scale_sq` rational.
#[derive(Clone, Debug)]
pub struct PeriodicPacking {
    pub scale_sq: BigRational,
    /// c in the base lattice c Z^n.
    pub base: i64,
    pub translates: Vec<Vec<i64>>,
}

impl PeriodicPacking {
    pub fn dim(&self) -> usize {
        self.translates.first().map(|t| t.len()).unwrap_or(0)
    }

    fn validate(&self) -> Result<()> {
        if !self.scale_sq.is_positive() {
            return Err(Error::Domain("scale must be positive".into()));
        }
        if self.base <= 0 {
            return Err(Error::Domain("base lattice multiplier must be positive".into()));
        }
        let n = self.dim();
        if n == 0 {
            return Err(Error::Domain("packing needs at least one translate".into()));
        }
        if self.translates.iter().any(|t| t.len() != n) {
            return Err(Error::Domain("translates have different lengths".into()));
        }
        let reduced: Vec<Vec<i64>> =
            self.translates.iter().map(|t| t.iter().map(|x| x.mod_floor(&self.base)).collect()).collect();
        for i in 0..reduced.len() {
            for j in 0..i {
                if reduced[i] == reduced[j] {
                    return Err(Error::Domain(format!("translates {j} and {i} coincide modulo the base lattice")));
                }
            }
        }
        Ok(())
    }
}

/// Counts x in (u + c Z^n) with |x|^2 <= bound, by integer norm.
fn shell_counts(u: &[i64], c: i64, bound: i64, counts: &mut [u64]) {
    fn rec(u: &[i64], c: i64, left: i64, acc: i64, counts: &mut [u64]) {
        let Some((&ui, rest)) = u.split_first() else {
            counts[acc as usize] += 1;
            return;
        };
        let r = (left as f64).sqrt().floor() as i64 + 1;
        // x = c z + ui with |x| <= r
        let zlo = Integer::div_floor(&(-r - ui), &c);
        let zhi = Integer::div_floor(&(r - ui), &c) + 1;
        for z in zlo..=zhi {
            let x = c * z + ui;
            let x2 = x * x;
            if x2 <= left {
                rec(rest, c, left - x2, acc + x2, counts);
            }
        }
    }
    rec(u, c, bound, 0, counts);
}

/// Theta series of a periodic packing by lattice-point enumeration, for
/// exponents up to `max_norm` inclusive.
///
/// With 0 among the translates the points are counted from the origin;
/// otherwise the average over translates of the series seen from each is used.
pub fn theta_periodic_packing(p: &PeriodicPacking, max_norm: &BigRational) -> Result<QSeries> {
    p.validate()?;
    if max_norm.is_negative() {
        return Err(Error::Domain("max_norm must be nonnegative".into()));
    }
    let order = (max_norm * BigInt::from(2)).floor().to_integer().to_usize().unwrap_or(usize::MAX) + 1;
    let bound_r = (max_norm / &p.scale_sq).floor().to_integer();
    let bound = bound_r.to_i64().filter(|&b| b < 1 << 24).ok_or_else(|| Error::Domain("max_norm too large".into()))?;

    let has_zero = p.translates.iter().any(|t| t.iter().all(|x| x.mod_floor(&p.base) == 0));
    let diffs: Vec<Vec<i64>> = if has_zero {
        p.translates.clone()
    } else {
        p.translates
            .iter()
            .flat_map(|a| p.translates.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x - y).collect()))
            .collect()
    };

    let mut counts = vec![0u64; bound as usize + 1];
    for u in &diffs {
        shell_counts(u, p.base, bound, &mut counts);
    }

    let mut series = QSeries::zero(order)?;
    let k_div = if has_zero { BigInt::one() } else { BigInt::from(p.translates.len()) };
    for (norm, &cnt) in counts.iter().enumerate() {
        if cnt == 0 {
            continue;
        }
        let e2 = &p.scale_sq * BigInt::from(norm) * BigInt::from(2);
        if !e2.is_integer() {
            return Err(Error::Series(format!("norm {norm} scales to {} which is not a half-integer", e2 / BigInt::from(2))));
        }
        let (q, r) = BigInt::from(cnt).div_rem(&k_div);
        if !r.is_zero() {
            return Err(Error::Series("averaged theta series is not integral".into()));
        }
        let k = e2.to_integer().to_usize().expect("nonnegative");
        series.add_term(k, &q);
    }
    if series.is_zero() {
        return Err(Error::Domain("max_norm is too small: no packing point within range".into()));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.integer_coeffs().unwrap().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn integer_lattice_gives_theta3() {
        let p = PeriodicPacking { scale_sq: BigRational::one(), base: 1, translates: vec![vec![0]] };
        let s = theta_periodic_packing(&p, &BigRational::from_integer(BigInt::from(9))).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn duplicate_translates_rejected() {
        let p = PeriodicPacking { scale_sq: BigRational::one(), base: 2, translates: vec![vec![0, 0], vec![2, 0]] };
        assert!(theta_periodic_packing(&p, &BigRational::one()).is_err());
    }

    #[test]
    fn zero_code_is_scaled_integer_lattice() {
        let w = WeightEnumerator::from_pairs(3, &[(0, 1)]).unwrap();
        let s = theta_construction_a_series(&w, 20).unwrap();
        let t = theta_pair_2z(20).unwrap().0.pow(3);
        assert_eq!(s, t);
    }
}
