use crate::code::WeightEnumerator;
use crate::error::{Error, Result};
use crate::poly::{qi, solve_exact, RatPoly, Q};
use num_bigint::BigInt;
use num_traits::One;

/// f_C(t) / 2^(n/2) = sum_r a_r h(t)^r with h(t) = t^4 - t^2 + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GleasonCoeffs {
    pub a: Vec<Q>,
    pub residual_ok: bool,
}

pub(crate) fn h_poly() -> RatPoly {
    RatPoly::from_ints(&[1, 0, -1, 0, 1])
}

impl GleasonCoeffs {
    /// sum_r a_r h(t)^r as a polynomial in t.
    pub fn expand(&self) -> RatPoly {
        let h = h_poly();
        let mut acc = RatPoly::zero();
        let mut hp = RatPoly::constant(Q::one());
        for a in &self.a {
            acc = acc.add(&hp.scale(a));
            hp = hp.mul(&h);
        }
        acc
    }
}

/// f_C(t) / 2^(n/2) as an exact polynomial; weights must be even.
pub(crate) fn normalized_f_poly(w: &WeightEnumerator) -> Result<RatPoly> {
    if !w.is_even() {
        return Err(Error::Precondition("code has odd weights; the polynomial form needs an even code".into()));
    }
    let n = w.n();
    let plus = RatPoly::from_ints(&[1, 1]);
    let minus = RatPoly::from_ints(&[1, -1]);
    let mut f = RatPoly::zero();
    for (wt, c) in w.support() {
        let term = plus.pow(((n - wt) / 2) as u32).mul(&minus.pow((wt / 2) as u32));
        f = f.add(&term.scale(&Q::from_integer(BigInt::from(c.clone()))));
    }
    let norm = Q::from_integer(BigInt::one() << (n / 2));
    Ok(f.scale(&(Q::one() / norm)))
}

/// Solves for a_0..a_{floor(n/8)} exactly. The system has more equations than
/// unknowns; every surplus coefficient must match.
pub fn gleason_decompose(w: &WeightEnumerator) -> Result<GleasonCoeffs> {
    let f = normalized_f_poly(w)?;
    let r_max = w.n() / 8;
    let h = h_poly();
    let mut hp = vec![RatPoly::constant(Q::one())];
    for r in 1..=r_max {
        hp.push(hp[r - 1].mul(&h));
    }
    let deg = f.degree().unwrap_or(0).max(4 * r_max);
    let a: Vec<Vec<Q>> = (0..=deg).map(|j| hp.iter().map(|p| p.coeff(j)).collect()).collect();
    let b: Vec<Q> = (0..=deg).map(|j| f.coeff(j)).collect();
    let sol = solve_exact(&a, &b);
    if !sol.consistent {
        return Err(Error::NotGleasonRepresentable("surplus coefficients do not match".into()));
    }
    let coeffs = GleasonCoeffs { a: sol.x, residual_ok: true };
    let total: Q = coeffs.a.iter().sum();
    if total != qi(1) {
        return Err(Error::NotGleasonRepresentable(format!("coefficients sum to {total}, not 1")));
    }
    debug_assert!(coeffs.expand().sub(&f).is_zero());
    Ok(coeffs)
}
