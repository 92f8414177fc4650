use crate::error::{Error, Result};
use crate::highreal::HighReal;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::{Add, Mul};

/// Truncated power series in q^(1/2) with integer coefficients.
///
/// `coeffs[k]` is the coefficient of q^(k/2); terms with k >= `order` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Series("truncation order must be positive".into()));
        }
        Ok(QSeries { coeffs: vec![BigInt::zero(); order] })
    }

    pub fn one(order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        s.coeffs[0] = BigInt::one();
        Ok(s)
    }

    /// From coefficients indexed by twice the exponent.
    pub fn from_half_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Series("truncation order must be positive".into()));
        }
        Ok(QSeries { coeffs })
    }

    /// Truncation order in half-units: the series is exact for exponents < order / 2.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of q^(k/2).
    pub fn half_coeff(&self, k: usize) -> Option<&BigInt> {
        self.coeffs.get(k)
    }

    pub fn half_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_term(&mut self, k: usize, c: &BigInt) {
        if k < self.coeffs.len() {
            self.coeffs[k] += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries { coeffs: self.coeffs[..order.min(self.coeffs.len())].to_vec() }
    }

    pub fn scale(&self, c: &BigInt) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.order()).expect("positive order");
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients at integer exponents when no half-integer exponent occurs.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Sum at q = e^(-pi tau) (so q^(1/2) = e^(-pi tau / 2)).
    pub fn evaluate(&self, tau: &HighReal) -> HighReal {
        let half = (-(HighReal::pi() * tau) / HighReal::from_u64(2)).exp();
        let mut acc = HighReal::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &half + HighReal::from_bigint(c);
        }
        acc
    }

    /// `[[2 * exponent, "coefficient"], ...]` for the nonzero terms.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| serde_json::json!([k, c.to_string()]))
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(v: &serde_json::Value, order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        let arr = v.as_array().ok_or_else(|| Error::Series("expected a JSON list".into()))?;
        for item in arr {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Series("expected [k, c] pairs".into()))?;
            let k = pair[0].as_u64().ok_or_else(|| Error::Series("bad exponent".into()))? as usize;
            let c: BigInt = pair[1]
                .as_str()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Series("bad coefficient".into()))?;
            if k >= order {
                return Err(Error::Series(format!("exponent index {k} beyond order {order}")));
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries { coeffs: (0..order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta3(order: usize) -> QSeries {
        let mut s = QSeries::zero(order).unwrap();
        s.add_term(0, &BigInt::one());
        let mut m = 1;
        while 2 * m * m < order {
            s.add_term(2 * m * m, &BigInt::from(2));
            m += 1;
        }
        s
    }

    #[test]
    fn sum_of_two_squares() {
        // theta3^2 counts representations as a sum of two squares
        let s = theta3(20).pow(2);
        let ints: Vec<i64> = s.integer_coeffs().unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, 4, 4, 0, 4, 8, 0, 0, 4, 4]);
    }

    #[test]
    fn order_is_minimum() {
        let a = theta3(10);
        let b = theta3(6);
        assert_eq!((&a * &b).order(), 6);
        assert_eq!((&a + &b).order(), 6);
    }

    #[test]
    fn json_round_trip() {
        let s = theta3(12);
        let j = s.to_json();
        assert_eq!(j.to_string(), r#"[[0,"1"],[2,"2"],[8,"2"]]"#);
        assert_eq!(QSeries::from_json(&j, 12).unwrap(), s);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(QSeries::zero(0).is_err());
    }
}
