//! Multi-precision reals on top of `astro_float`.
//!
//! Every value carries the same working precision (`PREC` bits). Operations
//! round to nearest-even.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Working precision in bits (about 96 significant decimal digits).
pub const PREC: usize = 320;

/// Decimal digits carried by `PREC`.
pub const DIGITS: usize = 96;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct HighReal(BigFloat);

impl HighReal {
    pub fn zero() -> Self {
        HighReal(BigFloat::from_u8(0, PREC))
    }

    pub fn one() -> Self {
        HighReal(BigFloat::from_u8(1, PREC))
    }

    pub fn from_u64(v: u64) -> Self {
        HighReal(BigFloat::from_u64(v, PREC))
    }

    pub fn from_i64(v: i64) -> Self {
        HighReal(BigFloat::from_i64(v, PREC))
    }

    pub fn from_f64(v: f64) -> Self {
        HighReal(BigFloat::from_f64(v, PREC))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        if let Some(small) = v.to_u128() {
            return HighReal(BigFloat::from_u128(small, PREC));
        }
        let base = BigFloat::from_u128(1u128 << 64, PREC);
        let mut acc = BigFloat::from_u8(0, PREC);
        for d in v.iter_u64_digits().rev() {
            acc = acc.mul(&base, PREC, RM).add(&BigFloat::from_u64(d, PREC), PREC, RM);
        }
        HighReal(acc)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = Self::from_biguint(v.magnitude());
        if v.is_negative() {
            -m
        } else {
            m
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    /// Parses a decimal literal such as `"2.2068965517"` or `"1e-30"`.
    pub fn parse(s: &str) -> Option<Self> {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(HighReal(v))
        }
    }

    pub fn pi() -> Self {
        HighReal(with_cc(|cc| cc.pi(PREC, RM)))
    }

    pub fn ln2() -> Self {
        HighReal(with_cc(|cc| cc.ln_2(PREC, RM)))
    }

    pub fn sqrt(&self) -> Self {
        HighReal(self.0.sqrt(PREC, RM))
    }

    pub fn exp(&self) -> Self {
        HighReal(with_cc(|cc| self.0.exp(PREC, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        HighReal(with_cc(|cc| self.0.ln(PREC, RM, cc)))
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &HighReal) -> Self {
        (self.ln() * y).exp()
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one();
        }
        HighReal(self.0.powi(n as usize, PREC, RM))
    }

    pub fn tanh(&self) -> Self {
        HighReal(with_cc(|cc| self.0.tanh(PREC, RM, cc)))
    }

    pub fn abs(&self) -> Self {
        HighReal(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        HighReal(self.0.reciprocal(PREC, RM))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest `f64`; saturates to infinity beyond the double range.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let (words, _, sign, e, _) = self.0.as_raw_parts().expect("finite value");
        let top = *words.last().expect("non-empty mantissa");
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        // mantissa is 0.top next ... in base 2^64
        let m = top as f64 + next as f64 / 18446744073709551616.0;
        let e = e as i64 - 64;
        let mag = if e > 2000 {
            f64::INFINITY
        } else if e < -2000 {
            0.0
        } else {
            m * 2f64.powi(e as i32)
        };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Natural logarithm of |self| as `f64`, valid far outside the double range.
    pub fn ln_abs_f64(&self) -> f64 {
        self.abs().ln().to_f64()
    }

    pub fn log10_abs_f64(&self) -> f64 {
        self.ln_abs_f64() / std::f64::consts::LN_10
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        let neg = self.0.is_negative();
        let a = self.0.abs();
        let mut s = with_cc(|cc| a.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        // astro-float renders as d.ddddde±x
        if let Some(epos) = s.find('e') {
            let exp: i64 = s[epos + 1..].parse().unwrap_or(0);
            let mant: String = s[..epos].chars().filter(|c| *c != '.').collect();
            let digits = digits.min(mant.len()).max(1);
            let mant = round_digits(&mant, digits);
            let (mant, exp) = if mant.len() > digits { (mant[..digits].to_string(), exp + 1) } else { (mant, exp) };
            s = if (-6..21).contains(&exp) {
                plain_decimal(&mant, exp)
            } else {
                let mut r = mant[..1].to_string();
                if mant.len() > 1 {
                    r.push('.');
                    r.push_str(mant[1..].trim_end_matches('0'));
                    if r.ends_with('.') {
                        r.pop();
                    }
                }
                format!("{r}e{exp}")
            };
        }
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }
}

fn round_digits(mant: &str, digits: usize) -> String {
    let bytes: Vec<u8> = mant.bytes().map(|b| b - b'0').collect();
    let mut kept: Vec<u8> = bytes[..digits].to_vec();
    if bytes.len() > digits && bytes[digits] >= 5 {
        let mut i = digits;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    kept.iter().map(|d| (d + b'0') as char).collect()
}

fn plain_decimal(mant: &str, exp: i64) -> String {
    let mut out = String::new();
    if exp < 0 {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(mant);
    } else {
        let int_len = exp as usize + 1;
        if mant.len() <= int_len {
            out.push_str(mant);
            for _ in mant.len()..int_len {
                out.push('0');
            }
        } else {
            out.push_str(&mant[..int_len]);
            out.push('.');
            out.push_str(&mant[int_len..]);
        }
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

impl fmt::Display for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(40);
        f.write_str(&self.to_string_digits(d))
    }
}

impl fmt::Debug for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighReal({})", self.to_string_digits(30))
    }
}

impl PartialEq for HighReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for HighReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&HighReal> for &HighReal {
            type Output = HighReal;
            fn $m(self, rhs: &HighReal) -> HighReal {
                HighReal(self.0.$op(&rhs.0, PREC, RM))
            }
        }
        impl $tr<HighReal> for HighReal {
            type Output = HighReal;
            fn $m(self, rhs: HighReal) -> HighReal {
                HighReal(self.0.$op(&rhs.0, PREC, RM))
            }
        }
        impl $tr<&HighReal> for HighReal {
            type Output = HighReal;
            fn $m(self, rhs: &HighReal) -> HighReal {
                HighReal(self.0.$op(&rhs.0, PREC, RM))
            }
        }
        impl $tr<HighReal> for &HighReal {
            type Output = HighReal;
            fn $m(self, rhs: HighReal) -> HighReal {
                HighReal(self.0.$op(&rhs.0, PREC, RM))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        HighReal(self.0.neg())
    }
}

impl Neg for &HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        HighReal(self.0.clone().neg())
    }
}

impl std::iter::Sum for HighReal {
    fn sum<I: Iterator<Item = HighReal>>(iter: I) -> HighReal {
        iter.fold(HighReal::zero(), |a, b| a + b)
    }
}

impl From<u64> for HighReal {
    fn from(v: u64) -> Self {
        HighReal::from_u64(v)
    }
}

impl From<&BigUint> for HighReal {
    fn from(v: &BigUint) -> Self {
        HighReal::from_biguint(v)
    }
}

/// Neumaier-compensated accumulator. At `PREC` bits it is rarely needed,
/// but large enumerators sum up to n+1 terms of very different magnitude.
#[derive(Clone, Debug)]
pub struct CompensatedSum {
    sum: HighReal,
    comp: HighReal,
}

impl Default for CompensatedSum {
    fn default() -> Self {
        CompensatedSum { sum: HighReal::zero(), comp: HighReal::zero() }
    }
}

impl CompensatedSum {
    pub fn add(&mut self, x: &HighReal) {
        let t = &self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = &self.comp + &((&self.sum - &t) + x);
        } else {
            self.comp = &self.comp + &((x - &t) + &self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> HighReal {
        &self.sum + &self.comp
    }
}

/// Returns true when `a` and `b` agree to `rel` relative to `|b|` (absolute if `b == 0`).
pub fn close(a: &HighReal, b: &HighReal, rel: f64) -> bool {
    let d = (a - b).abs();
    if b.is_zero() {
        return d.to_f64() <= rel;
    }
    (d / b.abs()).to_f64() <= rel
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_digits() {
        let s = HighReal::from_u64(2).sqrt();
        assert_eq!(s.to_string_digits(20), "1.4142135623730950488");
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn big_integers_round_trip() {
        let v: BigUint = BigUint::from(3u32).pow(150);
        let h = HighReal::from_biguint(&v);
        let back = HighReal::parse(&v.to_string()).unwrap();
        assert!(close(&h, &back, 1e-90));
    }

    #[test]
    fn formatting() {
        assert_eq!(HighReal::from_u64(1234).to_string_digits(10), "1234");
        assert_eq!((HighReal::one() / HighReal::from_u64(8)).to_string_digits(10), "0.125");
        assert_eq!((HighReal::from_u64(2) / HighReal::from_u64(3)).to_string_digits(4), "0.6667");
        let tiny = HighReal::parse("1e-40").unwrap();
        assert_eq!(tiny.to_string_digits(5), "1e-40");
        assert_eq!((-HighReal::from_u64(5)).to_string_digits(3), "-5");
    }

    #[test]
    fn log_domain_beyond_double() {
        let big = HighReal::from_u64(10).powi(400);
        assert!(big.to_f64().is_infinite());
        assert!((big.log10_abs_f64() - 400.0).abs() < 1e-9);
    }
}
