//! Golden-section search in multi-precision arithmetic.

use crate::error::Result;
use crate::highreal::HighReal;

/// Minimizes a unimodal `f` on [a, b] until the bracket is narrower than `tol`.
/// Returns the best evaluated point and its value.
pub fn golden_section<F>(f: F, a: &HighReal, b: &HighReal, tol: &HighReal) -> Result<(HighReal, HighReal)>
where
    F: Fn(&HighReal) -> Result<HighReal>,
{
    let invphi = (HighReal::from_u64(5).sqrt() - HighReal::one()) / HighReal::from_u64(2);
    let mut a = a.clone();
    let mut b = b.clone();
    let mut c = &b - &(&invphi * &(&b - &a));
    let mut d = &a + &(&invphi * &(&b - &a));
    let mut fc = f(&c)?;
    let mut fd = f(&d)?;
    while (&b - &a) > *tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = &b - &(&invphi * &(&b - &a));
            fc = f(&c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = &a + &(&invphi * &(&b - &a));
            fd = f(&d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}
