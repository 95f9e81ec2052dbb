//! One-dimensional golden-section maximization.

use crate::error::Result;
use crate::scalar::Real;

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `x_tol`. Returns the best abscissa seen and its value.
pub fn golden_section_max<T, F>(mut f: F, lo: T, hi: T, x_tol: T) -> Result<(T, T)>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0;
    while (b - a).abs() > x_tol && iterations < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}
