//! Orthonormal spherical harmonics with the Condon–Shortley phase.

use crate::error::{Error, Result};
use crate::scalar::{cis, Cplx, Real};

/// Highest supported degree.
pub const MAX_DEGREE: i32 = 4;

/// Associated Legendre function `P_l^m(x)` for `0 ≤ m ≤ l`, including the
/// `(−1)^m` phase.
fn assoc_legendre<T: Real>(l: i32, m: i32, x: T) -> T {
    let one = T::one();
    let somx2 = ((one - x) * (one + x)).max(T::zero()).sqrt();
    let mut pmm = one;
    let mut fact = one;
    for _ in 0..m {
        pmm = -pmm * fact * somx2;
        fact = fact + T::lit(2.0);
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * T::lit(f64::from(2 * m + 1)) * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = T::zero();
    for ll in (m + 2)..=l {
        pll = (x * T::lit(f64::from(2 * ll - 1)) * pmmp1 - T::lit(f64::from(ll + m - 1)) * pmm)
            / T::lit(f64::from(ll - m));
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

fn factorial(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `Y_l^m(θ, φ)` for `|m| ≤ l ≤ 4`.
pub fn spherical_harmonic<T: Real>(l: i32, m: i32, theta: T, phi: T) -> Result<Cplx<T>> {
    if !(0..=MAX_DEGREE).contains(&l) || m.abs() > l {
        return Err(Error::BadQuantumNumbers { l, m });
    }
    let mu = m.abs();
    let norm = ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * factorial(l - mu)
        / factorial(l + mu))
    .sqrt();
    let positive =
        cis(T::lit(f64::from(mu)) * phi) * (T::lit(norm) * assoc_legendre(l, mu, theta.cos()));
    if m >= 0 {
        Ok(positive)
    } else {
        let sign = if mu % 2 == 0 { T::one() } else { -T::one() };
        Ok(positive.conj() * sign)
    }
}

/// Relative weights of correlated and anticorrelated photon-polarization
/// outcomes at `θ = φ = π/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationWeights<T> {
    /// `2 |Y₂²(π/2, π/2)|²`.
    pub corr: T,
    /// `|Y₂⁰(π/2, π/2)|²`.
    pub anti: T,
    pub ratio: T,
}

pub fn gg_correlation_weights<T: Real>() -> CorrelationWeights<T> {
    let half_pi = T::FRAC_PI_2();
    let y22 = spherical_harmonic(2, 2, half_pi, half_pi).expect("valid quantum numbers");
    let y20 = spherical_harmonic(2, 0, half_pi, half_pi).expect("valid quantum numbers");
    let corr = T::lit(2.0) * y22.norm_sqr();
    let anti = y20.norm_sqr();
    CorrelationWeights {
        corr,
        anti,
        ratio: corr / anti,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn y00() {
        let y = spherical_harmonic(0, 0, 0.4, 2.0).unwrap();
        assert_abs_diff_eq!(y.re, 1.0 / (4.0 * PI).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(y.im, 0.0);
    }

    #[test]
    fn known_low_degree_values() {
        let (t, p) = (0.7_f64, 1.3_f64);
        let y10 = spherical_harmonic(1, 0, t, p).unwrap();
        assert_abs_diff_eq!(y10.re, (3.0 / (4.0 * PI)).sqrt() * t.cos(), epsilon = 1e-15);
        let y11 = spherical_harmonic(1, 1, t, p).unwrap();
        let expect = -(3.0 / (8.0 * PI)).sqrt() * t.sin();
        assert_abs_diff_eq!(y11.re, expect * p.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(y11.im, expect * p.sin(), epsilon = 1e-15);
        let y1m1 = spherical_harmonic(1, -1, t, p).unwrap();
        assert_abs_diff_eq!(y1m1.re, -expect * p.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(y1m1.im, expect * p.sin(), epsilon = 1e-15);
        let y2m2 = spherical_harmonic(2, -2, t, p).unwrap();
        let expect = 0.25 * (15.0 / (2.0 * PI)).sqrt() * t.sin().powi(2);
        assert_abs_diff_eq!(y2m2.re, expect * (2.0 * p).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(y2m2.im, -expect * (2.0 * p).sin(), epsilon = 1e-15);
        let y40 = spherical_harmonic(4, 0, t, p).unwrap();
        let c = t.cos();
        let expect = 3.0 / 16.0 / PI.sqrt() * (35.0 * c.powi(4) - 30.0 * c * c + 3.0);
        assert_abs_diff_eq!(y40.re, expect, epsilon = 1e-14);
    }

    #[test]
    fn polarization_weights() {
        let w = gg_correlation_weights::<f64>();
        assert_abs_diff_eq!(w.corr, 15.0 / (16.0 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(w.anti, 5.0 / (16.0 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(w.ratio, 3.0, epsilon = 1e-12);
        let y22 = spherical_harmonic(2, 2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(y22.norm_sqr(), 15.0 / (32.0 * PI), epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_numbers() {
        assert!(matches!(
            spherical_harmonic(2, 3, 0.0_f64, 0.0),
            Err(Error::BadQuantumNumbers { l: 2, m: 3 })
        ));
        assert!(spherical_harmonic(5, 0, 0.0_f64, 0.0).is_err());
        assert!(spherical_harmonic(-1, 0, 0.0_f64, 0.0).is_err());
    }
}
