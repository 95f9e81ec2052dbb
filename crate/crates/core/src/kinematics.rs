//! Directions, analyzer axes and two-body decay kinematics.
//!
//! Perturbed kinematics are solved exactly on the mass shells; nothing here
//! is expanded in `|p|/M`.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::{self, Vec3};

/// Propagation direction given by polar angle `theta ∈ [0, π)` and azimuth
/// `phi ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction<T> {
    theta: T,
    phi: T,
}

impl<T: Real> Direction<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta < T::PI()) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta.as_f64(),
                range: "[0, pi)",
            });
        }
        if !(phi >= T::zero() && phi < T::TAU()) {
            return Err(Error::AngleOutOfRange {
                name: "phi",
                value: phi.as_f64(),
                range: "[0, 2pi)",
            });
        }
        Ok(Direction { theta, phi })
    }

    /// The Y axis, `θ = φ = π/2`: the only direction perpendicular to every
    /// analyzer in the XZ plane.
    pub fn along_y() -> Self {
        Direction {
            theta: T::FRAC_PI_2(),
            phi: T::FRAC_PI_2(),
        }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn unit_vector(&self) -> Vec3<T> {
        unit_vector(self.theta, self.phi)
    }
}

/// `(sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn unit_vector<T: Real>(theta: T, phi: T) -> Vec3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Measurement axis in the XZ plane (`φ = 0`), given by its polar angle.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AnalyzerAxis<T> {
    pub theta: T,
}

impl<T: Real> AnalyzerAxis<T> {
    pub fn new(theta: T) -> Self {
        AnalyzerAxis { theta }
    }

    pub fn unit_vector(&self) -> Vec3<T> {
        let (s, c) = self.theta.sin_cos();
        [s, T::zero(), c]
    }
}

/// Källén function `λ(a,b,c) = a² + b² + c² − 2ab − 2ac − 2bc`.
pub fn kallen<T: Real>(a: T, b: T, c: T) -> T {
    let two = T::lit(2.0);
    a * a + b * b + c * c - two * (a * b + a * c + b * c)
}

/// Rest-frame two-body kinematics of a parent of mass `parent_mass` decaying
/// into an antifermion (`m1`) and a fermion (`m2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayKinematics<T> {
    pub parent_mass: T,
    pub m1: T,
    pub m2: T,
    pub k_mag: T,
    pub eps1: T,
    pub eps2: T,
}

fn check_masses<T: Real>(parent: T, m1: T, m2: T) -> Result<()> {
    for m in [parent, m1, m2] {
        if m < T::zero() || !m.is_finite() {
            return Err(Error::NegativeMass(m.as_f64()));
        }
    }
    if parent <= m1 + m2 {
        return Err(Error::BelowThreshold {
            parent: parent.as_f64(),
            daughters: (m1 + m2).as_f64(),
        });
    }
    Ok(())
}

/// `k = √λ(M², m₁², m₂²) / 2M`, `εᵢ = √(k² + mᵢ²)`.
pub fn rest_frame_kinematics<T: Real>(parent_mass: T, m1: T, m2: T) -> Result<DecayKinematics<T>> {
    check_masses(parent_mass, m1, m2)?;
    let lambda = kallen(parent_mass * parent_mass, m1 * m1, m2 * m2).max(T::zero());
    let k_mag = lambda.sqrt() / (T::lit(2.0) * parent_mass);
    Ok(DecayKinematics {
        parent_mass,
        m1,
        m2,
        k_mag,
        eps1: (k_mag * k_mag + m1 * m1).sqrt(),
        eps2: (k_mag * k_mag + m2 * m2).sqrt(),
    })
}

/// `cosθ cosθ_a + sinθ sinθ_a cosφ`: cosine of the angle between the
/// propagation direction `(θ, φ)` and the analyzer axis `θ_a`.
pub fn coplanarity_residual<T: Real>(theta: T, phi: T, theta_a: T) -> T {
    theta.cos() * theta_a.cos() + theta.sin() * theta_a.sin() * phi.cos()
}

/// Source of the total pair momentum `|p| ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// The decaying particle itself moves: `E = √(M² + p²)`.
    Brownian,
    /// A massless unobserved quantum carries `−p ℓ`: `E = M − |p|`.
    Recoil,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scenario::Brownian => "brownian",
            Scenario::Recoil => "recoil",
        })
    }
}

impl std::str::FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brownian" => Ok(Scenario::Brownian),
            "recoil" => Ok(Scenario::Recoil),
            other => Err(format!(
                "unknown scenario '{other}' (expected brownian|recoil)"
            )),
        }
    }
}

/// Total momentum of the fermion pair, `|p| ℓ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perturbation<T> {
    pub p_mag: T,
    pub ell: Vec3<T>,
    pub scenario: Scenario,
}

impl<T: Real> Perturbation<T> {
    pub fn new(p_mag: T, ell: Vec3<T>, scenario: Scenario) -> Result<Self> {
        if !(p_mag >= T::zero()) || !p_mag.is_finite() {
            return Err(Error::InvalidPerturbation(format!(
                "|p| = {} must be >= 0",
                p_mag.as_f64()
            )));
        }
        let norm = vec3::norm(&ell);
        if (norm - T::one()).abs() > T::UNIT_TOL {
            return Err(Error::NonUnitVector {
                norm: norm.as_f64(),
            });
        }
        Ok(Perturbation {
            p_mag,
            ell,
            scenario,
        })
    }

    pub fn none(scenario: Scenario) -> Self {
        Perturbation {
            p_mag: T::zero(),
            ell: [T::one(), T::zero(), T::zero()],
            scenario,
        }
    }

    pub fn reversed(&self) -> Self {
        Perturbation {
            ell: vec3::scale(&self.ell, -T::one()),
            ..*self
        }
    }

    /// Energy shared by the pair for a parent of mass `parent_mass`.
    pub fn pair_energy(&self, parent_mass: T) -> T {
        match self.scenario {
            Scenario::Brownian => (parent_mass * parent_mass + self.p_mag * self.p_mag).sqrt(),
            Scenario::Recoil => parent_mass - self.p_mag,
        }
    }
}

/// Exact solution of `k₁ + k₂ = |p| ℓ`, `ε₁ + ε₂ = E` with the fermion
/// emitted along a fixed direction `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbedKinematics<T> {
    pub parent_mass: T,
    pub m1: T,
    pub m2: T,
    /// Antifermion momentum.
    pub k1: Vec3<T>,
    /// Fermion momentum, parallel to `n`.
    pub k2: Vec3<T>,
    pub eps1: T,
    pub eps2: T,
    pub energy: T,
}

impl<T: Real> PerturbedKinematics<T> {
    /// Residual `|k₁ + k₂ − p ℓ|` for the given perturbation.
    pub fn momentum_residual(&self, pert: &Perturbation<T>) -> T {
        let total = vec3::add(&self.k1, &self.k2);
        vec3::norm(&vec3::sub(&total, &vec3::scale(&pert.ell, pert.p_mag)))
    }

    pub fn energy_residual(&self) -> T {
        (self.eps1 + self.eps2 - self.energy).abs()
    }
}

const MAX_BISECTIONS: usize = 400;

/// Solves the perturbed two-body kinematics for a fermion emitted along `n`.
///
/// Requires `|p|/M < 1/2`. With `|p| = 0` the rest-frame solution is returned
/// exactly. The energy balance `f(x) = √(x² + m₂²) + √(|pℓ − x n|² + m₁²)` is
/// convex in the fermion momentum `x`; the root on the increasing branch is
/// the one that connects continuously to the rest frame.
pub fn perturbed_kinematics<T: Real>(
    parent_mass: T,
    m1: T,
    m2: T,
    pert: &Perturbation<T>,
    n: &Direction<T>,
) -> Result<PerturbedKinematics<T>> {
    check_masses(parent_mass, m1, m2)?;
    if pert.p_mag >= T::lit(0.5) * parent_mass {
        return Err(Error::InvalidPerturbation(format!(
            "|p|/M = {} must be below 0.5",
            (pert.p_mag / parent_mass).as_f64()
        )));
    }
    let dir = n.unit_vector();
    let energy = pert.pair_energy(parent_mass);

    if pert.p_mag == T::zero() {
        let rest = rest_frame_kinematics(parent_mass, m1, m2)?;
        return Ok(PerturbedKinematics {
            parent_mass,
            m1,
            m2,
            k1: vec3::scale(&dir, -rest.k_mag),
            k2: vec3::scale(&dir, rest.k_mag),
            eps1: rest.eps1,
            eps2: rest.eps2,
            energy: parent_mass,
        });
    }

    let p = pert.p_mag;
    let c = vec3::dot(&pert.ell, &dir);
    let k1_sqr = |x: T| (x * x - T::lit(2.0) * p * c * x + p * p).max(T::zero());
    let balance = |x: T| (x * x + m2 * m2).sqrt() + (k1_sqr(x) + m1 * m1).sqrt();
    let slope = |x: T| {
        let e2 = (x * x + m2 * m2).sqrt();
        let e1 = (k1_sqr(x) + m1 * m1).sqrt();
        let d2 = if e2 > T::zero() { x / e2 } else { T::one() };
        let d1 = if e1 > T::zero() {
            (x - p * c) / e1
        } else {
            T::zero()
        };
        d2 + d1
    };

    // minimum of the convex balance lies in [0, p]
    let (mut lo, mut hi) = (T::zero(), p);
    if slope(lo) >= T::zero() {
        hi = lo;
    } else {
        for _ in 0..MAX_BISECTIONS {
            let mid = T::lit(0.5) * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let x_min = hi;
    if balance(x_min) > energy {
        return Err(Error::NoSolution(format!(
            "minimum pair energy {} exceeds available {}",
            balance(x_min).as_f64(),
            energy.as_f64()
        )));
    }

    let (mut lo, mut hi) = (x_min, energy.max(x_min));
    for _ in 0..MAX_BISECTIONS {
        let mid = T::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if balance(mid) < energy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = if (balance(lo) - energy).abs() <= (balance(hi) - energy).abs() {
        lo
    } else {
        hi
    };

    let k2 = vec3::scale(&dir, x);
    let k1 = vec3::sub(&vec3::scale(&pert.ell, p), &k2);
    let eps2 = (x * x + m2 * m2).sqrt();
    let eps1 = (vec3::dot(&k1, &k1) + m1 * m1).sqrt();
    Ok(PerturbedKinematics {
        parent_mass,
        m1,
        m2,
        k1,
        k2,
        eps1,
        eps2,
        energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn unit_vector_examples() {
        assert_eq!(unit_vector(0.0, 0.0), [0.0, 0.0, 1.0]);
        let y = Direction::<f64>::along_y().unit_vector();
        assert_abs_diff_eq!(y[0], 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(y[1], 1.0, epsilon = 1e-16);
        assert_abs_diff_eq!(y[2], 0.0, epsilon = 1e-16);
    }

    #[test]
    fn direction_ranges_enforced() {
        assert!(Direction::new(PI, 0.0).is_err());
        assert!(Direction::new(0.5, 2.0 * PI).is_err());
        assert!(Direction::new(-0.1, 0.0).is_err());
        assert!(Direction::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn kallen_examples() {
        assert_eq!(kallen(1.0, 0.0, 0.0), 1.0);
        assert_abs_diff_eq!(kallen(1.0, 0.04, 0.04), 0.84, epsilon = 1e-15);
        assert_abs_diff_eq!(
            kallen(0.3, 1.7, 0.2),
            kallen(0.2, 0.3, 1.7),
            epsilon = 1e-15
        );
    }

    #[test]
    fn rest_frame_examples() {
        let k = rest_frame_kinematics(1.0, 0.0, 0.0).unwrap();
        assert_eq!((k.k_mag, k.eps1, k.eps2), (0.5, 0.5, 0.5));
        let k = rest_frame_kinematics(1.0, 0.2, 0.2).unwrap();
        assert_abs_diff_eq!(k.k_mag, 0.21f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(k.eps1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(k.eps1 + k.eps2, 1.0, epsilon = 1e-12);
        assert!(matches!(
            rest_frame_kinematics(1.0, 0.6, 0.6),
            Err(Error::BelowThreshold { .. })
        ));
        let k = rest_frame_kinematics(2.0, 0.3, 0.9).unwrap();
        assert_abs_diff_eq!(k.eps1 + k.eps2, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn coplanarity_examples() {
        for ta in [0.0, 0.3, 1.0, 2.5] {
            assert_abs_diff_eq!(
                coplanarity_residual(FRAC_PI_2, FRAC_PI_2, ta),
                0.0,
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            coplanarity_residual(0.0, 0.0, FRAC_PI_2),
            0.0,
            epsilon = 1e-16
        );
        assert_eq!(coplanarity_residual(0.0, 0.0, 0.0), 1.0);
    }

    #[test]
    fn unperturbed_is_rest_frame() {
        let n = Direction::new(1.0, 0.4).unwrap();
        let pk = perturbed_kinematics(1.0, 0.1, 0.1, &Perturbation::none(Scenario::Brownian), &n)
            .unwrap();
        let rest = rest_frame_kinematics(1.0, 0.1, 0.1).unwrap();
        assert_eq!(pk.eps1, rest.eps1);
        assert_eq!(pk.eps2, rest.eps2);
        assert_eq!(vec3::norm(&pk.k2), rest.k_mag);
    }

    #[test]
    fn brownian_energy_budget() {
        let pert = Perturbation::new(0.01, [1.0, 0.0, 0.0], Scenario::Brownian).unwrap();
        let pk =
            perturbed_kinematics(1.0, 0.0, 0.0, &pert, &Direction::new(0.9, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(pk.energy, 1.0001f64.sqrt(), epsilon = 1e-15);
        // E ≈ M(1 + p²/2M²) up to O(p⁴)
        assert!((pk.energy - (1.0 + 0.5e-4)).abs() < 1e-8);
        assert!(pk.energy_residual() < 1e-12);
        assert!(pk.momentum_residual(&pert) < 1e-15);
    }

    #[test]
    fn recoil_energy_budget() {
        let pert = Perturbation::new(0.05, [0.0, 0.6, 0.8], Scenario::Recoil).unwrap();
        let pk =
            perturbed_kinematics(1.0, 0.1, 0.1, &pert, &Direction::new(2.0, 5.0).unwrap()).unwrap();
        assert_abs_diff_eq!(pk.energy, 0.95, epsilon = 1e-15);
        assert!(pk.energy_residual() < 1e-12);
    }

    #[test]
    fn rejects_large_perturbation() {
        let pert = Perturbation::new(0.6, [1.0, 0.0, 0.0], Scenario::Brownian).unwrap();
        assert!(perturbed_kinematics(1.0, 0.0, 0.0, &pert, &Direction::along_y()).is_err());
        assert!(Perturbation::new(0.1, [1.0, 1.0, 0.0], Scenario::Recoil).is_err());
    }

    #[test]
    fn recoil_can_fail_to_close() {
        // pair energy M − p cannot reach the masses
        let pert = Perturbation::new(0.45, [1.0, 0.0, 0.0], Scenario::Recoil).unwrap();
        let err = perturbed_kinematics(
            1.0,
            0.27,
            0.27,
            &pert,
            &Direction::new(FRAC_PI_2, PI).unwrap(),
        );
        assert!(matches!(
            err,
            Err(Error::NoSolution(_)) | Err(Error::BelowThreshold { .. })
        ));
    }
}
