//! Decay amplitudes for the five channels.
//!
//! Fermionic amplitudes are computed by explicit contraction of the Dirac
//! spinors for every spin configuration; photonic ones by explicit tensor
//! contraction with the polarization four-vectors. The closed forms are kept
//! alongside as independent oracles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kinematics::{AnalyzerAxis, DecayKinematics, Direction, PerturbedKinematics};
use crate::scalar::{imag_unit, re, Cplx, Real};
use crate::spinor::{
    chi, dirac_u, dirac_v, overlap_forms, pauli_dot_unchecked, Matrix4C, SpinProjection,
};
use crate::vec3::{self, Vec3};

/// Decay channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// Pseudoscalar → fermion + antifermion.
    PsFf,
    /// Scalar → fermion + antifermion.
    SFf,
    /// Scalar (Higgs-like) → γγ.
    HGg,
    /// Pseudoscalar (π⁰-like) → γγ.
    Pi0Gg,
    /// Spinless particle → γγ without parity conservation (constants A, B).
    P0GgAb,
}

impl Channel {
    pub const ALL: [Channel; 5] = [
        Channel::PsFf,
        Channel::SFf,
        Channel::HGg,
        Channel::Pi0Gg,
        Channel::P0GgAb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::PsFf => "ps-ff",
            Channel::SFf => "s-ff",
            Channel::HGg => "h-gg",
            Channel::Pi0Gg => "pi0-gg",
            Channel::P0GgAb => "p0-gg-ab",
        }
    }

    pub fn is_photonic(self) -> bool {
        matches!(self, Channel::HGg | Channel::Pi0Gg | Channel::P0GgAb)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                format!("unknown channel '{s}' (expected ps-ff|s-ff|h-gg|pi0-gg|p0-gg-ab)")
            })
    }
}

/// Channel identity and its physical constants. Masses in GeV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig<T> {
    pub channel: Channel,
    /// Parent mass `M`.
    pub parent_mass: T,
    /// Antifermion mass.
    pub m1: T,
    /// Fermion mass.
    pub m2: T,
    /// Effective coupling `g`.
    pub coupling: T,
    /// `F_H` for the scalar γγ channel.
    pub f_higgs: T,
    /// `F_π` for the pseudoscalar γγ channel.
    pub f_pi: T,
    /// Parity-even/odd constants of the general γγ vertex.
    pub amp_a: Cplx<T>,
    pub amp_b: Cplx<T>,
    /// Photon energy; `M/2` when unset.
    pub omega: Option<T>,
}

impl<T: Real> ChannelConfig<T> {
    fn base(channel: Channel, parent_mass: T) -> Self {
        ChannelConfig {
            channel,
            parent_mass,
            m1: T::zero(),
            m2: T::zero(),
            coupling: T::one(),
            f_higgs: T::one(),
            f_pi: T::one(),
            amp_a: re(T::one()),
            amp_b: re(T::zero()),
            omega: None,
        }
    }

    /// Pseudoscalar decay to a fermion pair of equal masses `m`.
    pub fn ps_ff(parent_mass: T, m: T) -> Self {
        ChannelConfig {
            m1: m,
            m2: m,
            ..Self::base(Channel::PsFf, parent_mass)
        }
    }

    pub fn s_ff(parent_mass: T, m: T) -> Self {
        ChannelConfig {
            m1: m,
            m2: m,
            ..Self::base(Channel::SFf, parent_mass)
        }
    }

    pub fn h_gg(parent_mass: T) -> Self {
        Self::base(Channel::HGg, parent_mass)
    }

    pub fn pi0_gg(parent_mass: T) -> Self {
        Self::base(Channel::Pi0Gg, parent_mass)
    }

    pub fn p0_gg_ab(parent_mass: T, amp_a: Cplx<T>, amp_b: Cplx<T>) -> Self {
        ChannelConfig {
            amp_a,
            amp_b,
            ..Self::base(Channel::P0GgAb, parent_mass)
        }
    }

    /// Default configuration of a channel with `M = 1` and massless daughters.
    pub fn default_for(channel: Channel) -> Self {
        Self::base(channel, T::one())
    }

    pub fn with_coupling(self, coupling: T) -> Self {
        ChannelConfig { coupling, ..self }
    }

    pub fn with_masses(self, m1: T, m2: T) -> Self {
        ChannelConfig { m1, m2, ..self }
    }

    pub fn photon_energy(&self) -> T {
        self.omega.unwrap_or(self.parent_mass * T::lit(0.5))
    }

    /// Rest-frame kinematics for the fermionic channels.
    pub fn kinematics(&self) -> Result<DecayKinematics<T>> {
        crate::kinematics::rest_frame_kinematics(self.parent_mass, self.m1, self.m2)
    }

    fn require(&self, expected: Channel) -> Result<()> {
        if self.channel != expected {
            return Err(Error::WrongChannel {
                expected: expected.name(),
                got: self.channel,
            });
        }
        Ok(())
    }
}

/// Photon linear-polarization label relative to an analyzer axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolarizationLabel {
    One,
    Two,
}

impl PolarizationLabel {
    pub const BOTH: [PolarizationLabel; 2] = [PolarizationLabel::One, PolarizationLabel::Two];

    pub fn index(self) -> usize {
        match self {
            PolarizationLabel::One => 0,
            PolarizationLabel::Two => 1,
        }
    }
}

/// Spin projections of the fermion (along `a`) and the antifermion (along `b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    pub fermion: SpinProjection,
    pub antifermion: SpinProjection,
}

impl SpinConfig {
    /// Outcome order used by every joint distribution: `(+,+), (+,−), (−,+), (−,−)`.
    pub const ALL: [SpinConfig; 4] = [
        SpinConfig::new(SpinProjection::Up, SpinProjection::Up),
        SpinConfig::new(SpinProjection::Up, SpinProjection::Down),
        SpinConfig::new(SpinProjection::Down, SpinProjection::Up),
        SpinConfig::new(SpinProjection::Down, SpinProjection::Down),
    ];

    pub const fn new(fermion: SpinProjection, antifermion: SpinProjection) -> Self {
        SpinConfig {
            fermion,
            antifermion,
        }
    }

    pub fn index(self) -> usize {
        let f = usize::from(self.fermion == SpinProjection::Down);
        let a = usize::from(self.antifermion == SpinProjection::Down);
        2 * f + a
    }
}

fn unit_or_z<T: Real>(v: &Vec3<T>) -> Vec3<T> {
    vec3::normalized(v).unwrap_or([T::zero(), T::zero(), T::one()])
}

/// `ū(k₂, s₂, a) Γ v(k₁, s₁, b)` for explicit fermion momenta.
#[allow(clippy::too_many_arguments)]
fn fermion_current<T: Real>(
    gamma: &Matrix4C<T>,
    m1: T,
    m2: T,
    k1: &Vec3<T>,
    k2: &Vec3<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
) -> Result<Cplx<T>> {
    let u = dirac_u(
        vec3::norm(k2),
        m2,
        &unit_or_z(k2),
        sc.fermion,
        a.theta,
        T::zero(),
    )?;
    let v = dirac_v(
        vec3::norm(k1),
        m1,
        &unit_or_z(k1),
        sc.antifermion,
        b.theta,
        T::zero(),
    )?;
    Ok(u.bar_sandwich(gamma, &v))
}

/// Pseudoscalar amplitude `−g ū(k₂) γ⁵ v(k₁)` with the fermion along `n` and
/// the antifermion back-to-back.
pub fn amp_ps_ff<T: Real>(
    cfg: &ChannelConfig<T>,
    kin: &DecayKinematics<T>,
    n: &Direction<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
) -> Result<Cplx<T>> {
    cfg.require(Channel::PsFf)?;
    let dir = n.unit_vector();
    let k2 = vec3::scale(&dir, kin.k_mag);
    let k1 = vec3::scale(&dir, -kin.k_mag);
    let current = fermion_current(&Matrix4C::gamma5(), kin.m1, kin.m2, &k1, &k2, a, b, sc)?;
    Ok(current * re(-cfg.coupling))
}

/// Closed form of the `(+1/2, +1/2)` pseudoscalar amplitude:
/// `g √((ε₂+m₂)/(ε₁+m₁)) (M + m₁ − m₂) sin(θ_ab/2)`.
pub fn amp_ps_ff_closed<T: Real>(
    cfg: &ChannelConfig<T>,
    kin: &DecayKinematics<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
) -> T {
    let prefactor = ((kin.eps2 + kin.m2) / (kin.eps1 + kin.m1)).sqrt();
    cfg.coupling
        * prefactor
        * (kin.parent_mass + kin.m1 - kin.m2)
        * ((a.theta - b.theta) * T::lit(0.5)).sin()
}

/// Pseudoscalar amplitude for non-antiparallel pair momenta, by direct
/// contraction with the exact momenta of `pk`.
pub fn amp_ps_ff_perturbed<T: Real>(
    cfg: &ChannelConfig<T>,
    pk: &PerturbedKinematics<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
) -> Result<Cplx<T>> {
    cfg.require(Channel::PsFf)?;
    let current = fermion_current(&Matrix4C::gamma5(), pk.m1, pk.m2, &pk.k1, &pk.k2, a, b, sc)?;
    Ok(current * re(-cfg.coupling))
}

/// Two-component reduction of the `(+1/2, +1/2)` perturbed amplitude:
///
/// `g [√(ε₁+m₁)√(ε₂+m₂) χ₊†(a)χ₋(b) − √(ε₁−m₁)√(ε₂−m₂) χ₊†(a)(σk̂₂)(σk̂₁)χ₋(b)]`
pub fn amp_ps_ff_perturbed_reduced<T: Real>(
    cfg: &ChannelConfig<T>,
    pk: &PerturbedKinematics<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
) -> Result<Cplx<T>> {
    cfg.require(Channel::PsFf)?;
    let left = chi(SpinProjection::Up, a.theta, T::zero());
    let right = chi(SpinProjection::Down, b.theta, T::zero());
    let sk2 = pauli_dot_unchecked(&unit_or_z(&pk.k2));
    let sk1 = pauli_dot_unchecked(&unit_or_z(&pk.k1));
    let upper = (pk.eps1 + pk.m1).sqrt() * (pk.eps2 + pk.m2).sqrt();
    let lower = (pk.eps1 - pk.m1).max(T::zero()).sqrt() * (pk.eps2 - pk.m2).max(T::zero()).sqrt();
    let amp = left.inner(&right) * upper - left.sandwich(&(sk2 * sk1), &right) * lower;
    Ok(amp * re(cfg.coupling))
}

/// The `(+1/2, +1/2)` perturbed amplitude rewritten through the total pair
/// momentum `p ℓ = k₁ + k₂`:
///
/// `g √((ε₂+m₂)/(ε₁+m₁)) [(E + m₁ − m₂ − r |p| ℓ·n) sin(θ_ab/2) − i r |p| (n × ℓ)·w₊₊]`
///
/// with `r = √((ε₂−m₂)/(ε₂+m₂))` and `E = ε₁ + ε₂`. Exact, not an expansion.
pub fn amp_ps_ff_perturbed_structure<T: Real>(
    cfg: &ChannelConfig<T>,
    pk: &PerturbedKinematics<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
) -> Cplx<T> {
    let total = vec3::add(&pk.k1, &pk.k2);
    let p_mag = vec3::norm(&total);
    let ell = unit_or_z(&total);
    let n = unit_or_z(&pk.k2);
    let forms = overlap_forms(a.theta, b.theta);
    let prefactor = ((pk.eps2 + pk.m2) / (pk.eps1 + pk.m1)).sqrt();
    let ratio = ((pk.eps2 - pk.m2).max(T::zero()) / (pk.eps2 + pk.m2)).sqrt();
    let energy = pk.eps1 + pk.eps2;
    let scalar_part =
        re(energy + pk.m1 - pk.m2 - ratio * p_mag * vec3::dot(&ell, &n)) * forms.scalar;
    let axial = vec3::cross(&n, &ell);
    let triple = (0..3).fold(re(T::zero()), |acc, k| acc + forms.w_pp[k] * axial[k]);
    let vector_part = imag_unit::<T>() * re(ratio * p_mag) * triple;
    (scalar_part - vector_part) * re(cfg.coupling * prefactor)
}

/// Scalar amplitude `g ū(k₂) v(k₁)` with the fermion along `n`.
pub fn amp_s_ff<T: Real>(
    cfg: &ChannelConfig<T>,
    kin: &DecayKinematics<T>,
    n: &Direction<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
) -> Result<Cplx<T>> {
    cfg.require(Channel::SFf)?;
    let dir = n.unit_vector();
    let k2 = vec3::scale(&dir, kin.k_mag);
    let k1 = vec3::scale(&dir, -kin.k_mag);
    let current = fermion_current(&Matrix4C::identity(), kin.m1, kin.m2, &k1, &k2, a, b, sc)?;
    Ok(current * re(cfg.coupling))
}

/// Closed angular structure of the scalar-channel `(+1/2, −1/2)` probability,
/// `sinθ |χ₊†(a)(σ·n)χ₊(b)|²`, expanded in `θ, φ, θ_ab, κ_ab`.
pub fn s_ff_angular_closed<T: Real>(theta: T, phi: T, theta_a: T, theta_b: T) -> T {
    let half = T::lit(0.5);
    let kappa = theta_a + theta_b;
    let theta_ab = theta_a - theta_b;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let sk2 = (kappa * half).sin().powi(2);
    let ck2 = (kappa * half).cos().powi(2);
    let sab2 = (theta_ab * half).sin().powi(2);
    st * (st * st * cp * cp * sk2
        + ct * ct * ck2
        + half * (T::lit(2.0) * theta).sin() * cp * kappa.sin()
        + st * st * sp * sp * sab2)
}

/// Minkowski product with metric `(+,−,−,−)`.
pub fn minkowski_dot<T: Real>(x: &[T; 4], y: &[T; 4]) -> T {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3]
}

/// Photon linear-polarization four-vector relative to an XZ-plane axis:
/// `ε(1) = (0, sinθ, 0, cosθ)`, `ε(2) = (0, cosθ, 0, −sinθ)`.
pub fn photon_pol<T: Real>(axis: &AnalyzerAxis<T>, lam: PolarizationLabel) -> [T; 4] {
    let (s, c) = axis.theta.sin_cos();
    match lam {
        PolarizationLabel::One => [T::zero(), s, T::zero(), c],
        PolarizationLabel::Two => [T::zero(), c, T::zero(), -s],
    }
}

/// Photon momenta `k₁ = ω(1, 0, −1, 0)`, `k₂ = ω(1, 0, 1, 0)`.
pub fn photon_momenta<T: Real>(omega: T) -> ([T; 4], [T; 4]) {
    let z = T::zero();
    ([omega, z, -omega, z], [omega, z, omega, z])
}

/// Totally antisymmetric symbol with lower indices, `ε_{0123} = +1`.
pub fn levi_civita4(idx: [usize; 4]) -> i8 {
    let mut p = idx;
    for i in 0..4 {
        if p[i] > 3 {
            return 0;
        }
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0;
            }
        }
    }
    let mut sign = 1i8;
    for i in 0..4 {
        while p[i] != i {
            let t = p[i];
            p.swap(i, t);
            sign = -sign;
        }
    }
    sign
}

/// `ε_{μναβ} x^μ y^ν z^α w^β` with all vectors given by upper components.
pub fn levi_contract<T: Real>(x: &[T; 4], y: &[T; 4], z: &[T; 4], w: &[T; 4]) -> T {
    let mut acc = T::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            for al in 0..4 {
                for be in 0..4 {
                    let e = levi_civita4([mu, nu, al, be]);
                    if e != 0 {
                        acc = acc + T::lit(f64::from(e)) * x[mu] * y[nu] * z[al] * w[be];
                    }
                }
            }
        }
    }
    acc
}

fn require_photonic<T: Real>(cfg: &ChannelConfig<T>) -> Result<()> {
    if !cfg.channel.is_photonic() {
        return Err(Error::WrongChannel {
            expected: "h-gg|pi0-gg|p0-gg-ab",
            got: cfg.channel,
        });
    }
    Ok(())
}

/// γγ amplitude by explicit tensor contraction. The first photon is analysed
/// along `a`, the second along `b`.
///
/// The parent mass entering the `B` vertex is taken as `M_P = 2ω`, the
/// invariant mass of the photon pair.
pub fn amp_gg<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    lam1: PolarizationLabel,
    lam2: PolarizationLabel,
) -> Result<Cplx<T>> {
    require_photonic(cfg)?;
    let e1 = photon_pol(a, lam1);
    let e2 = photon_pol(b, lam2);
    let omega = cfg.photon_energy();
    let (k1, k2) = photon_momenta(omega);
    let amp = match cfg.channel {
        Channel::HGg => re(cfg.f_higgs * minkowski_dot(&e1, &e2)),
        Channel::Pi0Gg => re(cfg.f_pi * levi_contract(&e1, &e2, &k1, &k2)),
        Channel::P0GgAb => {
            let mass_sqr = minkowski_dot(&vec4_add(&k1, &k2), &vec4_add(&k1, &k2));
            let odd = cfg.amp_a * levi_contract(&e1, &e2, &k1, &k2);
            let even = minkowski_dot(&k2, &e1) * minkowski_dot(&k1, &e2)
                - minkowski_dot(&e1, &e2) * mass_sqr * T::lit(0.5);
            odd - imag_unit::<T>() * cfg.amp_b * even
        }
        Channel::PsFf | Channel::SFf => unreachable!(),
    };
    Ok(amp)
}

fn vec4_add<T: Real>(x: &[T; 4], y: &[T; 4]) -> [T; 4] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

/// Closed trigonometric forms of the γγ amplitudes.
///
/// With `d(λ₁,λ₂)` the Euclidean product of the polarization 3-vectors and
/// `c(λ₁,λ₂) = ε₁ˣε₂ᶻ − ε₁ᶻε₂ˣ`: `d(1,1) = cos θ_ab`, `d(1,2) = sin θ_ab`,
/// `c(1,1) = sin θ_ab`, `c(1,2) = −cos θ_ab`, and
///
/// * H⁰: `−F_H d`
/// * π⁰: `−2ω² F_π c`
/// * general: `−2ω² (A c + i B d)`
pub fn amp_gg_closed<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    lam1: PolarizationLabel,
    lam2: PolarizationLabel,
) -> Result<Cplx<T>> {
    require_photonic(cfg)?;
    use PolarizationLabel::{One, Two};
    let (s, c) = (a.theta - b.theta).sin_cos();
    let (dot, cross) = match (lam1, lam2) {
        (One, One) => (c, s),
        (One, Two) => (s, -c),
        (Two, One) => (-s, c),
        (Two, Two) => (c, s),
    };
    let omega = cfg.photon_energy();
    let w2 = T::lit(2.0) * omega * omega;
    Ok(match cfg.channel {
        Channel::HGg => re(-cfg.f_higgs * dot),
        Channel::Pi0Gg => re(-w2 * cfg.f_pi * cross),
        Channel::P0GgAb => (cfg.amp_a * cross + imag_unit::<T>() * cfg.amp_b * dot) * re(-w2),
        Channel::PsFf | Channel::SFf => unreachable!(),
    })
}

/// All four spin amplitudes in [`SpinConfig::ALL`] order.
pub fn spin_amplitudes<T: Real>(
    cfg: &ChannelConfig<T>,
    n: &Direction<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
) -> Result<[Cplx<T>; 4]> {
    let kin = cfg.kinematics()?;
    let mut out = [Complex::new(T::zero(), T::zero()); 4];
    for sc in SpinConfig::ALL {
        out[sc.index()] = match cfg.channel {
            Channel::PsFf => amp_ps_ff(cfg, &kin, n, a, b, sc)?,
            Channel::SFf => amp_s_ff(cfg, &kin, n, a, b, sc)?,
            _ => {
                return Err(Error::WrongChannel {
                    expected: "ps-ff|s-ff",
                    got: cfg.channel,
                })
            }
        };
    }
    Ok(out)
}
