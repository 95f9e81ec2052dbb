//! Joint spin and polarization probabilities.

use crate::amplitudes::{
    amp_gg, amp_ps_ff, amp_s_ff, Channel, ChannelConfig, PolarizationLabel, SpinConfig,
};
use crate::error::{Error, Result};
use crate::kinematics::{kallen, AnalyzerAxis, Direction};
use crate::scalar::Real;

/// Phase-space treatment of the fermion direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseSpaceMode<T> {
    /// Direction integrated out.
    Integrated,
    /// Only fermions emitted at polar angle `theta_tilde` are selected.
    FixedDirection { theta_tilde: T },
}

/// How a joint probability is normalized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProbabilityMode<T> {
    /// Conditional on the decay: the four outcomes sum to one.
    Normalized,
    /// Carries the physical phase-space factor.
    Physical(PhaseSpaceMode<T>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSpaceFactor<T> {
    pub value: T,
    pub mode: PhaseSpaceMode<T>,
}

/// Outcome label of a joint measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Spin(SpinConfig),
    Polarization(PolarizationLabel, PolarizationLabel),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointProbability<T> {
    pub outcome: Outcome,
    pub value: T,
}

/// Phase-space factor of the two-body decay,
/// `g² (M² − (m₁−m₂)²) λ^{1/2}(M², m₁², m₂²) / (16π M³)` when integrated, and
/// `g² (M² − (m₁−m₂)²) λ^{1/2} sinθ̃ / (16 (2π)² M³)` at fixed direction.
pub fn f_factor<T: Real>(
    cfg: &ChannelConfig<T>,
    mode: PhaseSpaceMode<T>,
) -> Result<PhaseSpaceFactor<T>> {
    let kin = cfg.kinematics()?;
    let (mm, m1, m2) = (kin.parent_mass, kin.m1, kin.m2);
    let dm = m1 - m2;
    let lam = kallen(mm * mm, m1 * m1, m2 * m2).max(T::zero());
    let base = cfg.coupling * cfg.coupling * (mm * mm - dm * dm) * lam.sqrt()
        / (T::lit(16.0) * mm.powi(3));
    let value = match mode {
        PhaseSpaceMode::Integrated => base / T::PI(),
        PhaseSpaceMode::FixedDirection { theta_tilde } => {
            base * theta_tilde.sin() / (T::TAU() * T::TAU())
        }
    };
    Ok(PhaseSpaceFactor { value, mode })
}

fn normalize<T: Real>(weights: [T; 4]) -> Result<[T; 4]> {
    let total: T = weights.iter().copied().sum();
    if !(total > T::zero()) || !total.is_finite() {
        return Err(Error::InvalidDistribution("outcome weights vanish".into()));
    }
    Ok(weights.map(|w| w / total))
}

/// All four spin outcomes of the pseudoscalar decay in [`SpinConfig::ALL`] order.
///
/// The physical mode scales `|amp|²` so that the `(+,+)` outcome equals
/// `f · sin²(θ_ab/2)`.
pub fn spin_distribution_ps<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    mode: ProbabilityMode<T>,
) -> Result<[T; 4]> {
    if cfg.channel != Channel::PsFf {
        return Err(Error::WrongChannel {
            expected: "ps-ff",
            got: cfg.channel,
        });
    }
    let kin = cfg.kinematics()?;
    let n = Direction::along_y();
    let mut sq = [T::zero(); 4];
    for sc in SpinConfig::ALL {
        sq[sc.index()] = amp_ps_ff(cfg, &kin, &n, a, b, sc)?.norm_sqr();
    }
    match mode {
        ProbabilityMode::Normalized => normalize(sq),
        ProbabilityMode::Physical(ps) => {
            let f = f_factor(cfg, ps)?.value;
            let unit = cfg.coupling
                * ((kin.eps2 + kin.m2) / (kin.eps1 + kin.m1)).sqrt()
                * (kin.parent_mass + kin.m1 - kin.m2);
            let unit_sq = unit * unit;
            if unit_sq == T::zero() {
                return Ok([T::zero(); 4]);
            }
            Ok(sq.map(|x| f * x / unit_sq))
        }
    }
}

pub fn joint_prob_ps<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
    mode: ProbabilityMode<T>,
) -> Result<JointProbability<T>> {
    let dist = spin_distribution_ps(cfg, a, b, mode)?;
    Ok(JointProbability {
        outcome: Outcome::Spin(sc),
        value: dist[sc.index()],
    })
}

/// All four normalized spin outcomes of the scalar decay with the fermion
/// emitted along `n`.
pub fn spin_distribution_s<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    n: &Direction<T>,
) -> Result<[T; 4]> {
    if cfg.channel != Channel::SFf {
        return Err(Error::WrongChannel {
            expected: "s-ff",
            got: cfg.channel,
        });
    }
    let kin = cfg.kinematics()?;
    let mut sq = [T::zero(); 4];
    for sc in SpinConfig::ALL {
        sq[sc.index()] = amp_s_ff(cfg, &kin, n, a, b, sc)?.norm_sqr();
    }
    normalize(sq)
}

pub fn joint_prob_s<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    sc: SpinConfig,
    n: &Direction<T>,
) -> Result<JointProbability<T>> {
    let dist = spin_distribution_s(cfg, a, b, n)?;
    Ok(JointProbability {
        outcome: Outcome::Spin(sc),
        value: dist[sc.index()],
    })
}

/// Normalized polarization outcomes indexed `[λ₁][λ₂]`.
pub fn polarization_distribution<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
) -> Result<[[T; 2]; 2]> {
    let mut sq = [T::zero(); 4];
    for l1 in PolarizationLabel::BOTH {
        for l2 in PolarizationLabel::BOTH {
            sq[2 * l1.index() + l2.index()] = amp_gg(cfg, a, b, l1, l2)?.norm_sqr();
        }
    }
    let p = normalize(sq)?;
    Ok([[p[0], p[1]], [p[2], p[3]]])
}

pub fn joint_prob_gg<T: Real>(
    cfg: &ChannelConfig<T>,
    a: &AnalyzerAxis<T>,
    b: &AnalyzerAxis<T>,
    lam1: PolarizationLabel,
    lam2: PolarizationLabel,
) -> Result<JointProbability<T>> {
    let dist = polarization_distribution(cfg, a, b)?;
    Ok(JointProbability {
        outcome: Outcome::Polarization(lam1, lam2),
        value: dist[lam1.index()][lam2.index()],
    })
}
