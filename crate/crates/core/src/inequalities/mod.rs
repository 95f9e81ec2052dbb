//! Inequality registry and evaluators.
//!
//! Angular inequalities come in two layers. The probability layer evaluates
//! the pairwise joint probabilities of a channel. The trigonometric layer is
//! the closed form those probabilities reduce to. For every angular id, the
//! two layers are related by an affine map `prob = scale · trig + offset`
//! applied to both sides (see [`cross_check`]).

mod search;

pub use search::{
    ab_violation_threshold, maximize_violation, scan, threshold_discrepancy,
    trig_higgs_discrepancy, Discrepancy, GridSpec, MaxViolation, ScanResult, ScanRow,
    ThresholdSearch, MAX_ITERATIONS, REFERENCE_AB_THRESHOLD,
};

use std::fmt;
use std::str::FromStr;

use crate::amplitudes::{Channel, ChannelConfig};
use crate::error::{Error, Result};
use crate::kinematics::{AnalyzerAxis, Direction};
use crate::probabilities::{
    polarization_distribution, spin_distribution_ps, spin_distribution_s, ProbabilityMode,
};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `|E(a,b) − E(a,c)| ≤ 1 + E(b,c)`.
    BellClassic,
    /// `|E(a,b) + E(a,c) + E(d,b) − E(d,c)| ≤ 2`.
    ChshClassic,
    /// Fermion pair, full anticorrelation: `w(a+,b+) ≤ w(a+,c+) + w(c+,b+)`.
    WignerPs,
    /// `sin²(θ_ab/2) ≤ sin²(θ_ac/2) + sin²(θ_bc/2)`.
    WignerNqm,
    /// Photon pair, anticorrelated polarizations: `w(a1,b1) ≤ w(a1,c1) + w(c1,b1)`.
    WignerPhotonPs,
    /// Fermion pair, full correlation: `w(a+,b−) ≤ w(a+,c−) + w(c+,b−)`.
    WignerS,
    /// Photon pair, correlated polarizations: `w(a1,b2) ≤ w(a1,c2) + w(c1,b2)`.
    WignerPhotonS,
    /// Scalar γγ combination `3w(·1,·2) + w(·1,·1)` on each pair.
    WignerPhotonHiggs,
    /// `sin²θ_ab ≤ ½ + sin²θ_ac + sin²θ_bc`.
    TrigHiggs,
    /// `sin²θ_ab ≤ sin²θ_ac + sin²θ_bc`.
    TrigPi0,
    /// `(|A|²−|B|²) sin²θ_ab ≤ |B|² + (|A|²−|B|²)(sin²θ_ac + sin²θ_bc)`.
    TrigAb,
    /// `sin²(θ_ab/2) + sin²(θ_ac/2) + sin²(θ_bc/2) ≤ 2`.
    WeakenedSum,
}

impl InequalityId {
    pub const ALL: [InequalityId; 12] = [
        InequalityId::BellClassic,
        InequalityId::ChshClassic,
        InequalityId::WignerPs,
        InequalityId::WignerNqm,
        InequalityId::WignerPhotonPs,
        InequalityId::WignerS,
        InequalityId::WignerPhotonS,
        InequalityId::WignerPhotonHiggs,
        InequalityId::TrigHiggs,
        InequalityId::TrigPi0,
        InequalityId::TrigAb,
        InequalityId::WeakenedSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::BellClassic => "bell-classic",
            InequalityId::ChshClassic => "chsh-classic",
            InequalityId::WignerPs => "wigner-ps",
            InequalityId::WignerNqm => "wigner-nqm",
            InequalityId::WignerPhotonPs => "wigner-photon-ps",
            InequalityId::WignerS => "wigner-s",
            InequalityId::WignerPhotonS => "wigner-photon-s",
            InequalityId::WignerPhotonHiggs => "wigner-photon-higgs",
            InequalityId::TrigHiggs => "trig-higgs",
            InequalityId::TrigPi0 => "trig-pi0",
            InequalityId::TrigAb => "trig-ab",
            InequalityId::WeakenedSum => "weakened-sum",
        }
    }

    /// Whether the inequality is parametrized by three coplanar axes.
    pub fn is_angular(self) -> bool {
        !matches!(self, InequalityId::BellClassic | InequalityId::ChshClassic)
    }

    /// Whether reports are given in the trigonometric layer.
    pub fn is_trigonometric(self) -> bool {
        matches!(
            self,
            InequalityId::WignerNqm
                | InequalityId::TrigHiggs
                | InequalityId::TrigPi0
                | InequalityId::TrigAb
                | InequalityId::WeakenedSum
        )
    }

    /// Channels whose probabilities feed the inequality.
    pub fn channels(self) -> &'static [Channel] {
        match self {
            InequalityId::WignerPs | InequalityId::WignerNqm | InequalityId::WeakenedSum => {
                &[Channel::PsFf]
            }
            InequalityId::WignerS => &[Channel::SFf],
            InequalityId::WignerPhotonPs => &[Channel::Pi0Gg, Channel::P0GgAb],
            InequalityId::TrigPi0 => &[Channel::Pi0Gg],
            InequalityId::TrigAb => &[Channel::P0GgAb],
            InequalityId::WignerPhotonHiggs | InequalityId::TrigHiggs => &[Channel::HGg],
            InequalityId::BellClassic | InequalityId::ChshClassic | InequalityId::WignerPhotonS => {
                &[]
            }
        }
    }

    pub fn default_channel(self) -> Option<Channel> {
        self.channels().first().copied()
    }

    /// Angular period of the margin: `2π` for spin, `π` for polarization.
    pub fn period<T: Real>(self) -> T {
        match self {
            InequalityId::WignerPhotonPs
            | InequalityId::WignerPhotonS
            | InequalityId::WignerPhotonHiggs
            | InequalityId::TrigHiggs
            | InequalityId::TrigPi0
            | InequalityId::TrigAb => T::PI(),
            _ => T::TAU(),
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = InequalityId::ALL.iter().map(|id| id.name()).collect();
                format!(
                    "unknown inequality '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// `lhs ≤ rhs` evaluated; positive margin means violation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub violated: bool,
}

impl<T: Real> InequalityReport<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        let margin = lhs - rhs;
        InequalityReport {
            lhs,
            rhs,
            margin,
            violated: margin > T::zero(),
        }
    }
}

/// Three analyzer axes in the XZ plane.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AxisTriple<T> {
    pub theta_a: T,
    pub theta_b: T,
    pub theta_c: T,
}

impl<T: Real> AxisTriple<T> {
    pub fn new(theta_a: T, theta_b: T, theta_c: T) -> Self {
        AxisTriple {
            theta_a,
            theta_b,
            theta_c,
        }
    }

    pub fn theta_ab(&self) -> T {
        self.theta_a - self.theta_b
    }

    pub fn theta_ac(&self) -> T {
        self.theta_a - self.theta_c
    }

    pub fn theta_bc(&self) -> T {
        self.theta_b - self.theta_c
    }

    pub fn a(&self) -> AnalyzerAxis<T> {
        AnalyzerAxis::new(self.theta_a)
    }

    pub fn b(&self) -> AnalyzerAxis<T> {
        AnalyzerAxis::new(self.theta_b)
    }

    pub fn c(&self) -> AnalyzerAxis<T> {
        AnalyzerAxis::new(self.theta_c)
    }

    pub fn rotated(&self, delta: T) -> Self {
        AxisTriple::new(
            self.theta_a + delta,
            self.theta_b + delta,
            self.theta_c + delta,
        )
    }
}

/// Correlator `E(θ) = −cos θ` of the spin singlet.
pub fn singlet_correlator<T: Real>(theta: T) -> T {
    -theta.cos()
}

fn check_correlator<T: Real>(x: T) -> Result<()> {
    if !(x >= -T::one() && x <= T::one()) {
        return Err(Error::OutOfRangeCorrelator(x.as_f64()));
    }
    Ok(())
}

pub fn eval_bell<T: Real>(corr_ab: T, corr_ac: T, corr_bc: T) -> Result<InequalityReport<T>> {
    for x in [corr_ab, corr_ac, corr_bc] {
        check_correlator(x)?;
    }
    Ok(InequalityReport::new(
        (corr_ab - corr_ac).abs(),
        T::one() + corr_bc,
    ))
}

pub fn eval_chsh<T: Real>(
    corr_ab: T,
    corr_ac: T,
    corr_db: T,
    corr_dc: T,
) -> Result<InequalityReport<T>> {
    for x in [corr_ab, corr_ac, corr_db, corr_dc] {
        check_correlator(x)?;
    }
    Ok(InequalityReport::new(
        (corr_ab + corr_ac + corr_db - corr_dc).abs(),
        T::lit(2.0),
    ))
}

/// Formal three-term check `w_ab ≤ w_ac + w_cb` on supplied probabilities.
pub fn eval_wigner_formal<T: Real>(
    id: InequalityId,
    w_ab: T,
    w_ac: T,
    w_cb: T,
) -> Result<InequalityReport<T>> {
    if !matches!(
        id,
        InequalityId::WignerPs
            | InequalityId::WignerS
            | InequalityId::WignerPhotonPs
            | InequalityId::WignerPhotonS
    ) {
        return Err(Error::NotPairwise(id));
    }
    for w in [w_ab, w_ac, w_cb] {
        if !(w >= T::zero() && w <= T::one()) {
            return Err(Error::InvalidDistribution(format!(
                "probability {} outside [0, 1]",
                w.as_f64()
            )));
        }
    }
    Ok(InequalityReport::new(w_ab, w_ac + w_cb))
}

fn sin2<T: Real>(x: T) -> T {
    let s = x.sin();
    s * s
}

fn check_channel<T: Real>(id: InequalityId, cfg: &ChannelConfig<T>) -> Result<()> {
    if !id.is_angular() {
        return Err(Error::NotAngular(id));
    }
    if !id.channels().contains(&cfg.channel) {
        return Err(Error::ChannelMismatch {
            id,
            channel: cfg.channel,
        });
    }
    Ok(())
}

/// The trigonometric form an id reduces to for the channel in `cfg`.
pub fn closed_form_id<T: Real>(id: InequalityId, cfg: &ChannelConfig<T>) -> InequalityId {
    match id {
        InequalityId::WignerPs | InequalityId::WignerS => InequalityId::WignerNqm,
        InequalityId::WignerPhotonPs if cfg.channel == Channel::P0GgAb => InequalityId::TrigAb,
        InequalityId::WignerPhotonPs => InequalityId::TrigPi0,
        InequalityId::WignerPhotonHiggs => InequalityId::TrigHiggs,
        other => other,
    }
}

/// Trigonometric layer. `cfg` supplies `A` and `B` for [`InequalityId::TrigAb`].
pub fn eval_closed_form<T: Real>(
    id: InequalityId,
    axes: &AxisTriple<T>,
    cfg: &ChannelConfig<T>,
) -> Result<InequalityReport<T>> {
    let half = T::lit(0.5);
    let (ab, ac, bc) = (axes.theta_ab(), axes.theta_ac(), axes.theta_bc());
    Ok(match id {
        InequalityId::WignerNqm => {
            InequalityReport::new(sin2(ab * half), sin2(ac * half) + sin2(bc * half))
        }
        InequalityId::TrigPi0 => InequalityReport::new(sin2(ab), sin2(ac) + sin2(bc)),
        InequalityId::TrigHiggs => InequalityReport::new(sin2(ab), half + sin2(ac) + sin2(bc)),
        InequalityId::TrigAb => {
            let (a2, b2) = (cfg.amp_a.norm_sqr(), cfg.amp_b.norm_sqr());
            let d = a2 - b2;
            InequalityReport::new(d * sin2(ab), b2 + d * (sin2(ac) + sin2(bc)))
        }
        InequalityId::WeakenedSum => InequalityReport::new(
            sin2(ab * half) + sin2(ac * half) + sin2(bc * half),
            T::lit(2.0),
        ),
        _ => return Err(Error::NotAngular(id)),
    })
}

/// Probability layer, from normalized joint distributions of the channel.
///
/// Operands `w(x, y)` put the first particle (fermion / first photon) on
/// axis `x` and the second on `y`. The scalar fermion channel is evaluated
/// with emission along the Y axis.
pub fn eval_probabilities<T: Real>(
    id: InequalityId,
    axes: &AxisTriple<T>,
    cfg: &ChannelConfig<T>,
) -> Result<InequalityReport<T>> {
    check_channel(id, cfg)?;
    if id == InequalityId::WignerPhotonS {
        return Err(Error::ChannelMismatch {
            id,
            channel: cfg.channel,
        });
    }
    let (a, b, c) = (axes.a(), axes.b(), axes.c());
    let pairs = [(&a, &b), (&a, &c), (&c, &b)];
    let report = match cfg.channel {
        Channel::PsFf => {
            let d = pairs
                .iter()
                .map(|(x, y)| spin_distribution_ps(cfg, x, y, ProbabilityMode::Normalized))
                .collect::<Result<Vec<_>>>()?;
            let (w_ab, w_ac, w_cb) = (d[0][0], d[1][0], d[2][0]);
            if id == InequalityId::WeakenedSum {
                let fermion_a_up = d[0][0] + d[0][1];
                let antifermion_b_up = d[0][0] + d[0][2];
                InequalityReport::new(w_ab + w_ac + w_cb, fermion_a_up + antifermion_b_up)
            } else {
                InequalityReport::new(w_ab, w_ac + w_cb)
            }
        }
        Channel::SFf => {
            let n = Direction::along_y();
            let w = pairs
                .iter()
                .map(|(x, y)| spin_distribution_s(cfg, x, y, &n).map(|d| d[1]))
                .collect::<Result<Vec<_>>>()?;
            InequalityReport::new(w[0], w[1] + w[2])
        }
        Channel::HGg => {
            let w = pairs
                .iter()
                .map(|(x, y)| {
                    polarization_distribution(cfg, x, y).map(|d| T::lit(3.0) * d[0][1] + d[0][0])
                })
                .collect::<Result<Vec<_>>>()?;
            InequalityReport::new(w[0], w[1] + w[2])
        }
        Channel::Pi0Gg | Channel::P0GgAb => {
            let w = pairs
                .iter()
                .map(|(x, y)| polarization_distribution(cfg, x, y).map(|d| d[0][0]))
                .collect::<Result<Vec<_>>>()?;
            InequalityReport::new(w[0], w[1] + w[2])
        }
    };
    Ok(report)
}

/// Evaluates an angular inequality in its natural layer: trigonometric for
/// the closed-form ids, probabilistic otherwise.
pub fn eval_wigner<T: Real>(
    id: InequalityId,
    axes: &AxisTriple<T>,
    cfg: &ChannelConfig<T>,
) -> Result<InequalityReport<T>> {
    check_channel(id, cfg)?;
    if id.is_trigonometric() {
        eval_closed_form(id, axes, cfg)
    } else {
        eval_probabilities(id, axes, cfg)
    }
}

/// Both layers of an angular inequality and the affine map between them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossCheck<T> {
    pub probability: InequalityReport<T>,
    pub closed_form: InequalityReport<T>,
    pub closed_form_id: InequalityId,
    pub scale: T,
    pub offset: T,
    /// Largest deviation of either side from `scale · trig + offset`.
    pub residual: T,
}

/// Coefficients of `prob = scale · trig + offset`.
///
/// For the general γγ vertex this holds only when `Im(A B̄) = 0`; otherwise
/// the probabilities carry an interference term absent from the closed form.
pub fn layer_map<T: Real>(id: InequalityId, cfg: &ChannelConfig<T>) -> (T, T) {
    let half = T::lit(0.5);
    match closed_form_id(id, cfg) {
        InequalityId::TrigHiggs => (T::one(), half),
        InequalityId::TrigAb => {
            let (a2, b2) = (cfg.amp_a.norm_sqr(), cfg.amp_b.norm_sqr());
            let denom = T::lit(2.0) * (a2 + b2);
            (T::one() / denom, b2 / denom)
        }
        _ => (half, T::zero()),
    }
}

pub fn cross_check<T: Real>(
    id: InequalityId,
    axes: &AxisTriple<T>,
    cfg: &ChannelConfig<T>,
) -> Result<CrossCheck<T>> {
    let probability = eval_probabilities(id, axes, cfg)?;
    let cid = closed_form_id(id, cfg);
    let closed_form = eval_closed_form(cid, axes, cfg)?;
    let (scale, offset) = layer_map(id, cfg);
    let residual = (probability.lhs - (scale * closed_form.lhs + offset))
        .abs()
        .max((probability.rhs - (scale * closed_form.rhs + offset)).abs());
    Ok(CrossCheck {
        probability,
        closed_form,
        closed_form_id: cid,
        scale,
        offset,
        residual,
    })
}
