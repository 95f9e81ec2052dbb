//! Deviation of the pseudoscalar `(+,+)` probability from its ideal value when
//! the pair momenta are not exactly back to back.

use rayon::prelude::*;

use crate::amplitudes::{amp_ps_ff_perturbed, Channel, ChannelConfig, SpinConfig};
use crate::error::{Error, Result};
use crate::inequalities::AxisTriple;
use crate::kinematics::{perturbed_kinematics, Direction, Perturbation, Scenario};
use crate::quadrature::{gauss_legendre, periodic_nodes};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// `ħc` in GeV·cm.
pub const HBAR_C_GEV_CM: f64 = 1.9733e-14;

/// Shift under node doubling above which a result is rejected.
pub const REFINEMENT_TOL: f64 = 1e-9;

/// |Δw| below which a ladder point carries no signal.
const SIGNAL_FLOOR: f64 = 1e-14;

/// Solid-angle product rule: Gauss–Legendre in `cosθ`, uniform in `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrature {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Quadrature {
    pub const MIN: Quadrature = Quadrature {
        n_theta: 16,
        n_phi: 32,
    };

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < Self::MIN.n_theta || n_phi < Self::MIN.n_phi {
            return Err(Error::QuadratureTooCoarse {
                min_theta: Self::MIN.n_theta,
                min_phi: Self::MIN.n_phi,
            });
        }
        Ok(Quadrature { n_theta, n_phi })
    }

    pub fn doubled(self) -> Self {
        Quadrature {
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
        }
    }
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            n_theta: 64,
            n_phi: 128,
        }
    }
}

/// `Σ_nodes w f(θ, φ)` for a vector-valued integrand, normalized by `4π`.
/// Rows of constant `θ` run in parallel and are combined in node order.
fn integrate<T, const K: usize, F>(quad: Quadrature, f: F) -> Result<[T; K]>
where
    T: Real,
    F: Fn(&Direction<T>) -> Result<[T; K]> + Sync,
{
    let gl = gauss_legendre::<T>(quad.n_theta);
    let phis = periodic_nodes::<T>(quad.n_phi);
    let rows = gl
        .par_iter()
        .map(|&(x, wx)| {
            let theta = x.acos();
            let mut acc = [T::zero(); K];
            for &(phi, wp) in &phis {
                let n = Direction::new(theta, phi)?;
                let v = f(&n)?;
                for k in 0..K {
                    acc[k] = acc[k] + wx * wp * v[k];
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let norm = T::lit(4.0) * T::PI();
    let mut total = [T::zero(); K];
    for row in rows {
        for k in 0..K {
            total[k] = total[k] + row[k];
        }
    }
    Ok(total.map(|v| v / norm))
}

/// `⟨nⁱ⟩` over the sphere with the given rule.
pub fn mean_direction<T: Real>(quad: Quadrature) -> Result<Vec3<T>> {
    integrate(quad, |n| Ok(n.unit_vector()))
}

fn check_cfg<T: Real>(cfg: &ChannelConfig<T>) -> Result<()> {
    if cfg.channel != Channel::PsFf {
        return Err(Error::WrongChannel {
            expected: "ps-ff",
            got: cfg.channel,
        });
    }
    Ok(())
}

/// Ratio `∫|A₊₊|² dΩ / ∫Σ|A|² dΩ` at a single resolution.
pub fn averaged_probability_at<T: Real>(
    cfg: &ChannelConfig<T>,
    pert: &Perturbation<T>,
    axes: &AxisTriple<T>,
    quad: Quadrature,
) -> Result<T> {
    check_cfg(cfg)?;
    let (a, b) = (axes.a(), axes.b());
    let [num, den] = integrate(quad, |n| {
        let pk = perturbed_kinematics(cfg.parent_mass, cfg.m1, cfg.m2, pert, n)?;
        let mut sq = [T::zero(); 4];
        for sc in SpinConfig::ALL {
            sq[sc.index()] = amp_ps_ff_perturbed(cfg, &pk, &a, &b, sc)?.norm_sqr();
        }
        Ok([sq[0], sq.iter().copied().sum()])
    })?;
    if !(den > T::zero()) {
        return Err(Error::InvalidDistribution("outcome weights vanish".into()));
    }
    Ok(num / den)
}

/// Solid-angle averaged, normalized `(+,+)` probability for fermion `a` and
/// antifermion `b`. The result is rejected when doubling the nodes moves it
/// by more than [`REFINEMENT_TOL`].
pub fn averaged_probability<T: Real>(
    cfg: &ChannelConfig<T>,
    pert: &Perturbation<T>,
    axes: &AxisTriple<T>,
    quad: Quadrature,
) -> Result<T> {
    let quad = Quadrature::new(quad.n_theta, quad.n_phi)?;
    let coarse = averaged_probability_at(cfg, pert, axes, quad)?;
    let fine = averaged_probability_at(cfg, pert, axes, quad.doubled())?;
    let shift = (fine - coarse).abs();
    if shift > T::lit(REFINEMENT_TOL).max(T::epsilon() * T::lit(1e3)) {
        return Err(Error::QuadratureUnderResolved {
            shift: shift.as_f64(),
        });
    }
    Ok(coarse)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec<T> {
    pub cfg: ChannelConfig<T>,
    /// Values of `|p|/M`.
    pub ladder: Vec<T>,
    pub scenario: Scenario,
    pub ell: Vec3<T>,
    pub axes: AxisTriple<T>,
    pub quadrature: Quadrature,
}

impl<T: Real> SweepSpec<T> {
    /// `M = 1`, `m₁ = m₂ = 0.1`, `ℓ = x̂`, `θ_a = 2π/3`, `θ_b = θ_c = 0`, and
    /// five ladder points over `[10⁻³, 10⁻¹]`.
    pub fn standard(scenario: Scenario) -> Self {
        SweepSpec {
            cfg: ChannelConfig::ps_ff(T::one(), T::lit(0.1)),
            ladder: geometric_ladder(T::lit(1e-3), T::lit(1e-1), 5),
            scenario,
            ell: [T::one(), T::zero(), T::zero()],
            axes: AxisTriple::new(T::lit(2.0) * T::FRAC_PI_3(), T::zero(), T::zero()),
            quadrature: Quadrature::default(),
        }
    }
}

/// `n` values from `lo` to `hi` in geometric progression.
pub fn geometric_ladder<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n < 2 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / T::lit((n - 1) as f64);
    (0..n)
        .map(|i| lo * (ratio * T::lit(i as f64)).exp())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint<T> {
    pub p_over_m: T,
    pub delta_w: T,
}

/// Least-squares fit of `ln|Δw| = slope · ln(p/M) + intercept`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit<T> {
    pub slope: T,
    pub intercept: T,
    /// Root-mean-square residual of the fit in log space.
    pub residual: T,
    pub points: Vec<SweepPoint<T>>,
}

fn validate_ladder<T: Real>(ladder: &[T]) -> Result<()> {
    if ladder.len() < 2 {
        return Err(Error::InvalidLadder("need at least two points".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidLadder(
            "values must be strictly increasing".into(),
        ));
    }
    let (lo, hi) = (ladder[0], ladder[ladder.len() - 1]);
    if !(lo > T::zero()) || !(hi < T::lit(0.5)) {
        return Err(Error::InvalidLadder("values must lie in (0, 0.5)".into()));
    }
    if hi / lo < T::lit(100.0 * (1.0 - 1e-9)) {
        return Err(Error::InvalidLadder(
            "ladder must span at least two decades".into(),
        ));
    }
    Ok(())
}

/// Measures the exponent of `Δw(p) = w(p) − w(0)` along the ladder.
pub fn scaling_exponent<T: Real>(spec: &SweepSpec<T>) -> Result<ScalingFit<T>> {
    check_cfg(&spec.cfg)?;
    validate_ladder(&spec.ladder)?;
    let mass = spec.cfg.parent_mass;
    let baseline = averaged_probability(
        &spec.cfg,
        &Perturbation::none(spec.scenario),
        &spec.axes,
        spec.quadrature,
    )?;
    let points = spec
        .ladder
        .iter()
        .map(|&r| {
            let pert = Perturbation::new(r * mass, spec.ell, spec.scenario)?;
            let w = averaged_probability(&spec.cfg, &pert, &spec.axes, spec.quadrature)?;
            Ok(SweepPoint {
                p_over_m: r,
                delta_w: w - baseline,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let usable: Vec<(T, T)> = points
        .iter()
        .filter(|p| p.delta_w.abs() >= T::lit(SIGNAL_FLOOR))
        .map(|p| (p.p_over_m.ln(), p.delta_w.abs().ln()))
        .collect();
    if usable.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "{} of {} ladder points have |delta_w| >= {SIGNAL_FLOOR:e}",
            usable.len(),
            points.len()
        )));
    }
    let n = T::lit(usable.len() as f64);
    let mx = usable.iter().map(|p| p.0).sum::<T>() / n;
    let my = usable.iter().map(|p| p.1).sum::<T>() / n;
    let sxx = usable.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<T>();
    let sxy = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<T>();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss = usable
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<T>();
    Ok(ScalingFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
        points,
    })
}

/// Relative size `(ħc / (M L))²` of the transverse-momentum spread set by
/// analyzers a distance `L` (cm) apart, for a parent of mass `M` (GeV).
pub fn analyzer_distance_correction(mass_gev: f64, distance_cm: f64) -> Result<f64> {
    if !(mass_gev > 0.0) {
        return Err(Error::NonPositiveInput("M"));
    }
    if !(distance_cm > 0.0) {
        return Err(Error::NonPositiveInput("L"));
    }
    let x = HBAR_C_GEV_CM / (mass_gev * distance_cm);
    Ok(x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probabilities::{joint_prob_ps, ProbabilityMode};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn coarse() -> Quadrature {
        Quadrature::new(16, 32).unwrap()
    }

    #[test]
    fn quadrature_limits() {
        assert!(matches!(
            Quadrature::new(8, 32),
            Err(Error::QuadratureTooCoarse { .. })
        ));
        assert_eq!(
            Quadrature::default(),
            Quadrature {
                n_theta: 64,
                n_phi: 128
            }
        );
    }

    #[test]
    fn mean_direction_vanishes() {
        let m = mean_direction::<f64>(Quadrature::default()).unwrap();
        for c in m {
            assert!(c.abs() < 1e-12);
        }
    }

    #[test]
    fn unperturbed_average_is_ideal() {
        let cfg = ChannelConfig::ps_ff(1.0, 0.1);
        let axes = AxisTriple::new(2.0 * PI / 3.0, 0.0, 0.0);
        let w = averaged_probability(
            &cfg,
            &Perturbation::none(Scenario::Brownian),
            &axes,
            coarse(),
        )
        .unwrap();
        let ideal = joint_prob_ps(
            &cfg,
            &axes.a(),
            &axes.b(),
            SpinConfig::ALL[0],
            ProbabilityMode::Normalized,
        )
        .unwrap();
        assert_abs_diff_eq!(w, ideal.value, epsilon = 1e-12);
    }

    #[test]
    fn linear_term_averages_out() {
        let cfg = ChannelConfig::<f64>::ps_ff(1.0, 0.1);
        let axes = AxisTriple::new(1.1, -0.3, 0.0);
        let pert = Perturbation::new(0.02, [0.0, 0.6, 0.8], Scenario::Recoil).unwrap();
        let w0 =
            averaged_probability_at(&cfg, &Perturbation::none(Scenario::Recoil), &axes, coarse())
                .unwrap();
        let w1 = averaged_probability_at(&cfg, &pert, &axes, coarse()).unwrap();
        let w2 = averaged_probability_at(&cfg, &pert.reversed(), &axes, coarse()).unwrap();
        assert!((w1 - w0).abs() > 1e-8);
        assert_abs_diff_eq!(w1 - w0, w2 - w0, epsilon = 1e-10);
    }

    #[test]
    fn ladder_validation() {
        let mut spec = SweepSpec::<f64>::standard(Scenario::Brownian);
        spec.ladder = vec![1e-2, 1e-1];
        assert!(matches!(
            scaling_exponent(&spec),
            Err(Error::InvalidLadder(_))
        ));
        spec.ladder = vec![1e-3, 1e-1, 5e-2];
        assert!(matches!(
            scaling_exponent(&spec),
            Err(Error::InvalidLadder(_))
        ));
        spec.ladder = vec![1e-3, 0.6];
        assert!(matches!(
            scaling_exponent(&spec),
            Err(Error::InvalidLadder(_))
        ));
        let ladder = geometric_ladder(1e-3, 1e-1, 3);
        assert_abs_diff_eq!(ladder[1], 1e-2, epsilon = 1e-15);
    }

    #[test]
    fn analyzer_distance() {
        let x = analyzer_distance_correction(1.0, 2.0).unwrap();
        assert_abs_diff_eq!(x, (1.9733e-14_f64 / 2.0).powi(2), epsilon = 1e-40);
        assert!(x > 5e-29 && x < 5e-28);
        assert_eq!(
            analyzer_distance_correction(1.0, f64::INFINITY).unwrap(),
            0.0
        );
        let y = analyzer_distance_correction(1.0, 8.0).unwrap();
        assert_abs_diff_eq!(x / y, 16.0, epsilon = 1e-12);
        assert!(matches!(
            analyzer_distance_correction(0.0, 1.0),
            Err(Error::NonPositiveInput(_))
        ));
        assert!(analyzer_distance_correction(1.0, -1.0).is_err());
    }
}
