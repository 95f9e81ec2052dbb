//! Grid scans, violation maximization and the `|A|/|B|` threshold search.

use num_complex::Complex;
use rayon::prelude::*;

use super::{eval_wigner, AxisTriple, InequalityId, InequalityReport};
use crate::amplitudes::ChannelConfig;
use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::scalar::Real;

/// Cap on coordinate-refinement sweeps.
pub const MAX_ITERATIONS: usize = 1000;

/// Points per free angle of the coarse stage of [`maximize_violation`].
const COARSE_POINTS: usize = 181;

/// Refinement stops once a sweep moves no angle by more than this.
const ANGLE_STEP_TOL: f64 = 1e-7;

/// `|A|/|B|` above which the general γγ inequality is quoted as violable in
/// the reference treatment.
pub const REFERENCE_AB_THRESHOLD: f64 = std::f64::consts::SQRT_2;

/// Grid over `θ_a` (outer) and `θ_c` (inner) with `θ_b` fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T> {
    pub n_points: usize,
    pub theta_a_range: (T, T),
    pub theta_c_range: (T, T),
    pub theta_b: T,
}

impl<T: Real> GridSpec<T> {
    /// `n × n` points over `[−π, π]²`, `θ_b = 0`.
    pub fn new(n_points: usize) -> Self {
        let r = (-T::PI(), T::PI());
        GridSpec {
            n_points,
            theta_a_range: r,
            theta_c_range: r,
            theta_b: T::zero(),
        }
    }

    fn node(range: (T, T), i: usize, n: usize) -> T {
        range.0 + (range.1 - range.0) * T::lit(i as f64) / T::lit((n - 1) as f64)
    }

    pub fn axes(&self, index: usize) -> AxisTriple<T> {
        let n = self.n_points;
        AxisTriple::new(
            Self::node(self.theta_a_range, index / n, n),
            self.theta_b,
            Self::node(self.theta_c_range, index % n, n),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow<T> {
    pub axes: AxisTriple<T>,
    pub report: InequalityReport<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult<T> {
    pub rows: Vec<ScanRow<T>>,
    /// Index of the largest margin; ties go to the earliest row.
    pub argmax: usize,
}

impl<T: Real> ScanResult<T> {
    pub fn best(&self) -> &ScanRow<T> {
        &self.rows[self.argmax]
    }
}

/// Evaluates `id` on every grid point. Rows are ordered by grid index
/// whatever the thread count.
pub fn scan<T: Real>(
    id: InequalityId,
    grid: &GridSpec<T>,
    cfg: &ChannelConfig<T>,
) -> Result<ScanResult<T>> {
    if grid.n_points < 2 {
        return Err(Error::EmptyGrid(grid.n_points));
    }
    let total = grid.n_points * grid.n_points;
    let rows = (0..total)
        .into_par_iter()
        .map(|k| {
            let axes = grid.axes(k);
            eval_wigner(id, &axes, cfg).map(|report| ScanRow { axes, report })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (k, row) in rows.iter().enumerate() {
        let best = rows[argmax].report.margin;
        if row.report.margin > best + T::TIE_TOL * best.abs().max(T::one()) {
            argmax = k;
        }
    }
    Ok(ScanResult { rows, argmax })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxViolation<T> {
    pub axes: AxisTriple<T>,
    pub margin: T,
    pub theta_ab: T,
    /// Refinement sweeps performed.
    pub iterations: usize,
}

fn wrap<T: Real>(x: T, period: T) -> T {
    let half = period * T::lit(0.5);
    let mut y = x - period * ((x + half) / period).floor();
    if y <= -half {
        y = y + period;
    }
    y
}

/// Maximizes the margin over `θ_a, θ_c` with `θ_b = 0`: a 181-point coarse
/// grid per angle, then coordinate-wise golden-section refinement until a
/// sweep improves the margin by less than `tol`.
///
/// The result is mapped into one period per angle and, when the margin is
/// reflection symmetric, to the representative with `θ_ab ≥ 0`.
pub fn maximize_violation<T: Real>(
    id: InequalityId,
    cfg: &ChannelConfig<T>,
    tol: T,
) -> Result<MaxViolation<T>> {
    if !(tol > T::zero()) {
        return Err(Error::BadTolerance);
    }
    let coarse = scan(id, &GridSpec::new(COARSE_POINTS), cfg)?;
    let start = coarse.best().axes;
    let step = T::TAU() / T::lit((COARSE_POINTS - 1) as f64);
    let objective =
        |a: T, c: T| eval_wigner(id, &AxisTriple::new(a, T::zero(), c), cfg).map(|r| r.margin);

    let (mut a, mut c) = (start.theta_a, start.theta_c);
    let mut margin = coarse.best().report.margin;
    let x_tol = T::lit(1e-11).max(T::epsilon() * T::lit(16.0));
    let mut iterations = 0;
    loop {
        if iterations >= MAX_ITERATIONS {
            return Err(Error::NoConvergence(MAX_ITERATIONS));
        }
        iterations += 1;
        let before = (a, c, margin);
        let (na, fa) = golden_section_max(|x| objective(x, c), a - step, a + step, x_tol)?;
        if fa > margin {
            a = na;
            margin = fa;
        }
        let (nc, fc) = golden_section_max(|x| objective(a, x), c - step, c + step, x_tol)?;
        if fc > margin {
            c = nc;
            margin = fc;
        }
        let moved = (a - before.0).abs().max((c - before.1).abs());
        if margin - before.2 < tol && moved < T::lit(ANGLE_STEP_TOL) {
            break;
        }
    }

    let period = id.period::<T>();
    let (mut ca, mut cc) = (wrap(a, period), wrap(c, period));
    let needs_flip = ca < T::zero() || (ca == T::zero() && cc < T::zero());
    if needs_flip {
        let (ra, rc) = (wrap(-ca, period), wrap(-cc, period));
        let reflected = objective(ra, rc)?;
        if (reflected - margin).abs() <= T::TIE_TOL * margin.abs().max(T::one()) {
            ca = ra;
            cc = rc;
        }
    }
    let axes = AxisTriple::new(ca, T::zero(), cc);
    let margin = objective(ca, cc)?;
    Ok(MaxViolation {
        axes,
        margin,
        theta_ab: axes.theta_ab(),
        iterations,
    })
}

/// A measured quantity next to a differing reference statement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Discrepancy {
    pub id: InequalityId,
    pub measured: f64,
    pub reference: f64,
    pub reproduces_reference: bool,
    pub note: &'static str,
}

/// Flags the coplanar scan maximum of [`InequalityId::TrigHiggs`] against the
/// reference statement that the inequality can be violated in a narrow
/// angular window. `reference` is the margin bound such a violation needs.
pub fn trig_higgs_discrepancy(max_margin: f64) -> Discrepancy {
    Discrepancy {
        id: InequalityId::TrigHiggs,
        measured: max_margin,
        reference: 0.0,
        reproduces_reference: max_margin > 0.0,
        note: "reference states a violation is possible in a narrow angular range; \
               no coplanar axis triple reaches a positive margin",
    }
}

/// Flags a measured `|A|/|B|` violation threshold against the reference
/// value `√2`.
pub fn threshold_discrepancy(threshold: f64) -> Discrepancy {
    Discrepancy {
        id: InequalityId::TrigAb,
        measured: threshold,
        reference: REFERENCE_AB_THRESHOLD,
        reproduces_reference: (threshold - REFERENCE_AB_THRESHOLD).abs() <= 0.01,
        note: "reference states violation requires |A| >= sqrt(2)|B|; \
               the maximized margin changes sign at the measured ratio",
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdSearch<T> {
    /// Smallest `|A|/|B|` at which some axis triple violates the inequality.
    pub threshold: T,
    /// Maximized margins at the bracket ends.
    pub margin_lo: T,
    pub margin_hi: T,
    pub discrepancy: Discrepancy,
}

/// Bisects `r = |A|/|B|` on `[ratio_lo, ratio_hi]` for the sign change of
/// the maximized [`InequalityId::TrigAb`] margin, with `B = b` held fixed.
pub fn ab_violation_threshold<T: Real>(
    ratio_lo: T,
    ratio_hi: T,
    b: Complex<T>,
    ratio_tol: T,
) -> Result<ThresholdSearch<T>> {
    if !(b.norm() > T::zero()) {
        return Err(Error::NonPositiveInput("|B|"));
    }
    if !(ratio_tol > T::zero()) {
        return Err(Error::BadTolerance);
    }
    let margin_tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
    let max_margin = |r: T| {
        let cfg = ChannelConfig::p0_gg_ab(T::one(), Complex::new(r * b.norm(), T::zero()), b);
        maximize_violation(InequalityId::TrigAb, &cfg, margin_tol).map(|m| m.margin)
    };
    let (mut lo, mut hi) = (ratio_lo, ratio_hi);
    let margin_lo = max_margin(lo)?;
    let margin_hi = max_margin(hi)?;
    if !(margin_lo <= T::zero() && margin_hi > T::zero()) {
        return Err(Error::BracketFailure {
            f_lo: margin_lo.as_f64(),
            f_hi: margin_hi.as_f64(),
        });
    }
    let mut steps = 0;
    while hi - lo > ratio_tol {
        if steps >= MAX_ITERATIONS {
            return Err(Error::NoConvergence(MAX_ITERATIONS));
        }
        steps += 1;
        let mid = (lo + hi) * T::lit(0.5);
        if max_margin(mid)? > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let threshold = (lo + hi) * T::lit(0.5);
    Ok(ThresholdSearch {
        threshold,
        margin_lo,
        margin_hi,
        discrepancy: threshold_discrepancy(threshold.as_f64()),
    })
}
