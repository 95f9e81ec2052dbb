//! Execution of parsed commands.

use std::f64::consts::{FRAC_PI_3, PI};
use std::io;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;
use wigner_core::corrections::{
    analyzer_distance_correction, geometric_ladder, scaling_exponent, SweepSpec,
};
use wigner_core::harmonics::gg_correlation_weights;
use wigner_core::inequalities::{
    ab_violation_threshold, closed_form_id, cross_check, eval_bell, eval_chsh, eval_wigner,
    eval_wigner_formal, maximize_violation, scan, singlet_correlator, trig_higgs_discrepancy,
    Discrepancy, GridSpec,
};
use wigner_core::kinematics::unit_vector;
use wigner_core::lhv::{feasibility, sweep, target_margins, verify_certificate};
use wigner_core::spinor::{commutator_residual_on, dirac_u, dirac_v, project, spin_operator};
use wigner_core::{
    vec3, AxisTriple64, Channel, ChannelConfig64, CorrelationMode, Error, InequalityId,
    InequalityReport64, SpinProjection,
};

use crate::args::{
    Command, EvalArgs, LhvArgs, List, MaxArgs, ModelArgs, OutputArgs, ScanArgs, SelftestArgs,
    SweepArgs,
};
use crate::output::{emit, float, to_json, Format, Table};

const SCAN_HEADER: [&str; 7] = [
    "theta_a", "theta_b", "theta_c", "lhs", "rhs", "margin", "violated",
];

/// Lowest margin the hidden-variable sweep tolerates as round-off.
const LHV_MARGIN_FLOOR: f64 = -1e-12;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("output failed: {0}")]
    Io(#[from] io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Numerical(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence(_)
            | Error::QuadratureUnderResolved { .. }
            | Error::DegenerateFit(_)
            | Error::BracketFailure { .. }
            | Error::NoSolution(_) => Failure::Numerical(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Eval(args) => run_eval(args),
        Command::Scan(args) => run_scan(args),
        Command::MaxViolation(args) => run_max(args),
        Command::LhvCheck(args) => run_lhv(args),
        Command::CorrectionSweep(args) => run_sweep(args),
        Command::Weights(out) => run_weights(out),
        Command::Selftest(args) => run_selftest(args),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Writes `json` or `table` according to the requested format.
fn write<S: Serialize>(out: &OutputArgs, json: &S, table: impl FnOnce() -> Table) -> Outcome {
    let bytes = match out.format {
        Format::Json => to_json(json)?,
        Format::Csv => table().to_csv()?,
    };
    emit(&bytes, out.output.as_deref())?;
    Ok(())
}

fn angles_in_radians(values: &[f64], degrees: bool) -> Vec<f64> {
    values
        .iter()
        .map(|&x| if degrees { x.to_radians() } else { x })
        .collect()
}

fn channel_for(id: InequalityId, model: &ModelArgs) -> Result<Channel, Failure> {
    model
        .channel
        .or_else(|| id.default_channel())
        .ok_or_else(|| usage(format!("inequality {id} needs --channel")))
}

fn bool_cell(b: bool) -> String {
    b.to_string()
}

#[derive(Serialize)]
struct ReportRow {
    theta_a: f64,
    theta_b: f64,
    theta_c: f64,
    lhs: f64,
    rhs: f64,
    margin: f64,
    violated: bool,
}

impl ReportRow {
    fn new(axes: &AxisTriple64, r: &InequalityReport64) -> Self {
        ReportRow {
            theta_a: axes.theta_a,
            theta_b: axes.theta_b,
            theta_c: axes.theta_c,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            violated: r.violated,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            float(self.theta_a),
            float(self.theta_b),
            float(self.theta_c),
            float(self.lhs),
            float(self.rhs),
            float(self.margin),
            bool_cell(self.violated),
        ]
    }
}

#[derive(Serialize)]
struct DiscrepancyOut {
    inequality: String,
    measured: f64,
    reference: f64,
    reproduces_reference: bool,
    note: &'static str,
}

impl From<Discrepancy> for DiscrepancyOut {
    fn from(d: Discrepancy) -> Self {
        DiscrepancyOut {
            inequality: d.id.name().to_string(),
            measured: d.measured,
            reference: d.reference,
            reproduces_reference: d.reproduces_reference,
            note: d.note,
        }
    }
}

fn report_discrepancy(d: &DiscrepancyOut) {
    eprintln!(
        "discrepancy [{}]: measured {} vs reference {}; reproduces_reference = {}; {}",
        d.inequality,
        float(d.measured),
        float(d.reference),
        d.reproduces_reference,
        d.note
    );
}

/// Discrepancy flag for ids whose closed form is the scalar photon form.
fn higgs_flag(id: InequalityId, cfg: &ChannelConfig64, margin: f64) -> Option<DiscrepancyOut> {
    (closed_form_id(id, cfg) == InequalityId::TrigHiggs)
        .then(|| trig_higgs_discrepancy(margin).into())
}

#[derive(Serialize)]
struct EvalOut {
    inequality: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    channel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angles: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    probabilities: Option<Vec<f64>>,
    lhs: f64,
    rhs: f64,
    margin: f64,
    violated: bool,
}

fn run_eval(args: EvalArgs) -> Outcome {
    let id = args.inequality;
    if let Some(List(w)) = &args.probabilities {
        let [w_ab, w_ac, w_cb] = <[f64; 3]>::try_from(w.as_slice())
            .map_err(|_| usage("--probabilities takes exactly three values w_ab,w_ac,w_cb"))?;
        let report = eval_wigner_formal(id, w_ab, w_ac, w_cb)?;
        let json = EvalOut {
            inequality: id.name().into(),
            channel: None,
            angles: None,
            probabilities: Some(w.clone()),
            lhs: report.lhs,
            rhs: report.rhs,
            margin: report.margin,
            violated: report.violated,
        };
        return write(&args.output, &json, || {
            let mut t = Table::new(&["w_ab", "w_ac", "w_cb", "lhs", "rhs", "margin", "violated"]);
            let mut row: Vec<String> = w.iter().map(|&x| float(x)).collect();
            row.extend([
                float(report.lhs),
                float(report.rhs),
                float(report.margin),
                bool_cell(report.violated),
            ]);
            t.push(row);
            t
        });
    }

    let angles = args
        .angles
        .as_ref()
        .map(|l| l.0.as_slice())
        .ok_or_else(|| usage(format!("eval {id} needs --angles or --probabilities")))?;
    let angles = angles_in_radians(angles, args.degrees);
    let expected = if id == InequalityId::ChshClassic {
        4
    } else {
        3
    };
    if angles.len() != expected {
        return Err(usage(format!(
            "{id} needs {expected} angles, got {}",
            angles.len()
        )));
    }
    let corr = |x: f64, y: f64| singlet_correlator(x - y);
    let (report, channel) = match id {
        InequalityId::BellClassic => {
            let (a, b, c) = (angles[0], angles[1], angles[2]);
            (eval_bell(corr(a, b), corr(a, c), corr(b, c))?, None)
        }
        InequalityId::ChshClassic => {
            let (a, b, c, d) = (angles[0], angles[1], angles[2], angles[3]);
            (
                eval_chsh(corr(a, b), corr(a, c), corr(d, b), corr(d, c))?,
                None,
            )
        }
        _ => {
            let channel = channel_for(id, &args.model)?;
            let cfg = args.model.config(channel, 0.0);
            let axes = AxisTriple64::new(angles[0], angles[1], angles[2]);
            (
                eval_wigner(id, &axes, &cfg)?,
                Some(channel.name().to_string()),
            )
        }
    };
    let json = EvalOut {
        inequality: id.name().into(),
        channel,
        angles: Some(angles.clone()),
        probabilities: None,
        lhs: report.lhs,
        rhs: report.rhs,
        margin: report.margin,
        violated: report.violated,
    };
    write(&args.output, &json, || {
        let header: &[&'static str] = if expected == 4 {
            &[
                "theta_a", "theta_b", "theta_c", "theta_d", "lhs", "rhs", "margin", "violated",
            ]
        } else {
            &SCAN_HEADER
        };
        let mut t = Table::new(header);
        let mut row: Vec<String> = angles.iter().map(|&x| float(x)).collect();
        row.extend([
            float(report.lhs),
            float(report.rhs),
            float(report.margin),
            bool_cell(report.violated),
        ]);
        t.push(row);
        t
    })
}

#[derive(Serialize)]
struct ScanOut {
    inequality: String,
    channel: String,
    grid: usize,
    best: ReportRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<DiscrepancyOut>,
    rows: Vec<ReportRow>,
}

fn run_scan(args: ScanArgs) -> Outcome {
    let id = args.inequality;
    let channel = channel_for(id, &args.model)?;
    let cfg = args.model.config(channel, 0.0);
    let theta_b = if args.degrees {
        args.theta_b.to_radians()
    } else {
        args.theta_b
    };
    let grid = GridSpec {
        theta_b,
        ..GridSpec::new(args.grid)
    };
    let result = scan(id, &grid, &cfg)?;
    let best = result.best();
    let discrepancy = higgs_flag(id, &cfg, best.report.margin);
    if let (Some(d), Format::Csv) = (&discrepancy, args.output.format) {
        report_discrepancy(d);
    }
    let rows: Vec<ReportRow> = result
        .rows
        .iter()
        .map(|r| ReportRow::new(&r.axes, &r.report))
        .collect();
    let json = ScanOut {
        inequality: id.name().into(),
        channel: channel.name().into(),
        grid: args.grid,
        best: ReportRow::new(&best.axes, &best.report),
        discrepancy,
        rows,
    };
    write(&args.output, &json, || {
        let mut t = Table::new(&SCAN_HEADER);
        for row in &json.rows {
            t.push(row.cells());
        }
        t
    })
}

#[derive(Serialize)]
struct MaxOut {
    inequality: String,
    channel: String,
    theta_a: f64,
    theta_b: f64,
    theta_c: f64,
    theta_ab: f64,
    margin: f64,
    violated: bool,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<DiscrepancyOut>,
}

#[derive(Serialize)]
struct ThresholdOut {
    inequality: String,
    b: [f64; 2],
    ratio_lo: f64,
    ratio_hi: f64,
    ratio_tol: f64,
    threshold: f64,
    margin_lo: f64,
    margin_hi: f64,
    discrepancy: DiscrepancyOut,
}

fn run_max(args: MaxArgs) -> Outcome {
    let id = args.inequality;
    if args.threshold {
        return run_threshold(args);
    }
    let channel = channel_for(id, &args.model)?;
    let cfg = args.model.config(channel, 0.0);
    let m = maximize_violation(id, &cfg, args.tol)?;
    let discrepancy = higgs_flag(id, &cfg, m.margin);
    if let (Some(d), Format::Csv) = (&discrepancy, args.output.format) {
        report_discrepancy(d);
    }
    let json = MaxOut {
        inequality: id.name().into(),
        channel: channel.name().into(),
        theta_a: m.axes.theta_a,
        theta_b: m.axes.theta_b,
        theta_c: m.axes.theta_c,
        theta_ab: m.theta_ab,
        margin: m.margin,
        violated: m.margin > 0.0,
        iterations: m.iterations,
        discrepancy,
    };
    write(&args.output, &json, || {
        let mut t = Table::new(&[
            "theta_a",
            "theta_b",
            "theta_c",
            "theta_ab",
            "margin",
            "violated",
            "iterations",
        ]);
        t.push(vec![
            float(json.theta_a),
            float(json.theta_b),
            float(json.theta_c),
            float(json.theta_ab),
            float(json.margin),
            bool_cell(json.violated),
            json.iterations.to_string(),
        ]);
        t
    })
}

fn run_threshold(args: MaxArgs) -> Outcome {
    if args.inequality != InequalityId::TrigAb {
        return Err(usage("--threshold applies to trig-ab only"));
    }
    let [lo, hi] = <[f64; 2]>::try_from(args.ratio_range.0.as_slice())
        .map_err(|_| usage("--ratio-range takes exactly two values lo,hi"))?;
    if !(lo > 0.0 && hi > lo) {
        return Err(usage("--ratio-range needs 0 < lo < hi"));
    }
    // B only sets the scale; a unit value is used when none is given
    let b = if args.model.amp_b.norm() > 0.0 {
        args.model.amp_b
    } else {
        Complex64::new(1.0, 0.0)
    };
    let t = ab_violation_threshold(lo, hi, b, args.ratio_tol)?;
    let discrepancy: DiscrepancyOut = t.discrepancy.into();
    if args.output.format == Format::Csv {
        report_discrepancy(&discrepancy);
    }
    let json = ThresholdOut {
        inequality: InequalityId::TrigAb.name().into(),
        b: [b.re, b.im],
        ratio_lo: lo,
        ratio_hi: hi,
        ratio_tol: args.ratio_tol,
        threshold: t.threshold,
        margin_lo: t.margin_lo,
        margin_hi: t.margin_hi,
        discrepancy,
    };
    write(&args.output, &json, || {
        let mut t = Table::new(&["threshold", "margin_lo", "margin_hi"]);
        t.push(vec![
            float(json.threshold),
            float(json.margin_lo),
            float(json.margin_hi),
        ]);
        t
    })
}

#[derive(Serialize)]
struct FeasibilityOut {
    targets: [f64; 3],
    feasible: bool,
    target_margins: [f64; 5],
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[f64; 8]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_valid: Option<bool>,
}

#[derive(Serialize)]
struct LhvOut {
    mode: String,
    count: u64,
    seed: u64,
    min_triangle: f64,
    min_flipped: f64,
    min_weakened_sum: f64,
    min_margin: f64,
    non_negative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasibility: Option<FeasibilityOut>,
}

fn run_lhv(args: LhvArgs) -> Outcome {
    if args.sweep == 0 {
        return Err(usage("--sweep must be at least 1"));
    }
    let feasibility_out = match &args.targets {
        None => None,
        Some(List(t)) => {
            let targets = <[f64; 3]>::try_from(t.as_slice())
                .map_err(|_| usage("--targets takes exactly three values w_ab,w_ac,w_cb"))?;
            let f = feasibility(targets, args.mode)?;
            Some(FeasibilityOut {
                targets,
                feasible: f.feasible,
                target_margins: target_margins(targets),
                witness: f.witness.map(|w| *w.weights()),
                certificate: f.certificate,
                certificate_valid: f
                    .certificate
                    .map(|y| verify_certificate(&y, targets, args.mode)),
            })
        }
    };
    let summary = sweep::<f64>(args.mode, args.sweep, args.seed);
    let min_margin = summary.min_margin();
    let non_negative = min_margin >= LHV_MARGIN_FLOOR;
    eprintln!(
        "min margin {} {} 0 over {} {} distributions (seed {})",
        float(min_margin),
        if non_negative { ">=" } else { "<" },
        args.sweep,
        args.mode,
        args.seed
    );
    let json = LhvOut {
        mode: args.mode.to_string(),
        count: summary.count,
        seed: args.seed,
        min_triangle: summary.min_triangle,
        min_flipped: summary.min_flipped,
        min_weakened_sum: summary.min_weakened_sum,
        min_margin,
        non_negative,
        feasibility: feasibility_out,
    };
    write(&args.output, &json, || {
        let mut t = Table::new(&[
            "mode",
            "count",
            "seed",
            "min_triangle",
            "min_flipped",
            "min_weakened_sum",
            "min_margin",
        ]);
        t.push(vec![
            json.mode.clone(),
            json.count.to_string(),
            json.seed.to_string(),
            float(json.min_triangle),
            float(json.min_flipped),
            float(json.min_weakened_sum),
            float(json.min_margin),
        ]);
        t
    })?;
    if non_negative {
        Ok(())
    } else {
        Err(Failure::Numerical(format!(
            "hidden-variable margin {} is negative",
            float(min_margin)
        )))
    }
}

#[derive(Serialize)]
struct SweepPointOut {
    p_over_m: f64,
    delta_w: f64,
}

#[derive(Serialize)]
struct SweepOut {
    scenario: String,
    parent_mass: f64,
    m1: f64,
    m2: f64,
    ell: [f64; 3],
    theta_a: f64,
    theta_b: f64,
    n_theta: usize,
    n_phi: usize,
    slope: f64,
    intercept: f64,
    residual: f64,
    points: Vec<SweepPointOut>,
}

fn run_sweep(args: SweepArgs) -> Outcome {
    let [lo, hi, n] = <[f64; 3]>::try_from(args.ladder.0.as_slice())
        .map_err(|_| usage("--ladder takes exactly three values lo,hi,n"))?;
    if n.fract() != 0.0 || n < 2.0 {
        return Err(usage("--ladder point count must be an integer >= 2"));
    }
    let ell = <[f64; 3]>::try_from(args.ell.0.as_slice())
        .map_err(|_| usage("--ell takes exactly three values x,y,z"))?;
    let ell = vec3::normalized(&ell).ok_or_else(|| usage("--ell must be non-zero"))?;
    let angles = match &args.angles {
        Some(List(a)) => angles_in_radians(a, args.degrees),
        None => vec![2.0 * FRAC_PI_3, 0.0, 0.0],
    };
    if angles.len() != 3 {
        return Err(usage("--angles takes exactly three values"));
    }
    if let Some(ch) = args.model.channel.filter(|&c| c != Channel::PsFf) {
        return Err(usage(format!(
            "correction-sweep supports ps-ff only, got {ch}"
        )));
    }
    let cfg = args.model.config(Channel::PsFf, 0.1);
    let spec = SweepSpec {
        cfg,
        ladder: geometric_ladder(lo, hi, n as usize),
        scenario: args.scenario,
        ell,
        axes: AxisTriple64::new(angles[0], angles[1], angles[2]),
        quadrature: args.quadrature,
    };
    let fit = scaling_exponent(&spec)?;
    let json = SweepOut {
        scenario: args.scenario.to_string(),
        parent_mass: cfg.parent_mass,
        m1: cfg.m1,
        m2: cfg.m2,
        ell,
        theta_a: angles[0],
        theta_b: angles[1],
        n_theta: args.quadrature.n_theta,
        n_phi: args.quadrature.n_phi,
        slope: fit.slope,
        intercept: fit.intercept,
        residual: fit.residual,
        points: fit
            .points
            .iter()
            .map(|p| SweepPointOut {
                p_over_m: p.p_over_m,
                delta_w: p.delta_w,
            })
            .collect(),
    };
    if args.output.format == Format::Csv {
        eprintln!(
            "fit: slope {} intercept {} residual {} ({})",
            float(fit.slope),
            float(fit.intercept),
            float(fit.residual),
            args.scenario
        );
    }
    write(&args.output, &json, || {
        let mut t = Table::new(&["p_over_M", "delta_w"]);
        for p in &json.points {
            t.push(vec![float(p.p_over_m), float(p.delta_w)]);
        }
        t
    })
}

#[derive(Serialize)]
struct WeightsOut {
    corr: f64,
    anti: f64,
    ratio: f64,
}

fn run_weights(out: OutputArgs) -> Outcome {
    let w = gg_correlation_weights::<f64>();
    let json = WeightsOut {
        corr: w.corr,
        anti: w.anti,
        ratio: w.ratio,
    };
    write(&out, &json, || {
        let mut t = Table::new(&["corr", "anti", "ratio"]);
        t.push(vec![float(w.corr), float(w.anti), float(w.ratio)]);
        t
    })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    value: f64,
}

#[derive(Serialize)]
struct SelftestOut {
    seed: u64,
    passed: bool,
    checks: Vec<Check>,
}

fn check(name: &'static str, value: f64, passed: bool) -> Check {
    Check {
        name,
        passed,
        value,
    }
}

fn maximum_check(name: &'static str, id: InequalityId, theta_ab: f64) -> Result<Check, Failure> {
    let cfg = ChannelConfig64::default_for(id.default_channel().expect("angular id"));
    let m = maximize_violation(id, &cfg, 1e-12)?;
    let ok = (m.margin - 0.25).abs() < 1e-9 && (m.theta_ab - theta_ab).abs() < 1e-4;
    Ok(check(name, m.margin, ok))
}

fn reduction_check(rng: &mut ChaCha8Rng) -> Result<Check, Failure> {
    let cases = [
        (
            InequalityId::WignerPs,
            ChannelConfig64::default_for(Channel::PsFf),
        ),
        (
            InequalityId::WignerPhotonHiggs,
            ChannelConfig64::default_for(Channel::HGg),
        ),
    ];
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let axes = AxisTriple64::new(
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        );
        for (id, cfg) in &cases {
            worst = worst.max(cross_check(*id, &axes, cfg)?.residual);
        }
    }
    Ok(check("reduction-identities", worst, worst < 1e-12))
}

fn spinor_check(rng: &mut ChaCha8Rng) -> Result<Check, Failure> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (p, m) = (rng.gen_range(0.0..5.0), rng.gen_range(0.05..3.0));
        let n = unit_vector(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let (ta, pa) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let a = unit_vector(ta, pa);
        let ops = spin_operator(&vec3::scale(&n, p), m)?;
        let ops_rev = spin_operator(&vec3::scale(&n, -p), m)?;
        let (proj, proj_rev) = (project(&a, &ops), project(&a, &ops_rev));
        let mut us = Vec::new();
        for s in SpinProjection::BOTH {
            let u = dirac_u(p, m, &n, s, ta, pa)?;
            let v = dirac_v(p, m, &n, s, ta, pa)?;
            let two_s = num_complex::Complex64::new(s.sign(), 0.0);
            worst = worst.max(proj.apply(&u).sub(&u.scaled(two_s)).max_abs());
            worst = worst.max(proj_rev.apply(&v).sub(&v.scaled(two_s)).max_abs());
            us.push(u);
        }
        worst = worst.max(commutator_residual_on(&ops, &us));
    }
    Ok(check("spinor-algebra", worst, worst < 1e-12))
}

fn lhv_check(seed: u64) -> Result<[Check; 2], Failure> {
    let mut min = f64::INFINITY;
    for mode in [CorrelationMode::Anti, CorrelationMode::Corr] {
        min = min.min(sweep::<f64>(mode, 1000, seed).min_margin());
    }
    let targets = [0.375, 0.125, 0.125];
    let f = feasibility(targets, CorrelationMode::Anti)?;
    let certified = !f.feasible
        && f.certificate
            .is_some_and(|y| verify_certificate(&y, targets, CorrelationMode::Anti));
    Ok([
        check("hidden-variable-margins", min, min >= LHV_MARGIN_FLOOR),
        check(
            "quantum-targets-infeasible",
            if certified { 1.0 } else { 0.0 },
            certified,
        ),
    ])
}

fn run_selftest(args: SelftestArgs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let weights = gg_correlation_weights::<f64>();
    let distance = analyzer_distance_correction(1.0, 2.0)?;
    let mut checks = vec![
        maximum_check("nqm-maximum", InequalityId::WignerNqm, 2.0 * FRAC_PI_3)?,
        maximum_check("pi0-maximum", InequalityId::TrigPi0, FRAC_PI_3)?,
        reduction_check(&mut rng)?,
        check(
            "photon-weights",
            weights.ratio,
            (weights.corr - 15.0 / (16.0 * PI)).abs() < 1e-12
                && (weights.anti - 5.0 / (16.0 * PI)).abs() < 1e-12
                && (weights.ratio - 3.0).abs() < 1e-12,
        ),
        spinor_check(&mut rng)?,
    ];
    checks.extend(lhv_check(args.seed)?);
    checks.push(check(
        "analyzer-distance",
        distance,
        (5e-29..=5e-28).contains(&distance),
    ));
    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        eprintln!(
            "{} {} ({})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            float(c.value)
        );
    }
    let json = SelftestOut {
        seed: args.seed,
        passed,
        checks,
    };
    write(&args.output, &json, || {
        let mut t = Table::new(&["name", "passed", "value"]);
        for c in &json.checks {
            t.push(vec![
                c.name.to_string(),
                bool_cell(c.passed),
                float(c.value),
            ]);
        }
        t
    })?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Numerical("self-test failed".into()))
    }
}
