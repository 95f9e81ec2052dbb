//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::f64::consts::{FRAC_PI_3, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wigner_core::corrections::{analyzer_distance_correction, scaling_exponent, SweepSpec};
use wigner_core::harmonics::gg_correlation_weights;
use wigner_core::inequalities::{
    ab_violation_threshold, eval_probabilities, maximize_violation, scan, trig_higgs_discrepancy,
    GridSpec,
};
use wigner_core::kinematics::unit_vector;
use wigner_core::lhv::{feasibility, sweep, verify_certificate};
use wigner_core::spinor::{
    commutator_residual, commutator_residual_on, dirac_u, dirac_v, project, spin_operator,
};
use wigner_core::{
    vec3, AxisTriple64, Channel, ChannelConfig64, CorrelationMode, InequalityId, Scenario,
    SpinProjection,
};

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn timed<F: FnOnce() -> Verdict>(f: F) -> (Verdict, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn maximum(id: InequalityId, theta_ab: f64, limit: Option<Duration>) -> Verdict {
    let cfg = ChannelConfig64::default_for(id.default_channel().unwrap());
    let (mut v, elapsed) = timed(|| match maximize_violation(id, &cfg, 1e-12) {
        Ok(m) => {
            let ok = (m.theta_ab - theta_ab).abs() < 1e-4 && (m.margin - 0.25).abs() < 1e-9;
            verdict(
                ok,
                format!("theta_ab = {:.12}, margin = {:.15}", m.theta_ab, m.margin),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    });
    if let Some(limit) = limit {
        v.passed &= elapsed < limit;
        v.detail += &format!(
            ", {:.3} s (limit {} s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    v
}

fn sin2(x: f64) -> f64 {
    x.sin().powi(2)
}

fn c3_reductions() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ps = ChannelConfig64::default_for(Channel::PsFf);
    let higgs = ChannelConfig64::default_for(Channel::HGg);
    let (mut worst_ps, mut worst_h) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let axes = AxisTriple64::new(
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        );
        let (ab, ac, bc) = (axes.theta_ab(), axes.theta_ac(), axes.theta_bc());
        let p = eval_probabilities(InequalityId::WignerPs, &axes, &ps).unwrap();
        let lhs = 0.5 * sin2(ab / 2.0);
        let rhs = 0.5 * (sin2(ac / 2.0) + sin2(bc / 2.0));
        worst_ps = worst_ps
            .max((p.lhs - lhs).abs())
            .max((p.rhs - rhs).abs())
            .max((p.margin - (lhs - rhs)).abs());
        let h = eval_probabilities(InequalityId::WignerPhotonHiggs, &axes, &higgs).unwrap();
        let lhs = sin2(ab) + 0.5;
        let rhs = 0.5 + sin2(ac) + sin2(bc) + 0.5;
        worst_h = worst_h
            .max((h.lhs - lhs).abs())
            .max((h.rhs - rhs).abs())
            .max((h.margin - (lhs - rhs)).abs());
    }
    verdict(
        worst_ps < 1e-12 && worst_h < 1e-12,
        format!("max residual wigner-ps {worst_ps:.2e}, wigner-photon-higgs {worst_h:.2e} over 1000 triples"),
    )
}

fn c4_weights() -> Verdict {
    let w = gg_correlation_weights::<f64>();
    let (corr, anti) = (15.0 / (16.0 * PI), 5.0 / (16.0 * PI));
    let ok = (w.corr - corr).abs() < 1e-12
        && (w.anti - anti).abs() < 1e-12
        && (w.ratio - 3.0).abs() < 1e-12;
    verdict(
        ok,
        format!(
            "corr = {:.15}, anti = {:.15}, ratio = {:.15}",
            w.corr, w.anti, w.ratio
        ),
    )
}

fn c5_quadratic() -> Verdict {
    let limit = Duration::from_secs(30);
    let (mut v, elapsed) = timed(|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for scenario in [Scenario::Brownian, Scenario::Recoil] {
            match scaling_exponent(&SweepSpec::<f64>::standard(scenario)) {
                Ok(fit) => {
                    ok &= (fit.slope - 2.0).abs() <= 0.05;
                    parts.push(format!("{scenario} slope = {:.4}", fit.slope));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("{scenario}: {e}"));
                }
            }
        }
        verdict(ok, parts.join(", "))
    });
    v.passed &= elapsed < limit;
    v.detail += &format!(", {:.2} s (limit 30 s)", elapsed.as_secs_f64());
    v
}

fn c6_hidden_variables() -> Verdict {
    let limit = Duration::from_secs(5);
    let (mut v, elapsed) = timed(|| {
        let mut min = f64::INFINITY;
        let mut certified = true;
        let targets = [0.375, 0.125, 0.125];
        for mode in [CorrelationMode::Anti, CorrelationMode::Corr] {
            min = min.min(sweep::<f64>(mode, 10_000, SEED).min_margin());
            let f = feasibility(targets, mode).unwrap();
            certified &= !f.feasible
                && f.certificate
                    .is_some_and(|y| verify_certificate(&y, targets, mode));
        }
        verdict(
            min >= -1e-12 && certified,
            format!("min margin {min:.3e} over 2 x 10^4 distributions, (3/8,1/8,1/8) infeasible with certificate: {certified}"),
        )
    });
    v.passed &= elapsed < limit;
    v.detail += &format!(", {:.2} s (limit 5 s)", elapsed.as_secs_f64());
    v
}

fn c7_spinor_algebra() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut eigen, mut closure, mut full) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (p, m) = (rng.gen_range(0.0..10.0), rng.gen_range(0.01..3.0));
        let n = unit_vector(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let (ta, pa) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let a = unit_vector(ta, pa);
        let ops = spin_operator(&vec3::scale(&n, p), m).unwrap();
        let ops_reversed = spin_operator(&vec3::scale(&n, -p), m).unwrap();
        let (proj, proj_reversed) = (project(&a, &ops), project(&a, &ops_reversed));
        let mut particles = Vec::new();
        for s in SpinProjection::BOTH {
            let two_s = Complex64::new(s.sign(), 0.0);
            let u = dirac_u(p, m, &n, s, ta, pa).unwrap();
            let v = dirac_v(p, m, &n, s, ta, pa).unwrap();
            eigen = eigen.max(proj.apply(&u).sub(&u.scaled(two_s)).max_abs());
            eigen = eigen.max(proj_reversed.apply(&v).sub(&v.scaled(two_s)).max_abs());
            particles.push(u);
        }
        closure = closure.max(commutator_residual_on(&ops, &particles));
        full = full.max(commutator_residual(&ops));
    }
    verdict(
        eigen < 1e-12 && closure < 1e-12,
        format!(
            "eigen residual {eigen:.2e}, commutator on particle states {closure:.2e} \
             (full 4x4 matrix {full:.2e}, not closed on negative-energy block)"
        ),
    )
}

fn c8_analyzer_distance() -> Verdict {
    let x = analyzer_distance_correction(1.0, 2.0).unwrap();
    verdict(
        (5e-29..=5e-28).contains(&x),
        format!("(hbar c / M L)^2 = {x:.4e}"),
    )
}

fn c9_discrepancies() -> Verdict {
    let cfg = ChannelConfig64::default_for(Channel::HGg);
    let result = scan(InequalityId::TrigHiggs, &GridSpec::new(721), &cfg).unwrap();
    let best = result.best().report.margin;
    let higgs = trig_higgs_discrepancy(best);
    let t = ab_violation_threshold(1.0, 10.0, Complex64::new(1.0, 0.0), 1e-6).unwrap();
    let ok = (best + 0.25).abs() < 1e-6
        && (t.threshold - 5f64.sqrt()).abs() < 0.01
        && !higgs.reproduces_reference
        && !t.discrepancy.reproduces_reference;
    verdict(
        ok,
        format!(
            "trig-higgs max margin {best:.9} [flag: reproduces_reference = {}; {}]; |A|/|B| threshold {:.9} \
             vs reference {:.6} [flag: reproduces_reference = {}; {}]",
            higgs.reproduces_reference,
            higgs.note,
            t.threshold,
            t.discrepancy.reference,
            t.discrepancy.reproduces_reference,
            t.discrepancy.note
        ),
    )
}

fn c10_determinism() -> Verdict {
    let invocations: [&[&str]; 6] = [
        &[
            "lhv-check",
            "--mode",
            "corr",
            "--sweep",
            "5000",
            "--seed",
            "7",
        ],
        &["selftest", "--seed", "3"],
        &[
            "scan",
            "--inequality",
            "wigner-photon-ps",
            "--grid",
            "91",
            "--format",
            "csv",
        ],
        &["max-violation", "--inequality", "trig-higgs"],
        &[
            "max-violation",
            "--inequality",
            "trig-ab",
            "--threshold",
            "--ratio-tol",
            "1e-4",
        ],
        &[
            "correction-sweep",
            "--scenario",
            "recoil",
            "--quadrature",
            "32x64",
            "--format",
            "csv",
        ],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_wigner"))
            .args(args)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let mut failures = Vec::new();
    for args in invocations {
        let first = run(args);
        let second = run(args);
        if first != second || first.0 != Some(0) || first.1.is_empty() {
            failures.push(args.join(" "));
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} invocations byte-identical on repeat", invocations.len())
        } else {
            format!("differing or failing: {}", failures.join("; "))
        },
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("nqm maximum", || {
            maximum(
                InequalityId::WignerNqm,
                2.0 * FRAC_PI_3,
                Some(Duration::from_secs(1)),
            )
        }),
        ("pion maximum", || {
            maximum(InequalityId::TrigPi0, FRAC_PI_3, None)
        }),
        ("reduction identities", c3_reductions),
        ("photon weights", c4_weights),
        ("quadratic correction", c5_quadratic),
        ("hidden-variable theorem", c6_hidden_variables),
        ("spinor algebra", c7_spinor_algebra),
        ("analyzer distance", c8_analyzer_distance),
        ("discrepancy checks", c9_discrepancies),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            k + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
