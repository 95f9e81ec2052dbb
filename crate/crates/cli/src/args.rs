//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use wigner_core::corrections::Quadrature;
use wigner_core::{Channel, ChannelConfig64, CorrelationMode, InequalityId, Scenario};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "wigner",
    version,
    about = "Bell-type inequalities in two-body decays of spin-0 particles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one inequality at given axes (or on supplied probabilities).
    Eval(EvalArgs),
    /// Tabulate an inequality over a grid of analyzer angles.
    Scan(ScanArgs),
    /// Locate the largest margin of an inequality.
    MaxViolation(MaxArgs),
    /// Check hidden-variable distributions against the triangle inequalities.
    LhvCheck(LhvArgs),
    /// Measure how the averaged probability departs from its rest-frame value.
    CorrectionSweep(SweepArgs),
    /// Relative weights of correlated and anticorrelated photon pairs.
    Weights(OutputArgs),
    /// Run a fast battery of internal consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Physical constants of the decay channel.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Decay channel; defaults to the natural channel of the inequality.
    #[arg(long, value_parser = parse_from_str::<Channel>)]
    pub channel: Option<Channel>,
    /// Parent mass M.
    #[arg(long = "mass", default_value_t = 1.0, allow_hyphen_values = true)]
    pub parent_mass: f64,
    /// Antifermion mass.
    #[arg(long, allow_hyphen_values = true)]
    pub m1: Option<f64>,
    /// Fermion mass.
    #[arg(long, allow_hyphen_values = true)]
    pub m2: Option<f64>,
    /// Coupling g.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub coupling: f64,
    /// Parity-odd constant A of the general photon vertex, as `re` or `re,im`.
    #[arg(long = "a", value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    pub amp_a: Complex64,
    /// Parity-even constant B of the general photon vertex, as `re` or `re,im`.
    #[arg(long = "b", value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    pub amp_b: Complex64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub f_higgs: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub f_pi: f64,
}

impl ModelArgs {
    /// Channel configuration with unset fermion masses defaulting to `default_mass`.
    pub fn config(&self, channel: Channel, default_mass: f64) -> ChannelConfig64 {
        ChannelConfig64 {
            parent_mass: self.parent_mass,
            m1: self.m1.unwrap_or(default_mass),
            m2: self.m2.unwrap_or(default_mass),
            coupling: self.coupling,
            f_higgs: self.f_higgs,
            f_pi: self.f_pi,
            amp_a: self.amp_a,
            amp_b: self.amp_b,
            ..ChannelConfig64::default_for(channel)
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse_from_str::<InequalityId>)]
    pub inequality: InequalityId,
    /// Analyzer angles `θa,θb,θc` (a fourth angle `θd` for chsh-classic).
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub angles: Option<List>,
    /// Operands `w_ab,w_ac,w_cb` for a formal three-term check.
    #[arg(long, value_parser = parse_list, conflicts_with = "angles")]
    pub probabilities: Option<List>,
    /// Angles are given in degrees.
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_from_str::<InequalityId>)]
    pub inequality: InequalityId,
    /// Points per angle over [−π, π].
    #[arg(long, default_value_t = 361)]
    pub grid: usize,
    /// Fixed angle of axis b.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta_b: f64,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MaxArgs {
    #[arg(long, value_parser = parse_from_str::<InequalityId>)]
    pub inequality: InequalityId,
    /// Stop when a refinement sweep gains less than this.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Bisect the |A|/|B| ratio at which trig-ab starts to be violated.
    #[arg(long)]
    pub threshold: bool,
    /// Bracket `lo,hi` for the threshold search.
    #[arg(long, value_parser = parse_list, default_value = "1,10")]
    pub ratio_range: List,
    /// Resolution of the threshold bisection.
    #[arg(long, default_value_t = 1e-6)]
    pub ratio_tol: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LhvArgs {
    #[arg(long, value_parser = parse_from_str::<CorrelationMode>, default_value = "anti")]
    pub mode: CorrelationMode,
    /// Number of random distributions.
    #[arg(long, default_value_t = 10_000)]
    pub sweep: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Pair probabilities `w_ab,w_ac,w_cb` to test for feasibility.
    #[arg(long, value_parser = parse_list)]
    pub targets: Option<List>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_from_str::<Scenario>, default_value = "brownian")]
    pub scenario: Scenario,
    /// Geometric ladder of |p|/M as `lo,hi,n`.
    #[arg(long, value_parser = parse_list, default_value = "1e-3,1e-1,5")]
    pub ladder: List,
    /// Unit direction `x,y,z` of the pair momentum.
    #[arg(long, value_parser = parse_list, default_value = "1,0,0", allow_hyphen_values = true)]
    pub ell: List,
    /// Analyzer angles `θa,θb,θc`; defaults to `2π/3,0,0`.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub angles: Option<List>,
    #[arg(long)]
    pub degrees: bool,
    /// Solid-angle nodes as `NTHETAxNPHI`.
    #[arg(long, value_parser = parse_quadrature, default_value = "64x128")]
    pub quadrature: Quadrature,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_from_str<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

fn parse_number(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if !x.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(x)
}

/// Comma-separated list of finite numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct List(pub Vec<f64>);

pub fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .map(parse_number)
        .collect::<Result<_, _>>()
        .map(List)
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    match parse_list(s)?.0.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(format!("'{s}' must be 're' or 're,im'")),
    }
}

fn parse_quadrature(s: &str) -> Result<Quadrature, String> {
    let (t, p) = s
        .split_once('x')
        .ok_or_else(|| format!("'{s}' must look like 64x128"))?;
    let n_theta = t
        .trim()
        .parse()
        .map_err(|_| format!("'{t}' is not a node count"))?;
    let n_phi = p
        .trim()
        .parse()
        .map_err(|_| format!("'{p}' is not a node count"))?;
    Quadrature::new(n_theta, n_phi).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-1,0.5").unwrap(), Complex64::new(-1.0, 0.5));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn lists_and_quadrature() {
        assert_eq!(parse_list("2.5,0,-1.25").unwrap().0, vec![2.5, 0.0, -1.25]);
        assert!(parse_list("1,,2").is_err());
        assert!(parse_list("nan").is_err());
        assert_eq!(
            parse_quadrature("32x64").unwrap(),
            Quadrature::new(32, 64).unwrap()
        );
        assert!(parse_quadrature("8x8").is_err());
        assert!(parse_quadrature("64").is_err());
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
