use thiserror::Error;

use crate::amplitudes::Channel;
use crate::inequalities::InequalityId;

/// Errors raised by the library. Numeric payloads are reported as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector is not unit length (|n| = {norm})")]
    NonUnitVector { norm: f64 },
    #[error("mass must be non-negative (got {0})")]
    NegativeMass(f64),
    #[error("momentum magnitude must be non-negative (got {0})")]
    NegativeMomentum(f64),
    #[error("spin operator undefined for a massless particle at rest")]
    ZeroEnergy,
    #[error("decay below threshold: M = {parent} <= m1 + m2 = {daughters}")]
    BelowThreshold { parent: f64, daughters: f64 },
    #[error("kinematics do not close on the mass shells ({0})")]
    NoSolution(String),
    #[error("angle {name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("operation requires channel {expected}, got {got}")]
    WrongChannel {
        expected: &'static str,
        got: Channel,
    },
    #[error("inequality {id} cannot be evaluated for channel {channel}")]
    ChannelMismatch { id: InequalityId, channel: Channel },
    #[error("inequality {0} is correlator-level and has no angle parametrisation")]
    NotAngular(InequalityId),
    #[error("inequality {0} has no three-term pairwise form")]
    NotPairwise(InequalityId),
    #[error("invalid quantum numbers l = {l}, m = {m} (need |m| <= l <= 4)")]
    BadQuantumNumbers { l: i32, m: i32 },
    #[error("correlator {0} outside [-1, 1]")]
    OutOfRangeCorrelator(f64),
    #[error("grid needs at least two points per angle (got {0})")]
    EmptyGrid(usize),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("root not bracketed: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    BracketFailure { f_lo: f64, f_hi: f64 },
    #[error("pair probability needs two distinct axes")]
    SameAxis,
    #[error("invalid hidden-variable distribution: {0}")]
    InvalidDistribution(String),
    #[error("probability target {0} outside [0, 1]")]
    TargetOutOfRange(f64),
    #[error("quadrature under-resolved: doubling the nodes shifts the result by {shift:e}")]
    QuadratureUnderResolved { shift: f64 },
    #[error("quadrature needs at least {min_theta}x{min_phi} nodes")]
    QuadratureTooCoarse { min_theta: usize, min_phi: usize },
    #[error("scaling fit is degenerate: {0}")]
    DegenerateFit(String),
    #[error("invalid sweep ladder: {0}")]
    InvalidLadder(String),
    #[error("input must be positive: {0}")]
    NonPositiveInput(&'static str),
    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),
    #[error("tolerance must be positive")]
    BadTolerance,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
