//! Spin and polarization correlations in two-body decays of spin-0
//! particles, and the Bell-type inequalities built on them.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`.

// `!(x > 0)` rejects NaN as well; index loops mirror the tensor formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod amplitudes;
pub mod corrections;
pub mod error;
pub mod harmonics;
pub mod inequalities;
pub mod kinematics;
pub mod lhv;
pub mod optimize;
pub mod probabilities;
pub mod quadrature;
pub mod scalar;
pub mod spinor;
pub mod vec3;

pub use amplitudes::{Channel, ChannelConfig, PolarizationLabel, SpinConfig};
pub use error::{Error, Result};
pub use inequalities::{AxisTriple, InequalityId, InequalityReport};
pub use kinematics::{
    AnalyzerAxis, DecayKinematics, Direction, Perturbation, PerturbedKinematics, Scenario,
};
pub use lhv::{CorrelationMode, LhvDistribution};
pub use scalar::{Cplx, Real};
pub use spinor::{FourSpinor, SpinProjection, TwoSpinor};

pub type TwoSpinor64 = TwoSpinor<f64>;
pub type FourSpinor64 = FourSpinor<f64>;
pub type Direction64 = Direction<f64>;
pub type AnalyzerAxis64 = AnalyzerAxis<f64>;
pub type DecayKinematics64 = DecayKinematics<f64>;
pub type Perturbation64 = Perturbation<f64>;
pub type PerturbedKinematics64 = PerturbedKinematics<f64>;
pub type ChannelConfig64 = ChannelConfig<f64>;
pub type AxisTriple64 = AxisTriple<f64>;
pub type InequalityReport64 = InequalityReport<f64>;
pub type LhvDistribution64 = LhvDistribution<f64>;
pub type Complex64 = Cplx<f64>;
