//! Two- and four-component spinors, Pauli and Dirac matrices, and the
//! relativistic spin-1/2 operator.
//!
//! Conventions: metric `(+,-,-,-)`, gamma matrices in the standard (Dirac)
//! representation, `ε¹²³ = +1`. Helicity-basis two-spinors carry the half-angle
//! phases `e^{∓iφ/2}` literally; only probabilities are compared where a
//! global phase could differ.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, imag_unit, re, Cplx, Real};
use crate::vec3::{self, Vec3};

/// Dichotomic spin projection `s = ±1/2` along an analyzer axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinProjection {
    Up,
    Down,
}

impl SpinProjection {
    pub const BOTH: [SpinProjection; 2] = [SpinProjection::Up, SpinProjection::Down];

    /// `+1/2` or `-1/2`.
    pub fn value<T: Real>(self) -> T {
        self.sign::<T>() * T::lit(0.5)
    }

    /// `2s = ±1`.
    pub fn sign<T: Real>(self) -> T {
        match self {
            SpinProjection::Up => T::one(),
            SpinProjection::Down => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SpinProjection::Up => SpinProjection::Down,
            SpinProjection::Down => SpinProjection::Up,
        }
    }

    /// Parses `±1/2` (or `±0.5`); anything else is rejected.
    pub fn from_half(value: f64) -> Option<Self> {
        if value == 0.5 {
            Some(SpinProjection::Up)
        } else if value == -0.5 {
            Some(SpinProjection::Down)
        } else {
            None
        }
    }
}

/// Two-component complex spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSpinor<T>(pub [Cplx<T>; 2]);

impl<T: Real> TwoSpinor<T> {
    pub fn new(up: Cplx<T>, down: Cplx<T>) -> Self {
        TwoSpinor([up, down])
    }

    pub fn norm_sqr(&self) -> T {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    /// `self† · other`.
    pub fn inner(&self, other: &Self) -> Cplx<T> {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// `self† M other`.
    pub fn sandwich(&self, m: &Matrix2C<T>, other: &Self) -> Cplx<T> {
        self.inner(&m.apply(other))
    }

    pub fn scaled(&self, s: Cplx<T>) -> Self {
        TwoSpinor([self.0[0] * s, self.0[1] * s])
    }
}

/// Four-component Dirac spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourSpinor<T>(pub [Cplx<T>; 4]);

impl<T: Real> FourSpinor<T> {
    pub fn from_blocks(upper: &TwoSpinor<T>, lower: &TwoSpinor<T>) -> Self {
        FourSpinor([upper.0[0], upper.0[1], lower.0[0], lower.0[1]])
    }

    /// `ψ†ψ`.
    pub fn norm_sqr(&self) -> T {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `self† · other`.
    pub fn inner(&self, other: &Self) -> Cplx<T> {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    /// Dirac adjoint contraction `ψ̄ φ = ψ† γ⁰ φ`.
    pub fn bar_dot(&self, other: &Self) -> Cplx<T> {
        let g0 = Matrix4C::gamma(0);
        self.inner(&g0.apply(other))
    }

    /// `ψ̄ M φ`.
    pub fn bar_sandwich(&self, m: &Matrix4C<T>, other: &Self) -> Cplx<T> {
        self.bar_dot(&m.apply(other))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = *self;
        for (o, b) in out.0.iter_mut().zip(other.0.iter()) {
            *o = *o - *b;
        }
        out
    }

    pub fn scaled(&self, s: Cplx<T>) -> Self {
        let mut out = *self;
        for o in out.0.iter_mut() {
            *o = *o * s;
        }
        out
    }

    /// Largest modulus among the components.
    pub fn max_abs(&self) -> T {
        self.0.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }
}

/// Row-major complex 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2C<T>(pub [[Cplx<T>; 2]; 2]);

impl<T: Real> Matrix2C<T> {
    pub fn zero() -> Self {
        let z = re(T::zero());
        Matrix2C([[z, z], [z, z]])
    }

    pub fn identity() -> Self {
        let (z, o) = (re(T::zero()), re(T::one()));
        Matrix2C([[o, z], [z, o]])
    }

    /// Pauli matrix `σ^{i+1}` for `i ∈ {0, 1, 2}`.
    pub fn pauli(i: usize) -> Self {
        let (z, o, j) = (re(T::zero()), re(T::one()), imag_unit::<T>());
        match i {
            0 => Matrix2C([[z, o], [o, z]]),
            1 => Matrix2C([[z, -j], [j, z]]),
            2 => Matrix2C([[o, z], [z, -o]]),
            _ => panic!("Pauli index {i} out of range"),
        }
    }

    pub fn apply(&self, v: &TwoSpinor<T>) -> TwoSpinor<T> {
        let m = &self.0;
        TwoSpinor([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2C([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Cplx<T> {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scaled(&self, s: Cplx<T>) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * s;
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }
}

impl<T: Real> Add for Matrix2C<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (r, rr) in out.0.iter_mut().zip(rhs.0.iter()) {
            for (e, ee) in r.iter_mut().zip(rr.iter()) {
                *e = *e + *ee;
            }
        }
        out
    }
}

impl<T: Real> Sub for Matrix2C<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scaled(re(-T::one()))
    }
}

impl<T: Real> Mul for Matrix2C<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Matrix2C::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

/// Row-major complex 4×4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4C<T>(pub [[Cplx<T>; 4]; 4]);

impl<T: Real> Matrix4C<T> {
    pub fn zero() -> Self {
        Matrix4C([[re(T::zero()); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = re(T::one());
        }
        m
    }

    /// Assembles `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: &Matrix2C<T>, b: &Matrix2C<T>, c: &Matrix2C<T>, d: &Matrix2C<T>) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a.0[i][j];
                m.0[i][j + 2] = b.0[i][j];
                m.0[i + 2][j] = c.0[i][j];
                m.0[i + 2][j + 2] = d.0[i][j];
            }
        }
        m
    }

    /// Dirac matrix `γ^μ` in the standard representation.
    pub fn gamma(mu: usize) -> Self {
        let (i2, z) = (Matrix2C::identity(), Matrix2C::zero());
        match mu {
            0 => Self::from_blocks(&i2, &z, &z, &i2.scaled(re(-T::one()))),
            1..=3 => {
                let s = Matrix2C::pauli(mu - 1);
                Self::from_blocks(&z, &s, &s.scaled(re(-T::one())), &z)
            }
            _ => panic!("gamma index {mu} out of range"),
        }
    }

    /// `γ⁵ = iγ⁰γ¹γ²γ³`, which in this representation is the off-diagonal
    /// identity block matrix.
    pub fn gamma5() -> Self {
        (Self::gamma(0) * Self::gamma(1) * Self::gamma(2) * Self::gamma(3)).scaled(imag_unit())
    }

    pub fn apply(&self, v: &FourSpinor<T>) -> FourSpinor<T> {
        let mut out = [re(T::zero()); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o = *o + self.0[i][j] * v.0[j];
            }
        }
        FourSpinor(out)
    }

    pub fn scaled(&self, s: Cplx<T>) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * s;
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<T: Real> Add for Matrix4C<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (r, rr) in out.0.iter_mut().zip(rhs.0.iter()) {
            for (e, ee) in r.iter_mut().zip(rr.iter()) {
                *e = *e + *ee;
            }
        }
        out
    }
}

impl<T: Real> Sub for Matrix4C<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scaled(re(-T::one()))
    }
}

impl<T: Real> Mul for Matrix4C<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Matrix4C::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = re(T::zero());
                for k in 0..4 {
                    acc = acc + self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

/// Helicity-basis spinor `χ_s(a)` for the axis with polar angle `theta_a`
/// and azimuth `phi_a`.
pub fn chi<T: Real>(s: SpinProjection, theta_a: T, phi_a: T) -> TwoSpinor<T> {
    let half = T::lit(0.5);
    let (sin, cos) = (theta_a * half).sin_cos();
    let minus = cis(-phi_a * half);
    let plus = cis(phi_a * half);
    match s {
        SpinProjection::Up => TwoSpinor([minus * cos, plus * sin]),
        SpinProjection::Down => TwoSpinor([minus * -sin, plus * cos]),
    }
}

/// Antiparticle spinor `ξ_{-s}(a) = -2s · χ_{-s}(a)`.
pub fn xi<T: Real>(s: SpinProjection, theta_a: T, phi_a: T) -> TwoSpinor<T> {
    chi(s.flipped(), theta_a, phi_a).scaled(re(-s.sign::<T>()))
}

fn check_unit<T: Real>(n: &Vec3<T>) -> Result<()> {
    let norm = vec3::norm(n);
    if (norm - T::one()).abs() > T::UNIT_TOL || !norm.is_finite() {
        return Err(Error::NonUnitVector {
            norm: norm.as_f64(),
        });
    }
    Ok(())
}

/// `σ·n` for a unit vector `n`.
pub fn pauli_dot<T: Real>(n: &Vec3<T>) -> Result<Matrix2C<T>> {
    check_unit(n)?;
    Ok(pauli_dot_unchecked(n))
}

pub(crate) fn pauli_dot_unchecked<T: Real>(n: &Vec3<T>) -> Matrix2C<T> {
    (0..3).fold(Matrix2C::zero(), |acc, i| {
        acc + Matrix2C::pauli(i).scaled(re(n[i]))
    })
}

fn energy<T: Real>(p_mag: T, m: T) -> Result<T> {
    if m < T::zero() {
        return Err(Error::NegativeMass(m.as_f64()));
    }
    if p_mag < T::zero() {
        return Err(Error::NegativeMomentum(p_mag.as_f64()));
    }
    Ok((p_mag * p_mag + m * m).sqrt())
}

/// Particle solution `u(p, s, a)` of the free Dirac equation with momentum
/// `p_mag · n`.
pub fn dirac_u<T: Real>(
    p_mag: T,
    m: T,
    n: &Vec3<T>,
    s: SpinProjection,
    theta_a: T,
    phi_a: T,
) -> Result<FourSpinor<T>> {
    let e = energy(p_mag, m)?;
    let sn = pauli_dot(n)?;
    let c = chi(s, theta_a, phi_a);
    let upper = c.scaled(re((e + m).sqrt()));
    let lower = sn.apply(&c).scaled(re((e - m).max(T::zero()).sqrt()));
    Ok(FourSpinor::from_blocks(&upper, &lower))
}

/// Antiparticle solution `v(p, s, a)`: blocks of [`dirac_u`] swapped and
/// built on `ξ_{-s}(a)`.
pub fn dirac_v<T: Real>(
    p_mag: T,
    m: T,
    n: &Vec3<T>,
    s: SpinProjection,
    theta_a: T,
    phi_a: T,
) -> Result<FourSpinor<T>> {
    let e = energy(p_mag, m)?;
    let sn = pauli_dot(n)?;
    let x = xi(s, theta_a, phi_a);
    let upper = sn.apply(&x).scaled(re((e - m).max(T::zero()).sqrt()));
    let lower = x.scaled(re((e + m).sqrt()));
    Ok(FourSpinor::from_blocks(&upper, &lower))
}

/// Components `O^i` of the relativistic spin operator
/// `O = -γ⁵γ + γ⁵ p/ε + p γ⁵(γ·p) / (ε(ε+m))`, where `γ·p = Σ γ^i p^i`.
///
/// `u(p, s, a)` satisfies `(a·O(p)) u = 2s u`. The antiparticle spinor
/// `v(p, s, a)` is a negative-energy solution and satisfies the same relation
/// with the operator evaluated at the reversed momentum, `O(-p)`.
pub fn spin_operator<T: Real>(p: &Vec3<T>, m: T) -> Result<[Matrix4C<T>; 3]> {
    if m < T::zero() {
        return Err(Error::NegativeMass(m.as_f64()));
    }
    let e = (vec3::dot(p, p) + m * m).sqrt();
    if e <= T::zero() {
        return Err(Error::ZeroEnergy);
    }
    let g5 = Matrix4C::gamma5();
    let gamma_dot_p = (1..=3).fold(Matrix4C::zero(), |acc, i| {
        acc + Matrix4C::gamma(i).scaled(re(p[i - 1]))
    });
    let g5_gp = g5 * gamma_dot_p;
    let denom = e * (e + m);
    let ops = [0usize, 1, 2].map(|i| {
        (g5 * Matrix4C::gamma(i + 1)).scaled(re(-T::one()))
            + g5.scaled(re(p[i] / e))
            + g5_gp.scaled(re(p[i] / denom))
    });
    Ok(ops)
}

/// Projection `a·O` of the spin operator onto a direction.
pub fn project<T: Real>(axis: &Vec3<T>, ops: &[Matrix4C<T>; 3]) -> Matrix4C<T> {
    (0..3).fold(Matrix4C::zero(), |acc, i| acc + ops[i].scaled(re(axis[i])))
}

/// Entry-wise residual `max_{i,j} |[O^i, O^j] − 2iε^{ijk}O^k|` over the full
/// four-component space.
///
/// In the standard representation `O` reduces to `diag(σ, −σ)` at rest, so
/// the lower (negative-energy) block obeys the relation with the opposite
/// sign and this residual is of order one. See [`commutator_residual_on`].
pub fn commutator_residual<T: Real>(ops: &[Matrix4C<T>; 3]) -> T {
    cyclic_defects(ops)
        .iter()
        .map(Matrix4C::max_abs)
        .fold(T::zero(), T::max)
}

/// Residual of the spin algebra restricted to the given spinors:
/// `max |([O^i, O^j] − 2iε^{ijk}O^k) ψ|`.
///
/// Pass the positive-energy spinors `u(p, ±1/2, a)` to check the algebra on
/// the physical particle subspace.
pub fn commutator_residual_on<T: Real>(ops: &[Matrix4C<T>; 3], spinors: &[FourSpinor<T>]) -> T {
    let defects = cyclic_defects(ops);
    let mut worst = T::zero();
    for d in &defects {
        for psi in spinors {
            worst = worst.max(d.apply(psi).max_abs());
        }
    }
    worst
}

fn cyclic_defects<T: Real>(ops: &[Matrix4C<T>; 3]) -> [Matrix4C<T>; 3] {
    let two_i = imag_unit::<T>() * re(T::lit(2.0));
    [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)]
        .map(|(i, j, k)| ops[i].commutator(&ops[j]) - ops[k].scaled(two_i))
}

/// Closed-form spinor overlaps for analyzer axes in the XZ plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OverlapForms<T> {
    /// `χ₊†(a) χ₋(b) = sin(θ_ab/2)`.
    pub scalar: Cplx<T>,
    /// `w₊₊ = χ₊†(a) σ χ₋(b)`.
    pub w_pp: [Cplx<T>; 3],
    /// `w₊₋ = χ₊†(a) σ χ₊(b)`.
    pub w_pm: [Cplx<T>; 3],
}

/// Evaluates the overlaps with `θ_ab = θ_a − θ_b` and `κ = θ_a + θ_b`.
pub fn overlap_forms<T: Real>(theta_a: T, theta_b: T) -> OverlapForms<T> {
    let half = T::lit(0.5);
    let (s_ab, c_ab) = ((theta_a - theta_b) * half).sin_cos();
    let (s_k, c_k) = ((theta_a + theta_b) * half).sin_cos();
    let i = imag_unit::<T>();
    OverlapForms {
        scalar: re(s_ab),
        w_pp: [re(c_k), -i * c_ab, re(-s_k)],
        w_pm: [re(s_k), i * s_ab, re(c_k)],
    }
}

/// `χ† σ ψ` as a complex 3-vector.
pub fn sigma_vector<T: Real>(left: &TwoSpinor<T>, right: &TwoSpinor<T>) -> [Cplx<T>; 3] {
    [0usize, 1, 2].map(|i| left.sandwich(&Matrix2C::pauli(i), right))
}
