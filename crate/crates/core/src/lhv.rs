//! Local-hidden-variable counting model over the eight outcome triples.
//!
//! A triple assigns definite fermion-side spin signs on the axes `a`, `b`,
//! `c`; the antifermion side follows from the correlation mode. Triple `k`
//! has bits `(a, b, c) = (k>>2 & 1, k>>1 & 1, k & 1)` with `+ ≡ 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    A,
    B,
    C,
}

impl Axis {
    fn bit(self) -> usize {
        match self {
            Axis::A => 2,
            Axis::B => 1,
            Axis::C => 0,
        }
    }
}

/// Antifermion sign relative to the fermion sign on a common axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorrelationMode {
    /// Opposite signs.
    Anti,
    /// Equal signs.
    Corr,
}

impl std::str::FromStr for CorrelationMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "anti" => Ok(CorrelationMode::Anti),
            "corr" => Ok(CorrelationMode::Corr),
            _ => Err(format!("unknown mode '{s}' (expected anti|corr)")),
        }
    }
}

impl std::fmt::Display for CorrelationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CorrelationMode::Anti => "anti",
            CorrelationMode::Corr => "corr",
        })
    }
}

/// Fermion-side outcome triple, `true` for `+1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OutcomeTriple {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl OutcomeTriple {
    pub fn from_index(k: usize) -> Self {
        OutcomeTriple {
            a: k & 4 != 0,
            b: k & 2 != 0,
            c: k & 1 != 0,
        }
    }

    pub fn index(self) -> usize {
        4 * usize::from(self.a) + 2 * usize::from(self.b) + usize::from(self.c)
    }

    pub fn get(self, axis: Axis) -> bool {
        self.index() >> axis.bit() & 1 == 1
    }
}

/// Weights of the eight triples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LhvDistribution<T> {
    weights: [T; 8],
}

impl<T: Real> LhvDistribution<T> {
    pub fn new(weights: [T; 8]) -> Result<Self> {
        if let Some(w) = weights
            .iter()
            .find(|w| !(**w >= T::zero()) || !w.is_finite())
        {
            return Err(Error::InvalidDistribution(format!(
                "negative or non-finite weight {}",
                w.as_f64()
            )));
        }
        let total: T = weights.iter().copied().sum();
        if (total - T::one()).abs() > T::UNIT_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {}",
                total.as_f64()
            )));
        }
        Ok(LhvDistribution { weights })
    }

    pub fn uniform() -> Self {
        LhvDistribution {
            weights: [T::lit(0.125); 8],
        }
    }

    pub fn point_mass(triple: OutcomeTriple) -> Self {
        let mut weights = [T::zero(); 8];
        weights[triple.index()] = T::one();
        LhvDistribution { weights }
    }

    pub fn weights(&self) -> &[T; 8] {
        &self.weights
    }
}

/// Fermion-side sign implied by an antifermion sign.
fn fermion_side(antifermion_sign: bool, mode: CorrelationMode) -> bool {
    match mode {
        CorrelationMode::Anti => !antifermion_sign,
        CorrelationMode::Corr => antifermion_sign,
    }
}

/// Probability that the fermion shows `fermion_sign` on `fermion_axis` and the
/// antifermion shows `antifermion_sign` on `antifermion_axis`.
pub fn pair_probability<T: Real>(
    dist: &LhvDistribution<T>,
    fermion_axis: Axis,
    fermion_sign: bool,
    antifermion_axis: Axis,
    antifermion_sign: bool,
    mode: CorrelationMode,
) -> Result<T> {
    if fermion_axis == antifermion_axis {
        return Err(Error::SameAxis);
    }
    let implied = fermion_side(antifermion_sign, mode);
    Ok((0..8)
        .map(OutcomeTriple::from_index)
        .filter(|t| t.get(fermion_axis) == fermion_sign && t.get(antifermion_axis) == implied)
        .map(|t| dist.weights[t.index()])
        .sum())
}

/// Antifermion sign entering the mode's basic inequality.
fn base_sign(mode: CorrelationMode) -> bool {
    mode == CorrelationMode::Anti
}

fn pair<T: Real>(
    d: &LhvDistribution<T>,
    f: Axis,
    fs: bool,
    a: Axis,
    s: bool,
    mode: CorrelationMode,
) -> T {
    pair_probability(d, f, fs, a, s, mode).expect("distinct axes")
}

/// The three operands `(w_ab, w_ac, w_cb)` of the mode's triangle inequality.
pub fn triangle_operands<T: Real>(dist: &LhvDistribution<T>, mode: CorrelationMode) -> [T; 3] {
    let s = base_sign(mode);
    [
        pair(dist, Axis::A, true, Axis::B, s, mode),
        pair(dist, Axis::A, true, Axis::C, s, mode),
        pair(dist, Axis::C, true, Axis::B, s, mode),
    ]
}

/// `rhs − lhs` of `w(a+, b·) ≤ w(a+, c·) + w(c+, b·)`, with antifermion sign
/// `+` for [`CorrelationMode::Anti`] and `−` for [`CorrelationMode::Corr`].
pub fn triangle_margin<T: Real>(dist: &LhvDistribution<T>, mode: CorrelationMode) -> T {
    let [ab, ac, cb] = triangle_operands(dist, mode);
    ac + cb - ab
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VariantMargins<T> {
    /// `b` and `c` reversed: `w(a+, b·̄) ≤ w(a+, c·̄) + w(b+, c·)`.
    pub flipped: T,
    /// Sum form: `w(a+,b·) + w(a+,c·) + w(c+,b·) ≤ P(fermion a+) + P(antifermion b·)`.
    pub weakened_sum: T,
}

pub fn variant_margins<T: Real>(
    dist: &LhvDistribution<T>,
    mode: CorrelationMode,
) -> VariantMargins<T> {
    let s = base_sign(mode);
    let flipped_lhs = pair(dist, Axis::A, true, Axis::B, !s, mode);
    let flipped_rhs =
        pair(dist, Axis::A, true, Axis::C, !s, mode) + pair(dist, Axis::B, true, Axis::C, s, mode);
    let [ab, ac, cb] = triangle_operands(dist, mode);
    let fermion_a =
        pair(dist, Axis::A, true, Axis::B, s, mode) + pair(dist, Axis::A, true, Axis::B, !s, mode);
    let antifermion_b =
        pair(dist, Axis::A, true, Axis::B, s, mode) + pair(dist, Axis::A, false, Axis::B, s, mode);
    VariantMargins {
        flipped: flipped_rhs - flipped_lhs,
        weakened_sum: fermion_a + antifermion_b - (ab + ac + cb),
    }
}

/// Distribution `index` of the stream seeded by `seed`: eight uniform draws,
/// normalized.
pub fn random_distribution<T: Real>(seed: u64, index: u64) -> LhvDistribution<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let draws: [f64; 8] = std::array::from_fn(|_| rng.gen::<f64>());
    let total: f64 = draws.iter().sum();
    LhvDistribution {
        weights: draws.map(|x| T::lit(x / total)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSummary<T> {
    pub count: u64,
    pub min_triangle: T,
    pub min_flipped: T,
    pub min_weakened_sum: T,
}

impl<T: Real> SweepSummary<T> {
    pub fn min_margin(&self) -> T {
        self.min_triangle
            .min(self.min_flipped)
            .min(self.min_weakened_sum)
    }
}

/// Minimum margins over `count` seeded random distributions. The result does
/// not depend on the thread count.
pub fn sweep<T: Real>(mode: CorrelationMode, count: u64, seed: u64) -> SweepSummary<T> {
    let init = (T::infinity(), T::infinity(), T::infinity());
    let (t, f, w) = (0..count)
        .into_par_iter()
        .map(|i| {
            let d = random_distribution::<T>(seed, i);
            let v = variant_margins(&d, mode);
            (triangle_margin(&d, mode), v.flipped, v.weakened_sum)
        })
        .reduce(|| init, |x, y| (x.0.min(y.0), x.1.min(y.1), x.2.min(y.2)));
    SweepSummary {
        count,
        min_triangle: t,
        min_flipped: f,
        min_weakened_sum: w,
    }
}

/// Outcome of [`feasibility`].
#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility<T> {
    pub feasible: bool,
    /// Centroid of the feasible basic solutions.
    pub witness: Option<LhvDistribution<T>>,
    /// Farkas vector `y` with `yᵀA ≥ 0` and `yᵀt < 0`, proving infeasibility.
    pub certificate: Option<[T; 4]>,
}

/// Rows of the equality system: normalization, then the three triangle
/// operands.
fn constraint_matrix<T: Real>(mode: CorrelationMode) -> [[T; 8]; 4] {
    let mut rows = [[T::zero(); 8]; 4];
    rows[0] = [T::one(); 8];
    for k in 0..8 {
        let ops = triangle_operands(
            &LhvDistribution::point_mass(OutcomeTriple::from_index(k)),
            mode,
        );
        for r in 0..3 {
            rows[r + 1][k] = ops[r];
        }
    }
    rows
}

/// Solves the square system `m x = rhs` by Gaussian elimination with partial
/// pivoting; `None` when singular.
fn solve<T: Real, const N: usize>(mut m: [[T; N]; N], mut rhs: [T; N]) -> Option<[T; N]> {
    let tiny = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
    for col in 0..N {
        let pivot =
            (col..N).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[pivot][col].abs() < tiny {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in 0..N {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..N {
                    m[row][k] = m[row][k] - f * m[col][k];
                }
                rhs[row] = rhs[row] - f * rhs[col];
            }
        }
    }
    Some(std::array::from_fn(|i| rhs[i] / m[i][i]))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether some distribution reproduces the triangle operands
/// `targets = (w_ab, w_ac, w_cb)` of `mode`.
///
/// Every basic solution (4 of 8 weights free) is enumerated. When none is
/// non-negative, the extreme rays of `{y : yᵀA ≥ 0}` are enumerated for a
/// Farkas certificate.
pub fn feasibility<T: Real>(targets: [T; 3], mode: CorrelationMode) -> Result<Feasibility<T>> {
    for t in targets {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::TargetOutOfRange(t.as_f64()));
        }
    }
    let a = constraint_matrix::<T>(mode);
    let b = [T::one(), targets[0], targets[1], targets[2]];
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));

    let mut vertices: Vec<[T; 8]> = Vec::new();
    for basis in combinations(8, 4) {
        let m: [[T; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| a[r][basis[c]]));
        if let Some(x) = solve(m, b) {
            if x.iter().all(|&v| v >= -tol) {
                let mut w = [T::zero(); 8];
                for (c, &k) in basis.iter().enumerate() {
                    w[k] = x[c].max(T::zero());
                }
                vertices.push(w);
            }
        }
    }
    if !vertices.is_empty() {
        let n = T::lit(vertices.len() as f64);
        let mut w = [T::zero(); 8];
        for v in &vertices {
            for k in 0..8 {
                w[k] = w[k] + v[k] / n;
            }
        }
        let total: T = w.iter().copied().sum();
        let w = w.map(|x| x / total);
        return Ok(Feasibility {
            feasible: true,
            witness: Some(LhvDistribution { weights: w }),
            certificate: None,
        });
    }

    let mut certificate = None;
    for tight in combinations(8, 3) {
        // y orthogonal to three columns: solve with the normalization y·e = ±1
        // along each coordinate until a non-singular system appears.
        for pin in 0..4 {
            let mut m = [[T::zero(); 4]; 4];
            for (r, &k) in tight.iter().enumerate() {
                for i in 0..4 {
                    m[r][i] = a[i][k];
                }
            }
            m[3][pin] = T::one();
            let Some(y) = solve(m, [T::zero(), T::zero(), T::zero(), T::one()]) else {
                continue;
            };
            for sign in [T::one(), -T::one()] {
                let y = y.map(|v| v * sign);
                let cols_ok = (0..8).all(|k| (0..4).map(|i| y[i] * a[i][k]).sum::<T>() >= -tol);
                let yb: T = (0..4).map(|i| y[i] * b[i]).sum();
                if cols_ok && yb < -tol {
                    certificate = Some(y);
                    break;
                }
            }
            break;
        }
        if certificate.is_some() {
            break;
        }
    }
    Ok(Feasibility {
        feasible: false,
        witness: None,
        certificate,
    })
}

/// Margins of the inequalities that characterize feasible operand triples:
/// non-negativity, the triangle inequality `w_ab ≤ w_ac + w_cb`, and
/// `w_ac + w_cb ≤ 1` (the two events are disjoint on the fermion side).
/// All non-negative exactly when [`feasibility`] succeeds.
pub fn target_margins<T: Real>(targets: [T; 3]) -> [T; 5] {
    let [ab, ac, cb] = targets;
    [ab, ac, cb, ac + cb - ab, T::one() - ac - cb]
}

/// Checks a certificate: `yᵀA ≥ 0` column-wise and `yᵀt < 0`.
pub fn verify_certificate<T: Real>(y: &[T; 4], targets: [T; 3], mode: CorrelationMode) -> bool {
    let a = constraint_matrix::<T>(mode);
    let b = [T::one(), targets[0], targets[1], targets[2]];
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
    let cols_ok = (0..8).all(|k| (0..4).map(|i| y[i] * a[i][k]).sum::<T>() >= -tol);
    let yb: T = (0..4).map(|i| y[i] * b[i]).sum();
    cols_ok && yb < -tol
}
