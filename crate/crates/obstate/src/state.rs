//! Internal quantum states as products of loop factors.
//!
//! Each loop of a diagram contributes a factor `ρ_D/(πε) + ρ_ND` to the
//! trace of the internal state: the diagonal normalization `ρ_D` carries the
//! divergence, the non-diagonal `ρ_ND` the finite physics. For a state with
//! `L` loops the trace is the Laurent series
//!
//! ```text
//! Tr = ∏_{i=1..L} (ρ_D^(i)/(πε) + ρ_ND^(i)) = Σ_{k=0..L} γ_k ε^{-k}
//! ```
//!
//! with `γ_0 = ∏ ρ_ND^(i)` and `γ_L = π^{-L} ∏ ρ_D^(i)`.
//!
//! Renormalization acts here as the projector [`InternalState::project`]
//! (zero every diagonal part; the trace collapses to the finite `γ_0`),
//! with complement [`InternalState::complement_q`]. Going the other way,
//! [`factor_from_gammas`] rebuilds loop factors from a `γ` vector by
//! factoring the polynomial `Σ γ_k x^k` (`x = 1/ε`); the factorization is
//! underdetermined by `L − 1` scales, which a [`GaugeChoice`] fixes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::coeffs::{loop_count, CoeffError};
use crate::laurent::{LaurentSeries, Truncation};

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("(n, p) = ({n}, {p}) does not give a positive loop count")]
    InvalidLoopCount { n: u32, p: u32 },
    #[error("expected {expected} loop factors, got {got}")]
    FactorCountMismatch { expected: usize, got: usize },
    #[error("loop factor {index} has a non-finite component")]
    NonFiniteFactor { index: usize },
    #[error("gamma vector needs at least two entries (L >= 1), got {got}")]
    GammaTooShort { got: usize },
    #[error("gamma vector is identically zero")]
    DegenerateGamma,
    #[error("root finding did not converge within {iterations} iterations")]
    RootFindFailure { iterations: usize },
    #[error("series has nonzero coefficients at positive exponents; not a trace")]
    NotATrace,
}

impl From<CoeffError> for StateError {
    fn from(err: CoeffError) -> Self {
        match err {
            CoeffError::NegativeLoops { n, p } => StateError::InvalidLoopCount { n, p },
            CoeffError::OddExternalPoints { n } => StateError::InvalidLoopCount { n, p: 0 },
            other => unreachable!("loop_count returned {other:?}"),
        }
    }
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Integrated diagonal / non-diagonal normalizations of one loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopFactor {
    #[serde(rename = "rho_D", with = "complex_pair")]
    pub rho_d: Complex64,
    #[serde(rename = "rho_ND", with = "complex_pair")]
    pub rho_nd: Complex64,
}

impl LoopFactor {
    pub fn new(rho_d: Complex64, rho_nd: Complex64) -> Self {
        Self { rho_d, rho_nd }
    }

    pub fn from_re(rho_d: f64, rho_nd: f64) -> Self {
        Self::new(Complex64::new(rho_d, 0.0), Complex64::new(rho_nd, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.rho_d.re.is_finite()
            && self.rho_d.im.is_finite()
            && self.rho_nd.re.is_finite()
            && self.rho_nd.im.is_finite()
    }

    /// The factor's own trace contribution `ρ_D/(πε) + ρ_ND`.
    pub fn trace_series(&self) -> LaurentSeries {
        LaurentSeries::new(-1, vec![self.rho_d / PI, self.rho_nd])
    }
}

/// Product state of the `L(n, p) = p − n/2 + 1` loop factors at order `p`
/// of the `n`-point function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InternalState {
    n: u32,
    p: u32,
    factors: Vec<LoopFactor>,
}

impl InternalState {
    /// A state is constructible only when the loop count is positive and
    /// matches the number of factors supplied.
    pub fn new(n: u32, p: u32, factors: Vec<LoopFactor>) -> Result<Self, StateError> {
        let loops = loop_count(n, p)? as usize;
        if loops == 0 {
            return Err(StateError::InvalidLoopCount { n, p });
        }
        if factors.len() != loops {
            return Err(StateError::FactorCountMismatch {
                expected: loops,
                got: factors.len(),
            });
        }
        if let Some(index) = factors.iter().position(|f| !f.is_finite()) {
            return Err(StateError::NonFiniteFactor { index });
        }
        Ok(Self { n, p, factors })
    }

    /// Vacuum labeling (`n = 0`, `p = L − 1`) for a bare factor list.
    pub fn from_factors(factors: Vec<LoopFactor>) -> Result<Self, StateError> {
        if factors.is_empty() {
            return Err(StateError::InvalidLoopCount { n: 0, p: 0 });
        }
        let p = factors.len() as u32 - 1;
        Self::new(0, p, factors)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn loops(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[LoopFactor] {
        &self.factors
    }

    /// Trace of the internal state: `∏ (ρ_D^(i)/(πε) + ρ_ND^(i))`.
    ///
    /// The result spans exponents `[−L, 0]` exactly; no truncation occurs.
    pub fn trace_internal(&self) -> LaurentSeries {
        let window = Truncation::new(-(self.factors.len() as i32), 0);
        let mut product = LaurentSeries::constant_re(1.0);
        for factor in &self.factors {
            product = product.mul_truncated(&factor.trace_series(), window);
        }
        product
    }

    /// The projector Π: removes every diagonal part, leaving the state whose
    /// trace is the pure-ε⁰ constant `∏ ρ_ND^(i)`.
    pub fn project(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| LoopFactor::new(Complex64::new(0.0, 0.0), f.rho_nd))
            .collect();
        Self {
            n: self.n,
            p: self.p,
            factors,
        }
    }

    /// The complement Q = I − Π: removes every non-diagonal part.
    ///
    /// `complement_q` after `project` (in either order) yields the all-zero
    /// factor list, the factor-level form of QΠ = 0.
    pub fn complement_q(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| LoopFactor::new(f.rho_d, Complex64::new(0.0, 0.0)))
            .collect();
        Self {
            n: self.n,
            p: self.p,
            factors,
        }
    }
}

/// Mean value of a factorized observable: the external trace scales the
/// internal one.
pub fn mean_value(internal: &LaurentSeries, external_value: Complex64) -> LaurentSeries {
    internal.scale(external_value)
}

/// Trace coefficients `γ_k` = coefficient of `ε^{-k}`, `k = 0..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaVector {
    gammas: Vec<Complex64>,
}

impl GammaVector {
    pub fn new(gammas: Vec<Complex64>) -> Result<Self, StateError> {
        if gammas.len() < 2 {
            return Err(StateError::GammaTooShort { got: gammas.len() });
        }
        Ok(Self { gammas })
    }

    /// Read the coefficients off a trace series spanning `[−L, 0]`.
    pub fn from_trace(series: &LaurentSeries) -> Result<Self, StateError> {
        if (1..=series.max_order()).any(|k| series.coeff(k).norm() != 0.0) {
            return Err(StateError::NotATrace);
        }
        let loops = (-series.min_order()).max(1);
        let gammas = (0..=loops).map(|k| series.coeff(-k)).collect();
        Self::new(gammas)
    }

    pub fn loops(&self) -> usize {
        self.gammas.len() - 1
    }

    /// `γ_k`, the coefficient of `ε^{-k}`.
    pub fn gamma(&self, k: usize) -> Complex64 {
        self.gammas
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    pub fn to_series(&self) -> LaurentSeries {
        let coeffs = self.gammas.iter().rev().copied().collect();
        LaurentSeries::new(-(self.loops() as i32), coeffs)
    }
}

/// How the `L − 1` free normalizations of the factorization are fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeChoice {
    /// Set `ρ_ND^(i) = 1` for `i ≥ 2` (where the factor's constant part is
    /// nonzero) and push the overall scale into factor 1.
    UnitNd,
}

/// Free normalizations left in the factorization: `2L` unknowns against
/// `L + 1` trace equations leaves `L − 1`.
pub fn indetermination_count(loops: u32) -> u32 {
    assert!(loops >= 1, "states have at least one loop");
    loops - 1
}

/// Residual tolerance accepted from the polynomial root finder.
const ROOT_RESIDUAL_TOL: f64 = 1e-12;
/// Iteration budget for the root finder.
const ROOT_ITERATION_BUDGET: usize = 500;
/// Relative threshold below which trailing γ coefficients count as zero.
const DEGREE_STRIP_TOL: f64 = 1e-13;

fn eval_poly(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All complex roots of `Σ coeffs[k] x^k` by the Durand–Kerner iteration,
/// polished with a few Newton steps. The leading coefficient must be nonzero.
fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, StateError> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // Cauchy bound on root magnitudes seeds the start circle; the seed phase
    // is irrational in pi so no starting point coincides with a real root.
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| seed.powu(k as u32 + 1) * radius / seed.norm())
        .collect();

    let mut converged = false;
    for _ in 0..ROOT_ITERATION_BUDGET {
        let mut max_step = 0.0f64;
        for j in 0..degree {
            let value = eval_poly(&monic, roots[j]);
            let mut denom = Complex64::new(1.0, 0.0);
            for l in 0..degree {
                if l != j {
                    denom *= roots[j] - roots[l];
                }
            }
            if denom.norm() == 0.0 {
                // Collided iterates: nudge apart and keep going.
                roots[j] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                max_step = f64::MAX;
                continue;
            }
            let step = value / denom;
            roots[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + roots[j].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }

    // Newton polish sharpens simple roots to full precision.
    let derivative: Vec<Complex64> = (1..=degree).map(|k| monic[k] * k as f64).collect();
    for root in roots.iter_mut() {
        for _ in 0..3 {
            let d = eval_poly(&derivative, *root);
            if d.norm() == 0.0 {
                break;
            }
            *root -= eval_poly(&monic, *root) / d;
        }
    }

    let residual_ok = roots.iter().all(|&r| {
        let scale: f64 = monic
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
            .sum::<f64>()
            .max(1.0);
        eval_poly(&monic, r).norm() <= ROOT_RESIDUAL_TOL * scale
    });
    if !residual_ok && !converged {
        return Err(StateError::RootFindFailure {
            iterations: ROOT_ITERATION_BUDGET,
        });
    }
    Ok(roots)
}

/// Rebuild loop factors whose trace reproduces the given `γ` coefficients.
///
/// `Σ γ_k x^k` (`x = 1/ε`) is factored into `L` linear pieces
/// `a_i x + b_i`; each piece becomes the factor `(ρ_D, ρ_ND) = (π a_i, b_i)`.
/// Roots beyond the effective degree correspond to purely non-diagonal
/// factors. The returned state carries vacuum labels (`n = 0, p = L − 1`);
/// only the factor list is determined by `γ`.
///
/// The factors are gauge-dependent; the round trip through
/// [`InternalState::trace_internal`] reproduces `γ` to about `1e-9` relative.
pub fn factor_from_gammas(
    gamma: &GammaVector,
    gauge: GaugeChoice,
) -> Result<InternalState, StateError> {
    let GaugeChoice::UnitNd = gauge;
    let loops = gamma.loops();
    let max_norm = gamma.gammas().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return Err(StateError::DegenerateGamma);
    }

    // Effective degree: trailing coefficients below the strip threshold are
    // treated as exact zeros (purely non-diagonal loops).
    let mut degree = loops;
    while degree > 0 && gamma.gamma(degree).norm() <= DEGREE_STRIP_TOL * max_norm {
        degree -= 1;
    }

    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // Linear pieces (a, b) meaning a*x + b, in product form up to one
    // overall scale.
    let mut pieces: Vec<(Complex64, Complex64)> = if degree == 0 {
        Vec::new()
    } else {
        let mut roots = polynomial_roots(&gamma.gammas()[..=degree])?;
        // Deterministic order; smallest-|root| first so a vanishing root
        // (γ_0 = 0) lands in the gauge-exempt first slot.
        roots.sort_by(|a, b| {
            a.norm()
                .total_cmp(&b.norm())
                .then(a.re.total_cmp(&b.re))
                .then(a.im.total_cmp(&b.im))
        });
        roots.into_iter().map(|r| (one, -r)).collect()
    };
    pieces.resize(loops, (zero, one));

    // Overall scale (the leading kept coefficient) goes into piece 1; every
    // later piece is rescaled to unit constant part where possible.
    let mut scale = if degree == 0 {
        gamma.gamma(0)
    } else {
        gamma.gamma(degree)
    };
    for piece in pieces.iter_mut().skip(1) {
        let b = piece.1;
        if b.norm() > 1e-150 {
            piece.0 /= b;
            piece.1 = one;
            scale *= b;
        }
    }
    pieces[0].0 *= scale;
    pieces[0].1 *= scale;

    let factors = pieces
        .into_iter()
        .map(|(a, b)| LoopFactor::new(a * PI, b))
        .collect();
    InternalState::from_factors(factors)
}
