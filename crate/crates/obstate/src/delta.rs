//! Numerical side of the delta-pole correspondence.
//!
//! The Lorentzian family `δ_ε(x) = (1/π) ε/(x² + ε²)` represents the Dirac
//! delta as `ε → 0`, and at coincident points `δ_ε(0) = 1/(πε)` — the same
//! pole the regularized trace carries per diagonal loop. For a state kernel
//! `ρ_D(x) δ(x − x′) + ρ_ND(x, x′)` the trace is therefore
//!
//! ```text
//! Tr(ρ) ≈ ρ_D/(πε) + ρ_ND,   ρ_D = ∫ρ_D(x) dx,  ρ_ND = ∫ρ_ND(x, x) dx
//! ```
//!
//! which this module verifies by adaptive quadrature of concrete kernels.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DeltaError {
    #[error("quadrature did not converge (depth limit {max_depth} hit)")]
    QuadratureNonConvergence { max_depth: u32 },
}

/// Lorentzian representation of the Dirac delta at width `eps`.
pub fn lorentzian_delta(x: f64, eps: f64) -> f64 {
    assert!(eps > 0.0, "the width must be positive");
    eps / (std::f64::consts::PI * (x * x + eps * eps))
}

/// One-dimensional kernel pair: the diagonal density `ρ_D(x)` and the
/// diagonal slice of the regular part, `ρ_ND(x, x)`.
pub struct KernelPair {
    pub rho_d: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub rho_nd_diag: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl KernelPair {
    pub fn new(
        rho_d: impl Fn(f64) -> f64 + Send + Sync + 'static,
        rho_nd_diag: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            rho_d: Box::new(rho_d),
            rho_nd_diag: Box::new(rho_nd_diag),
        }
    }

    /// Unit Gaussians for both parts; each integrates to √π.
    pub fn gaussian() -> Self {
        Self::new(|x| (-x * x).exp(), |x| (-x * x).exp())
    }
}

/// Integration window `[−half_width, half_width]`, relative tolerance and
/// recursion bound for the adaptive Simpson rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub half_width: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            half_width: 50.0,
            rel_tol: 1e-8,
            max_depth: 48,
        }
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
) -> Result<f64, DeltaError> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let refined = left + right;
    let correction = refined - whole;
    if correction.abs() <= 15.0 * tol {
        // Richardson extrapolation eats the leading error term.
        return Ok(refined + correction / 15.0);
    }
    if depth == 0 {
        return Err(DeltaError::QuadratureNonConvergence { max_depth });
    }
    let half_tol = 0.5 * tol;
    Ok(adapt(
        f,
        a,
        fa,
        m,
        fm,
        lm,
        flm,
        left,
        half_tol,
        depth - 1,
        max_depth,
    )? + adapt(
        f,
        m,
        fm,
        b,
        fb,
        rm,
        frm,
        right,
        half_tol,
        depth - 1,
        max_depth,
    )?)
}

/// Adaptive Simpson integral of `f` over `[a, b]` at the config tolerance.
pub fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    quad: &QuadratureConfig,
) -> Result<f64, DeltaError> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    // The relative tolerance is anchored on the first estimate, with a
    // floor so an exactly-zero integrand terminates immediately.
    let tol = quad.rel_tol * whole.abs().max(1e-300);
    adapt(
        f,
        a,
        fa,
        b,
        fb,
        m,
        fm,
        whole,
        tol,
        quad.max_depth,
        quad.max_depth,
    )
}

/// Integrated normalizations `(ρ_D, ρ_ND)` of a kernel pair over the window.
pub fn integrated_normalizations(
    kernels: &KernelPair,
    quad: &QuadratureConfig,
) -> Result<(f64, f64), DeltaError> {
    let w = quad.half_width;
    let rho_d = integrate(&*kernels.rho_d, -w, w, quad)?;
    let rho_nd = integrate(&*kernels.rho_nd_diag, -w, w, quad)?;
    Ok((rho_d, rho_nd))
}

/// Trace of the regularized state: the diagonal integral rides on
/// `δ_ε(0) = 1/(πε)`, the non-diagonal one enters directly.
///
/// Equals `ρ_D/(πε) + ρ_ND` in terms of the integrated normalizations.
pub fn trace_regularized(
    kernels: &KernelPair,
    eps: f64,
    quad: &QuadratureConfig,
) -> Result<f64, DeltaError> {
    let (rho_d, rho_nd) = integrated_normalizations(kernels, quad)?;
    Ok(rho_d * lorentzian_delta(0.0, eps) + rho_nd)
}
