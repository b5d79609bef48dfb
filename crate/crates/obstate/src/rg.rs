//! One-loop renormalization-group flow of the bare mass and coupling.
//!
//! The flow equations in the scale `μ` are
//!
//! ```text
//! dm₀²/dμ = λ₀ m₀² / (8π² μ),      dλ₀/dμ = 3 λ₀² / (16π² μ)
//! ```
//!
//! with closed-form solutions `m₀²(μ) = m_S² (μ/μ_S)^{λ_S/8π²}` (coupling
//! frozen at this order) and `λ₀(μ) = λ_S / (1 − (3λ_S/16π²) ln(μ/μ_S))`.
//! The coupling solution blows up at the Landau scale
//! `μ* = μ_S exp(16π²/(3λ_S))`.
//!
//! [`flow_integrate`] steps uniformly in `μ` — the right regime for
//! convergence-order measurements over a few octaves. Runs that chase the
//! Landau pole span ~23 decades of `μ`, so [`flow_integrate_log`] steps
//! uniformly in `ln μ` instead; both integrate the same equations.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::coeffs::EULER_GAMMA;

/// Coupling magnitude past which a trajectory counts as blown up.
pub const LAMBDA_BLOWUP: f64 = 1e6;

#[derive(Debug, Error, PartialEq)]
pub enum RgError {
    #[error("{field} must be positive and finite, got {value}")]
    InvalidConfig { field: &'static str, value: f64 },
    #[error("Landau pole: running-coupling denominator vanishes at mu = {mu}")]
    LandauPole { mu: f64 },
    #[error("flow crossed the Landau pole at step {step}: |lambda0| = {lambda0:e} at mu = {mu:e}")]
    LandauPoleCrossed { mu: f64, step: usize, lambda0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Rk4,
    Euler,
}

/// Reference scale `(μ_S, m_S², λ_S)` plus integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RGConfig {
    pub mu_s: f64,
    pub m_s_sq: f64,
    pub lambda_s: f64,
    pub step_count: usize,
    pub method: Method,
}

impl RGConfig {
    pub fn new(
        mu_s: f64,
        m_s_sq: f64,
        lambda_s: f64,
        step_count: usize,
        method: Method,
    ) -> Result<Self, RgError> {
        if !(mu_s > 0.0 && mu_s.is_finite()) {
            return Err(RgError::InvalidConfig {
                field: "mu_s",
                value: mu_s,
            });
        }
        if !(m_s_sq > 0.0 && m_s_sq.is_finite()) {
            return Err(RgError::InvalidConfig {
                field: "m_s_sq",
                value: m_s_sq,
            });
        }
        if !lambda_s.is_finite() {
            return Err(RgError::InvalidConfig {
                field: "lambda_s",
                value: lambda_s,
            });
        }
        if step_count == 0 {
            return Err(RgError::InvalidConfig {
                field: "step_count",
                value: 0.0,
            });
        }
        Ok(Self {
            mu_s,
            m_s_sq,
            lambda_s,
            step_count,
            method,
        })
    }
}

/// One point of the flow trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RGPoint {
    pub mu: f64,
    pub m0_sq: f64,
    pub lambda0: f64,
}

/// `m₀²(μ) = m_S² (μ/μ_S)^{λ_S/8π²}`, coupling held at the reference value.
pub fn mass_closed_form(cfg: &RGConfig, mu: f64) -> f64 {
    cfg.m_s_sq * (mu / cfg.mu_s).powf(cfg.lambda_s / (8.0 * PI * PI))
}

/// `λ₀(μ) = λ_S / (1 − (3λ_S/16π²) ln(μ/μ_S))`.
pub fn coupling_closed_form(cfg: &RGConfig, mu: f64) -> Result<f64, RgError> {
    let denom = 1.0 - 3.0 * cfg.lambda_s / (16.0 * PI * PI) * (mu / cfg.mu_s).ln();
    if denom.abs() < 1e-12 {
        return Err(RgError::LandauPole { mu });
    }
    Ok(cfg.lambda_s / denom)
}

/// Scale where the running-coupling denominator vanishes,
/// `μ* = μ_S exp(16π²/(3λ_S))`; `None` unless λ_S is positive.
pub fn landau_pole_mu(cfg: &RGConfig) -> Option<f64> {
    if cfg.lambda_s > 0.0 {
        Some(cfg.mu_s * (16.0 * PI * PI / (3.0 * cfg.lambda_s)).exp())
    } else {
        None
    }
}

/// Right-hand side in the scale itself.
fn rhs_mu(mu: f64, m0_sq: f64, lambda0: f64) -> [f64; 2] {
    [
        lambda0 * m0_sq / (8.0 * PI * PI * mu),
        3.0 * lambda0 * lambda0 / (16.0 * PI * PI * mu),
    ]
}

/// Right-hand side in `x = ln μ` (autonomous).
fn rhs_log(m0_sq: f64, lambda0: f64) -> [f64; 2] {
    [
        lambda0 * m0_sq / (8.0 * PI * PI),
        3.0 * lambda0 * lambda0 / (16.0 * PI * PI),
    ]
}

fn step(
    method: Method,
    f: impl Fn(f64, f64, f64) -> [f64; 2],
    t: f64,
    y: [f64; 2],
    h: f64,
) -> [f64; 2] {
    match method {
        Method::Euler => {
            let k = f(t, y[0], y[1]);
            [y[0] + h * k[0], y[1] + h * k[1]]
        }
        Method::Rk4 => {
            let k1 = f(t, y[0], y[1]);
            let k2 = f(t + 0.5 * h, y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]);
            let k3 = f(t + 0.5 * h, y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]);
            let k4 = f(t + h, y[0] + h * k3[0], y[1] + h * k3[1]);
            [
                y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ]
        }
    }
}

fn check_blowup(mu: f64, step_idx: usize, y: [f64; 2]) -> Result<(), RgError> {
    if !y[0].is_finite() || !y[1].is_finite() || y[1].abs() > LAMBDA_BLOWUP {
        return Err(RgError::LandauPoleCrossed {
            mu,
            step: step_idx,
            lambda0: y[1],
        });
    }
    Ok(())
}

/// Integrate the flow from `μ_S` to `mu_end` with uniform steps in `μ`.
///
/// The returned trajectory has `step_count + 1` points including both
/// endpoints. Crossing the Landau pole (|λ₀| beyond [`LAMBDA_BLOWUP`])
/// aborts with the offending step attached.
pub fn flow_integrate(cfg: &RGConfig, mu_end: f64) -> Result<Vec<RGPoint>, RgError> {
    if !(mu_end > 0.0 && mu_end.is_finite()) {
        return Err(RgError::InvalidConfig {
            field: "mu_end",
            value: mu_end,
        });
    }
    let h = (mu_end - cfg.mu_s) / cfg.step_count as f64;
    let mut y = [cfg.m_s_sq, cfg.lambda_s];
    let mut points = Vec::with_capacity(cfg.step_count + 1);
    points.push(RGPoint {
        mu: cfg.mu_s,
        m0_sq: y[0],
        lambda0: y[1],
    });
    for i in 0..cfg.step_count {
        let mu = cfg.mu_s + h * i as f64;
        y = step(cfg.method, rhs_mu, mu, y, h);
        let mu_next = cfg.mu_s + h * (i + 1) as f64;
        check_blowup(mu_next, i + 1, y)?;
        points.push(RGPoint {
            mu: mu_next,
            m0_sq: y[0],
            lambda0: y[1],
        });
    }
    Ok(points)
}

/// Integrate the flow with uniform steps in `ln μ` (geometric μ grid).
pub fn flow_integrate_log(cfg: &RGConfig, mu_end: f64) -> Result<Vec<RGPoint>, RgError> {
    if !(mu_end > 0.0 && mu_end.is_finite()) {
        return Err(RgError::InvalidConfig {
            field: "mu_end",
            value: mu_end,
        });
    }
    let x0 = cfg.mu_s.ln();
    let h = ((mu_end / cfg.mu_s).ln()) / cfg.step_count as f64;
    let mut y = [cfg.m_s_sq, cfg.lambda_s];
    let mut points = Vec::with_capacity(cfg.step_count + 1);
    points.push(RGPoint {
        mu: cfg.mu_s,
        m0_sq: y[0],
        lambda0: y[1],
    });
    for i in 0..cfg.step_count {
        let x = x0 + h * i as f64;
        y = step(cfg.method, |_, a, b| rhs_log(a, b), x, y, h);
        let mu_next = (x0 + h * (i + 1) as f64).exp();
        check_blowup(mu_next, i + 1, y)?;
        points.push(RGPoint {
            mu: mu_next,
            m0_sq: y[0],
            lambda0: y[1],
        });
    }
    Ok(points)
}

/// One-loop mass coefficient entering the dressed mass along the flow:
/// `m₀²/(16π²) · [1 − γ_E + ln(4πμ²/m₀²)]`.
///
/// Its μ-slope is `m₀²/(8π²μ)`, exactly the coefficient in the mass flow
/// equation, so the dressed mass built from it is μ-independent at first
/// order. Note [`crate::coeffs::beta_2_1`] carries twice the log and hence
/// twice the slope; the flow uses this form.
pub fn beta0_mass_flow(m0_sq: f64, mu: f64) -> f64 {
    m0_sq / (16.0 * PI * PI) * (1.0 - EULER_GAMMA + (4.0 * PI * mu * mu / m0_sq).ln())
}

/// Dressed mass along the closed-form flow, or `None` past the Landau pole.
fn dressed_mass_sq(cfg: &RGConfig, mu: f64) -> Option<f64> {
    let m0_sq = mass_closed_form(cfg, mu);
    let lambda0 = coupling_closed_form(cfg, mu).ok()?;
    Some(m0_sq - lambda0 * beta0_mass_flow(m0_sq, mu))
}

/// Dimensionless μ-invariance residual `|dm²/dμ| · μ / m²` of the dressed
/// mass, by central finite difference along the closed-form flow.
///
/// The order-λ terms cancel by construction, so the residual scales as λ².
/// Returns infinity if the requested scale sits past the Landau pole.
pub fn invariance_residual(cfg: &RGConfig, mu: f64) -> f64 {
    let h = 1e-4 * mu;
    let (Some(up), Some(down), Some(center)) = (
        dressed_mass_sq(cfg, mu + h),
        dressed_mass_sq(cfg, mu - h),
        dressed_mass_sq(cfg, mu),
    ) else {
        return f64::INFINITY;
    };
    let derivative = (up - down) / (2.0 * h);
    (derivative * mu / center).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(lambda_s: f64, steps: usize) -> RGConfig {
        RGConfig::new(1.0, 1.0, lambda_s, steps, Method::Rk4).unwrap()
    }

    #[test]
    fn closed_forms_at_reference_scale() {
        let c = cfg(0.4, 10);
        assert_eq!(mass_closed_form(&c, c.mu_s), c.m_s_sq);
        assert_eq!(coupling_closed_form(&c, c.mu_s).unwrap(), c.lambda_s);
    }

    #[test]
    fn mass_exponent_collapses_at_special_coupling() {
        let c = RGConfig::new(1.0, 3.0, 8.0 * PI * PI, 10, Method::Rk4).unwrap();
        assert!((mass_closed_form(&c, 2.0) - 6.0).abs() < 1e-12);
        let free = cfg(0.0, 10);
        assert_eq!(mass_closed_form(&free, 123.0), free.m_s_sq);
        assert_eq!(coupling_closed_form(&free, 123.0).unwrap(), 0.0);
    }

    #[test]
    fn coupling_diverges_at_the_landau_scale() {
        let c = cfg(1.0, 10);
        let pole = landau_pole_mu(&c).unwrap();
        assert!(matches!(
            coupling_closed_form(&c, pole),
            Err(RgError::LandauPole { .. })
        ));
        assert!(landau_pole_mu(&cfg(0.0, 10)).is_none());
        // Just inside the pole the coupling is enormous but finite.
        assert!(coupling_closed_form(&c, pole * 0.99).unwrap() > 100.0);
    }

    #[test]
    fn coupling_closed_form_satisfies_its_ode() {
        let c = cfg(0.8, 10);
        for &mu in &[0.5, 1.0, 3.0, 20.0] {
            let h = 1e-6 * mu;
            let up = coupling_closed_form(&c, mu + h).unwrap();
            let dn = coupling_closed_form(&c, mu - h).unwrap();
            let fd = (up - dn) / (2.0 * h);
            let lambda = coupling_closed_form(&c, mu).unwrap();
            let expected = 3.0 * lambda * lambda / (16.0 * PI * PI * mu);
            assert!(
                (fd - expected).abs() <= 1e-6 * expected.abs(),
                "mu = {mu}: {fd} vs {expected}"
            );
        }
    }

    #[test]
    fn rk4_endpoint_matches_closed_forms() {
        let c = cfg(0.1, 10_000);
        let trajectory = flow_integrate(&c, 10.0).unwrap();
        let end = trajectory.last().unwrap();
        let lambda_exact = coupling_closed_form(&c, 10.0).unwrap();
        assert!(
            ((end.lambda0 - lambda_exact) / lambda_exact).abs() <= 1e-8,
            "relative error {}",
            ((end.lambda0 - lambda_exact) / lambda_exact).abs()
        );
        // The mass endpoint matches its (frozen-coupling) closed form to
        // O(λ²) only; at λ_S = 1e-3 the agreement tightens to 1e-7.
        let weak = cfg(1e-3, 10_000);
        let t2 = flow_integrate(&weak, 10.0).unwrap();
        let m_exact = mass_closed_form(&weak, 10.0);
        let rel = ((t2.last().unwrap().m0_sq - m_exact) / m_exact).abs();
        assert!(rel <= 1e-7, "mass relative deviation {rel}");
    }

    #[test]
    fn zero_coupling_flow_is_flat() {
        let c = cfg(0.0, 64);
        for point in flow_integrate(&c, 7.0).unwrap() {
            assert_eq!(point.m0_sq, 1.0);
            assert_eq!(point.lambda0, 0.0);
        }
    }

    #[test]
    fn coupling_increases_monotonically() {
        let c = cfg(0.5, 500);
        let trajectory = flow_integrate(&c, 50.0).unwrap();
        for pair in trajectory.windows(2) {
            assert!(pair[1].lambda0 > pair[0].lambda0);
        }
    }

    #[test]
    fn rk4_is_fourth_order_in_the_step() {
        // λ_S = 0.1 over [μ_S, 5 μ_S]; coarse grids keep the truncation
        // error far above roundoff so the ratio is clean.
        let exact = coupling_closed_form(&cfg(0.1, 1), 5.0).unwrap();
        let error_at = |steps: usize| {
            let c = cfg(0.1, steps);
            let end = *flow_integrate(&c, 5.0).unwrap().last().unwrap();
            (end.lambda0 - exact).abs()
        };
        let coarse = error_at(10);
        let fine = error_at(20);
        assert!(
            coarse / fine >= 14.0,
            "convergence ratio {} (errors {:e} -> {:e})",
            coarse / fine,
            coarse,
            fine
        );
    }

    #[test]
    fn euler_is_first_order_in_the_step() {
        let exact = coupling_closed_form(&cfg(0.5, 1), 5.0).unwrap();
        let error_at = |steps: usize| {
            let c = RGConfig::new(1.0, 1.0, 0.5, steps, Method::Euler).unwrap();
            let end = *flow_integrate(&c, 5.0).unwrap().last().unwrap();
            (end.lambda0 - exact).abs()
        };
        let ratio = error_at(100) / error_at(200);
        assert!(ratio > 1.8 && ratio < 2.2, "ratio {ratio}");
    }

    #[test]
    fn log_flow_crosses_landau_pole_at_predicted_scale() {
        let c = RGConfig::new(1.0, 1.0, 1.0, 100_000, Method::Rk4).unwrap();
        let pole = landau_pole_mu(&c).unwrap();
        // mu_end slightly past the pole in log space.
        let mu_end = c.mu_s * ((pole / c.mu_s).ln() * 1.02).exp();
        let err = flow_integrate_log(&c, mu_end).unwrap_err();
        match err {
            RgError::LandauPoleCrossed { mu, .. } => {
                let log_span = (pole / c.mu_s).ln();
                assert!(((mu / pole).ln()).abs() <= 0.01 * log_span);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn residual_vanishes_without_coupling_and_scales_as_lambda_squared() {
        assert_eq!(invariance_residual(&cfg(0.0, 1), 1.0), 0.0);
        let r2 = invariance_residual(&cfg(1e-2, 1), 1.0);
        let r3 = invariance_residual(&cfg(1e-3, 1), 1.0);
        let ratio = r2 / r3;
        assert!(
            (85.0..=115.0).contains(&ratio),
            "residual ratio {ratio} (r2 = {r2:e}, r3 = {r3:e})"
        );
    }

    #[test]
    fn residual_is_smooth_near_the_reference_scale() {
        let c = cfg(0.05, 1);
        for &mu in &[0.9, 1.0, 1.1] {
            let r = invariance_residual(&c, mu);
            assert!(r.is_finite() && r >= 0.0);
        }
    }

    #[test]
    fn config_validation() {
        assert!(RGConfig::new(0.0, 1.0, 0.1, 10, Method::Rk4).is_err());
        assert!(RGConfig::new(1.0, -1.0, 0.1, 10, Method::Rk4).is_err());
        assert!(RGConfig::new(1.0, 1.0, 0.1, 0, Method::Rk4).is_err());
        assert!(flow_integrate(&cfg(0.1, 10), -5.0).is_err());
    }
}
