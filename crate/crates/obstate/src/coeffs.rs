//! Closed-form dimensional-regularization coefficients for φ⁴ theory.
//!
//! The regularized p-th-order contribution to the n-point function is a
//! Laurent series `Σ β_k^{(n,p)} ε^{-k}` with `L(n,p) = p − n/2 + 1` poles.
//! This module carries the closed forms available at low order — the vacuum
//! table `β^{(0,1)}`, the mass coefficient `β₀^{(2,1)}`, and the coupling
//! table `β^{(4,2)}` with its Mandelstam channel sum — together with the
//! loop-count formula and the per-order phase factors that multiply the
//! tables in the mass, coupling and vacuum series.
//!
//! Logarithm arguments are kept exactly as the closed forms state them,
//! including dimensionally odd pieces like `ln m₀²`; the tests pin those
//! forms rather than a rederivation.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Euler–Mascheroni constant, 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

#[derive(Debug, Error, PartialEq)]
pub enum CoeffError {
    #[error("loop count p - n/2 + 1 is negative for n = {n}, p = {p}")]
    NegativeLoops { n: u32, p: u32 },
    #[error("external point count must be even, got n = {n}")]
    OddExternalPoints { n: u32 },
    #[error("{field} must be positive and finite, got {value}")]
    InvalidParams { field: &'static str, value: f64 },
    #[error("channel {channel} = {z} leaves the real domain: {reason}")]
    OutOfRealDomain {
        channel: &'static str,
        z: f64,
        reason: &'static str,
    },
}

/// Bare mass squared, regularization scale and bare coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub m0_sq: f64,
    pub mu: f64,
    pub lambda0: f64,
}

impl PhysParams {
    pub fn new(m0_sq: f64, mu: f64, lambda0: f64) -> Result<Self, CoeffError> {
        if !(m0_sq > 0.0 && m0_sq.is_finite()) {
            return Err(CoeffError::InvalidParams {
                field: "m0_sq",
                value: m0_sq,
            });
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(CoeffError::InvalidParams {
                field: "mu",
                value: mu,
            });
        }
        if !lambda0.is_finite() {
            return Err(CoeffError::InvalidParams {
                field: "lambda0",
                value: lambda0,
            });
        }
        Ok(Self { m0_sq, mu, lambda0 })
    }
}

/// Pole-order-indexed coefficients `β_k^{(n,p)}`, `k = 0..L(n,p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaTable {
    pub n: u32,
    pub p: u32,
    betas: BTreeMap<u32, Complex64>,
}

impl BetaTable {
    pub fn new(n: u32, p: u32, betas: BTreeMap<u32, Complex64>) -> Result<Self, CoeffError> {
        let loops = loop_count(n, p)?;
        assert!(
            betas.keys().all(|&k| k <= loops),
            "beta table key exceeds the loop count"
        );
        Ok(Self { n, p, betas })
    }

    /// `β_k`; absent pole orders read as zero.
    pub fn beta(&self, k: u32) -> Complex64 {
        self.betas
            .get(&k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.betas.iter().map(|(&k, &v)| (k, v))
    }
}

#[derive(Serialize, Deserialize)]
struct BetaTableRepr {
    n: u32,
    p: u32,
    betas: BTreeMap<u32, [f64; 2]>,
}

impl Serialize for BetaTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BetaTableRepr {
            n: self.n,
            p: self.p,
            betas: self.betas.iter().map(|(&k, c)| (k, [c.re, c.im])).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BetaTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BetaTableRepr::deserialize(deserializer)?;
        let betas = repr
            .betas
            .into_iter()
            .map(|(k, [re, im])| (k, Complex64::new(re, im)))
            .collect();
        BetaTable::new(repr.n, repr.p, betas).map_err(serde::de::Error::custom)
    }
}

/// Number of loops at order `p` for `n` external points: `p − n/2 + 1`.
pub fn loop_count(n: u32, p: u32) -> Result<u32, CoeffError> {
    if !n.is_multiple_of(2) {
        return Err(CoeffError::OddExternalPoints { n });
    }
    let loops = p as i64 - (n / 2) as i64 + 1;
    if loops < 0 {
        return Err(CoeffError::NegativeLoops { n, p });
    }
    Ok(loops as u32)
}

/// Vacuum-bubble table `β^{(0,1)}`: `β₂`, `β₁`, `β₀` at first order.
pub fn beta_0_1(params: &PhysParams) -> BetaTable {
    let m4 = params.m0_sq * params.m0_sq;
    let g = EULER_GAMMA;
    // Explicit products: `powi` is free to fold differently per opt level.
    let pi4 = (PI * PI) * (PI * PI);
    let beta2 = m4 / (64.0 * pi4);
    let beta1 = m4 / (64.0 * pi4) * (g - 1.0 + (params.m0_sq / (4.0 * PI * params.mu)).ln());
    let ln_m0sq = params.m0_sq.ln();
    let ln_4pi = (4.0 * PI).ln();
    let ln_mu = params.mu.ln();
    let bracket = 18.0 - 24.0 * g
        + 12.0 * g * g
        + PI * PI
        + 12.0 * (ln_m0sq * ln_m0sq - ln_4pi * ln_4pi + ln_mu * ln_mu)
        + 24.0 * (1.0 - g + ln_4pi) * (4.0 * PI * params.mu / params.m0_sq).ln();
    let beta0 = m4 / (24.0 * 64.0 * pi4) * bracket;
    let mut betas = BTreeMap::new();
    betas.insert(0, Complex64::new(beta0, 0.0));
    betas.insert(1, Complex64::new(beta1, 0.0));
    betas.insert(2, Complex64::new(beta2, 0.0));
    BetaTable::new(0, 1, betas).expect("L(0,1) = 2")
}

/// Mass coefficient `β₀^{(2,1)} = m₀²/(16π²) · [1 − γ_E + 2 ln(4πμ²/m₀²)]`.
///
/// This is the closed form as printed; its μ-slope is `m₀²/(4π²μ)`. The RG
/// flow uses a companion form with half that slope (see [`crate::rg`]).
pub fn beta_2_1(params: &PhysParams) -> Complex64 {
    let log = (4.0 * PI * params.mu * params.mu / params.m0_sq).ln();
    Complex64::new(
        params.m0_sq / (16.0 * PI * PI) * (1.0 - EULER_GAMMA + 2.0 * log),
        0.0,
    )
}

fn channel_term(channel: &'static str, z: f64, m0_sq: f64) -> Result<f64, CoeffError> {
    if z == 0.0 {
        return Err(CoeffError::OutOfRealDomain {
            channel,
            z,
            reason: "channel invariant is zero",
        });
    }
    let arg = 1.0 + 4.0 * m0_sq / z;
    if arg <= 0.0 {
        return Err(CoeffError::OutOfRealDomain {
            channel,
            z,
            reason: "1 + 4 m0^2/z is not positive",
        });
    }
    let w = arg.sqrt();
    if w <= 1.0 {
        // w = 1 is the stated exclusion; w < 1 (z < -4 m0^2) would put a
        // negative argument inside the log, so it is rejected as well.
        return Err(CoeffError::OutOfRealDomain {
            channel,
            z,
            reason: "log argument (w+1)/(w-1) is not positive",
        });
    }
    Ok(w * ((w + 1.0) / (w - 1.0)).ln())
}

/// Coupling table `β^{(4,2)}`: the kinematics-free `β₁ = 1/(32π²)` and the
/// channel-summed `β₀` over the Mandelstam invariants `(s, t, u)`.
pub fn beta_4_2(params: &PhysParams, s: f64, t: f64, u: f64) -> Result<BetaTable, CoeffError> {
    let channel_sum = channel_term("s", s, params.m0_sq)?
        + channel_term("t", t, params.m0_sq)?
        + channel_term("u", u, params.m0_sq)?;
    let mu2 = params.mu * params.mu;
    let beta1 = 1.0 / (32.0 * PI * PI);
    let beta0 = 0.5
        * (3.0 / (32.0 * PI * PI))
        * (mu2.ln() - EULER_GAMMA + 2.0 + (4.0 * PI * mu2 / params.m0_sq).ln() - channel_sum / 3.0);
    let mut betas = BTreeMap::new();
    betas.insert(0, Complex64::new(beta0, 0.0));
    betas.insert(1, Complex64::new(beta1, 0.0));
    BetaTable::new(4, 2, betas)
}

/// Which perturbation series a phase factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Two-point (mass) series: phase `(−i)^p · i^(1+2p) = i^(1+p)`.
    Mass,
    /// Four-point (coupling) series: phase `(−i)^p · i^(2+2p) = i^(2+p)`.
    Coupling,
    /// Vacuum series: phase `(−i)^p · i^(2p) = i^p`.
    Vacuum,
}

/// Exact power of `i` multiplying `λ₀^p β₀^{(n,p)}` at order `p ≥ 1`.
pub fn order_phase(kind: SeriesKind, p: u32) -> Complex64 {
    assert!(p >= 1, "phases are defined for p >= 1");
    let exponent = match kind {
        SeriesKind::Mass => 1 + p,
        SeriesKind::Coupling => 2 + p,
        SeriesKind::Vacuum => p,
    };
    const I_POWERS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
    let (re, im) = I_POWERS[(exponent % 4) as usize];
    Complex64::new(re, im)
}
