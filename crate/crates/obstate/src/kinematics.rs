//! Minkowski four-vectors, Mandelstam invariants, free propagators and
//! external-leg kernels.
//!
//! Metric signature is `(+,−,−,−)`, so `p² = E² − |p⃗|²` and the free
//! propagator is `1/(p² − m₀²)`. The four-point kernel uses the internal
//! line `p + q − l`. Mandelstam invariants follow the conventions
//! `s = (p₁+p₂)²`, `t = (p₁+p₃)²`, `u = (p₁+p₄)²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Sub};
use thiserror::Error;

/// Relative on-shell tolerance for propagator poles.
pub const ON_SHELL_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum KinError {
    #[error("momentum is on shell: p^2 = {p_sq}, m0^2 = {m0_sq}")]
    OnShellPole { p_sq: f64, m0_sq: f64 },
    #[error("n = {n} takes {expected} momenta, got {got}")]
    ArityMismatch {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("only n = 2 and n = 4 kernels are implemented, got n = {n}")]
    UnsupportedPoints { n: usize },
}

/// Energy-momentum four-vector `(t, x, y, z)` in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// Minkowski inner product with signature `(+,−,−,−)`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    /// Invariant square `p·p`.
    pub fn squared(&self) -> f64 {
        self.dot(self)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t + rhs.t,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t - rhs.t,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.dot(b)
}

/// Kinematic invariants of the four-point function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MandelstamSet {
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

/// `s = (p₁+p₂)²`, `t = (p₁+p₃)²`, `u = (p₁+p₄)²`.
pub fn mandelstam(
    p1: &FourVector,
    p2: &FourVector,
    p3: &FourVector,
    p4: &FourVector,
) -> MandelstamSet {
    MandelstamSet {
        s: (*p1 + *p2).squared(),
        t: (*p1 + *p3).squared(),
        u: (*p1 + *p4).squared(),
    }
}

fn inverse_propagator(p: &FourVector, m0_sq: f64) -> Result<f64, KinError> {
    let p_sq = p.squared();
    let denom = p_sq - m0_sq;
    let tol = ON_SHELL_REL_TOL * m0_sq.abs().max(f64::MIN_POSITIVE);
    if denom.abs() < tol {
        return Err(KinError::OnShellPole { p_sq, m0_sq });
    }
    Ok(denom)
}

/// Free scalar propagator `1/(p² − m₀²)`.
pub fn propagator(p: &FourVector, m0_sq: f64) -> Result<f64, KinError> {
    Ok(1.0 / inverse_propagator(p, m0_sq)?)
}

fn check_arity(n: usize, got: usize) -> Result<(), KinError> {
    let expected = match n {
        2 => 1,
        4 => 3,
        _ => return Err(KinError::UnsupportedPoints { n }),
    };
    if got != expected {
        return Err(KinError::ArityMismatch { n, expected, got });
    }
    Ok(())
}

/// Propagator factors on the external legs of the momentum-space kernel.
///
/// For `n = 2` the single leg enters squared; for `n = 4` the legs are
/// `p`, `q`, `l` and the internal line `p + q − l`.
fn leg_denominators(n: usize, momenta: &[FourVector], m0_sq: f64) -> Result<Vec<f64>, KinError> {
    check_arity(n, momenta.len())?;
    match n {
        2 => {
            let d = inverse_propagator(&momenta[0], m0_sq)?;
            Ok(vec![d, d])
        }
        _ => {
            let internal = momenta[0] + momenta[1] - momenta[2];
            let mut denoms = Vec::with_capacity(4);
            for p in momenta {
                denoms.push(inverse_propagator(p, m0_sq)?);
            }
            denoms.push(inverse_propagator(&internal, m0_sq)?);
            Ok(denoms)
        }
    }
}

/// Momentum-space external kernel `f₀^(n)` at fixed momenta:
/// `1/(p²−m₀²)²` for `n = 2`, the four-denominator product for `n = 4`.
pub fn external_kernel_f0(n: usize, momenta: &[FourVector], m0_sq: f64) -> Result<f64, KinError> {
    let denoms = leg_denominators(n, momenta, m0_sq)?;
    Ok(denoms.iter().map(|d| 1.0 / d).product())
}

/// Strip the external legs: multiply `value` by `∏ (p_i² − m₀²)`.
///
/// `amputate(n, f₀ · c, momenta) = c` exactly, for any scalar `c`.
pub fn amputate(
    n: usize,
    value: Complex64,
    momenta: &[FourVector],
    m0_sq: f64,
) -> Result<Complex64, KinError> {
    check_arity(n, momenta.len())?;
    let mut out = value;
    match n {
        2 => {
            let d = momenta[0].squared() - m0_sq;
            out *= d * d;
        }
        _ => {
            let internal = momenta[0] + momenta[1] - momenta[2];
            for p in momenta.iter().chain(std::iter::once(&internal)) {
                out *= p.squared() - m0_sq;
            }
        }
    }
    Ok(out)
}
