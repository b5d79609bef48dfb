//! Truncated Laurent series in the regularization parameter ε.
//!
//! A series is a finite sum `Σ c_k ε^k` with integer exponents that may be
//! negative (poles). Divergent one-loop quantities live here as poles
//! `c_{-k} ε^{-k}`; the finite physics is the ε⁰ coefficient. Two projectors
//! split a series into its pole and regular parts:
//!
//! * [`LaurentSeries::pole_part`] (the minimal-subtraction operator `K`)
//!   keeps exponents `< 0`,
//! * [`LaurentSeries::finite_part`] (`I − K`) keeps exponents `≥ 0`,
//!
//! and `K + (I − K) = I`, `K² = K` hold exactly on the stored coefficients.
//!
//! Coefficients are complex throughout: the perturbation-order phase factors
//! `(−iλ₀)^p i^(1+2p)` make intermediate values complex even when the end
//! result is real.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used by [`LaurentSeries::approx_eq`].
pub const COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum LaurentError {
    /// Evaluation at ε = 0 requested while the series still has poles.
    #[error("series has a pole at epsilon = 0 (nonzero coefficient at order {order})")]
    PoleAtZero { order: i32 },
}

/// Exponent window applied when multiplying series.
///
/// The Cauchy product is computed exactly and then clamped to
/// `[min_order, max_order]`. The default window `[-8, +2]` covers the
/// deepest pole handled here, `ε^{-(p+1)}` for the vacuum series at small
/// `p`, with two orders of regular tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub min_order: i32,
    pub max_order: i32,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            min_order: -8,
            max_order: 2,
        }
    }
}

impl Truncation {
    pub fn new(min_order: i32, max_order: i32) -> Self {
        assert!(min_order <= max_order, "empty truncation window");
        Self {
            min_order,
            max_order,
        }
    }
}

/// Truncated Laurent polynomial `Σ_k coeffs[k] ε^(min_order + k)`.
///
/// The stored range `[min_order, max_order]` may include zero leading or
/// trailing coefficients; equality compares exponent-wise over the union of
/// ranges, with missing exponents reading as zero.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    min_order: i32,
    coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    /// Series with coefficients `coeffs[k]` at exponent `min_order + k`.
    pub fn new(min_order: i32, coeffs: Vec<Complex64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series stores at least one coefficient"
        );
        Self { min_order, coeffs }
    }

    /// Series from sparse `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(i32, Complex64)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let min = terms.iter().map(|&(k, _)| k).min().unwrap();
        let max = terms.iter().map(|&(k, _)| k).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (max - min + 1) as usize];
        for &(k, c) in terms {
            coeffs[(k - min) as usize] += c;
        }
        Self::new(min, coeffs)
    }

    pub fn zero() -> Self {
        Self::new(0, vec![Complex64::new(0.0, 0.0)])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn constant_re(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    /// The single term `c ε^k`.
    pub fn monomial(k: i32, c: Complex64) -> Self {
        Self::new(k, vec![c])
    }

    /// Most negative stored exponent.
    pub fn min_order(&self) -> i32 {
        self.min_order
    }

    /// Highest stored exponent (inclusive).
    pub fn max_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `ε^k`; exponents outside the stored range read as zero.
    pub fn coeff(&self, k: i32) -> Complex64 {
        if k < self.min_order || k > self.max_order() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k - self.min_order) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// True when no exponent `< 0` carries a nonzero coefficient.
    pub fn is_finite_at_zero(&self) -> bool {
        (self.min_order..0).all(|k| self.coeff(k).norm() == 0.0)
    }

    /// Exponent-wise sum; the stored range is the union of inputs.
    pub fn add(&self, other: &Self) -> Self {
        let min = self.min_order.min(other.min_order);
        let max = self.max_order().max(other.max_order());
        let coeffs = (min..=max)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Self::new(min, coeffs)
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.min_order,
            self.coeffs.iter().map(|c| c * factor).collect(),
        )
    }

    /// Cauchy product clamped to the window `trunc`.
    ///
    /// Within the window the result is exact: `min_order` is the sum of the
    /// input `min_order`s and every kept coefficient is the full convolution
    /// `Σ_{i+j=k} a_i b_j`. Exponents outside the window are dropped.
    pub fn mul_truncated(&self, other: &Self, trunc: Truncation) -> Self {
        let lo = (self.min_order + other.min_order).max(trunc.min_order);
        let hi = (self.max_order() + other.max_order()).min(trunc.max_order);
        if lo > hi {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let ka = self.min_order + i as i32;
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = ka + other.min_order + j as i32;
                if k >= lo && k <= hi {
                    coeffs[(k - lo) as usize] += a * b;
                }
            }
        }
        Self::new(lo, coeffs)
    }

    /// Cauchy product with the default window.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, Truncation::default())
    }

    /// The minimal-subtraction operator `K`: keeps exponents `< 0`.
    pub fn pole_part(&self) -> Self {
        let mut out = self.clone();
        for k in 0..=out.max_order() {
            if k >= out.min_order {
                out.coeffs[(k - out.min_order) as usize] = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    /// The complement `I − K`: keeps exponents `≥ 0`.
    ///
    /// `pole_part(a) + finite_part(a) = a` exactly.
    pub fn finite_part(&self) -> Self {
        let mut out = self.clone();
        let stop = out.max_order().min(-1);
        for k in out.min_order..=stop {
            out.coeffs[(k - out.min_order) as usize] = Complex64::new(0.0, 0.0);
        }
        out
    }

    /// Coefficient of `ε⁰`.
    pub fn finite_coefficient(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Evaluate at a nonzero ε (or at 0 when the series has no poles).
    pub fn eval(&self, epsilon: Complex64) -> Result<Complex64, LaurentError> {
        if epsilon.norm() == 0.0 {
            for k in self.min_order..0 {
                if self.coeff(k).norm() != 0.0 {
                    return Err(LaurentError::PoleAtZero { order: k });
                }
            }
            return Ok(self.coeff(0));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.min_order + i as i32;
            sum += c * epsilon.powi(k);
        }
        Ok(sum)
    }

    /// Exponent-wise comparison with absolute tolerance `tol` per
    /// coefficient; [`COEFF_TOL`] is the conventional choice for
    /// floating-point data (`==` stays exact for integer-valued series).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let min = self.min_order.min(other.min_order);
        let max = self.max_order().max(other.max_order());
        (min..=max).all(|k| (self.coeff(k) - other.coeff(k)).norm() <= tol)
    }
}

/// Exponent-wise equality over the union of ranges; missing exponents are zero.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        let min = self.min_order.min(other.min_order);
        let max = self.max_order().max(other.max_order());
        (min..=max).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::add(self, rhs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::add(self, &rhs.scale(Complex64::new(-1.0, 0.0)))
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Product with the default truncation window.
impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::mul(self, rhs)
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}{}i)", c.re, c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

/// Renders like `a*eps^-2 + b*eps^-1 + c + d*eps`; zero terms are skipped.
impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Complex64::new(1.0, 0.0);
        let mut terms = Vec::new();
        for k in self.min_order..=self.max_order() {
            let c = self.coeff(k);
            if c.norm() == 0.0 {
                continue;
            }
            let term = match k {
                0 => fmt_complex(c),
                1 if c == one => "eps".to_string(),
                1 => format!("{}*eps", fmt_complex(c)),
                _ if c == one => format!("eps^{}", k),
                _ => format!("{}*eps^{}", fmt_complex(c), k),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// JSON form `{"min_order": int, "coeffs": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    min_order: i32,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.is_empty() {
            return Err(serde::de::Error::custom("coeffs must be non-empty"));
        }
        Ok(LaurentSeries::new(
            repr.min_order,
            repr.coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        ))
    }
}
