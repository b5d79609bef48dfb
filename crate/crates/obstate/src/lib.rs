//! Renormalization bookkeeping for φ⁴ perturbation theory, built on two
//! small algebraic pieces:
//!
//! * truncated [Laurent series](laurent) in the dimensional-regularization
//!   parameter ε, with the minimal-subtraction projectors `K` and `I − K`;
//! * [internal states](state) as products of per-loop factors
//!   `(ρ_D, ρ_ND)`, whose trace is a Laurent series with `γ_0 = ∏ ρ_ND`,
//!   and the projector Π that deletes every diagonal part — renormalization
//!   as a state projection instead of counterterms.
//!
//! Around the core sit the φ⁴ [coefficient tables](coeffs) at the orders
//! with closed forms, [kinematics] (four-vectors, Mandelstam invariants,
//! external kernels, amputation), [resummation] identities (dressed
//! propagator, vacuum exponentiation), the one-loop [RG flow](rg) and the
//! [Lorentzian-delta quadrature](delta) that backs the `δ(0) ↔ 1/(πε)`
//! bookkeeping numerically.
//!
//! ```
//! use num_complex::Complex64;
//! use obstate::state::{GammaVector, InternalState, LoopFactor};
//!
//! // Two loops, each with diagonal weight π and unit non-diagonal part:
//! // the trace is 1/ε² + 2/ε + 1.
//! let factor = LoopFactor::from_re(std::f64::consts::PI, 1.0);
//! let state = InternalState::new(0, 1, vec![factor, factor])?;
//! let trace = state.trace_internal();
//! assert_eq!(trace.to_string(), "eps^-2 + 2*eps^-1 + 1");
//!
//! // Projecting out the diagonal parts leaves the finite coefficient.
//! let finite = state.project().trace_internal();
//! assert_eq!(finite.to_string(), "1");
//! # Ok::<(), obstate::state::StateError>(())
//! ```

pub mod coeffs;
pub mod delta;
pub mod kinematics;
pub mod laurent;
pub mod resummation;
pub mod rg;
pub mod state;

pub use coeffs::{BetaTable, PhysParams, SeriesKind};
pub use kinematics::{FourVector, MandelstamSet};
pub use laurent::{LaurentSeries, Truncation};
pub use state::{GammaVector, GaugeChoice, InternalState, LoopFactor};

// The guide chapters double as doctests so their snippets stay compilable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/laurent-series.md")]
    mod laurent_series {}
    #[doc = include_str!("../../../book/src/states-and-projectors.md")]
    mod states_and_projectors {}
    #[doc = include_str!("../../../book/src/phi4-coefficients.md")]
    mod phi4_coefficients {}
    #[doc = include_str!("../../../book/src/kinematics.md")]
    mod kinematics_chapter {}
    #[doc = include_str!("../../../book/src/resummation.md")]
    mod resummation_chapter {}
    #[doc = include_str!("../../../book/src/rg-flow.md")]
    mod rg_flow {}
    #[doc = include_str!("../../../book/src/delta-kernel.md")]
    mod delta_kernel {}
}
