//! Series resummations: the dressed propagator, mass shift and running
//! coupling from the finite coefficients, vacuum-bubble exponentiation and
//! the vacuum energy density, plus a ratio-test diagnostic.
//!
//! Two closed forms anchor the module. The geometric (Dyson) series
//!
//! ```text
//! Σ_k M^k / (p² − m₀²)^{k+1}  =  1 / (p² − m₀² − M)
//! ```
//!
//! shifts the propagator pole by `M`, and the cluster sum of disconnected
//! vacuum diagrams
//!
//! ```text
//! Σ_k (−i·2TV·R(1))^k / k!  =  exp(−i·2TV·R(1))
//! ```
//!
//! makes the vacuum energy extensive, `E₀/V → R(1)` as `T → ∞`.

use num_complex::Complex64;
use thiserror::Error;

use crate::coeffs::{order_phase, SeriesKind};

#[derive(Debug, Error, PartialEq)]
pub enum ResumError {
    #[error("propagator denominator vanishes: p^2 = {p_sq}, m0^2 = {m0_sq}")]
    OnShellPole { p_sq: f64, m0_sq: f64 },
    #[error("series truncation must hold at least {needed} term(s), got {got}")]
    TooFewTerms { needed: usize, got: usize },
}

/// Per-order finite contributions, lowest order first.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTruncation {
    terms: Vec<Complex64>,
}

impl SeriesTruncation {
    pub fn new(terms: Vec<Complex64>) -> Result<Self, ResumError> {
        if terms.is_empty() {
            return Err(ResumError::TooFewTerms { needed: 1, got: 0 });
        }
        Ok(Self { terms })
    }

    pub fn from_re(terms: &[f64]) -> Result<Self, ResumError> {
        Self::new(terms.iter().map(|&t| Complex64::new(t, 0.0)).collect())
    }

    pub fn terms(&self) -> &[Complex64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Spacetime box for vacuum sums: time extent `2T` and spatial volume `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumConfig {
    pub time_extent_2t: f64,
    pub volume_v: f64,
    pub max_connected_order: usize,
    pub max_cluster_order: usize,
}

impl VacuumConfig {
    pub fn new(
        time_extent_2t: f64,
        volume_v: f64,
        max_connected_order: usize,
        max_cluster_order: usize,
    ) -> Self {
        assert!(
            time_extent_2t > 0.0 && volume_v > 0.0,
            "box extents must be positive"
        );
        assert!(max_connected_order >= 1);
        Self {
            time_extent_2t,
            volume_v,
            max_connected_order,
            max_cluster_order,
        }
    }

    /// The factor `2TV` multiplying every connected vacuum bubble.
    pub fn spacetime_volume(&self) -> f64 {
        self.time_extent_2t * self.volume_v
    }

    /// `R(1)` from the connected coefficients, truncated at this box's
    /// `max_connected_order`.
    pub fn connected_sum(&self, lambda0: f64, beta0_seq: &SeriesTruncation) -> Complex64 {
        vacuum_connected_sum(lambda0, beta0_seq, self.max_connected_order)
    }

    /// Cluster sum over this box, truncated at `max_cluster_order`.
    pub fn cluster_sum(&self, r1: Complex64) -> VacuumSum {
        vacuum_exponentiate(r1, self.spacetime_volume(), self.max_cluster_order)
    }
}

/// Truncated and closed-form Dyson resummation of self-energy insertions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedPropagator {
    /// `Σ_{k=0..K} M^k / (p² − m₀²)^{k+1}`.
    pub partial: Complex64,
    /// `1 / (p² − m₀² − M)`; its pole sits at `p² = m₀² + M`, so the mass
    /// shift is `M` itself.
    pub closed: Complex64,
    /// `|M / (p² − m₀²)|`, the geometric ratio.
    pub ratio_norm: f64,
    /// Set when the ratio is ≥ 1 and the partial sums no longer approach
    /// the closed form.
    pub divergent: bool,
}

impl DressedPropagator {
    pub fn abs_error(&self) -> f64 {
        (self.partial - self.closed).norm()
    }
}

/// Sum `K+1` terms of the geometric series against its closed form.
pub fn dressed_propagator(
    p_sq: f64,
    m0_sq: f64,
    mass_insertion: Complex64,
    k_terms: usize,
) -> Result<DressedPropagator, ResumError> {
    let denom = p_sq - m0_sq;
    if denom == 0.0 {
        return Err(ResumError::OnShellPole { p_sq, m0_sq });
    }
    let ratio = mass_insertion / denom;
    let mut term = Complex64::new(1.0 / denom, 0.0);
    let mut partial = term;
    for _ in 0..k_terms {
        term *= ratio;
        partial += term;
    }
    let closed = 1.0 / (Complex64::new(denom, 0.0) - mass_insertion);
    Ok(DressedPropagator {
        partial,
        closed,
        ratio_norm: ratio.norm(),
        divergent: ratio.norm() >= 1.0,
    })
}

/// Mass shift `M = Σ_p i^(1+p) λ₀^p β₀^{(2,p)}`, lowest order `−λ₀ β₀^{(2,1)}`.
///
/// `beta0_list` holds `β₀^{(2,p)}` for `p = 1..=P`.
pub fn mass_shift(lambda0: f64, beta0_list: &SeriesTruncation) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    for (idx, &beta0) in beta0_list.terms().iter().enumerate() {
        let p = idx as u32 + 1;
        power *= lambda0;
        shift += order_phase(SeriesKind::Mass, p) * power * beta0;
    }
    shift
}

/// Running coupling `λ(μ) = λ₀ + Σ_{p≥2} i^(2+p) λ₀^p β₀^{(4,p)}`.
///
/// `beta0_4_list` holds `β₀^{(4,p)}` for `p = 2..=P`; the `p = 1` term is
/// the bare vertex.
pub fn coupling(lambda0: f64, beta0_4_list: &SeriesTruncation) -> Complex64 {
    let mut lambda = Complex64::new(lambda0, 0.0);
    let mut power = lambda0;
    for (idx, &beta0) in beta0_4_list.terms().iter().enumerate() {
        let p = idx as u32 + 2;
        power *= lambda0;
        lambda += order_phase(SeriesKind::Coupling, p) * power * beta0;
    }
    lambda
}

/// Truncated and closed-form cluster sum of disconnected vacuum diagrams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumSum {
    /// `Σ_{k=0..K} (−i·2TV·R1)^k / k!`.
    pub partial: Complex64,
    /// `exp(−i·2TV·R1)`.
    pub closed: Complex64,
}

impl VacuumSum {
    pub fn abs_error(&self) -> f64 {
        (self.partial - self.closed).norm()
    }
}

/// Exponentiate the connected vacuum sum `R1` over the spacetime box `2TV`.
pub fn vacuum_exponentiate(r1: Complex64, st_volume_2tv: f64, k_max: usize) -> VacuumSum {
    let arg = Complex64::new(0.0, -1.0) * st_volume_2tv * r1;
    let mut term = Complex64::new(1.0, 0.0);
    let mut partial = term;
    for k in 1..=k_max {
        term *= arg / k as f64;
        partial += term;
    }
    VacuumSum {
        partial,
        closed: arg.exp(),
    }
}

/// Connected vacuum sum `R(1) = Σ_{p=1..P} i^p λ₀^p β₀^{(0,p)}`, truncated
/// at `max_order` terms.
///
/// `beta0_seq` holds `β₀^{(0,p)}` for `p = 1..`; the phase is the vacuum
/// one, `2p` propagators against `p` vertex factors.
pub fn vacuum_connected_sum(
    lambda0: f64,
    beta0_seq: &SeriesTruncation,
    max_order: usize,
) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    for (idx, &beta0) in beta0_seq.terms().iter().take(max_order).enumerate() {
        let p = idx as u32 + 1;
        power *= lambda0;
        sum += order_phase(SeriesKind::Vacuum, p) * power * beta0;
    }
    sum
}

/// Vacuum energy per unit volume in the `T → ∞` limit: `R(1)` itself (the
/// boundary term decays as `1/T`).
pub fn vacuum_energy_density(r1: Complex64) -> Complex64 {
    r1
}

/// Ratio-test diagnostic for the vacuum series.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTest {
    /// `|β₀^{(0,p+1)}| / |β₀^{(0,p)}|`; `+∞` where a denominator vanishes.
    pub ratios: Vec<f64>,
    /// Whether the final ratio sits below `1/λ₀`.
    pub converging: bool,
}

/// Successive magnitude ratios of the series terms, compared against `1/λ₀`.
pub fn ratio_test(beta0_seq: &SeriesTruncation, lambda0: f64) -> Result<RatioTest, ResumError> {
    if beta0_seq.len() < 2 {
        return Err(ResumError::TooFewTerms {
            needed: 2,
            got: beta0_seq.len(),
        });
    }
    let terms = beta0_seq.terms();
    let mut ratios = Vec::with_capacity(terms.len() - 1);
    let mut saw_zero_denominator = false;
    for pair in terms.windows(2) {
        let denom = pair[0].norm();
        if denom == 0.0 {
            saw_zero_denominator = true;
            ratios.push(f64::INFINITY);
        } else {
            ratios.push(pair[1].norm() / denom);
        }
    }
    let last = *ratios.last().expect("at least one ratio");
    let converging = !saw_zero_denominator && last.is_finite() && last < 1.0 / lambda0;
    Ok(RatioTest { ratios, converging })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn free_propagator_when_no_insertion() {
        let out = dressed_propagator(3.0, 1.0, re(0.0), 10).unwrap();
        assert_eq!(out.partial, re(0.5));
        assert_eq!(out.closed, re(0.5));
        assert!(!out.divergent);
    }

    #[test]
    fn geometric_remainder_bound() {
        // p^2 - m0^2 = 2, M = 1: ratio 1/2, closed form 1/(2-1) = 1.
        let out = dressed_propagator(3.0, 1.0, re(1.0), 40).unwrap();
        assert_eq!(out.closed, re(1.0));
        let bound = 0.5f64.powi(41) * 2.0;
        assert!(
            out.abs_error() <= bound,
            "error {} > {}",
            out.abs_error(),
            bound
        );
    }

    #[test]
    fn closed_form_pole_reads_off_the_mass_shift() {
        let m0_sq = 1.0;
        let m_insert = re(0.25);
        // At p^2 = m0^2 + M the closed form diverges.
        let near = dressed_propagator(m0_sq + 0.25 + 1e-9, m0_sq, m_insert, 0).unwrap();
        assert!(near.closed.norm() > 1e8);
        assert!(dressed_propagator(1.0, 1.0, m_insert, 5).is_err());
    }

    #[test]
    fn divergent_ratio_is_flagged() {
        let out = dressed_propagator(1.5, 1.0, re(1.0), 10).unwrap();
        assert!(out.divergent);
        assert_eq!(out.ratio_norm, 2.0);
    }

    #[test]
    fn geometric_identity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let m0_sq = rng.gen_range(0.2..3.0);
            let gap: f64 = rng.gen_range(0.5..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let p_sq = m0_sq + gap;
            let ratio = rng.gen_range(0.0..0.9);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            let m_insert = Complex64::from_polar(ratio * gap.abs(), phase);
            let out = dressed_propagator(p_sq, m0_sq, m_insert, 60).unwrap();
            let bound = ratio.powi(61) / (1.0 - ratio) * (1.0 / gap).abs();
            // The extra term allows for roundoff when the exact remainder
            // sits below f64 resolution of the closed form.
            let slack = 1e-13 * out.closed.norm().max(1.0);
            assert!(
                out.abs_error() <= bound + slack,
                "error {} beyond bound {}",
                out.abs_error(),
                bound
            );
        }
    }

    #[test]
    fn mass_shift_lowest_order() {
        let beta = SeriesTruncation::from_re(&[0.7]).unwrap();
        let shift = mass_shift(0.3, &beta);
        assert!((shift - re(-0.3 * 0.7)).norm() < 1e-15);
        assert_eq!(mass_shift(0.0, &beta), re(0.0));
        // Dressed mass at lowest order: m0^2 - lambda0 * beta0.
        let m0_sq = 2.0;
        let dressed = m0_sq + shift.re;
        assert!((dressed - (m0_sq - 0.3 * 0.7)).abs() < 1e-15);
    }

    #[test]
    fn coupling_low_orders() {
        let beta = SeriesTruncation::from_re(&[0.9]).unwrap();
        let lambda = coupling(0.2, &beta);
        assert!((lambda - re(0.2 + 0.04 * 0.9)).norm() < 1e-15);
        assert_eq!(coupling(0.0, &beta), re(0.0));
        let no_loop = SeriesTruncation::from_re(&[0.0]).unwrap();
        assert_eq!(coupling(0.2, &no_loop), re(0.2));
    }

    #[test]
    fn real_valuedness_where_phases_are_real() {
        // Mass phase is real at p = 1, coupling phase at p = 2, so both
        // sums stay real for those truncations and real inputs.
        let mass = mass_shift(0.4, &SeriesTruncation::from_re(&[1.1]).unwrap());
        assert_eq!(mass.im, 0.0);
        let lam = coupling(0.4, &SeriesTruncation::from_re(&[0.8]).unwrap());
        assert_eq!(lam.im, 0.0);
        // The p = 2 mass phase is -i: a two-term mass shift turns complex.
        let two = mass_shift(0.4, &SeriesTruncation::from_re(&[1.1, -0.3]).unwrap());
        assert!(two.im != 0.0);
    }

    #[test]
    fn vacuum_trivial_and_taylor_remainder() {
        let trivial = vacuum_exponentiate(re(0.0), 5.0, 8);
        assert_eq!(trivial.partial, re(1.0));
        assert_eq!(trivial.closed, re(1.0));

        // Pure real argument 1: the exact K = 20 Taylor remainder is about
        // 2e-20, far below f64 resolution, so roundoff dominates the
        // difference; 1e-13 is a generous roundoff allowance.
        let r1 = Complex64::new(0.0, 1.0) / 2.0; // -i * 2TV * r1 = 1 with 2TV = 2
        let out = vacuum_exponentiate(r1, 2.0, 20);
        assert!((out.closed - re(1f64.exp())).norm() < 1e-15);
        assert!(out.abs_error() <= 1e-13);
    }

    #[test]
    fn vacuum_partial_sums_differ_by_one_term() {
        let r1 = Complex64::new(0.3, -0.4);
        let tv2 = 1.7;
        let k = 9;
        let a = vacuum_exponentiate(r1, tv2, k).partial;
        let b = vacuum_exponentiate(r1, tv2, k + 1).partial;
        let arg = Complex64::new(0.0, -1.0) * tv2 * r1;
        let fact: f64 = (1..=(k + 1)).map(|j| j as f64).product();
        let expected_term = arg.powu(k as u32 + 1) / fact;
        assert!(((b - a) - expected_term).norm() < 1e-15);
    }

    #[test]
    fn exponential_identity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let r1 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let tv2 = rng.gen_range(0.1..5.0);
            let arg_norm = (tv2 * r1.norm()).min(5.0);
            if tv2 * r1.norm() > 5.0 {
                continue;
            }
            let k = 30;
            let out = vacuum_exponentiate(r1, tv2, k);
            let fact31: f64 = (1..=31).map(|j| j as f64).product();
            let bound = arg_norm.powi(31) / fact31;
            assert!(out.abs_error() <= bound + 1e-13);
        }
    }

    #[test]
    fn energy_density_is_r1() {
        assert_eq!(vacuum_energy_density(re(0.0)), re(0.0));
        let r1 = Complex64::new(0.2, 0.7);
        assert_eq!(vacuum_energy_density(r1), r1);
        // Independent of the box: the config only scales E0, not E0/V.
        let cfg = VacuumConfig::new(4.0, 9.0, 3, 20);
        assert_eq!(cfg.spacetime_volume(), 36.0);
    }

    #[test]
    fn connected_sum_lowest_order_density() {
        use crate::coeffs::{beta_0_1, order_phase, PhysParams, SeriesKind};

        // R(1) at first order is i lambda0 beta_0^{(0,1)}, and that is the
        // energy density directly.
        let params = PhysParams::new(1.0, 1.0, 0.3).unwrap();
        let beta0 = beta_0_1(&params).beta(0);
        let seq = SeriesTruncation::new(vec![beta0]).unwrap();
        let r1 = vacuum_connected_sum(params.lambda0, &seq, 5);
        let expected = order_phase(SeriesKind::Vacuum, 1) * params.lambda0 * beta0;
        assert!((r1 - expected).norm() < 1e-15);
        assert_eq!(vacuum_energy_density(r1), r1);

        // The box config truncates the connected sum at its own order.
        let cfg = VacuumConfig::new(2.0, 3.0, 1, 20);
        let longer = SeriesTruncation::from_re(&[0.5, 0.25, 0.125]).unwrap();
        assert_eq!(
            cfg.connected_sum(0.4, &longer),
            vacuum_connected_sum(0.4, &longer, 1)
        );
        let cluster = cfg.cluster_sum(r1);
        assert_eq!(cluster, vacuum_exponentiate(r1, 6.0, 20));
    }

    #[test]
    fn ratio_test_constant_and_geometric() {
        let constant = SeriesTruncation::from_re(&[1.0, 1.0, 1.0]).unwrap();
        let out = ratio_test(&constant, 0.5).unwrap();
        assert_eq!(out.ratios, vec![1.0, 1.0]);
        assert!(out.converging);
        assert!(!ratio_test(&constant, 2.0).unwrap().converging);

        let r = 0.3;
        let geometric = SeriesTruncation::from_re(&[1.0, r, r * r, r * r * r]).unwrap();
        let out = ratio_test(&geometric, 1.0).unwrap();
        for ratio in &out.ratios {
            assert!((ratio - r).abs() < 1e-12);
        }
        assert!(out.converging);
    }

    #[test]
    fn ratio_test_zero_term_flags_divergence() {
        let seq = SeriesTruncation::from_re(&[1.0, 0.0, 1.0]).unwrap();
        let out = ratio_test(&seq, 0.1).unwrap();
        assert_eq!(out.ratios[0], 0.0);
        assert!(out.ratios[1].is_infinite());
        assert!(!out.converging);
        assert!(matches!(
            ratio_test(&SeriesTruncation::from_re(&[1.0]).unwrap(), 0.1),
            Err(ResumError::TooFewTerms { needed: 2, got: 1 })
        ));
    }
}
