//! Limiting block entropy of the XY chain, by three independent routes.
//!
//! In the double scaling limit (block size large, chain infinite) the von
//! Neumann entropy of a block of neighboring spins tends to a finite value
//! everywhere off the critical lines, controlled entirely by the elliptic
//! parameter `k` of the point:
//!
//! - a closed form per region in terms of `I(k)`, `I(k')`;
//! - a convergent series over the zeros `λ_m = tanh((m + (1-σ)/2) π τ0)`,
//!   with `σ = 1` in both Case 1 regions and `σ = 0` in Case 2;
//! - the same closed forms re-parameterized by the constant-entropy family
//!   parameter `κ`.
//!
//! The routes must agree to near machine precision; the series carries an
//! explicit exponential tail bound as its error estimate. Three logarithmic
//! expansions cover the approach to the critical lines, where the exact
//! forms suffer cancellation.

use crate::error::{Error, Result};
use crate::phase::{classify, elliptic_parameter_in, ModelPoint, Region};
use crate::special::EllipticData;
use std::f64::consts::{LN_2, PI};

/// Which route produced an [`EntropyValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
    Kappa,
    Asymptotic,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Series => "series",
            Method::Kappa => "kappa",
            Method::Asymptotic => "asymptotic",
            Method::Oracle => "oracle",
        }
    }
}

/// A finite entropy in nats, or an explicit marker: divergent on the
/// critical lines, undefined at the essential critical point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Finite(f64),
    Divergent,
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub outcome: Outcome,
    pub method: Method,
    /// Truncation bound for the series route; absent elsewhere.
    pub err_estimate: Option<f64>,
}

impl EntropyValue {
    // No nonnegativity check: the exact routes are nonnegative, but the
    // logarithmic expansions may dip below zero outside their regime.
    pub(crate) fn finite(value: f64, method: Method) -> Self {
        Self {
            outcome: Outcome::Finite(value),
            method,
            err_estimate: None,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        self.outcome == Outcome::Divergent
    }

    pub fn is_undefined(&self) -> bool {
        self.outcome == Outcome::Undefined
    }
}

/// One zero of the determinant sequence, `tanh((m + (1-σ)/2) π τ0)`.
/// Odd in the shifted index; tends to ±1 as `m -> ±∞`.
pub fn lambda_zero(m: i64, tau0: f64, sigma: u8) -> Result<f64> {
    if !(tau0 > 0.0) || !tau0.is_finite() {
        return Err(Error::Domain(format!("tau0 must be positive, got {tau0}")));
    }
    if sigma > 1 {
        return Err(Error::Domain(format!("sigma must be 0 or 1, got {sigma}")));
    }
    Ok(((m as f64 + (1.0 - f64::from(sigma)) / 2.0) * PI * tau0).tanh())
}

/// One series term `(1 + λ) ln(2/(1 + λ))` with `λ = tanh(u)`, evaluated
/// from `u` directly. Substituting `λ` gives `2/(1 + e^{∓2u}) · ln1p(e^{∓2u})`
/// up to the sign split below, which stays stable where `λ` is within a
/// rounding error of ±1.
fn series_term(u: f64) -> f64 {
    if u >= 0.0 {
        let q = (-2.0 * u).exp();
        2.0 / (1.0 + q) * q.ln_1p()
    } else {
        let q = (2.0 * u).exp();
        2.0 * q / (1.0 + q) * (-2.0 * u + q.ln_1p())
    }
}

pub const SERIES_TOL_DEFAULT: f64 = 1e-12;
/// Above this `k` the exponential tail bound needs too many terms; the
/// closed form and the expansions stay valid there.
const SERIES_REFUSAL_K: f64 = 1.0 - 1e-6;
const SERIES_MAX_HALF_TERMS: i64 = 1_000_000;

/// Block entropy as the symmetric sum `Σ_m (1 + λ_m) ln(2/(1 + λ_m))`.
///
/// Truncation index `M` is the smallest with tail bound
/// `4 (M+1) π τ0 e^{-2 π τ0 M} < tol`; the bound is reported as
/// `err_estimate`. The exact `k = 0` limits (ln 2 on the factorization
/// circle, 0 on the free half line) are returned directly.
pub fn entropy_series(p: ModelPoint, tol: f64) -> Result<EntropyValue> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let region = classify(p)?;
    if region.is_critical() {
        return Err(Error::Critical(format!("series undefined on {region}")));
    }
    let exact = |value: f64| EntropyValue {
        outcome: Outcome::Finite(value),
        method: Method::Series,
        err_estimate: Some(0.0),
    };
    match region {
        // k = 0: only the m = 0 term survives in Case 1, none in Case 2.
        Region::FactorizationBoundary => return Ok(exact(LN_2)),
        Region::IsotropicFree => return Ok(exact(0.0)),
        _ => {}
    }
    let data = elliptic_parameter_in(p, region)?;
    if data.k > SERIES_REFUSAL_K {
        return Err(Error::NearCritical);
    }
    let sigma = u8::from(region != Region::Case2);
    let tau0 = data.tau0;

    let mut m_max = 1i64;
    let tail_bound = loop {
        let bound = 4.0 * (m_max + 1) as f64 * PI * tau0 * (-2.0 * PI * tau0 * m_max as f64).exp();
        if bound < tol {
            break bound;
        }
        m_max += 1;
        if m_max > SERIES_MAX_HALF_TERMS {
            return Err(Error::NearCritical);
        }
    };

    // Symmetric pairs, smallest terms first.
    let mut sum = 0.0;
    if sigma == 1 {
        for m in (1..=m_max).rev() {
            let u = m as f64 * PI * tau0;
            sum += series_term(u) + series_term(-u);
        }
        sum += series_term(0.0); // = ln 2
    } else {
        for m in (0..=m_max).rev() {
            let u = (m as f64 + 0.5) * PI * tau0;
            sum += series_term(u) + series_term(-u);
        }
    }
    Ok(EntropyValue {
        outcome: Outcome::Finite(sum),
        method: Method::Series,
        err_estimate: Some(tail_bound),
    })
}

/// Closed-form entropy per region:
///
/// - Case 2:  `S = (1/6) [ln(4/(k k')) + (k² - k'²) · 2 I(k) I(k') / π]`
/// - Case 1:  `S = (1/6) [ln(k²/(16 k')) + (2 - k²) · 2 I(k) I(k') / π] + ln 2`
///
/// The factorization circle and the free half line are the analytic `k -> 0`
/// limits (exactly `ln 2` and `0`); evaluating the displayed forms there
/// would hit 0·∞. Critical lines are divergent, the point `(2, 0)` is
/// undefined.
pub fn entropy_closed_form(p: ModelPoint) -> Result<EntropyValue> {
    let region = classify(p)?;
    match region {
        Region::CriticalH2 | Region::CriticalXX => Ok(EntropyValue {
            outcome: Outcome::Divergent,
            method: Method::ClosedForm,
            err_estimate: None,
        }),
        Region::EssentialCriticalPoint => Ok(EntropyValue {
            outcome: Outcome::Undefined,
            method: Method::ClosedForm,
            err_estimate: None,
        }),
        Region::FactorizationBoundary => Ok(EntropyValue::finite(LN_2, Method::ClosedForm)),
        Region::IsotropicFree => Ok(EntropyValue::finite(0.0, Method::ClosedForm)),
        Region::Case2 | Region::Case1a | Region::Case1b => {
            let d = elliptic_parameter_in(p, region)?;
            let (ik, ikp) = d.integral_pair()?;
            let cross = 2.0 * ik * ikp / PI;
            let k2 = d.k * d.k;
            let kp2 = d.k_prime * d.k_prime;
            let s = if region == Region::Case2 {
                ((4.0 / (d.k * d.k_prime)).ln() + (k2 - kp2) * cross) / 6.0
            } else {
                ((k2 / (16.0 * d.k_prime)).ln() + (2.0 - k2) * cross) / 6.0 + LN_2
            };
            Ok(EntropyValue::finite(s, Method::ClosedForm))
        }
    }
}

/// Entropy as a function of the constant-entropy family parameter `κ`.
///
/// Branch domains: Case 2 needs `κ > 0`, Case 1a `κ > 1`, Case 1b
/// `0 < κ < 1`. Equals [`entropy_closed_form`] at any point whose region and
/// `κ` match.
pub fn entropy_from_kappa(kappa: f64, branch: Region) -> Result<EntropyValue> {
    if !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite, got {kappa}")));
    }
    let k2 = kappa * kappa;
    let s = match branch {
        Region::Case2 => {
            if !(kappa > 0.0) {
                return Err(Error::Domain(format!(
                    "Case 2 hyperbolas require kappa > 0, got {kappa}"
                )));
            }
            let d = EllipticData::new((k2 / (1.0 + k2)).sqrt(), (1.0 / (1.0 + k2)).sqrt())?;
            let (ik, ikp) = d.integral_pair()?;
            ((4.0 * (k2 + 1.0) / kappa).ln() + 2.0 / PI * (k2 - 1.0) / (k2 + 1.0) * ik * ikp) / 6.0
        }
        Region::Case1a => {
            if !(kappa > 1.0) {
                return Err(Error::Domain(format!(
                    "Case 1a ellipses require kappa > 1, got {kappa}"
                )));
            }
            let d = EllipticData::new(((k2 - 1.0) / k2).sqrt(), 1.0 / kappa)?;
            let (ik, ikp) = d.integral_pair()?;
            (((k2 - 1.0) / (16.0 * kappa)).ln() + 2.0 / PI * (k2 + 1.0) / k2 * ik * ikp) / 6.0
                + LN_2
        }
        Region::Case1b => {
            if !(kappa > 0.0 && kappa < 1.0) {
                return Err(Error::Domain(format!(
                    "Case 1b ellipses require 0 < kappa < 1, got {kappa}"
                )));
            }
            let d = EllipticData::new((1.0 - k2).sqrt(), kappa)?;
            let (ik, ikp) = d.integral_pair()?;
            (((1.0 - k2) / (16.0 * kappa)).ln() + 2.0 / PI * (k2 + 1.0) * ik * ikp) / 6.0 + LN_2
        }
        other => {
            return Err(Error::Domain(format!(
                "no kappa-form entropy for region {other}"
            )))
        }
    };
    Ok(EntropyValue::finite(s, Method::Kappa))
}

/// Logarithmic expansion of the Case 1b entropy toward the isotropic
/// critical line (small `γ`, `h < 2`):
///
/// `S ≈ -(1/3) ln(γ/2) + (1/6) ln(1 - (h/2)²) + (1/3) ln 2`.
///
/// The constant term is fixed by the exact `κ -> 0` limit of the Case 1b
/// closed form, `S -> -(1/3) ln(2κ) + ln 2`; the remainder is
/// `O(γ² ln² γ)`.
pub fn asymptotic_near_xx(p: ModelPoint) -> Result<EntropyValue> {
    let (h, gamma) = checked_coordinates(p)?;
    if h >= 2.0 {
        return Err(Error::Domain(format!(
            "expansion valid for h < 2, got h = {h}"
        )));
    }
    if gamma == 0.0 {
        return Err(Error::Domain("gamma = 0 lies on the critical line".into()));
    }
    let s = -(gamma / 2.0).ln() / 3.0 + (1.0 - (h / 2.0) * (h / 2.0)).ln() / 6.0 + LN_2 / 3.0;
    Ok(EntropyValue::finite(s, Method::Asymptotic))
}

/// Logarithmic expansion of the Case 1a entropy approaching `h = 2` from
/// below:
///
/// `S ≈ -(1/6) ln(1 - (h/2)²) + (1/3) ln(γ/2) + ln 2`.
///
/// Constant fixed by the exact `κ -> ∞` limit of the Case 1a closed form,
/// `S -> (1/3) ln(κ/2) + ln 2`.
pub fn asymptotic_near_h2_below(p: ModelPoint) -> Result<EntropyValue> {
    let (h, gamma) = checked_coordinates(p)?;
    if h >= 2.0 {
        return Err(Error::Domain(format!(
            "expansion valid for h < 2, got h = {h}"
        )));
    }
    if gamma == 0.0 {
        return Err(Error::Domain("gamma = 0 lies on the critical line".into()));
    }
    let s = -(1.0 - (h / 2.0) * (h / 2.0)).ln() / 6.0 + (gamma / 2.0).ln() / 3.0 + LN_2;
    Ok(EntropyValue::finite(s, Method::Asymptotic))
}

/// Logarithmic expansion of the Case 2 entropy approaching `h = 2` from
/// above:
///
/// `S ≈ -(1/6) ln((h/2)² - 1) + (1/3) ln(4γ)`,
///
/// the exact `κ -> ∞` limit `S -> (1/3) ln(4κ)` of the Case 2 form.
pub fn asymptotic_near_h2_above(p: ModelPoint) -> Result<EntropyValue> {
    let (h, gamma) = checked_coordinates(p)?;
    if h <= 2.0 {
        return Err(Error::Domain(format!(
            "expansion valid for h > 2, got h = {h}"
        )));
    }
    if gamma == 0.0 {
        return Err(Error::Domain(
            "gamma = 0 is the zero-entropy free half line".into(),
        ));
    }
    let s = -((h / 2.0) * (h / 2.0) - 1.0).ln() / 6.0 + (4.0 * gamma).ln() / 3.0;
    Ok(EntropyValue::finite(s, Method::Asymptotic))
}

fn checked_coordinates(p: ModelPoint) -> Result<(f64, f64)> {
    if p.staggered {
        return Err(Error::Domain(
            "staggered coordinates: map through staggered_to_uniform first".into(),
        ));
    }
    let (h, gamma) = p.canonical();
    if !h.is_finite() || !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite coordinates (h = {h}, gamma = {gamma})"
        )));
    }
    Ok((h, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::elliptic_parameter;

    // Closed-form anchors computed with mpmath at 40 digits; the series and
    // kappa routes are cross-checked against these and against each other.
    const S_0_05: f64 = 0.7807794513364838; // (h, γ) = (0, 0.5), Case 1b
    const S_1_1: f64 = 0.6989875284221796; // (1, 1), Case 1a
    const S_3_05: f64 = 0.12351417326054946; // (3, 0.5), Case 2
    const S_4_1: f64 = 0.17768594706489788; // (4, 1), Case 2
    const S_0_06: f64 = 0.7458880337358793; // (0, 0.6), Case 1b
    const TANH_HALF_PI: f64 = 0.9171523356672743;

    fn closed(h: f64, gamma: f64) -> f64 {
        entropy_closed_form(ModelPoint::new(h, gamma))
            .unwrap()
            .value()
            .unwrap()
    }

    #[test]
    fn lambda_zero_basics() {
        assert_eq!(lambda_zero(0, 2.0, 1).unwrap(), 0.0);
        let plus = lambda_zero(1, 0.7, 1).unwrap();
        let minus = lambda_zero(-1, 0.7, 1).unwrap();
        assert_eq!(plus, -minus, "odd in the shifted index");
        let v = lambda_zero(0, 1.0, 0).unwrap();
        assert!((v - TANH_HALF_PI).abs() < 1e-15, "tanh(π/2) = {v}");
        assert!(lambda_zero(0, 0.0, 1).is_err());
        assert!(lambda_zero(0, 1.0, 2).is_err());
    }

    #[test]
    fn closed_form_reference_values() {
        assert!((closed(0.0, 0.5) - S_0_05).abs() < 1e-14);
        assert!((closed(1.0, 1.0) - S_1_1).abs() < 1e-14);
        assert!((closed(3.0, 0.5) - S_3_05).abs() < 1e-14);
        assert!((closed(4.0, 1.0) - S_4_1).abs() < 1e-14);
    }

    #[test]
    fn closed_form_markers_and_exact_limits() {
        assert_eq!(closed(1.6, 0.6), LN_2);
        assert_eq!(closed(3.0, 0.0), 0.0);
        assert!(entropy_closed_form(ModelPoint::new(2.0, 0.3))
            .unwrap()
            .is_divergent());
        assert!(entropy_closed_form(ModelPoint::new(1.0, 0.0))
            .unwrap()
            .is_divergent());
        assert!(entropy_closed_form(ModelPoint::new(2.0, 0.0))
            .unwrap()
            .is_undefined());
    }

    #[test]
    fn series_matches_closed_form() {
        for (h, gamma) in [(0.0, 0.5), (1.0, 1.0), (3.0, 0.5), (4.0, 1.0), (0.5, 0.3)] {
            let s = entropy_series(ModelPoint::new(h, gamma), SERIES_TOL_DEFAULT).unwrap();
            let c = closed(h, gamma);
            let v = s.value().unwrap();
            assert!(
                (v - c).abs() < 1e-10,
                "series {v} vs closed {c} at ({h}, {gamma})"
            );
            assert!(s.err_estimate.unwrap() < SERIES_TOL_DEFAULT);
        }
    }

    #[test]
    fn series_err_estimate_bounds_the_truncation_error() {
        // The tight sum stands in for the exact one (its own tail bound is
        // below 1e-13); every coarser truncation must sit within its
        // reported estimate of it.
        for (h, gamma) in [(0.0, 0.7), (1.2, 0.9), (2.6, 0.8)] {
            let p = ModelPoint::new(h, gamma);
            let tight = entropy_series(p, 1e-13).unwrap().value().unwrap();
            for tol in [1e-2, 1e-4, 1e-6, 1e-9] {
                let coarse = entropy_series(p, tol).unwrap();
                let err = coarse.err_estimate.unwrap();
                assert!(err < tol);
                let actual = (coarse.value().unwrap() - tight).abs();
                assert!(
                    actual <= err + 1e-13,
                    "truncation error {actual:.2e} exceeds bound {err:.2e} at ({h}, {gamma})"
                );
            }
        }
    }

    #[test]
    fn series_exact_k_zero_limits() {
        let boundary = entropy_series(ModelPoint::new(1.6, 0.6), 1e-12).unwrap();
        assert_eq!(boundary.value().unwrap(), LN_2);
        let free = entropy_series(ModelPoint::new(3.0, 0.0), 1e-12).unwrap();
        assert_eq!(free.value().unwrap(), 0.0);
    }

    #[test]
    fn series_refuses_near_criticality() {
        // k = h/2 at gamma = 1 in Case 1a, so this k exceeds 1 - 1e-6
        let p = ModelPoint::new(2.0 * (1.0 - 1e-8), 1.0);
        assert_eq!(entropy_series(p, 1e-12), Err(Error::NearCritical));
        assert!(entropy_series(ModelPoint::new(1.0, 0.5), -1.0).is_err());
        assert!(matches!(
            entropy_series(ModelPoint::new(2.0, 0.5), 1e-12),
            Err(Error::Critical(_))
        ));
    }

    #[test]
    fn series_partial_sums_are_monotone() {
        // every term is positive, so widening the truncation only adds
        let p = ModelPoint::new(0.3, 0.4);
        let mut prev = 0.0;
        for tol in [1e-3, 1e-6, 1e-9, 1e-12] {
            let v = entropy_series(p, tol).unwrap().value().unwrap();
            assert!(v >= prev - 1e-15, "partial sums must not decrease");
            prev = v;
        }
    }

    #[test]
    fn kappa_route_matches_closed_form() {
        let v = entropy_from_kappa(0.6, Region::Case1b)
            .unwrap()
            .value()
            .unwrap();
        assert!((v - S_0_06).abs() < 1e-14);
        assert!((v - closed(0.0, 0.6)).abs() < 1e-12);

        // same modulus through the hyperbola family: (4, 1) has κ = 1/√3
        let kappa = 1.0 / 3f64.sqrt();
        let v = entropy_from_kappa(kappa, Region::Case2)
            .unwrap()
            .value()
            .unwrap();
        assert!((v - S_4_1).abs() < 1e-13);
    }

    #[test]
    fn kappa_route_limits() {
        // both Case 1 branches tend to ln 2 at the κ = 1 circle
        let below = entropy_from_kappa(1.0 - 1e-9, Region::Case1b)
            .unwrap()
            .value()
            .unwrap();
        let above = entropy_from_kappa(1.0 + 1e-9, Region::Case1a)
            .unwrap()
            .value()
            .unwrap();
        assert!((below - LN_2).abs() < 1e-6, "κ→1⁻ gives {below}");
        assert!((above - LN_2).abs() < 1e-6, "κ→1⁺ gives {above}");
        // the hyperbola family empties out at large field
        let tiny = entropy_from_kappa(1e-4, Region::Case2)
            .unwrap()
            .value()
            .unwrap();
        assert!(tiny > 0.0 && tiny < 1e-3, "κ→0 on Case 2 gives {tiny}");
    }

    #[test]
    fn kappa_route_extremes_over_the_sampled_parameter_window() {
        // Frozen extremes of the kappa-route entropy over kappa in
        // [0.05, 20] (mpmath, 30 digits): the family spans three decades of
        // entropy inside that window, bounded by these two values.
        const S_MAX: f64 = 1.462896317336236; // Case 1a at kappa = 20
        const S_MIN: f64 = 0.003047397548944221; // Case 2 at kappa = 0.05
        let hi = entropy_from_kappa(20.0, Region::Case1a)
            .unwrap()
            .value()
            .unwrap();
        assert!((hi - S_MAX).abs() < 1e-13, "got {hi}");
        // the Case 1b curve with the mirrored parameter shares the modulus
        let mirrored = entropy_from_kappa(0.05, Region::Case1b)
            .unwrap()
            .value()
            .unwrap();
        assert!((mirrored - S_MAX).abs() < 1e-13, "got {mirrored}");
        let lo = entropy_from_kappa(0.05, Region::Case2)
            .unwrap()
            .value()
            .unwrap();
        assert!((lo - S_MIN).abs() < 1e-15, "got {lo}");
    }

    #[test]
    fn kappa_route_rejects_branch_mismatch() {
        assert!(entropy_from_kappa(0.6, Region::Case1a).is_err());
        assert!(entropy_from_kappa(1.0, Region::Case1a).is_err());
        assert!(entropy_from_kappa(1.5, Region::Case1b).is_err());
        assert!(entropy_from_kappa(0.0, Region::Case2).is_err());
        assert!(entropy_from_kappa(-1.0, Region::Case2).is_err());
        assert!(entropy_from_kappa(0.5, Region::FactorizationBoundary).is_err());
    }

    #[test]
    fn near_xx_expansion_improves_toward_the_line() {
        let mut prev = f64::INFINITY;
        for j in 2..=5 {
            let gamma = 10f64.powi(-j);
            let p = ModelPoint::new(1.0, gamma);
            let asym = asymptotic_near_xx(p).unwrap().value().unwrap();
            let diff = (closed(1.0, gamma) - asym).abs();
            assert!(diff < prev, "no improvement at γ = 1e-{j}");
            prev = diff;
        }
        assert!(prev < 0.01);
        // at h = 0 the h-term vanishes
        let v = asymptotic_near_xx(ModelPoint::new(0.0, 1e-3))
            .unwrap()
            .value()
            .unwrap();
        let expected = -(1e-3f64 / 2.0).ln() / 3.0 + LN_2 / 3.0;
        assert!((v - expected).abs() < 1e-15);
        assert!(asymptotic_near_xx(ModelPoint::new(2.5, 0.1)).is_err());
        assert!(asymptotic_near_xx(ModelPoint::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn h2_expansions_improve_toward_the_line() {
        let mut prev = f64::INFINITY;
        for j in 3..=7 {
            let h = 2.0 - 10f64.powi(-j);
            let asym = asymptotic_near_h2_below(ModelPoint::new(h, 1.0))
                .unwrap()
                .value()
                .unwrap();
            let diff = (closed(h, 1.0) - asym).abs();
            assert!(diff < prev, "below: no improvement at j = {j}");
            prev = diff;
        }
        assert!(prev < 0.01);

        let mut prev = f64::INFINITY;
        for j in 3..=7 {
            let h = 2.0 + 10f64.powi(-j);
            let asym = asymptotic_near_h2_above(ModelPoint::new(h, 1.0))
                .unwrap()
                .value()
                .unwrap();
            let diff = (closed(h, 1.0) - asym).abs();
            assert!(diff < prev, "above: no improvement at j = {j}");
            prev = diff;
        }
        assert!(prev < 0.01);

        // γ = 2 kills the field-free term of the below-expansion;
        // γ = 1/4 kills it for the above-expansion
        let v = asymptotic_near_h2_below(ModelPoint::new(1.0, 2.0))
            .unwrap()
            .value()
            .unwrap();
        let expected = -(1.0 - 0.25f64).ln() / 6.0 + LN_2;
        assert!((v - expected).abs() < 1e-15);
        let v = asymptotic_near_h2_above(ModelPoint::new(3.0, 0.25))
            .unwrap()
            .value()
            .unwrap();
        let expected = -(2.25f64 - 1.0).ln() / 6.0;
        assert!((v - expected).abs() < 1e-15);

        assert!(asymptotic_near_h2_below(ModelPoint::new(2.0, 1.0)).is_err());
        assert!(asymptotic_near_h2_above(ModelPoint::new(2.0, 1.0)).is_err());
    }

    #[test]
    fn entropy_is_symmetric_under_sign_flips() {
        for (h, gamma) in [(0.7, 0.4), (3.0, 0.5), (1.0, 1.3)] {
            let base = closed(h, gamma);
            assert_eq!(base, closed(-h, gamma));
            assert_eq!(base, closed(h, -gamma));
            assert_eq!(base, closed(-h, -gamma));
        }
    }

    #[test]
    fn zero_field_entropy_is_self_dual_in_the_anisotropy() {
        // At h = 0 the points gamma and 1/gamma share the same modulus
        // (they are images under the alternating-field map), so the
        // entropy profile is an exact mirror around gamma = 1.
        for gamma in [0.2f64, 0.5, 0.8, 0.95] {
            let inner = closed(0.0, gamma);
            let outer = closed(0.0, 1.0 / gamma);
            assert!(
                (inner - outer).abs() < 1e-13,
                "S(0, {gamma}) = {inner} vs S(0, {}) = {outer}",
                1.0 / gamma
            );
        }
    }

    #[test]
    fn entropy_increases_toward_criticality_in_every_region() {
        // S is increasing in k on (0.9, 0.999); probe each region along a
        // line of increasing k.
        let mut prev = 0.0;
        for i in 0..=20 {
            let k = 0.9 + 0.099 * i as f64 / 20.0;
            // Case 1b at h = 0: k = sqrt(1 - γ²)
            let gamma = ((1.0 - k) * (1.0 + k)).sqrt();
            let v = closed(0.0, gamma);
            assert!(v > prev || i == 0, "Case1b not increasing at k = {k}");
            prev = v;
        }
        let mut prev = 0.0;
        for i in 0..=20 {
            let k = 0.9 + 0.099 * i as f64 / 20.0;
            // Case 1a at h = 0: k = sqrt(1 - 1/γ²) inverted
            let gamma = 1.0 / ((1.0 - k) * (1.0 + k)).sqrt();
            let v = closed(0.0, gamma);
            assert!(v > prev || i == 0, "Case1a not increasing at k = {k}");
            prev = v;
        }
        let mut prev = 0.0;
        for i in 0..=20 {
            let k = 0.9 + 0.099 * i as f64 / 20.0;
            // Case 2 at γ = 1: k = 1/(h/2) inverted
            let h = 2.0 / k;
            let v = closed(h, 1.0);
            assert!(v > prev || i == 0, "Case2 not increasing at k = {k}");
            prev = v;
        }
    }

    #[test]
    fn route_agreement_on_a_coarse_grid() {
        // fuller grids live in the acceptance suite
        for i in 1..8 {
            for j in 1..8 {
                let p = ModelPoint::new(0.25 * i as f64, 0.35 * j as f64);
                let region = classify(p).unwrap();
                if region.is_critical() {
                    continue;
                }
                let d = elliptic_parameter(p).unwrap();
                if !(0.05..=0.95).contains(&d.k) {
                    continue;
                }
                let c = closed(p.h, p.gamma);
                let s = entropy_series(p, SERIES_TOL_DEFAULT)
                    .unwrap()
                    .value()
                    .unwrap();
                assert!((s - c).abs() < 1e-9, "series vs closed at {p:?}");
            }
        }
    }
}
