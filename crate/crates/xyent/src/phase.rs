//! Phase diagram of the anisotropic XY chain in a transverse field.
//!
//! The chain is parameterized by the field `h` and the anisotropy `gamma`;
//! everything here depends on them only through `(|h|, |gamma|)`. The closed
//! first quadrant splits into three gapped regions (strong field `h > 2`,
//! and the two moderate/weak-field regions separated by the factorization
//! circle `(h/2)² + γ² = 1`), the two critical lines `h = 2` and
//! `γ = 0, h < 2`, their common endpoint `(2, 0)`, and the gapped
//! free-fermion half line `γ = 0, h > 2`.
//!
//! Each gapped region carries an elliptic parameter `k` that controls the
//! limiting block entropy; `k = 1` on the critical lines and `k = 0` exactly
//! on the factorization circle and the free half line, where the ground
//! state is a product state.

use crate::error::{Error, Result};
use crate::special::EllipticData;
use std::cmp::Ordering;
use std::fmt;

/// A point `(h, gamma)` of the field/anisotropy plane.
///
/// `staggered` marks the coordinates as those of the alternating-field model
/// `(h', gamma')`; such points must be mapped through
/// [`staggered_to_uniform`] before classification or entropy evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub h: f64,
    pub gamma: f64,
    pub staggered: bool,
}

impl ModelPoint {
    pub fn new(h: f64, gamma: f64) -> Self {
        Self {
            h,
            gamma,
            staggered: false,
        }
    }

    pub fn staggered(h: f64, gamma: f64) -> Self {
        Self {
            h,
            gamma,
            staggered: true,
        }
    }

    /// Canonical first-quadrant coordinates `(|h|, |gamma|)`.
    pub fn canonical(&self) -> (f64, f64) {
        (self.h.abs(), self.gamma.abs())
    }
}

/// Classification of a point of the closed quadrant `h >= 0, gamma >= 0`.
/// The tags partition the quadrant: every point gets exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Strong field, `h > 2`, `gamma > 0`.
    Case2,
    /// `h < 2` and `gamma > sqrt(1 - (h/2)²)` (outside the circle).
    Case1a,
    /// `h < 2` and `0 < gamma < sqrt(1 - (h/2)²)` (inside the circle).
    Case1b,
    /// The circle `(h/2)² + gamma² = 1`, `0 < gamma <= 1`, where the ground
    /// state is a pair of degenerate product states.
    FactorizationBoundary,
    /// The critical line `h = 2`, `gamma > 0`.
    CriticalH2,
    /// The gapless isotropic line `gamma = 0`, `h < 2`.
    CriticalXX,
    /// `(h, gamma) = (2, 0)`, the common endpoint of every constant-entropy
    /// curve; the entropy limit there is direction-dependent.
    EssentialCriticalPoint,
    /// `gamma = 0`, `h > 2`: gapped, fully polarized, zero entropy.
    IsotropicFree,
}

impl Region {
    pub fn is_critical(self) -> bool {
        matches!(
            self,
            Region::CriticalH2 | Region::CriticalXX | Region::EssentialCriticalPoint
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Case2 => "Case2",
            Region::Case1a => "Case1a",
            Region::Case1b => "Case1b",
            Region::FactorizationBoundary => "FactorizationBoundary",
            Region::CriticalH2 => "CriticalH2",
            Region::CriticalXX => "CriticalXX",
            Region::EssentialCriticalPoint => "EssentialCriticalPoint",
            Region::IsotropicFree => "IsotropicFree",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Default absolute tolerance on `(h/2)² + gamma² - 1` for membership of the
/// factorization circle. The circle has distinct exact entropy (ln 2) and
/// must be detectable from floating-point input; the `gamma = 0` and `h = 2`
/// lines are tested exactly.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Classifies a (non-staggered) point into its region, using
/// [`BOUNDARY_TOL`] for the factorization circle.
pub fn classify(p: ModelPoint) -> Result<Region> {
    classify_with_tol(p, BOUNDARY_TOL)
}

/// [`classify`] with an explicit circle tolerance.
pub fn classify_with_tol(p: ModelPoint, circle_tol: f64) -> Result<Region> {
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
    if gamma == 0.0 {
        return Ok(match h.partial_cmp(&2.0).expect("h is finite") {
            Ordering::Less => Region::CriticalXX,
            Ordering::Equal => Region::EssentialCriticalPoint,
            Ordering::Greater => Region::IsotropicFree,
        });
    }
    if h == 2.0 {
        return Ok(Region::CriticalH2);
    }
    if h > 2.0 {
        return Ok(Region::Case2);
    }
    let circle = (h / 2.0) * (h / 2.0) + gamma * gamma - 1.0;
    if circle.abs() <= circle_tol {
        Ok(Region::FactorizationBoundary)
    } else if circle > 0.0 {
        Ok(Region::Case1a)
    } else {
        Ok(Region::Case1b)
    }
}

/// The elliptic parameter `k` (with complement and `tau0`) at a gapped point.
///
/// Per region:
/// - Case 2:  `k = γ / √((h/2)² + γ² - 1)`
/// - Case 1a: `k = √((h/2)² + γ² - 1) / γ`
/// - Case 1b: `k = √(1 - γ² - (h/2)²) / √(1 - (h/2)²)`
/// - factorization circle and free half line: `k = 0`
///
/// Critical tags are reported as [`Error::Critical`] (there `k = 1` or is
/// undefined).
pub fn elliptic_parameter(p: ModelPoint) -> Result<EllipticData> {
    let region = classify(p)?;
    elliptic_parameter_in(p, region)
}

pub(crate) fn elliptic_parameter_in(p: ModelPoint, region: Region) -> Result<EllipticData> {
    let (h, gamma) = p.canonical();
    let half_sq = (h / 2.0) * (h / 2.0);
    let k = match region {
        Region::Case2 => gamma / (half_sq + gamma * gamma - 1.0).sqrt(),
        Region::Case1a => (half_sq + gamma * gamma - 1.0).sqrt() / gamma,
        Region::Case1b => ((1.0 - gamma * gamma - half_sq) / (1.0 - half_sq)).sqrt(),
        Region::FactorizationBoundary | Region::IsotropicFree => 0.0,
        _ => {
            return Err(Error::Critical(format!(
                "elliptic parameter is 1 or undefined on {region}"
            )))
        }
    };
    EllipticData::from_k(k)
}

/// Single-particle dispersion `ε(q) = √((cos q - h/2)² + γ² sin² q)`.
///
/// Nonnegative; vanishes for some `q` only on the critical lines.
pub fn dispersion(p: ModelPoint, wavenumber: f64) -> Result<f64> {
    if p.staggered {
        return Err(Error::Domain(
            "dispersion expects uniform-field coordinates".into(),
        ));
    }
    let (h, gamma) = p.canonical();
    let (s, c) = wavenumber.sin_cos();
    Ok(((c - h / 2.0).powi(2) + (gamma * s).powi(2)).sqrt())
}

/// The angle `θ ∈ [0, π/4]` of the degenerate product ground states on the
/// factorization circle, fixed by `cos²(2θ) = (1 - γ)/(1 + γ)`.
pub fn product_state_angle(gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "product-state angle requires 0 <= gamma <= 1, got {gamma}"
        )));
    }
    let c = ((1.0 - gamma) / (1.0 + gamma)).sqrt();
    Ok(0.5 * c.acos())
}

/// Maps a staggered-field point `(h', γ')` onto the uniform-field model:
/// `γ = 1/γ'`, `h = h'/γ'`, with overall coupling `J = γ`.
///
/// The coupling rescales the energy only, not the ground state, so it is
/// returned but never enters entropy computations. The map is its own
/// inverse under `γ' = 1/γ, h' = h/γ`.
pub fn staggered_to_uniform(p: ModelPoint) -> Result<(ModelPoint, f64)> {
    if !p.staggered {
        return Err(Error::Domain(
            "point is not marked as staggered coordinates".into(),
        ));
    }
    let (h, gamma) = p.canonical();
    if !h.is_finite() || !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite coordinates (h' = {h}, gamma' = {gamma})"
        )));
    }
    if gamma == 0.0 {
        return Err(Error::Domain(
            "staggered mapping is singular at gamma' = 0".into(),
        ));
    }
    let coupling = 1.0 / gamma;
    Ok((ModelPoint::new(h / gamma, coupling), coupling))
}

/// Elliptic parameter of a staggered-field point, computed through the
/// mapping onto the uniform model.
pub fn staggered_elliptic_parameter(p: ModelPoint) -> Result<EllipticData> {
    let (image, _) = staggered_to_uniform(p)?;
    elliptic_parameter(image)
}

/// Dispersion of the staggered-field model,
/// `ε(q) = √((γ' cos q - h'/2)² + sin² q)`; the gap closes on `h' = 2γ'`.
pub fn staggered_dispersion(p: ModelPoint, wavenumber: f64) -> Result<f64> {
    if !p.staggered {
        return Err(Error::Domain(
            "staggered dispersion expects staggered coordinates".into(),
        ));
    }
    let (h, gamma) = p.canonical();
    let (s, c) = wavenumber.sin_cos();
    Ok(((gamma * c - h / 2.0).powi(2) + s * s).sqrt())
}
