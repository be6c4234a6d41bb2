//! The one-parameter family of constant-entropy curves.
//!
//! Entropy depends on `(h, γ)` only through the elliptic parameter `k`, so
//! level sets of `k` are level sets of the entropy. They form a single
//! family indexed by `κ > 0`:
//!
//! - `(h/2)² - (γ/κ)² = 1` for `h > 2` (hyperbolas, Case 2),
//! - `(h/2)² + (γ/κ)² = 1` for `h < 2` (quarter ellipses; `κ > 1` in
//!   Case 1a, `κ < 1` in Case 1b, and the `κ = 1` circle is the
//!   factorization boundary with entropy exactly ln 2).
//!
//! Every curve has the open endpoint `(2, 0)` — the essential critical
//! point — so all of them meet there, and the entropy limit at that point is
//! direction-dependent.

use crate::entropy::{entropy_from_kappa, EntropyValue, Method, Outcome};
use crate::error::{Error, Result};
use crate::phase::{classify, ModelPoint, Region};
use crate::special::EllipticData;
use std::fmt;

/// Which branch of the family a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveBranch {
    /// Hyperbola, `h > 2`, any `κ > 0`.
    Case2,
    /// Ellipse outside the unit circle, `κ > 1`.
    Case1a,
    /// Ellipse inside the unit circle, `0 < κ < 1`.
    Case1b,
    /// The `κ = 1` circle itself.
    Boundary,
}

impl CurveBranch {
    pub fn name(self) -> &'static str {
        match self {
            CurveBranch::Case2 => "Case2",
            CurveBranch::Case1a => "Case1a",
            CurveBranch::Case1b => "Case1b",
            CurveBranch::Boundary => "Boundary",
        }
    }

    /// The region every interior point of a curve of this branch falls in.
    pub fn region(self) -> Region {
        match self {
            CurveBranch::Case2 => Region::Case2,
            CurveBranch::Case1a => Region::Case1a,
            CurveBranch::Case1b => Region::Case1b,
            CurveBranch::Boundary => Region::FactorizationBoundary,
        }
    }
}

impl fmt::Display for CurveBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constant-entropy curve: the family parameter plus its branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoCurve {
    pub kappa: f64,
    pub branch: CurveBranch,
}

impl IsoCurve {
    pub fn new(kappa: f64, branch: CurveBranch) -> Result<Self> {
        let curve = Self { kappa, branch };
        curve.validate()?;
        Ok(curve)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.branch {
            CurveBranch::Case2 => self.kappa > 0.0 && self.kappa.is_finite(),
            CurveBranch::Case1a => self.kappa > 1.0 && self.kappa.is_finite(),
            CurveBranch::Case1b => self.kappa > 0.0 && self.kappa < 1.0,
            CurveBranch::Boundary => self.kappa == 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "kappa = {} is outside branch {}",
                self.kappa, self.branch
            )))
        }
    }

    /// The constant entropy attached to the curve.
    pub fn entropy(&self) -> Result<EntropyValue> {
        self.validate()?;
        match self.branch {
            CurveBranch::Boundary => Ok(EntropyValue {
                outcome: Outcome::Finite(std::f64::consts::LN_2),
                method: Method::Kappa,
                err_estimate: None,
            }),
            branch => entropy_from_kappa(self.kappa, branch.region()),
        }
    }
}

/// The family parameter of the curve through a point: `κ = γ/√((h/2)² - 1)`
/// on hyperbolas, `κ = γ/√(1 - (h/2)²)` on ellipses, `κ = 1` on the circle.
pub fn kappa_of_point(p: ModelPoint) -> Result<f64> {
    let region = classify(p)?;
    let (h, gamma) = p.canonical();
    let half_sq = (h / 2.0) * (h / 2.0);
    match region {
        Region::Case2 => Ok(gamma / (half_sq - 1.0).sqrt()),
        Region::Case1a | Region::Case1b => Ok(gamma / (1.0 - half_sq).sqrt()),
        Region::FactorizationBoundary => Ok(1.0),
        Region::IsotropicFree => Err(Error::Domain(
            "the half line gamma = 0, h > 2 is the degenerate kappa = 0 limit".into(),
        )),
        _ => Err(Error::Critical(
            "no iso-curve through a critical point except as limit".into(),
        )),
    }
}

/// The modulus shared by every point of a curve:
///
/// - Case 2:  `k = √(κ²/(1+κ²))`, `k' = √(1/(1+κ²))`
/// - Case 1a: `k = √((κ²-1)/κ²)`, `k' = 1/κ`
/// - Case 1b: `k = √(1-κ²)`,      `k' = κ`
/// - Boundary: `k = 0`.
pub fn modulus_of_kappa(kappa: f64, branch: CurveBranch) -> Result<EllipticData> {
    IsoCurve { kappa, branch }.validate()?;
    let k2 = kappa * kappa;
    match branch {
        CurveBranch::Case2 => {
            EllipticData::new((k2 / (1.0 + k2)).sqrt(), (1.0 / (1.0 + k2)).sqrt())
        }
        CurveBranch::Case1a => EllipticData::new(((k2 - 1.0) / k2).sqrt(), 1.0 / kappa),
        CurveBranch::Case1b => EllipticData::new((1.0 - k2).sqrt(), kappa),
        CurveBranch::Boundary => EllipticData::new(0.0, 1.0),
    }
}

/// Default clip for the unbounded hyperbola branch.
pub const DEFAULT_H_MAX: f64 = 6.0;

/// Gap left between the last (or first) sample and the open endpoint at
/// `(2, 0)`, which is never emitted. Closer than ~1e-3 the cancellation in
/// `(h/2)² + γ² - 1` costs more digits than the 1e-12 modulus consistency
/// along curves allows; [`approach_endpoint`] walks arbitrarily close for
/// limit studies instead.
pub const ENDPOINT_GAP: f64 = 1e-3;

/// `n` points of the curve ordered by increasing `h`.
///
/// Ellipse branches run over `h ∈ [0, 2)`, hyperbolas over `(2, h_max]`
/// with the default clip [`DEFAULT_H_MAX`].
pub fn sample_curve(curve: IsoCurve, n: usize) -> Result<Vec<ModelPoint>> {
    sample_curve_to(curve, n, DEFAULT_H_MAX)
}

/// [`sample_curve`] with an explicit hyperbola clip.
pub fn sample_curve_to(curve: IsoCurve, n: usize, h_max: f64) -> Result<Vec<ModelPoint>> {
    curve.validate()?;
    if n < 2 {
        return Err(Error::Domain(format!("need at least two samples, got {n}")));
    }
    let kappa = curve.kappa;
    let mut points = Vec::with_capacity(n);
    match curve.branch {
        CurveBranch::Case2 => {
            if !(h_max > 2.0 + ENDPOINT_GAP) {
                return Err(Error::Domain(format!("h_max must exceed 2, got {h_max}")));
            }
            let start = 2.0 + ENDPOINT_GAP;
            for i in 0..n {
                let h = start + (i as f64 * (h_max - start)) / (n - 1) as f64;
                let gamma = kappa * ((h / 2.0) * (h / 2.0) - 1.0).sqrt();
                points.push(ModelPoint::new(h, gamma));
            }
        }
        _ => {
            let end = 2.0 - ENDPOINT_GAP;
            for i in 0..n {
                let h = (i as f64 * end) / (n - 1) as f64;
                let gamma = kappa * (1.0 - (h / 2.0) * (h / 2.0)).sqrt();
                points.push(ModelPoint::new(h, gamma));
            }
        }
    }
    Ok(points)
}

/// The unique curve through a non-critical point; the point solves the
/// curve's equation exactly.
pub fn curve_through_point(p: ModelPoint) -> Result<IsoCurve> {
    let region = classify(p)?;
    let kappa = kappa_of_point(p)?;
    let branch = match region {
        Region::Case2 => CurveBranch::Case2,
        Region::Case1a => CurveBranch::Case1a,
        Region::Case1b => CurveBranch::Case1b,
        Region::FactorizationBoundary => CurveBranch::Boundary,
        other => {
            return Err(Error::Domain(format!(
                "no iso-curve assigned to region {other}"
            )))
        }
    };
    // Guard against tolerance-window classifications right at a branch edge.
    IsoCurve::new(kappa, branch)
}

/// Points of the curve walking into the open endpoint `(2, 0)`: the gap to
/// `h = 2` halves at each of the `steps` emitted points. Every curve of the
/// family approaches this common point.
pub fn approach_endpoint(curve: IsoCurve, steps: usize) -> Result<Vec<ModelPoint>> {
    curve.validate()?;
    if steps == 0 {
        return Err(Error::Domain("need at least one step".into()));
    }
    let kappa = curve.kappa;
    let mut points = Vec::with_capacity(steps);
    let mut gap = 0.5;
    for _ in 0..steps {
        match curve.branch {
            CurveBranch::Case2 => {
                let h = 2.0 + gap;
                points.push(ModelPoint::new(
                    h,
                    kappa * ((h / 2.0) * (h / 2.0) - 1.0).sqrt(),
                ));
            }
            _ => {
                let h = 2.0 - gap;
                points.push(ModelPoint::new(
                    h,
                    kappa * (1.0 - (h / 2.0) * (h / 2.0)).sqrt(),
                ));
            }
        }
        gap *= 0.5;
    }
    Ok(points)
}
