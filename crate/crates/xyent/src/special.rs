//! Complete elliptic integral of the first kind and the small set of scalar
//! special functions the entropy formulas are built from.
//!
//! `I(k)` denotes the integral in the modulus convention,
//!
//! ```text
//!        1
//!       ⌠            dx
//! I(k) = │  ─────────────────────── ,     0 ≤ k < 1,
//!       ⌡  √((1 - x²)(1 - k² x²))
//!      0
//! ```
//!
//! evaluated as `π / (2 agm(1, k'))` with `k' = √(1 - k²)`. The AGM route
//! converges quadratically and has no singular endpoint to handle; direct
//! quadrature of the integral is kept only as a test oracle.

use crate::error::{Error, Result};

/// Modulus data attached to a point of the phase diagram: the elliptic
/// parameter `k`, its complement `k' = √(1 - k²)`, and the ratio
/// `tau0 = I(k')/I(k)` that sets the spacing of the entropy-series zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticData {
    pub k: f64,
    pub k_prime: f64,
    /// `I(k')/I(k)`; `f64::INFINITY` in the degenerate `k = 0` limit.
    pub tau0: f64,
}

impl EllipticData {
    /// Builds the record from `k` alone, with `k' = √((1-k)(1+k))`.
    pub fn from_k(k: f64) -> Result<Self> {
        let k_prime = ((1.0 - k) * (1.0 + k)).sqrt();
        Self::new(k, k_prime)
    }

    /// Builds the record from an explicit `(k, k')` pair. The pair must
    /// satisfy `k² + k'² = 1` to within 1e-14.
    pub fn new(k: f64, k_prime: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) || !k_prime.is_finite() {
            return Err(Error::Domain(format!(
                "elliptic parameter must satisfy 0 <= k < 1, got k = {k}"
            )));
        }
        debug_assert!((k * k + k_prime * k_prime - 1.0).abs() <= 1e-14);
        // tau0 = I(k')/I(k) = agm(1, k')/agm(1, k): using the stored pair
        // instead of re-deriving complements keeps full precision when
        // either parameter is close to 1.
        let tau0 = if k == 0.0 {
            f64::INFINITY
        } else {
            agm(1.0, k_prime)? / agm(1.0, k)?
        };
        Ok(Self { k, k_prime, tau0 })
    }

    /// The pair `(I(k), I(k'))`, each evaluated through the other
    /// parameter's AGM. Recomputing `√(1-k'²)` from a rounded `k' ≈ 1`
    /// would cost about half the significant digits; the exact complement
    /// of `k'` is `k`, so use it.
    pub fn integral_pair(&self) -> Result<(f64, f64)> {
        if self.k == 0.0 {
            return Err(Error::Critical("I(k') diverges at k = 0".into()));
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        Ok((
            half_pi / agm(1.0, self.k_prime)?,
            half_pi / agm(1.0, self.k)?,
        ))
    }
}

const AGM_MAX_ITERS: usize = 64;

/// Arithmetic–geometric mean of two positive numbers.
///
/// Iterates `(a, b) -> ((a+b)/2, √(ab))` until `|a - b| <= 1e-16 a` or the
/// pair stops changing at double precision; fails after 64 iterations.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "agm requires positive finite arguments, got ({a}, {b})"
        )));
    }
    let mut hi = a.max(b);
    let mut lo = a.min(b);
    for _ in 0..AGM_MAX_ITERS {
        let gap = hi - lo;
        if gap <= 1e-16 * hi {
            return Ok(hi);
        }
        let mean = 0.5 * (hi + lo);
        // split square roots so hi * lo cannot overflow for large inputs
        let geo = hi.sqrt() * lo.sqrt();
        let next_hi = mean.max(geo);
        let next_lo = mean.min(geo);
        // In exact arithmetic the gap strictly shrinks, so a non-shrinking
        // gap means the double-precision floor (one ulp, which can exceed
        // 1e-16 hi) is reached.
        if next_hi - next_lo >= gap {
            return Ok(next_hi);
        }
        hi = next_hi;
        lo = next_lo;
    }
    Err(Error::Numerical(format!(
        "agm({a}, {b}) did not converge in {AGM_MAX_ITERS} iterations"
    )))
}

/// Complete elliptic integral of the first kind `I(k)`, modulus convention.
///
/// Strictly increasing in `k`, with `I(0) = π/2`. `k = 1` is reported as a
/// divergence rather than a large float.
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!(
            "elliptic integral requires 0 <= k <= 1, got {k}"
        )));
    }
    if k == 1.0 {
        return Err(Error::Critical("I(k) diverges at k = 1".into()));
    }
    let k_prime = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(std::f64::consts::FRAC_PI_2 / agm(1.0, k_prime)?)
}

/// The ratio `tau0 = I(k')/I(k)` for `0 < k < 1`.
///
/// Strictly decreasing, `tau0 -> ∞` as `k -> 0` and `-> 0` as `k -> 1`;
/// satisfies `tau0(k) tau0(k') = 1`.
pub fn tau0_of(k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Domain(format!(
            "tau0 is degenerate or divergent at k = {k}"
        )));
    }
    let k_prime = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(agm(1.0, k_prime)? / agm(1.0, k)?)
}

/// Binary entropy `-x ln x - (1-x) ln(1-x)` in nats, with `0 ln 0 := 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "binary entropy requires 0 <= x <= 1, got {x}"
        )));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (1.0 - x).ln())
}
