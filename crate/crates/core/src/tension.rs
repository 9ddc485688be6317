//! Data-driven choice of the approximation space and its tension.
//!
//! The high derivatives of the primitive `H` at the interface are estimated
//! by undivided differences of the flux values (which play the role of cell
//! averages of the implicit flux). `D_k / dx^(k-1)` tends to `H^(k)`.

use crate::exp_basis::{trig_s2_limit, BasisKind, ExpBasis};
use crate::scalar::{lit, Real};

/// Undivided differences of the primitive at `x_{j+1/2}` plus the magnitude
/// used by the relative zero tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveDifferences<T> {
    pub d4: T,
    pub d5: T,
    pub d6: T,
    /// `max |f| + 1` over the window.
    pub scale: T,
}

/// Differences from the six flux values at cells `j-2..=j+3` (upwind order;
/// the caller mirrors the window for the negatively split flux).
#[inline]
pub fn primitive_differences<T: Real>(w: &[T; 6]) -> PrimitiveDifferences<T> {
    let three = lit::<T>(3.0);
    let four = lit::<T>(4.0);
    let five = lit::<T>(5.0);
    let six = lit::<T>(6.0);
    let ten = lit::<T>(10.0);
    let d4 = w[4] - three * w[3] + three * w[2] - w[1];
    let d5 = w[4] - four * w[3] + six * w[2] - four * w[1] + w[0];
    let d6 = w[5] - five * w[4] + ten * w[3] - ten * w[2] + five * w[1] - w[0];
    let scale = w.iter().fold(T::zero(), |m, v| m.max(v.abs())) + T::one();
    PrimitiveDifferences { d4, d5, d6, scale }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TensionThresholds<T> {
    /// Relative zero threshold for the difference tests.
    pub eps_zero: T,
    /// Clamp on `|s2|`.
    pub s2_max: T,
}

impl<T: Real> Default for TensionThresholds<T> {
    fn default() -> Self {
        TensionThresholds {
            eps_zero: lit(1e-10),
            s2_max: T::one(),
        }
    }
}

/// Selected basis kind and normalized tension for one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionDecision<T> {
    pub kind: BasisKind,
    pub s2: T,
    /// Weight of the `t^6/720` correction in the C2 primitive basis
    /// (`lambda^2 dx` in normalized units); zero for other kinds.
    pub c2_weight: T,
}

impl<T: Real> TensionDecision<T> {
    pub fn polynomial() -> Self {
        TensionDecision {
            kind: BasisKind::Polynomial,
            s2: T::zero(),
            c2_weight: T::zero(),
        }
    }

    pub fn basis(&self) -> ExpBasis<T> {
        ExpBasis::new(self.kind, self.s2, self.c2_weight).unwrap_or_else(|_| ExpBasis::polynomial())
    }
}

/// Trigonometric tensions are kept this fraction inside the admissibility bound.
const TRIG_MARGIN: f64 = 0.95;

/// Chooses the basis for one interface.
///
/// * `|D6|` negligible: algebraic polynomials.
/// * `|D4|` significant: C1 with `s2 = D6/D4`.
/// * else `|D5|` significant: C2 with `s2 = dx D6/D5`.
/// * otherwise polynomials.
///
/// Non-finite data selects polynomials; this never fails.
pub fn select_tension<T: Real>(
    diffs: &PrimitiveDifferences<T>,
    dx: T,
    thresholds: &TensionThresholds<T>,
) -> TensionDecision<T> {
    let PrimitiveDifferences { d4, d5, d6, scale } = *diffs;
    if !(d4.is_finite() && d5.is_finite() && d6.is_finite() && scale.is_finite()) {
        return TensionDecision::polynomial();
    }
    let zero = thresholds.eps_zero * scale;
    if d6.abs() <= zero {
        return TensionDecision::polynomial();
    }
    let (raw, c2) = if d4.abs() > zero {
        (d6 / d4, false)
    } else if d5.abs() > zero {
        (dx * d6 / d5, true)
    } else {
        return TensionDecision::polynomial();
    };
    let s2 = clamp_tension(raw, thresholds.s2_max);
    if s2 == T::zero() || !s2.is_finite() {
        return TensionDecision::polynomial();
    }
    let kind = match (s2 > T::zero(), c2) {
        (true, false) => BasisKind::HyperbolicC1,
        (false, false) => BasisKind::TrigonometricC1,
        (true, true) => BasisKind::HyperbolicC2,
        (false, true) => BasisKind::TrigonometricC2,
    };
    TensionDecision {
        kind,
        s2,
        c2_weight: if c2 { s2 / dx } else { T::zero() },
    }
}

#[inline]
fn clamp_tension<T: Real>(s2: T, s2_max: T) -> T {
    if s2 > T::zero() {
        s2.min(s2_max)
    } else {
        let trig_max = s2_max.min(trig_s2_limit::<T>() * lit(TRIG_MARGIN));
        s2.max(-trig_max)
    }
}
