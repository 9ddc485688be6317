//! Smoothness indicators and nonlinear weights.

use crate::scalar::{lit, Real};
use serde::{Deserialize, Serialize};

/// Small constant for the JS, M and Z baselines.
pub const BASELINE_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Js,
    M,
    Z,
    H,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Js, Scheme::M, Scheme::Z, Scheme::H];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Js => "JS",
            Scheme::M => "M",
            Scheme::Z => "Z",
            Scheme::H => "H",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "js" => Some(Scheme::Js),
            "m" => Some(Scheme::M),
            "z" => Some(Scheme::Z),
            "h" => Some(Scheme::H),
            _ => None,
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub theta: f64,
    /// Exponent of `eps = dx^gamma_exp`.
    pub gamma_exp: f64,
    pub scheme: Scheme,
    /// Replaces `dx^gamma_exp` (H) or the fixed `1e-6` (JS/M/Z).
    #[serde(default)]
    pub eps: Option<f64>,
    /// Relative zero threshold of the tension selector.
    #[serde(default = "default_eps_zero")]
    pub eps_zero: f64,
    /// Clamp on the normalized tension.
    #[serde(default = "default_s2_max")]
    pub s2_max: f64,
}

fn default_eps_zero() -> f64 {
    1e-10
}

fn default_s2_max() -> f64 {
    1.0
}

impl Default for WeightParams {
    fn default() -> Self {
        WeightParams {
            theta: 0.25,
            gamma_exp: 4.0,
            scheme: Scheme::H,
            eps: None,
            eps_zero: default_eps_zero(),
            s2_max: default_s2_max(),
        }
    }
}

impl WeightParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return Err(format!("theta must lie in (0, 1], got {}", self.theta));
        }
        if !(self.gamma_exp > 0.0 && self.gamma_exp <= 4.0) {
            return Err(format!("gamma_exp must lie in (0, 4], got {}", self.gamma_exp));
        }
        if !(self.eps_zero >= 0.0 && self.eps_zero.is_finite()) {
            return Err(format!("eps_zero must be non-negative, got {}", self.eps_zero));
        }
        if !(self.s2_max > 0.0 && self.s2_max.is_finite()) {
            return Err(format!("s2_max must be positive, got {}", self.s2_max));
        }
        if let Some(e) = self.eps {
            if !(e > 0.0 && e.is_finite()) {
                return Err(format!("eps must be positive, got {e}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessTriple<T> {
    pub beta: [T; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector<T> {
    pub omega: [T; 3],
}

impl<T: Real> WeightVector<T> {
    fn normalize(alpha: [T; 3]) -> Self {
        let s = alpha[0] + alpha[1] + alpha[2];
        WeightVector {
            omega: alpha.map(|a| a / s),
        }
    }

    /// Convex combination of the three substencil values.
    #[inline]
    pub fn combine(&self, local: &[T; 3]) -> T {
        self.omega[0] * local[0] + self.omega[1] * local[1] + self.omega[2] * local[2]
    }
}

/// First and second generalized undivided differences on substencil `k`
/// of the five-cell window `j-2..=j+2`.
#[inline]
pub fn id_operators<T: Real>(w: &[T; 5], k: usize) -> (T, T) {
    let (a, b, c) = (w[k], w[k + 1], w[k + 2]);
    let kk = lit::<T>(k as f64);
    let one = T::one();
    let two = lit::<T>(2.0);
    let id1 = (one - kk) * a + (two * kk - lit(3.0)) * b + (two - kk) * c;
    let id2 = a - two * b + c;
    (id1, id2)
}

#[inline]
pub fn beta_l1<T: Real>(w: &[T; 5], theta: T) -> SmoothnessTriple<T> {
    let mut beta = [T::zero(); 3];
    for (k, b) in beta.iter_mut().enumerate() {
        let (id1, id2) = id_operators(w, k);
        *b = theta * id1.abs() + id2.abs();
    }
    SmoothnessTriple { beta }
}

#[inline]
pub fn beta_js<T: Real>(w: &[T; 5]) -> SmoothnessTriple<T> {
    let c1 = lit::<T>(13.0 / 12.0);
    let c2 = lit::<T>(0.25);
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let four = lit::<T>(4.0);
    let sq = |v: T| v * v;
    let b0 = c1 * sq(w[0] - two * w[1] + w[2]) + c2 * sq(w[0] - four * w[1] + three * w[2]);
    let b1 = c1 * sq(w[1] - two * w[2] + w[3]) + c2 * sq(w[1] - w[3]);
    let b2 = c1 * sq(w[2] - two * w[3] + w[4]) + c2 * sq(three * w[2] - four * w[3] + w[4]);
    SmoothnessTriple { beta: [b0, b1, b2] }
}

/// Fourth undivided difference centred on `j`.
#[inline]
pub fn tau5<T: Real>(w: &[T; 5]) -> T {
    let four = lit::<T>(4.0);
    w[0] - four * w[1] + lit::<T>(6.0) * w[2] - four * w[3] + w[4]
}

#[inline]
pub fn weights_h<T: Real>(beta: &SmoothnessTriple<T>, tau: T, d: &[T; 3], eps: T) -> WeightVector<T> {
    let t2 = tau * tau;
    let mut alpha = [T::zero(); 3];
    for k in 0..3 {
        alpha[k] = d[k] * (T::one() + t2 / (beta.beta[k] * beta.beta[k] + eps));
    }
    WeightVector::normalize(alpha)
}

#[inline]
pub fn weights_js<T: Real>(beta: &SmoothnessTriple<T>, d: &[T; 3], eps: T) -> WeightVector<T> {
    let mut alpha = [T::zero(); 3];
    for k in 0..3 {
        let e = eps + beta.beta[k];
        alpha[k] = d[k] / (e * e);
    }
    WeightVector::normalize(alpha)
}

/// Henrick mapping `g_k`.
#[inline]
pub fn henrick_map<T: Real>(w: T, d: T) -> T {
    let three = lit::<T>(3.0);
    let two = lit::<T>(2.0);
    w * (d + d * d - three * d * w + w * w) / (d * d + w * (T::one() - two * d))
}

#[inline]
pub fn weights_m<T: Real>(beta: &SmoothnessTriple<T>, d: &[T; 3], eps: T) -> WeightVector<T> {
    let js = weights_js(beta, d, eps);
    let mut alpha = [T::zero(); 3];
    for k in 0..3 {
        alpha[k] = henrick_map(js.omega[k], d[k]);
    }
    WeightVector::normalize(alpha)
}

#[inline]
pub fn weights_z<T: Real>(beta: &SmoothnessTriple<T>, d: &[T; 3], eps: T) -> WeightVector<T> {
    let tau_z = (beta.beta[0] - beta.beta[2]).abs();
    let mut alpha = [T::zero(); 3];
    for k in 0..3 {
        alpha[k] = d[k] * (T::one() + tau_z / (beta.beta[k] + eps));
    }
    WeightVector::normalize(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_basis::CLASSICAL_D;
    use proptest::prelude::*;

    fn cells(f: impl Fn(f64) -> f64, xj: f64, dx: f64) -> [f64; 5] {
        std::array::from_fn(|i| f(xj + (i as f64 - 2.0) * dx))
    }

    #[test]
    fn id_operators_on_linear_and_quadratic_data() {
        let (s, dx) = (1.7, 0.25);
        let w = cells(|x| s * x, 3.0, dx);
        for k in 0..3 {
            let (a, b) = id_operators(&w, k);
            assert!((a - s * dx).abs() < 1e-14);
            assert!(b.abs() < 1e-14);
        }
        let w = cells(|x| x * x, 0.0, 1.0);
        assert_eq!(id_operators(&w, 1), (1.0, 2.0));
        assert_eq!(id_operators(&[4.0; 5], 2), (0.0, 0.0));
    }

    #[test]
    fn l1_indicator_on_linear_data() {
        let w = cells(|x| -2.0 * x, 0.4, 0.1);
        let b = beta_l1(&w, 0.25);
        for v in b.beta {
            assert!((v - 0.25 * 0.2).abs() < 1e-14);
        }
        assert_eq!(beta_l1(&[1.0; 5], 0.25).beta, [0.0; 3]);
    }

    #[test]
    fn l1_indicator_matches_taylor_form() {
        // beta_1 = theta|f' dx + f'' dx^2/2| + |f'' dx^2| + O(dx^3) at x_j
        let (f, f1, f2) = (f64::sin, f64::cos, |x: f64| -x.sin());
        let x = 0.7;
        let mut prev: Option<f64> = None;
        for lvl in 0..4 {
            let dx = 0.1 / 2f64.powi(lvl);
            let b = beta_l1(&cells(f, x, dx), 0.25).beta[1];
            // substencil 1: coefficients (0, -1, 1) -> forward difference
            let taylor = 0.25 * (f1(x) * dx + f2(x) * dx * dx / 2.0).abs() + (f2(x) * dx * dx).abs();
            let r = (b - taylor).abs();
            if let Some(p) = prev {
                assert!((p / r).log2() > 2.7, "slope {}", (p / r).log2());
            }
            prev = Some(r);
        }
    }

    #[test]
    fn js_indicator_examples() {
        assert_eq!(beta_js(&[3.0; 5]).beta, [0.0; 3]);
        let (s, dx) = (0.5, 0.2);
        let b = beta_js(&cells(|x| s * x, 1.0, dx));
        for v in b.beta {
            assert!((v - s * s * dx * dx).abs() < 1e-15);
        }
        let b = beta_js(&cells(|x| x * x, 0.0, 1.0));
        assert!((b.beta[1] - 13.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn js_indicator_matches_integral_definition() {
        // sum_l dx^(2l-1) int (p^(l))^2 over the cell, p the substencil parabola
        let w = [0.3, -1.2, 2.5, 0.7, 4.0];
        let b = beta_js(&w);
        for k in 0..3 {
            let (a, m, c) = (w[k], w[k + 1], w[k + 2]);
            // parabola through cell averages on cells -1, 0, 1 relative to the middle one
            let p2 = (a - 2.0 * m + c) / 2.0;
            let p1 = (c - a) / 2.0;
            // target cell relative to middle: k=0 -> +1, k=1 -> 0, k=2 -> -1
            let xc = 1.0 - k as f64;
            let n = 2000;
            let (mut i1, mut i2) = (0.0, 0.0);
            for q in 0..n {
                let x = xc - 0.5 + (q as f64 + 0.5) / n as f64;
                let d1 = p1 + 2.0 * p2 * x;
                i1 += d1 * d1 / n as f64;
                i2 += (2.0 * p2) * (2.0 * p2) / n as f64;
            }
            assert!((b.beta[k] - (i1 + i2)).abs() < 1e-6 * (1.0 + b.beta[k]), "k={k}");
        }
    }

    #[test]
    fn tau5_examples() {
        assert_eq!(tau5(&cells(|x| x * x * x - x, 0.0, 1.0)), 0.0);
        assert_eq!(tau5(&cells(|x| x.powi(4), 0.0, 1.0)), 24.0);
        assert_eq!(tau5(&[2.0; 5]), 0.0);
    }

    #[test]
    fn linear_weights_recovered() {
        let d = CLASSICAL_D;
        let eps = 1e-6;
        let equal = SmoothnessTriple { beta: [0.3; 3] };
        for w in [
            weights_h(&equal, 0.7, &d, eps),
            weights_js(&equal, &d, eps),
            weights_m(&equal, &d, eps),
            weights_z(&equal, &d, eps),
        ] {
            for k in 0..3 {
                assert!((w.omega[k] - d[k]).abs() < 1e-15);
            }
        }
        let uneven = SmoothnessTriple { beta: [0.1, 2.0, 7.0] };
        let w = weights_h(&uneven, 0.0, &d, eps);
        for k in 0..3 {
            assert!((w.omega[k] - d[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_data_gives_linear_h_weights() {
        let w = cells(|x| 3.0 * x - 1.0, 0.5, 0.125);
        let b = beta_l1(&w, 0.25);
        let om = weights_h(&b, tau5(&w), &CLASSICAL_D, 0.125f64.powi(4));
        for k in 0..3 {
            assert!((om.omega[k] - CLASSICAL_D[k]).abs() <= 1e-16);
        }
    }

    #[test]
    fn henrick_fixed_points() {
        for d in CLASSICAL_D {
            assert!((henrick_map(d, d) - d).abs() < 1e-15);
            assert_eq!(henrick_map(0.0, d), 0.0);
            assert!((henrick_map(1.0, d) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn js_downweights_stencil_across_jump() {
        let w = [0.0, 0.0, 0.0, 1.0, 1.0];
        let om = weights_js(&beta_js(&w), &CLASSICAL_D, BASELINE_EPS);
        assert!(om.omega[2] < 1e-6, "{:?}", om);
        assert!(om.omega[1] < 1e-6);
        assert!((om.omega[0] - 1.0).abs() < 1e-6);
    }

    fn max_dev(x: f64, dx: f64) -> f64 {
        let w = cells(f64::sin, x, dx);
        let om = weights_h(&beta_l1(&w, 0.25), tau5(&w), &CLASSICAL_D, dx.powi(4));
        (0..3).map(|k| (om.omega[k] - CLASSICAL_D[k]).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn h_weights_converge_to_linear_weights() {
        let half_pi = std::f64::consts::FRAC_PI_2;
        for (label, shift) in [("generic", 0.3), ("critical", 0.0)] {
            let mut prev: Option<f64> = None;
            for lvl in 0..4 {
                let dx = 0.2 / 2f64.powi(lvl);
                // interface x_{j+1/2} placed at pi/2 + shift
                let xj = half_pi + shift - dx / 2.0;
                let e = max_dev(xj, dx);
                if let Some(p) = prev {
                    let slope = (p / e).log2();
                    assert!(slope >= 3.5, "{label}: level {lvl} slope {slope}");
                }
                prev = Some(e);
            }
        }
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(Scheme::parse("H"), Some(Scheme::H));
        assert_eq!(Scheme::parse("js"), Some(Scheme::Js));
        assert_eq!(Scheme::parse("q"), None);
        assert!(WeightParams::default().validate().is_ok());
        assert!(WeightParams { theta: 0.0, ..Default::default() }.validate().is_err());
        assert!(WeightParams { gamma_exp: 5.0, ..Default::default() }.validate().is_err());
    }

    proptest! {
        #[test]
        fn weights_are_convex(w in prop::array::uniform5(-10.0f64..10.0), tau_scale in 0.0f64..3.0) {
            let d = CLASSICAL_D;
            let bj = beta_js(&w);
            let bl = beta_l1(&w, 0.25);
            for om in [
                weights_js(&bj, &d, 1e-6),
                weights_m(&bj, &d, 1e-6),
                weights_z(&bj, &d, 1e-6),
                weights_h(&bl, tau_scale * tau5(&w), &d, 1e-4),
            ] {
                let s: f64 = om.omega.iter().sum();
                prop_assert!((s - 1.0).abs() <= 1e-14);
                prop_assert!(om.omega.iter().all(|&v| v >= 0.0));
            }
        }
    }
}
