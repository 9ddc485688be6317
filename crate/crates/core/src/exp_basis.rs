//! Interface reconstruction coefficients from an exponential (or algebraic)
//! primitive basis.
//!
//! Everything here works in normalized coordinates `t = (x - x_{j+1/2})/dx`
//! with normalized tension `s2 = lambda^2 dx^2`. The primitive `H` is
//! interpolated on the six cell boundaries `t = -3, ..., 2` of the stencil
//! `j-2..=j+2`; the flux at the interface is the derivative of that
//! interpolant at `t = 0`. Writing `H` at the boundaries as partial sums of
//! the cell values and summing by parts gives the five global coefficients
//! `C_l = sum_{n > l} w_n`, with `w_n` the derivative weights.

use crate::error::BasisError;
use crate::scalar::{lit, Real};

/// Boundary nodes of the primitive relative to the interface.
pub const NODES: [f64; 6] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0];

/// Classical fifth-order upwind coefficients `(2, -13, 47, 27, -3)/60`.
pub const CLASSICAL_C: [f64; 5] = [2.0 / 60.0, -13.0 / 60.0, 47.0 / 60.0, 27.0 / 60.0, -3.0 / 60.0];

/// Classical optimal weights.
pub const CLASSICAL_D: [f64; 3] = [0.1, 0.6, 0.3];

/// Third-order substencil coefficients `C^k` acting on cells `j-2+k..=j+k`.
pub const SUBSTENCIL: [[f64; 3]; 3] = [
    [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0],
    [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0],
    [1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
];

/// Optimal weights outside `[D_MIN, 1 - D_MIN]` are replaced by the classical set.
pub const D_MIN: f64 = 0.01;

// Derivative-at-zero weights of the degree-5 Lagrange basis on NODES, and
// the dual functionals picking the t^4 and t^5 coefficients of the
// interpolant. Exact rationals.
const POLY_W: [f64; 6] = [-1.0 / 30.0, 1.0 / 4.0, -1.0, 1.0 / 3.0, 1.0 / 2.0, -1.0 / 20.0];
const DUAL4: [f64; 6] = [0.0, 1.0 / 24.0, -1.0 / 6.0, 1.0 / 4.0, -1.0 / 6.0, 1.0 / 24.0];
const DUAL5: [f64; 6] = [-1.0 / 120.0, 1.0 / 24.0, -1.0 / 12.0, 1.0 / 12.0, -1.0 / 24.0, 1.0 / 120.0];
// Partial sums (sum over n > l) of DUAL4 and DUAL5.
const DUAL4_SUMS: [f64; 5] = [0.0, -1.0 / 24.0, 1.0 / 8.0, -1.0 / 8.0, 1.0 / 24.0];
const DUAL5_SUMS: [f64; 5] = [1.0 / 120.0, -1.0 / 30.0, 1.0 / 20.0, -1.0 / 30.0, 1.0 / 120.0];

/// Series/closed-form switch on `|sigma t|`.
const SERIES_RADIUS: f64 = 0.5;
const SERIES_TERMS: usize = 12;

/// Condition-number ceiling for the dense reproduction system.
pub const MAX_CONDITION: f64 = 1e12;

/// Which approximation space the interface flux is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BasisKind {
    Polynomial,
    HyperbolicC1,
    TrigonometricC1,
    HyperbolicC2,
    TrigonometricC2,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Polynomial => "polynomial",
            BasisKind::HyperbolicC1 => "hyperbolic-c1",
            BasisKind::TrigonometricC1 => "trigonometric-c1",
            BasisKind::HyperbolicC2 => "hyperbolic-c2",
            BasisKind::TrigonometricC2 => "trigonometric-c2",
        }
    }

    pub fn is_c2(self) -> bool {
        matches!(self, BasisKind::HyperbolicC2 | BasisKind::TrigonometricC2)
    }
}

/// Largest admissible `|s2|` on the trigonometric branch: the node span is
/// 5, and `5 sigma < pi` keeps the trigonometric system nonsingular.
pub fn trig_s2_limit<T: Real>() -> T {
    let s = T::PI() / lit(5.0);
    s * s
}

/// Primitive basis `phi_0..phi_5` with a fixed tension.
///
/// `phi_n = t^n/n!` for `n <= 3`; `phi_4`, `phi_5` are the deflated
/// cosh/sinh (cos/sin for `s2 < 0`) that tend to `t^4/24`, `t^5/120` as
/// `s2 -> 0`. The C2 kinds add `c2_weight * t^6/720` to `phi_5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpBasis<T> {
    kind: BasisKind,
    s2: T,
    c2_weight: T,
}

impl<T: Real> ExpBasis<T> {
    pub fn polynomial() -> Self {
        ExpBasis {
            kind: BasisKind::Polynomial,
            s2: T::zero(),
            c2_weight: T::zero(),
        }
    }

    /// Validates the sign pairing of `kind` and `s2`. `c2_weight` is ignored
    /// for C1 kinds.
    pub fn new(kind: BasisKind, s2: T, c2_weight: T) -> Result<Self, BasisError> {
        if !s2.is_finite() || !c2_weight.is_finite() {
            return Err(BasisError::NonFinite {
                s2: s2.to_f64().unwrap_or(f64::NAN),
                t: 0.0,
            });
        }
        let ok = match kind {
            BasisKind::Polynomial => s2 == T::zero(),
            BasisKind::HyperbolicC1 | BasisKind::HyperbolicC2 => s2 > T::zero(),
            BasisKind::TrigonometricC1 | BasisKind::TrigonometricC2 => s2 < T::zero(),
        };
        if !ok {
            return Err(BasisError::SignMismatch {
                kind: kind.name(),
                s2: s2.to_f64().unwrap_or(f64::NAN),
            });
        }
        if s2 < T::zero() && -s2 >= trig_s2_limit::<T>() {
            return Err(BasisError::Inadmissible(s2.to_f64().unwrap_or(f64::NAN)));
        }
        let c2_weight = if kind.is_c2() { c2_weight } else { T::zero() };
        Ok(ExpBasis { kind, s2, c2_weight })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn s2(&self) -> T {
        self.s2
    }

    pub fn c2_weight(&self) -> T {
        self.c2_weight
    }

    /// `phi_4(t) - t^4/24` and `phi_5(t) - t^5/120`, evaluated without
    /// cancellation against the polynomial part.
    #[inline]
    fn remainders(&self, t: T) -> (T, T) {
        let s2 = self.s2;
        let y = s2 * t * t;
        let (r4, r5) = if y.abs() < lit(SERIES_RADIUS * SERIES_RADIUS) {
            let t4 = t * t * t * t;
            let (p4, p5) = series_tails(y);
            (t4 * y * p4, t4 * t * y * p5)
        } else {
            let (even, odd) = if y > T::zero() {
                let r = y.sqrt();
                (r.cosh(), r.sinh() / r)
            } else {
                let r = (-y).sqrt();
                (r.cos(), r.sin() / r)
            };
            let s4 = s2 * s2;
            let y2 = y * y;
            (
                (even - T::one() - y / lit(2.0) - y2 / lit(24.0)) / s4,
                t * (odd - T::one() - y / lit(6.0) - y2 / lit(120.0)) / s4,
            )
        };
        if self.kind.is_c2() {
            let t3 = t * t * t;
            (r4, r5 + self.c2_weight * t3 * t3 / lit(720.0))
        } else {
            (r4, r5)
        }
    }

    /// `phi_0..phi_5` at normalized coordinate `t`.
    pub fn values(&self, t: T) -> Result<[T; 6], BasisError> {
        if !t.is_finite() {
            return Err(BasisError::NonFinite {
                s2: self.s2.to_f64().unwrap_or(f64::NAN),
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (r4, r5) = self.remainders(t);
        let t2 = t * t;
        Ok([
            T::one(),
            t,
            t2 / lit(2.0),
            t2 * t / lit(6.0),
            t2 * t2 / lit(24.0) + r4,
            t2 * t2 * t / lit(120.0) + r5,
        ])
    }
}

/// `sum_k y^k/(2k+6)!` and `sum_k y^k/(2k+7)!`, Horner form.
#[inline]
fn series_tails<T: Real>(y: T) -> (T, T) {
    // 1/(2k+6)! and 1/(2k+7)! for k = 0..SERIES_TERMS
    const fn inv_fact_table(offset: u32) -> [f64; SERIES_TERMS] {
        let mut out = [0.0; SERIES_TERMS];
        let mut k = 0;
        while k < SERIES_TERMS {
            let n = 2 * k as u32 + offset;
            let mut f = 1.0;
            let mut i = 2;
            while i <= n {
                f *= i as f64;
                i += 1;
            }
            out[k] = 1.0 / f;
            k += 1;
        }
        out
    }
    const EVEN: [f64; SERIES_TERMS] = inv_fact_table(6);
    const ODD: [f64; SERIES_TERMS] = inv_fact_table(7);
    let mut p4 = T::zero();
    let mut p5 = T::zero();
    for k in (0..SERIES_TERMS).rev() {
        p4 = p4 * y + lit(EVEN[k]);
        p5 = p5 * y + lit(ODD[k]);
    }
    (p4, p5)
}

/// `phi_0..phi_5` at `t` for the given kind and tension.
pub fn primitive_basis_values<T: Real>(
    kind: BasisKind,
    s2: T,
    c2_weight: T,
    t: T,
) -> Result<[T; 6], BasisError> {
    if !t.is_finite() || !s2.is_finite() {
        return Err(BasisError::NonFinite {
            s2: s2.to_f64().unwrap_or(f64::NAN),
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    ExpBasis::new(kind, s2, c2_weight)?.values(t)
}

/// Derivative weights `w_n = L'_n(0)` from the full 6x6 reproduction system
/// `sum_n w_n phi_l(t_n) = phi_l'(0)`, solved by LU with partial pivoting.
///
/// This is the reference route; [`interface_coeffs`] uses an equivalent
/// reduced solve.
pub fn lagrange_derivative_weights<T: Real>(basis: &ExpBasis<T>) -> Result<[T; 6], BasisError> {
    let mut a = [[T::zero(); 6]; 6];
    for (n, &tn) in NODES.iter().enumerate() {
        let phi = basis.values(lit(tn))?;
        for l in 0..6 {
            a[l][n] = phi[l];
        }
    }
    // phi_l'(0) = delta_{l,1} for every kind
    let mut rhs = [T::zero(); 6];
    rhs[1] = T::one();
    let lu = Lu6::factor(a).ok_or(BasisError::IllConditioned(f64::INFINITY))?;
    let cond = lu.condition_inf(&a);
    if !(cond < lit(MAX_CONDITION)) {
        return Err(BasisError::IllConditioned(cond.to_f64().unwrap_or(f64::INFINITY)));
    }
    Ok(lu.solve(rhs))
}

struct Lu6<T> {
    lu: [[T; 6]; 6],
    perm: [usize; 6],
}

impl<T: Real> Lu6<T> {
    fn factor(mut a: [[T; 6]; 6]) -> Option<Self> {
        let mut perm = [0, 1, 2, 3, 4, 5];
        for k in 0..6 {
            let p = (k..6).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())?;
            if a[p][k] == T::zero() || !a[p][k].is_finite() {
                return None;
            }
            a.swap(k, p);
            perm.swap(k, p);
            for i in k + 1..6 {
                let m = a[i][k] / a[k][k];
                a[i][k] = m;
                for j in k + 1..6 {
                    let akj = a[k][j];
                    a[i][j] -= m * akj;
                }
            }
        }
        Some(Lu6 { lu: a, perm })
    }

    fn solve(&self, b: [T; 6]) -> [T; 6] {
        let mut x = [T::zero(); 6];
        for i in 0..6 {
            x[i] = b[self.perm[i]];
        }
        for i in 0..6 {
            for j in 0..i {
                let v = self.lu[i][j] * x[j];
                x[i] -= v;
            }
        }
        for i in (0..6).rev() {
            for j in i + 1..6 {
                let v = self.lu[i][j] * x[j];
                x[i] -= v;
            }
            x[i] /= self.lu[i][i];
        }
        x
    }

    /// `||A||_inf * ||A^-1||_inf` with the inverse formed column by column.
    fn condition_inf(&self, a: &[[T; 6]; 6]) -> T {
        let norm = |m: &[[T; 6]; 6]| {
            m.iter()
                .map(|r| r.iter().fold(T::zero(), |s, v| s + v.abs()))
                .fold(T::zero(), T::max)
        };
        let mut inv = [[T::zero(); 6]; 6];
        for c in 0..6 {
            let mut e = [T::zero(); 6];
            e[c] = T::one();
            let col = self.solve(e);
            for r in 0..6 {
                inv[r][c] = col[r];
            }
        }
        norm(a) * norm(&inv)
    }
}

/// Global coefficients `C` over cells `j-2..=j+2` and optimal weights `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceCoeffs<T> {
    pub c: [T; 5],
    pub d: [T; 3],
    /// Set when the optimal weights left `[D_MIN, 1 - D_MIN]` and were
    /// replaced by the classical ones.
    pub d_substituted: bool,
}

impl<T: Real> InterfaceCoeffs<T> {
    pub fn classical() -> Self {
        InterfaceCoeffs {
            c: CLASSICAL_C.map(lit),
            d: CLASSICAL_D.map(lit),
            d_substituted: false,
        }
    }

    /// Builds the record from global coefficients, deriving the optimal
    /// weights from the first two coefficients and the substencil tables.
    pub fn from_global(c: [T; 5]) -> Self {
        let d0 = c[0] / lit(SUBSTENCIL[0][0]);
        let d1 = (c[1] - d0 * lit(SUBSTENCIL[0][1])) / lit(SUBSTENCIL[1][0]);
        let d = [d0, d1, T::one() - d0 - d1];
        let lo = lit::<T>(D_MIN);
        let hi = T::one() - lo;
        if d.iter().all(|&v| v >= lo && v <= hi) {
            InterfaceCoeffs {
                c,
                d,
                d_substituted: false,
            }
        } else {
            InterfaceCoeffs {
                c,
                d: CLASSICAL_D.map(lit),
                d_substituted: true,
            }
        }
    }

    /// Linear (optimal-weight) flux on the five-cell core.
    pub fn apply(&self, core: &[T; 5]) -> T {
        self.c.iter().zip(core).fold(T::zero(), |s, (c, v)| s + *c * *v)
    }
}

/// Coefficients from the dense 6x6 route; used as the reference for
/// [`interface_coeffs`].
pub fn interface_coeffs_dense<T: Real>(basis: &ExpBasis<T>) -> Result<InterfaceCoeffs<T>, BasisError> {
    let w = lagrange_derivative_weights(basis)?;
    let mut c = [T::zero(); 5];
    for (l, cl) in c.iter_mut().enumerate() {
        *cl = w[l + 1..].iter().copied().sum();
    }
    Ok(InterfaceCoeffs::from_global(c))
}

/// Interface coefficients for `basis`.
///
/// The first four reproduction conditions (polynomials up to `t^3`) are
/// satisfied by any `w = w_poly + a z_4 + b z_5`, where `w_poly` are the
/// degree-5 Lagrange derivative weights and `z_4`, `z_5` the dual
/// functionals of the `t^4`, `t^5` coefficients. The two exponential
/// conditions then reduce to a 2x2 system in `(a, b)`. Algebraically this is
/// the same solution as the dense system.
pub fn interface_coeffs<T: Real>(basis: &ExpBasis<T>) -> Result<InterfaceCoeffs<T>, BasisError> {
    if basis.kind == BasisKind::Polynomial {
        return Ok(InterfaceCoeffs::classical());
    }
    let mut r4 = [T::zero(); 6];
    let mut r5 = [T::zero(); 6];
    for (n, &tn) in NODES.iter().enumerate() {
        if tn != 0.0 {
            let (a, b) = basis.remainders(lit(tn));
            r4[n] = a;
            r5[n] = b;
        }
    }
    let dot = |w: &[f64; 6], r: &[T; 6]| {
        w.iter().zip(r).fold(T::zero(), |s, (a, b)| s + lit::<T>(*a) * *b)
    };
    let m00 = lit::<T>(1.0 / 24.0) + dot(&DUAL4, &r4);
    let m01 = dot(&DUAL5, &r4);
    let m10 = dot(&DUAL4, &r5);
    let m11 = lit::<T>(1.0 / 120.0) + dot(&DUAL5, &r5);
    let (g0, g1) = (-dot(&POLY_W, &r4), -dot(&POLY_W, &r5));
    let det = m00 * m11 - m01 * m10;
    let mag = (m00 * m11).abs() + (m01 * m10).abs();
    if !det.is_finite() || det.abs() <= mag * lit(1.0 / MAX_CONDITION) {
        return Err(BasisError::IllConditioned(
            (mag / det.abs()).to_f64().unwrap_or(f64::INFINITY),
        ));
    }
    let a = (g0 * m11 - m01 * g1) / det;
    let b = (m00 * g1 - m10 * g0) / det;
    let mut c = [T::zero(); 5];
    for l in 0..5 {
        c[l] = lit::<T>(CLASSICAL_C[l]) + a * lit(DUAL4_SUMS[l]) + b * lit(DUAL5_SUMS[l]);
    }
    Ok(InterfaceCoeffs::from_global(c))
}

/// Third-order local flux on substencil `k` (cells `j-2+k..=j+k`).
#[inline]
pub fn local_flux<T: Real>(window3: &[T; 3], k: usize) -> T {
    let c = &SUBSTENCIL[k];
    lit::<T>(c[0]) * window3[0] + lit::<T>(c[1]) * window3[1] + lit::<T>(c[2]) * window3[2]
}
