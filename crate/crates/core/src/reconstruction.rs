//! Interface flux reconstruction for all four schemes.

use crate::exp_basis::{interface_coeffs, local_flux, BasisKind, ExpBasis, InterfaceCoeffs};
use crate::scalar::{lit, Real};
use crate::tension::{primitive_differences, select_tension, TensionThresholds};
use crate::weights::{
    beta_js, beta_l1, tau5, weights_h, weights_js, weights_m, weights_z, Scheme, WeightParams,
    BASELINE_EPS,
};
use serde::{Deserialize, Serialize};

/// Six flux values at cells `j-2..=j+3` in upwind order for the interface
/// `j+1/2`.
pub type StencilWindow<T> = [T; 6];

/// Per-run counters of basis selections for the WENO-H scheme.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchStats {
    pub polynomial: u64,
    pub hyperbolic_c1: u64,
    pub trigonometric_c1: u64,
    pub hyperbolic_c2: u64,
    pub trigonometric_c2: u64,
    /// Interfaces whose optimal weights left the sanity window.
    pub d_substituted: u64,
    /// Interfaces where the exponential system could not be used.
    pub fallback: u64,
}

impl BranchStats {
    pub fn record(&mut self, kind: BasisKind) {
        match kind {
            BasisKind::Polynomial => self.polynomial += 1,
            BasisKind::HyperbolicC1 => self.hyperbolic_c1 += 1,
            BasisKind::TrigonometricC1 => self.trigonometric_c1 += 1,
            BasisKind::HyperbolicC2 => self.hyperbolic_c2 += 1,
            BasisKind::TrigonometricC2 => self.trigonometric_c2 += 1,
        }
    }

    pub fn merge(&mut self, o: &BranchStats) {
        self.polynomial += o.polynomial;
        self.hyperbolic_c1 += o.hyperbolic_c1;
        self.trigonometric_c1 += o.trigonometric_c1;
        self.hyperbolic_c2 += o.hyperbolic_c2;
        self.trigonometric_c2 += o.trigonometric_c2;
        self.d_substituted += o.d_substituted;
        self.fallback += o.fallback;
    }

    pub fn total(&self) -> u64 {
        self.polynomial + self.exponential()
    }

    pub fn exponential(&self) -> u64 {
        self.hyperbolic_c1 + self.trigonometric_c1 + self.hyperbolic_c2 + self.trigonometric_c2
    }

    /// Share of C1 selections among exponential selections (1 when none).
    pub fn c1_fraction(&self) -> f64 {
        let e = self.exponential();
        if e == 0 {
            1.0
        } else {
            (self.hyperbolic_c1 + self.trigonometric_c1) as f64 / e as f64
        }
    }
}

/// Reconstruction kernel for one grid spacing.
#[derive(Debug, Clone, Copy)]
pub struct WenoKernel<T> {
    pub scheme: Scheme,
    theta: T,
    dx: T,
    eps_h: T,
    eps_base: T,
    thresholds: TensionThresholds<T>,
}

impl<T: Real> WenoKernel<T> {
    pub fn new(params: &WeightParams, dx: T) -> Self {
        WenoKernel {
            scheme: params.scheme,
            theta: lit(params.theta),
            dx,
            eps_h: params.eps.map_or_else(|| dx.powf(lit(params.gamma_exp)), lit),
            eps_base: lit(params.eps.unwrap_or(BASELINE_EPS)),
            thresholds: TensionThresholds {
                eps_zero: lit(params.eps_zero),
                s2_max: lit(params.s2_max),
            },
        }
    }

    pub fn with_thresholds(mut self, thresholds: TensionThresholds<T>) -> Self {
        self.thresholds = thresholds;
        self
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    /// Interface coefficients chosen for this window (polynomial for the
    /// baseline schemes).
    pub fn coefficients(&self, w: &StencilWindow<T>, stats: &mut BranchStats) -> InterfaceCoeffs<T> {
        if self.scheme != Scheme::H {
            return InterfaceCoeffs::classical();
        }
        let dec = select_tension(&primitive_differences(w), self.dx, &self.thresholds);
        let coeffs = ExpBasis::new(dec.kind, dec.s2, dec.c2_weight)
            .and_then(|b| interface_coeffs(&b))
            .ok()
            .filter(|c| c.c.iter().all(|v| v.is_finite()));
        match coeffs {
            Some(c) => {
                stats.record(dec.kind);
                if c.d_substituted {
                    stats.d_substituted += 1;
                }
                c
            }
            None => {
                stats.fallback += 1;
                stats.record(BasisKind::Polynomial);
                InterfaceCoeffs::classical()
            }
        }
    }

    /// Flux at `x_{j+1/2}` from the upwind-ordered window.
    #[inline]
    pub fn reconstruct(&self, w: &StencilWindow<T>, stats: &mut BranchStats) -> T {
        let core = [w[0], w[1], w[2], w[3], w[4]];
        let local = [
            local_flux(&[core[0], core[1], core[2]], 0),
            local_flux(&[core[1], core[2], core[3]], 1),
            local_flux(&[core[2], core[3], core[4]], 2),
        ];
        let coeffs = self.coefficients(w, stats);
        let omega = match self.scheme {
            Scheme::H => weights_h(&beta_l1(&core, self.theta), tau5(&core), &coeffs.d, self.eps_h),
            Scheme::Js => weights_js(&beta_js(&core), &coeffs.d, self.eps_base),
            Scheme::M => weights_m(&beta_js(&core), &coeffs.d, self.eps_base),
            Scheme::Z => weights_z(&beta_js(&core), &coeffs.d, self.eps_base),
        };
        omega.combine(&local)
    }

    /// Flux for the negatively split part: the same reconstruction on the
    /// window reversed about the interface.
    #[inline]
    pub fn reconstruct_negative(&self, w: &StencilWindow<T>, stats: &mut BranchStats) -> T {
        let mut r = *w;
        r.reverse();
        self.reconstruct(&r, stats)
    }
}

/// One-shot reconstruction without counters.
pub fn reconstruct_interface<T: Real>(w: &StencilWindow<T>, params: &WeightParams, dx: T) -> T {
    WenoKernel::new(params, dx).reconstruct(w, &mut BranchStats::default())
}

pub fn reconstruct_negative<T: Real>(w: &StencilWindow<T>, params: &WeightParams, dx: T) -> T {
    WenoKernel::new(params, dx).reconstruct_negative(w, &mut BranchStats::default())
}
