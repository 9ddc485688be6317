//! Exact solution of the one-dimensional Riemann problem for an ideal gas.

use crate::error::{Result, SolverError};

/// Primitive 1D state `(rho, u, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prim1 {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl Prim1 {
    pub const fn new(rho: f64, u: f64, p: f64) -> Self {
        Prim1 { rho, u, p }
    }

    fn c(&self, g: f64) -> f64 {
        (g * self.p / self.rho).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: Prim1,
    pub right: Prim1,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
}

/// Pressure function `f_K(p)` and its derivative.
fn pressure_fn(p: f64, k: &Prim1, g: f64) -> (f64, f64) {
    if p > k.p {
        let a = 2.0 / ((g + 1.0) * k.rho);
        let b = (g - 1.0) / (g + 1.0) * k.p;
        let q = (a / (p + b)).sqrt();
        (
            (p - k.p) * q,
            q * (1.0 - 0.5 * (p - k.p) / (b + p)),
        )
    } else {
        let c = k.c(g);
        let r = p / k.p;
        (
            2.0 * c / (g - 1.0) * (r.powf((g - 1.0) / (2.0 * g)) - 1.0),
            r.powf(-(g + 1.0) / (2.0 * g)) / (k.rho * c),
        )
    }
}

/// Solves for the star region; Newton on `p*` kept inside a bisection
/// bracket.
pub fn solve(left: Prim1, right: Prim1, gamma: f64) -> Result<RiemannSolution> {
    let g = gamma;
    for s in [left, right] {
        if !(s.rho > 0.0 && s.p > 0.0 && s.rho.is_finite() && s.p.is_finite() && s.u.is_finite()) {
            return Err(SolverError::InvalidArgument(format!("non-physical Riemann state {s:?}")));
        }
    }
    if !(g > 1.0) {
        return Err(SolverError::InvalidArgument(format!("gamma must exceed 1, got {g}")));
    }
    let (cl, cr) = (left.c(g), right.c(g));
    let du = right.u - left.u;
    if 2.0 * (cl + cr) / (g - 1.0) <= du {
        return Err(SolverError::Vacuum);
    }
    let resid = |p: f64| {
        let (fl, dl) = pressure_fn(p, &left, g);
        let (fr, dr) = pressure_fn(p, &right, g);
        (fl + fr + du, dl + dr)
    };
    // bracket: residual is increasing in p and negative as p -> 0
    let mut lo = 0.0;
    let mut hi = left.p.max(right.p).max(1e-300);
    while resid(hi).0 < 0.0 {
        hi *= 2.0;
    }
    let pv = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (cl + cr);
    let mut p = pv.clamp(1e-8 * hi, hi);
    for _ in 0..200 {
        let (r, d) = resid(p);
        if r == 0.0 {
            break;
        }
        if r < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let mut next = p - r / d;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - p).abs() <= 1e-15 * p;
        p = next;
        if done {
            break;
        }
    }
    let (fl, _) = pressure_fn(p, &left, g);
    let (fr, _) = pressure_fn(p, &right, g);
    Ok(RiemannSolution {
        left,
        right,
        gamma,
        p_star: p,
        u_star: 0.5 * (left.u + right.u) + 0.5 * (fr - fl),
    })
}

impl RiemannSolution {
    /// Residual of the star-pressure equation at the returned `p*`.
    pub fn residual(&self) -> f64 {
        let (fl, _) = pressure_fn(self.p_star, &self.left, self.gamma);
        let (fr, _) = pressure_fn(self.p_star, &self.right, self.gamma);
        fl + fr + self.right.u - self.left.u
    }

    /// Density on either side of the contact.
    pub fn star_densities(&self) -> (f64, f64) {
        (self.star_rho(&self.left), self.star_rho(&self.right))
    }

    fn star_rho(&self, k: &Prim1) -> f64 {
        let g = self.gamma;
        let r = self.p_star / k.p;
        if self.p_star > k.p {
            let m = (g - 1.0) / (g + 1.0);
            k.rho * (r + m) / (m * r + 1.0)
        } else {
            k.rho * r.powf(1.0 / g)
        }
    }

    /// Speed of the left (`-1`) or right (`+1`) shock, if that wave is a
    /// shock.
    pub fn shock_speed(&self, side: i8) -> Option<f64> {
        let g = self.gamma;
        let (k, sgn) = if side < 0 { (&self.left, -1.0) } else { (&self.right, 1.0) };
        (self.p_star > k.p).then(|| {
            k.u + sgn * k.c(g) * ((g + 1.0) / (2.0 * g) * self.p_star / k.p + (g - 1.0) / (2.0 * g)).sqrt()
        })
    }

    /// Self-similar solution at `xi = (x - x0) / t`.
    pub fn sample(&self, xi: f64) -> Prim1 {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        if xi <= us {
            let k = &self.left;
            let c = k.c(g);
            if ps > k.p {
                if xi <= self.shock_speed(-1).unwrap() {
                    *k
                } else {
                    Prim1::new(self.star_rho(k), us, ps)
                }
            } else {
                let head = k.u - c;
                let cs = c * (ps / k.p).powf((g - 1.0) / (2.0 * g));
                let tail = us - cs;
                if xi <= head {
                    *k
                } else if xi >= tail {
                    Prim1::new(self.star_rho(k), us, ps)
                } else {
                    let f = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (k.u - xi);
                    Prim1::new(
                        k.rho * f.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * k.u + xi),
                        k.p * f.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        } else {
            let k = &self.right;
            let c = k.c(g);
            if ps > k.p {
                if xi >= self.shock_speed(1).unwrap() {
                    *k
                } else {
                    Prim1::new(self.star_rho(k), us, ps)
                }
            } else {
                let head = k.u + c;
                let cs = c * (ps / k.p).powf((g - 1.0) / (2.0 * g));
                let tail = us + cs;
                if xi >= head {
                    *k
                } else if xi <= tail {
                    Prim1::new(self.star_rho(k), us, ps)
                } else {
                    let f = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (k.u - xi);
                    Prim1::new(
                        k.rho * f.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (-c + (g - 1.0) / 2.0 * k.u + xi),
                        k.p * f.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        }
    }

    /// Largest density anywhere in the solution.
    pub fn max_density(&self) -> f64 {
        let (a, b) = self.star_densities();
        self.left.rho.max(self.right.rho).max(a).max(b)
    }
}

/// Exact state at `x` and time `t` for a discontinuity initially at `x0`.
pub fn exact_riemann(left: Prim1, right: Prim1, gamma: f64, x: f64, x0: f64, t: f64) -> Result<Prim1> {
    let sol = solve(left, right, gamma)?;
    Ok(if t > 0.0 {
        sol.sample((x - x0) / t)
    } else if x < x0 {
        left
    } else {
        right
    })
}
