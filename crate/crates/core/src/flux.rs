//! Flux models, Lax-Friedrichs splitting and characteristic decomposition.
//!
//! Euler states are conserved vectors `(rho, rho u, E)` in 1D and
//! `(rho, rho u, rho v, E)` in 2D. Fluxes along `y` are evaluated by
//! swapping the two momentum components and reusing the `x` formulas.

use crate::error::SolverError;
use crate::scalar::{lit, Real};

/// Largest number of conserved components of any model.
pub const MAX_COMP: usize = 4;

pub type State<T> = [T; MAX_COMP];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxModel<T> {
    Advection { speed: T },
    Euler1D { gamma: T },
    Euler2D { gamma: T, gravity: bool },
}

impl<T: Real> FluxModel<T> {
    pub fn ncomp(&self) -> usize {
        match self {
            FluxModel::Advection { .. } => 1,
            FluxModel::Euler1D { .. } => 3,
            FluxModel::Euler2D { .. } => 4,
        }
    }

    pub fn gamma(&self) -> Option<T> {
        match *self {
            FluxModel::Advection { .. } => None,
            FluxModel::Euler1D { gamma } | FluxModel::Euler2D { gamma, .. } => Some(gamma),
        }
    }

    pub fn is_system(&self) -> bool {
        self.ncomp() > 1
    }

    pub fn gravity(&self) -> bool {
        matches!(self, FluxModel::Euler2D { gravity: true, .. })
    }
}

/// Primitive variables `(rho, u, v, p)`; `v = 0` in 1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive<T> {
    pub rho: T,
    pub u: T,
    pub v: T,
    pub p: T,
}

impl<T: Real> Primitive<T> {
    pub fn new(rho: T, u: T, v: T, p: T) -> Self {
        Primitive { rho, u, v, p }
    }

    pub fn sound_speed(&self, gamma: T) -> T {
        (gamma * self.p / self.rho).sqrt()
    }

    /// Conserved vector for `ncomp` = 3 (1D) or 4 (2D).
    pub fn to_conserved(&self, gamma: T, ncomp: usize) -> State<T> {
        let half = lit::<T>(0.5);
        let e = self.p / (gamma - T::one()) + half * self.rho * (self.u * self.u + self.v * self.v);
        if ncomp == 3 {
            [self.rho, self.rho * self.u, e, T::zero()]
        } else {
            [self.rho, self.rho * self.u, self.rho * self.v, e]
        }
    }

    pub fn from_conserved(q: &[T], gamma: T) -> Self {
        let half = lit::<T>(0.5);
        let rho = q[0];
        let u = q[1] / rho;
        let (v, e) = if q.len() >= 4 { (q[2] / rho, q[3]) } else { (T::zero(), q[2]) };
        let p = (gamma - T::one()) * (e - half * rho * (u * u + v * v));
        Primitive { rho, u, v, p }
    }

    pub fn is_physical(&self) -> bool {
        self.rho > T::zero() && self.p > T::zero() && self.rho.is_finite() && self.p.is_finite()
    }
}

/// Copies `q` into a state with momentum components ordered normal first.
#[inline]
pub fn oriented<T: Real>(q: &[T], dir: Direction) -> State<T> {
    let mut s = [T::zero(); MAX_COMP];
    s[..q.len()].copy_from_slice(q);
    if dir == Direction::Y && q.len() == 4 {
        s.swap(1, 2);
    }
    s
}

/// Physical flux of an oriented state along its first momentum component.
#[inline]
pub fn oriented_flux<T: Real>(q: &State<T>, model: &FluxModel<T>) -> Result<State<T>, (T, T)> {
    match *model {
        FluxModel::Advection { speed } => Ok([speed * q[0], T::zero(), T::zero(), T::zero()]),
        FluxModel::Euler1D { gamma } => {
            let w = Primitive::from_conserved(&q[..3], gamma);
            if !w.is_physical() {
                return Err((w.rho, w.p));
            }
            Ok([q[1], q[1] * w.u + w.p, w.u * (q[2] + w.p), T::zero()])
        }
        FluxModel::Euler2D { gamma, .. } => {
            let w = Primitive::from_conserved(&q[..4], gamma);
            if !w.is_physical() {
                return Err((w.rho, w.p));
            }
            Ok([q[1], q[1] * w.u + w.p, q[2] * w.u, w.u * (q[3] + w.p)])
        }
    }
}

/// `F(q)` or `G(q)` in the component order of `q`.
pub fn physical_flux<T: Real>(q: &[T], model: &FluxModel<T>, dir: Direction) -> Result<Vec<T>, SolverError> {
    if q.len() != model.ncomp() {
        return Err(SolverError::InvalidArgument(format!(
            "state has {} components, model expects {}",
            q.len(),
            model.ncomp()
        )));
    }
    let f = oriented_flux(&oriented(q, dir), model).map_err(|(rho, p)| SolverError::NonPhysical {
        cell: (0, 0),
        rho: rho.to_f64().unwrap_or(f64::NAN),
        p: p.to_f64().unwrap_or(f64::NAN),
    })?;
    Ok(oriented(&f[..q.len()], dir)[..q.len()].to_vec())
}

/// `f+- = (f +- alpha q) / 2`.
pub fn lf_split<T: Real>(f: &[T], q: &[T], alpha: T) -> Result<(Vec<T>, Vec<T>), SolverError> {
    if !(alpha > T::zero()) {
        return Err(SolverError::InvalidArgument("splitting speed must be positive".into()));
    }
    if f.len() != q.len() {
        return Err(SolverError::InvalidArgument("flux and state lengths differ".into()));
    }
    let half = lit::<T>(0.5);
    let plus = f.iter().zip(q).map(|(&f, &q)| half * (f + alpha * q)).collect();
    let minus = f.iter().zip(q).map(|(&f, &q)| half * (f - alpha * q)).collect();
    Ok((plus, minus))
}

/// Characteristic speeds of an oriented state in field order
/// `(u-c, u, [u,] u+c)`; advection has the single speed.
#[inline]
pub fn field_speeds<T: Real>(q: &State<T>, model: &FluxModel<T>) -> State<T> {
    match *model {
        FluxModel::Advection { speed } => [speed, T::zero(), T::zero(), T::zero()],
        FluxModel::Euler1D { gamma } => {
            let w = Primitive::from_conserved(&q[..3], gamma);
            let c = w.sound_speed(gamma);
            [w.u - c, w.u, w.u + c, T::zero()]
        }
        FluxModel::Euler2D { gamma, .. } => {
            let w = Primitive::from_conserved(&q[..4], gamma);
            let c = w.sound_speed(gamma);
            [w.u - c, w.u, w.u, w.u + c]
        }
    }
}

/// `max |f'(q)|` over the given states along `dir`.
pub fn max_wavespeed<T: Real>(states: &[&[T]], model: &FluxModel<T>, dir: Direction) -> T {
    states.iter().fold(T::zero(), |m, q| {
        let s = field_speeds(&oriented(q, dir), model);
        s[..model.ncomp()].iter().fold(m, |m, v| m.max(v.abs()))
    })
}

/// Roe-averaged quantities in an oriented frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeState<T> {
    pub u: T,
    pub v: T,
    /// Total specific enthalpy.
    pub h: T,
    pub c: T,
}

#[inline]
fn enthalpy<T: Real>(q: &State<T>, ncomp: usize, gamma: T) -> (Primitive<T>, T) {
    let w = Primitive::from_conserved(&q[..ncomp], gamma);
    let e = q[ncomp - 1];
    (w, (e + w.p) / w.rho)
}

/// Roe average of two oriented Euler states; falls back to the arithmetic
/// mean of `u, v, H` when the Roe sound speed is not real. `None` if both
/// fail.
pub fn roe_average<T: Real>(ql: &State<T>, qr: &State<T>, ncomp: usize, gamma: T) -> Option<RoeState<T>> {
    let half = lit::<T>(0.5);
    let (wl, hl) = enthalpy(ql, ncomp, gamma);
    let (wr, hr) = enthalpy(qr, ncomp, gamma);
    let build = |u: T, v: T, h: T| {
        let c2 = (gamma - T::one()) * (h - half * (u * u + v * v));
        if c2 > T::zero() && c2.is_finite() {
            Some(RoeState { u, v, h, c: c2.sqrt() })
        } else {
            None
        }
    };
    if wl.rho > T::zero() && wr.rho > T::zero() {
        let (sl, sr) = (wl.rho.sqrt(), wr.rho.sqrt());
        let inv = T::one() / (sl + sr);
        if let Some(r) = build(
            (sl * wl.u + sr * wr.u) * inv,
            (sl * wl.v + sr * wr.v) * inv,
            (sl * hl + sr * hr) * inv,
        ) {
            return Some(r);
        }
    }
    build(half * (wl.u + wr.u), half * (wl.v + wr.v), half * (hl + hr))
}

/// Left and right eigenvectors of the oriented flux Jacobian, stored so
/// that `left[k]` is the k-th row of `L` and `right[k]` the k-th column of
/// `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem<T> {
    pub ncomp: usize,
    pub left: [[T; MAX_COMP]; MAX_COMP],
    pub right: [[T; MAX_COMP]; MAX_COMP],
    pub speeds: State<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn new(avg: &RoeState<T>, ncomp: usize, gamma: T) -> Self {
        let z = T::zero();
        let one = T::one();
        let half = lit::<T>(0.5);
        let RoeState { u, v, h, c } = *avg;
        let q2 = half * (u * u + v * v);
        let b1 = (gamma - one) / (c * c);
        let b2 = b1 * q2;
        let ic = one / c;
        let mut left = [[z; MAX_COMP]; MAX_COMP];
        let mut right = [[z; MAX_COMP]; MAX_COMP];
        if ncomp == 3 {
            right[0] = [one, u - c, h - u * c, z];
            right[1] = [one, u, q2, z];
            right[2] = [one, u + c, h + u * c, z];
            left[0] = [half * (b2 + u * ic), -half * (b1 * u + ic), half * b1, z];
            left[1] = [one - b2, b1 * u, -b1, z];
            left[2] = [half * (b2 - u * ic), -half * (b1 * u - ic), half * b1, z];
            EigenSystem {
                ncomp,
                left,
                right,
                speeds: [u - c, u, u + c, z],
            }
        } else {
            right[0] = [one, u - c, v, h - u * c];
            right[1] = [one, u, v, q2];
            right[2] = [z, z, one, v];
            right[3] = [one, u + c, v, h + u * c];
            left[0] = [half * (b2 + u * ic), -half * (b1 * u + ic), -half * b1 * v, half * b1];
            left[1] = [one - b2, b1 * u, b1 * v, -b1];
            left[2] = [-v, z, one, z];
            left[3] = [half * (b2 - u * ic), -half * (b1 * u - ic), -half * b1 * v, half * b1];
            EigenSystem {
                ncomp,
                left,
                right,
                speeds: [u - c, u, u, u + c],
            }
        }
    }

    /// `L v`.
    #[inline]
    pub fn project(&self, v: &State<T>) -> State<T> {
        let mut out = [T::zero(); MAX_COMP];
        for (k, o) in out.iter_mut().enumerate().take(self.ncomp) {
            let row = &self.left[k];
            let mut s = T::zero();
            for m in 0..self.ncomp {
                s += row[m] * v[m];
            }
            *o = s;
        }
        out
    }

    /// `R w`.
    #[inline]
    pub fn reconstruct(&self, w: &State<T>) -> State<T> {
        let mut out = [T::zero(); MAX_COMP];
        for k in 0..self.ncomp {
            let col = &self.right[k];
            for m in 0..self.ncomp {
                out[m] += col[m] * w[k];
            }
        }
        out
    }
}

/// Roe-averaged eigensystem in the component order of the inputs.
pub fn eigensystem<T: Real>(
    ql: &[T],
    qr: &[T],
    model: &FluxModel<T>,
    dir: Direction,
) -> Option<EigenSystem<T>> {
    let gamma = model.gamma()?;
    let n = model.ncomp();
    let (l, r) = (oriented(ql, dir), oriented(qr, dir));
    roe_average(&l, &r, n, gamma).map(|avg| EigenSystem::new(&avg, n, gamma))
}
