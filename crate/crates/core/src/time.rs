//! Explicit Runge-Kutta steppers and time-step laws.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::flux::{field_speeds, oriented, Direction, FluxModel};
use crate::grid::{FieldArray, UniformGrid};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeStepLaw {
    /// `dt = cfl / sum_d (alpha_d / dx_d)`.
    Cfl(f64),
    /// `dt = dx^exponent`.
    FixedPower(f64),
}

impl TimeStepLaw {
    pub fn convergence() -> Self {
        TimeStepLaw::FixedPower(1.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    Rk3,
    Rk4,
}

/// Signature of a right-hand side: fills the ghosts of the state for time
/// `t` and writes the tendency.
pub trait Rhs<T> {
    fn eval(&mut self, q: &mut FieldArray<T>, t: T, out: &mut FieldArray<T>) -> Result<()>;
}

impl<T, F> Rhs<T> for F
where
    F: FnMut(&mut FieldArray<T>, T, &mut FieldArray<T>) -> Result<()>,
{
    fn eval(&mut self, q: &mut FieldArray<T>, t: T, out: &mut FieldArray<T>) -> Result<()> {
        self(q, t, out)
    }
}

/// Stage buffers reused across steps.
#[derive(Debug, Clone)]
pub struct RkWorkspace<T> {
    stage: FieldArray<T>,
    k: [FieldArray<T>; 4],
}

impl<T: Real> RkWorkspace<T> {
    pub fn new(like: &FieldArray<T>) -> Self {
        RkWorkspace {
            stage: like.clone(),
            k: [like.clone(), like.clone(), like.clone(), like.clone()],
        }
    }
}

fn check_finite<T: Real>(q: &FieldArray<T>, stage: usize, t: T) -> Result<()> {
    if q.all_finite() {
        Ok(())
    } else {
        Err(SolverError::NonFinite {
            stage,
            t: t.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `out = a x + b (y + dt k)`.
fn combine<T: Real>(out: &mut FieldArray<T>, a: T, x: &FieldArray<T>, b: T, y: &FieldArray<T>, dt: T, k: &FieldArray<T>) {
    for (((o, &x), &y), &k) in out.as_mut_slice().iter_mut().zip(x.as_slice()).zip(y.as_slice()).zip(k.as_slice()) {
        *o = a * x + b * (y + dt * k);
    }
}

/// `out = a out + b (y + dt k)`.
fn combine_in_place<T: Real>(out: &mut FieldArray<T>, a: T, b: T, y: &FieldArray<T>, dt: T, k: &FieldArray<T>) {
    for ((o, &y), &k) in out.as_mut_slice().iter_mut().zip(y.as_slice()).zip(k.as_slice()) {
        *o = a * *o + b * (y + dt * k);
    }
}

/// Three-stage strong-stability-preserving Runge-Kutta step.
pub fn tvd_rk3_step<T: Real>(
    u: &mut FieldArray<T>,
    t: T,
    dt: T,
    ws: &mut RkWorkspace<T>,
    rhs: &mut impl Rhs<T>,
) -> Result<()> {
    let z = T::zero();
    let one = T::one();
    let RkWorkspace { stage, k } = ws;
    let [l, u2, _, _] = k;
    rhs.eval(u, t, l)?;
    combine(stage, z, u, one, u, dt, l);
    check_finite(stage, 1, t)?;
    rhs.eval(stage, t + dt, l)?;
    combine(u2, lit(0.75), u, lit(0.25), stage, dt, l);
    check_finite(u2, 2, t)?;
    rhs.eval(u2, t + lit::<T>(0.5) * dt, l)?;
    combine_in_place(u, one / lit(3.0), lit(2.0 / 3.0), u2, dt, l);
    check_finite(u, 3, t)
}

/// Classical four-stage Runge-Kutta step.
pub fn rk4_step<T: Real>(
    u: &mut FieldArray<T>,
    t: T,
    dt: T,
    ws: &mut RkWorkspace<T>,
    rhs: &mut impl Rhs<T>,
) -> Result<()> {
    let z = T::zero();
    let one = T::one();
    let half = lit::<T>(0.5);
    let RkWorkspace { stage, k } = ws;
    let [k1, k2, k3, k4] = k;
    rhs.eval(u, t, k1)?;
    combine(stage, z, u, one, u, half * dt, k1);
    check_finite(stage, 1, t)?;
    rhs.eval(stage, t + half * dt, k2)?;
    combine(stage, z, u, one, u, half * dt, k2);
    check_finite(stage, 2, t)?;
    rhs.eval(stage, t + half * dt, k3)?;
    combine(stage, z, u, one, u, dt, k3);
    check_finite(stage, 3, t)?;
    rhs.eval(stage, t + dt, k4)?;
    let sixth = dt / lit(6.0);
    let two = lit::<T>(2.0);
    for ((((o, &a), &b), &c), &d) in u
        .as_mut_slice()
        .iter_mut()
        .zip(k1.as_slice())
        .zip(k2.as_slice())
        .zip(k3.as_slice())
        .zip(k4.as_slice())
    {
        *o += sixth * (a + two * b + two * c + d);
    }
    check_finite(u, 4, t)
}

pub fn step<T: Real>(
    integrator: Integrator,
    u: &mut FieldArray<T>,
    t: T,
    dt: T,
    ws: &mut RkWorkspace<T>,
    rhs: &mut impl Rhs<T>,
) -> Result<()> {
    match integrator {
        Integrator::Rk3 => tvd_rk3_step(u, t, dt, ws, rhs),
        Integrator::Rk4 => rk4_step(u, t, dt, ws, rhs),
    }
}

/// Largest characteristic speed over interior cells along `dir`.
pub fn interior_wavespeed<T: Real>(q: &FieldArray<T>, grid: &UniformGrid<T>, model: &FluxModel<T>, dir: Direction) -> T {
    let nc = model.ncomp();
    let mut a = T::zero();
    for iy in grid.y_interior() {
        for ix in grid.x_interior() {
            let s = field_speeds(&oriented(q.cell(ix, iy), dir), model);
            for v in &s[..nc] {
                a = a.max(v.abs());
            }
        }
    }
    a
}

/// Step size for the given law, shortened so that `t + dt` never passes
/// `t_final`.
pub fn compute_dt<T: Real>(
    q: &FieldArray<T>,
    grid: &UniformGrid<T>,
    model: &FluxModel<T>,
    law: TimeStepLaw,
    t: T,
    t_final: T,
) -> Result<T> {
    let dt = match law {
        TimeStepLaw::Cfl(cfl) => {
            if !(cfl > 0.0) {
                return Err(SolverError::InvalidArgument(format!("cfl must be positive, got {cfl}")));
            }
            let mut rate = interior_wavespeed(q, grid, model, Direction::X) / grid.x.dx;
            if let Some(ya) = grid.y {
                rate += interior_wavespeed(q, grid, model, Direction::Y) / ya.dx;
            }
            if !(rate > T::zero()) || !rate.is_finite() {
                return Err(SolverError::InvalidArgument("no finite positive wave speed".into()));
            }
            lit::<T>(cfl) / rate
        }
        TimeStepLaw::FixedPower(e) => grid.min_spacing().powf(lit(e)),
    };
    Ok(clip_to_final(dt, t, t_final))
}

/// `dt`, or the remaining time when the step would reach or pass
/// `t_final` (within a relative `1e-12`).
pub fn clip_to_final<T: Real>(dt: T, t: T, t_final: T) -> T {
    let rem = t_final - t;
    if t + dt >= t_final - lit::<T>(1e-12) * t_final.abs().max(T::one()) {
        rem
    } else {
        dt
    }
}
