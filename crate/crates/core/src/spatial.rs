//! Semi-discrete operator `dq/dt = -(dF/dx + dG/dy) + S`.

use rayon::prelude::*;

use crate::error::{Result, SolverError};
use crate::flux::{field_speeds, oriented, oriented_flux, roe_average, Direction, EigenSystem, FluxModel, State, MAX_COMP};
use crate::grid::{FieldArray, UniformGrid};
use crate::reconstruction::{BranchStats, WenoKernel};
use crate::scalar::{lit, Real};
use crate::weights::WeightParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialOperator<T> {
    pub model: FluxModel<T>,
    pub params: WeightParams,
    /// Reconstruct Euler fluxes in characteristic fields (default) rather
    /// than component by component.
    pub characteristic: bool,
}

/// One line of cells along the sweep direction, already oriented.
struct Pencil<T> {
    q: Vec<State<T>>,
    /// Storage coordinates of the first cell and the step between cells.
    origin: (usize, usize),
    dir: Direction,
}

impl<T> Pencil<T> {
    fn cell(&self, i: usize) -> (usize, usize) {
        match self.dir {
            Direction::X => (self.origin.0 + i, self.origin.1),
            Direction::Y => (self.origin.0, self.origin.1 + i),
        }
    }
}

impl<T: Real> SpatialOperator<T> {
    pub fn new(model: FluxModel<T>, params: WeightParams) -> Self {
        SpatialOperator {
            model,
            params,
            characteristic: true,
        }
    }

    /// Evaluates the tendency into the interior of `rhs` (ghosts of `rhs`
    /// are zeroed). `q` must have its ghosts filled.
    pub fn evaluate(&self, q: &FieldArray<T>, grid: &UniformGrid<T>, rhs: &mut FieldArray<T>) -> Result<BranchStats> {
        let nc = self.model.ncomp();
        if q.ncomp() != nc || !q.matches(grid) || !rhs.matches(grid) || rhs.ncomp() != nc {
            return Err(SolverError::InvalidArgument("field shape does not match grid and model".into()));
        }
        rhs.as_mut_slice().iter_mut().for_each(|v| *v = T::zero());
        let mut stats = BranchStats::default();
        stats.merge(&self.sweep(q, grid, Direction::X, rhs)?);
        if grid.y.is_some() {
            stats.merge(&self.sweep(q, grid, Direction::Y, rhs)?);
        }
        if self.model.gravity() {
            for iy in grid.y_interior() {
                for ix in grid.x_interior() {
                    let c = q.cell(ix, iy);
                    let (rho, rv) = (c[0], c[2]);
                    let r = rhs.cell_mut(ix, iy);
                    r[2] += rho;
                    r[3] += rv;
                }
            }
        }
        Ok(stats)
    }

    fn pencils(&self, q: &FieldArray<T>, grid: &UniformGrid<T>, dir: Direction) -> Vec<Pencil<T>> {
        match dir {
            Direction::X => grid
                .y_interior()
                .map(|iy| Pencil {
                    q: (0..grid.nx_total()).map(|ix| oriented(q.cell(ix, iy), dir)).collect(),
                    origin: (0, iy),
                    dir,
                })
                .collect(),
            Direction::Y => grid
                .x_interior()
                .map(|ix| Pencil {
                    q: (0..grid.ny_total()).map(|iy| oriented(q.cell(ix, iy), dir)).collect(),
                    origin: (ix, 0),
                    dir,
                })
                .collect(),
        }
    }

    /// Global splitting speed per characteristic field (or one common
    /// speed for component-wise reconstruction).
    fn split_speeds(&self, pencils: &[Pencil<T>]) -> Result<State<T>> {
        let nc = self.model.ncomp();
        let per: Vec<Result<State<T>>> = pencils
            .par_iter()
            .map(|p| {
                let mut a = [T::zero(); MAX_COMP];
                for (i, s) in p.q.iter().enumerate() {
                    if let Err((rho, pr)) = oriented_flux(s, &self.model) {
                        return Err(non_physical(p.cell(i), rho, pr));
                    }
                    let sp = field_speeds(s, &self.model);
                    for k in 0..nc {
                        a[k] = a[k].max(sp[k].abs());
                    }
                }
                Ok(a)
            })
            .collect();
        let mut alpha = [T::zero(); MAX_COMP];
        for a in per {
            let a = a?;
            for k in 0..nc {
                alpha[k] = alpha[k].max(a[k]);
            }
        }
        if !self.characteristic || !self.model.is_system() {
            let m = alpha[..nc].iter().fold(T::zero(), |m, v| m.max(*v));
            alpha = [m; MAX_COMP];
        }
        Ok(alpha)
    }

    fn sweep(&self, q: &FieldArray<T>, grid: &UniformGrid<T>, dir: Direction, rhs: &mut FieldArray<T>) -> Result<BranchStats> {
        let (axis, n) = match dir {
            Direction::X => (grid.x, grid.x.n),
            Direction::Y => {
                let a = grid.y.expect("y sweep on 2D grid");
                (a, a.n)
            }
        };
        let g = grid.ghost;
        let pencils = self.pencils(q, grid, dir);
        let alpha = self.split_speeds(&pencils)?;
        let kernel = WenoKernel::new(&self.params, axis.dx);
        let inv_dx = T::one() / axis.dx;
        let results: Vec<(Vec<State<T>>, BranchStats)> = pencils
            .par_iter()
            .map(|p| self.pencil_tendency(p, &kernel, &alpha, g, n, inv_dx))
            .collect();
        let nc = self.model.ncomp();
        let mut stats = BranchStats::default();
        for (p, (tend, st)) in pencils.iter().zip(results) {
            stats.merge(&st);
            for (i, t) in tend.iter().enumerate() {
                let (ix, iy) = p.cell(g + i);
                let t = oriented(&t[..nc], dir);
                let r = rhs.cell_mut(ix, iy);
                for k in 0..nc {
                    r[k] += t[k];
                }
            }
        }
        Ok(stats)
    }

    fn pencil_tendency(
        &self,
        p: &Pencil<T>,
        kernel: &WenoKernel<T>,
        alpha: &State<T>,
        g: usize,
        n: usize,
        inv_dx: T,
    ) -> (Vec<State<T>>, BranchStats) {
        let nc = self.model.ncomp();
        let half = lit::<T>(0.5);
        let mut stats = BranchStats::default();
        // physicality was checked while computing the splitting speeds
        let f: Vec<State<T>> = p
            .q
            .iter()
            .map(|s| oriented_flux(s, &self.model).unwrap_or([T::nan(); MAX_COMP]))
            .collect();
        let gamma = self.model.gamma();
        let mut h = vec![[T::zero(); MAX_COMP]; n + 1];
        for (m, hm) in h.iter_mut().enumerate() {
            let i = g - 1 + m;
            let es = match (self.characteristic, gamma) {
                (true, Some(gm)) => roe_average(&p.q[i], &p.q[i + 1], nc, gm).map(|a| EigenSystem::new(&a, nc, gm)),
                _ => None,
            };
            let mut fp = [[T::zero(); 6]; MAX_COMP];
            let mut fm = [[T::zero(); 6]; MAX_COMP];
            let common = alpha[..nc].iter().fold(T::zero(), |a, v| a.max(*v));
            for s in 0..6 {
                let c = i + s - 2;
                let (v, w) = match &es {
                    Some(e) => (e.project(&p.q[c]), e.project(&f[c])),
                    None => (p.q[c], f[c]),
                };
                for k in 0..nc {
                    let a = if es.is_some() { alpha[k] } else { common };
                    fp[k][s] = half * (w[k] + a * v[k]);
                    fm[k][s] = half * (w[k] - a * v[k]);
                }
            }
            let mut hk = [T::zero(); MAX_COMP];
            for k in 0..nc {
                hk[k] = kernel.reconstruct(&fp[k], &mut stats) + kernel.reconstruct_negative(&fm[k], &mut stats);
            }
            *hm = match &es {
                Some(e) => e.reconstruct(&hk),
                None => hk,
            };
        }
        let tend = (0..n)
            .map(|i| {
                let mut t = [T::zero(); MAX_COMP];
                for k in 0..nc {
                    t[k] = -(h[i + 1][k] - h[i][k]) * inv_dx;
                }
                t
            })
            .collect();
        (tend, stats)
    }
}

fn non_physical<T: Real>(cell: (usize, usize), rho: T, p: T) -> SolverError {
    SolverError::NonPhysical {
        cell,
        rho: rho.to_f64().unwrap_or(f64::NAN),
        p: p.to_f64().unwrap_or(f64::NAN),
    }
}
