//! Uniform Cartesian grids, ghost-padded conserved fields and boundary filling.
//!
//! Storage is row-major with `y` outer and `x` inner; each cell holds
//! `ncomp` contiguous conserved components. Interior cell `i` along an axis
//! lives at storage index `i + ghost`.

use crate::error::GridError;
use crate::scalar::{lit, Real};

/// Minimum ghost width: the reconstruction reads cells `j-2..=j+3` around
/// interface `j+1/2`, and the tension selector one cell further.
pub const MIN_GHOST: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis<T> {
    pub min: T,
    pub max: T,
    pub n: usize,
    pub dx: T,
}

impl<T: Real> Axis<T> {
    fn new(min: T, max: T, n: usize, ghost: usize) -> Result<Self, GridError> {
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(GridError::InvertedBounds {
                min: min.to_f64().unwrap_or(f64::NAN),
                max: max.to_f64().unwrap_or(f64::NAN),
            });
        }
        if n < 2 * ghost {
            return Err(GridError::TooFewCells { n, ghost });
        }
        let dx = (max - min) / T::from_usize(n).unwrap();
        Ok(Axis { min, max, n, dx })
    }

    /// Center of interior cell `i`.
    #[inline]
    pub fn center(&self, i: usize) -> T {
        self.min + (T::from_usize(i).unwrap() + lit(0.5)) * self.dx
    }

    /// Center of the cell at signed offset `i` from the first interior cell
    /// (negative offsets address ghost cells).
    #[inline]
    pub fn center_signed(&self, i: isize) -> T {
        self.min + (T::from_isize(i).unwrap() + lit(0.5)) * self.dx
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid<T> {
    pub x: Axis<T>,
    pub y: Option<Axis<T>>,
    pub ghost: usize,
}

impl<T: Real> UniformGrid<T> {
    pub fn new_1d(bounds: [T; 2], n: usize, ghost: usize) -> Result<Self, GridError> {
        if ghost < MIN_GHOST {
            return Err(GridError::GhostTooNarrow(ghost));
        }
        Ok(UniformGrid {
            x: Axis::new(bounds[0], bounds[1], n, ghost)?,
            y: None,
            ghost,
        })
    }

    pub fn new_2d(
        xb: [T; 2],
        yb: [T; 2],
        nx: usize,
        ny: usize,
        ghost: usize,
    ) -> Result<Self, GridError> {
        if ghost < MIN_GHOST {
            return Err(GridError::GhostTooNarrow(ghost));
        }
        Ok(UniformGrid {
            x: Axis::new(xb[0], xb[1], nx, ghost)?,
            y: Some(Axis::new(yb[0], yb[1], ny, ghost)?),
            ghost,
        })
    }

    pub fn dims(&self) -> usize {
        if self.y.is_some() {
            2
        } else {
            1
        }
    }

    /// Storage extent along x, ghosts included.
    pub fn nx_total(&self) -> usize {
        self.x.n + 2 * self.ghost
    }

    /// Storage extent along y, ghosts included (1 for 1D grids).
    pub fn ny_total(&self) -> usize {
        self.y.map_or(1, |a| a.n + 2 * self.ghost)
    }

    /// Interior y storage range (a single row for 1D grids).
    pub fn y_interior(&self) -> std::ops::Range<usize> {
        match self.y {
            Some(a) => self.ghost..self.ghost + a.n,
            None => 0..1,
        }
    }

    pub fn x_interior(&self) -> std::ops::Range<usize> {
        self.ghost..self.ghost + self.x.n
    }

    pub fn interior_cells(&self) -> usize {
        self.x.n * self.y.map_or(1, |a| a.n)
    }

    /// Physical area (1D: length) of one cell.
    pub fn cell_volume(&self) -> T {
        self.x.dx * self.y.map_or(T::one(), |a| a.dx)
    }

    /// Smallest cell width over all axes.
    pub fn min_spacing(&self) -> T {
        self.y.map_or(self.x.dx, |a| self.x.dx.min(a.dx))
    }
}

/// Builds a 1D grid; see [`UniformGrid::new_1d`].
pub fn build_grid<T: Real>(bounds: [T; 2], n: usize, ghost: usize) -> Result<UniformGrid<T>, GridError> {
    UniformGrid::new_1d(bounds, n, ghost)
}

/// Cell-centered conserved state over interior and ghost cells.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldArray<T> {
    ncomp: usize,
    nx: usize,
    ny: usize,
    data: Vec<T>,
}

impl<T: Real> FieldArray<T> {
    pub fn zeros(grid: &UniformGrid<T>, ncomp: usize) -> Self {
        let (nx, ny) = (grid.nx_total(), grid.ny_total());
        FieldArray {
            ncomp,
            nx,
            ny,
            data: vec![T::zero(); nx * ny * ncomp],
        }
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    /// Storage extents `(nx_total, ny_total)`.
    pub fn extents(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn matches(&self, grid: &UniformGrid<T>) -> bool {
        self.nx == grid.nx_total() && self.ny == grid.ny_total()
    }

    #[inline]
    fn offset(&self, ix: usize, iy: usize) -> usize {
        (iy * self.nx + ix) * self.ncomp
    }

    #[inline]
    pub fn cell(&self, ix: usize, iy: usize) -> &[T] {
        let o = self.offset(ix, iy);
        &self.data[o..o + self.ncomp]
    }

    #[inline]
    pub fn cell_mut(&mut self, ix: usize, iy: usize) -> &mut [T] {
        let o = self.offset(ix, iy);
        let n = self.ncomp;
        &mut self.data[o..o + n]
    }

    /// One full storage row (all x cells at storage row `iy`).
    pub fn row(&self, iy: usize) -> &[T] {
        let w = self.nx * self.ncomp;
        &self.data[iy * w..(iy + 1) * w]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    fn copy_cell(&mut self, from: (usize, usize), to: (usize, usize)) {
        let (a, b) = (self.offset(from.0, from.1), self.offset(to.0, to.1));
        self.data.copy_within(a..a + self.ncomp, b);
    }

    /// Sum of each conserved component over interior cells, times cell volume.
    pub fn interior_totals(&self, grid: &UniformGrid<T>) -> Vec<T> {
        let mut tot = vec![T::zero(); self.ncomp];
        for iy in grid.y_interior() {
            for ix in grid.x_interior() {
                for (t, v) in tot.iter_mut().zip(self.cell(ix, iy)) {
                    *t += *v;
                }
            }
        }
        let vol = grid.cell_volume();
        tot.iter_mut().for_each(|t| *t *= vol);
        tot
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Boundary treatment for one side of the domain.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCondition<T> {
    Periodic,
    /// Zero-gradient copy of the nearest interior cell.
    Outflow,
    /// Mirror image with the normal momentum negated.
    Reflective,
    /// Fixed conserved state in every ghost cell.
    Inflow(Vec<T>),
    /// Top boundary of the double Mach reflection: post-shock state left of
    /// the moving shock front, pre-shock state right of it.
    DoubleMachTop { pre: Vec<T>, post: Vec<T> },
    /// Bottom boundary of the double Mach reflection: post-shock state for
    /// `x <= 1/6`, reflective wall beyond.
    DoubleMachBottom { post: Vec<T> },
}

impl<T: Real> BoundaryCondition<T> {
    /// Parses a state-free boundary kind by name.
    pub fn from_name(name: &str) -> Result<Self, GridError> {
        match name {
            "periodic" => Ok(Self::Periodic),
            "outflow" => Ok(Self::Outflow),
            "reflective" => Ok(Self::Reflective),
            other => Err(GridError::Boundary(format!("unknown boundary kind '{other}'"))),
        }
    }
}

/// Double Mach reflection shock position along `y` at time `t`.
pub fn double_mach_shock_x<T: Real>(y: T, t: T) -> T {
    lit::<T>(1.0 / 6.0) + (y + lit::<T>(20.0) * t) / lit::<T>(3.0).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Boundaries<T> {
    pub x_lo: BoundaryCondition<T>,
    pub x_hi: BoundaryCondition<T>,
    pub y_lo: BoundaryCondition<T>,
    pub y_hi: BoundaryCondition<T>,
}

impl<T: Real> Boundaries<T> {
    pub fn uniform(bc: BoundaryCondition<T>) -> Self {
        Boundaries {
            x_lo: bc.clone(),
            x_hi: bc.clone(),
            y_lo: bc.clone(),
            y_hi: bc,
        }
    }

    pub fn validate(&self, grid: &UniformGrid<T>, ncomp: usize) -> Result<(), GridError> {
        let mut sides = vec![("x_lo", &self.x_lo, 1usize), ("x_hi", &self.x_hi, 1)];
        if grid.y.is_some() {
            sides.push(("y_lo", &self.y_lo, 2));
            sides.push(("y_hi", &self.y_hi, 2));
        }
        let periodic = |b: &BoundaryCondition<T>| matches!(b, BoundaryCondition::Periodic);
        if periodic(&self.x_lo) != periodic(&self.x_hi) {
            return Err(GridError::Boundary("periodic x sides must be paired".into()));
        }
        if grid.y.is_some() && periodic(&self.y_lo) != periodic(&self.y_hi) {
            return Err(GridError::Boundary("periodic y sides must be paired".into()));
        }
        for (name, bc, normal) in sides {
            match bc {
                BoundaryCondition::Reflective | BoundaryCondition::DoubleMachBottom { .. }
                    if ncomp <= normal =>
                {
                    return Err(GridError::Boundary(format!(
                        "{name}: reflective wall needs a momentum component"
                    )));
                }
                BoundaryCondition::Inflow(s) if s.len() != ncomp => {
                    return Err(GridError::Boundary(format!("{name}: inflow state size")));
                }
                BoundaryCondition::DoubleMachTop { pre, post }
                    if pre.len() != ncomp || post.len() != ncomp =>
                {
                    return Err(GridError::Boundary(format!("{name}: shock state size")));
                }
                BoundaryCondition::DoubleMachBottom { post } if post.len() != ncomp => {
                    return Err(GridError::Boundary(format!("{name}: shock state size")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Populates every ghost layer of `field` for time `t`; interior cells are
/// left untouched. X ghosts are filled on interior rows first, then y ghosts
/// over full rows so corners are defined.
pub fn fill_ghosts<T: Real>(
    field: &mut FieldArray<T>,
    grid: &UniformGrid<T>,
    bcs: &Boundaries<T>,
    t: T,
) -> Result<(), GridError> {
    if !field.matches(grid) {
        return Err(GridError::ShapeMismatch);
    }
    bcs.validate(grid, field.ncomp)?;
    let g = grid.ghost;
    let n = grid.x.n;
    for iy in grid.y_interior() {
        fill_x_side(field, &bcs.x_lo, iy, g, n, true);
        fill_x_side(field, &bcs.x_hi, iy, g, n, false);
    }
    if let Some(ya) = grid.y {
        for ix in 0..grid.nx_total() {
            fill_y_side(field, grid, &bcs.y_lo, ix, g, ya.n, true, t);
            fill_y_side(field, grid, &bcs.y_hi, ix, g, ya.n, false, t);
        }
    }
    Ok(())
}

fn fill_x_side<T: Real>(
    f: &mut FieldArray<T>,
    bc: &BoundaryCondition<T>,
    iy: usize,
    g: usize,
    n: usize,
    low: bool,
) {
    for k in 1..=g {
        // ghost storage index and its mirror / wrap / nearest sources
        let (ghost, mirror, wrap, near) = if low {
            (g - k, g + k - 1, g + n - k, g)
        } else {
            (g + n - 1 + k, g + n - k, g + k - 1, g + n - 1)
        };
        match bc {
            BoundaryCondition::Periodic => f.copy_cell((wrap, iy), (ghost, iy)),
            BoundaryCondition::Outflow => f.copy_cell((near, iy), (ghost, iy)),
            BoundaryCondition::Reflective => {
                f.copy_cell((mirror, iy), (ghost, iy));
                let c = f.cell_mut(ghost, iy);
                c[1] = -c[1];
            }
            BoundaryCondition::Inflow(s) => f.cell_mut(ghost, iy).copy_from_slice(s),
            // The shock-tracking variants only make sense on y sides; on x
            // sides they degrade to their far-field states.
            BoundaryCondition::DoubleMachTop { post, .. } | BoundaryCondition::DoubleMachBottom { post } => {
                f.cell_mut(ghost, iy).copy_from_slice(post)
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn fill_y_side<T: Real>(
    f: &mut FieldArray<T>,
    grid: &UniformGrid<T>,
    bc: &BoundaryCondition<T>,
    ix: usize,
    g: usize,
    n: usize,
    low: bool,
    t: T,
) {
    let x = grid.x.center_signed(ix as isize - g as isize);
    for k in 1..=g {
        let (ghost, mirror, wrap, near) = if low {
            (g - k, g + k - 1, g + n - k, g)
        } else {
            (g + n - 1 + k, g + n - k, g + k - 1, g + n - 1)
        };
        let reflect = |f: &mut FieldArray<T>| {
            f.copy_cell((ix, mirror), (ix, ghost));
            let c = f.cell_mut(ix, ghost);
            c[2] = -c[2];
        };
        match bc {
            BoundaryCondition::Periodic => f.copy_cell((ix, wrap), (ix, ghost)),
            BoundaryCondition::Outflow => f.copy_cell((ix, near), (ix, ghost)),
            BoundaryCondition::Reflective => reflect(f),
            BoundaryCondition::Inflow(s) => f.cell_mut(ix, ghost).copy_from_slice(s),
            BoundaryCondition::DoubleMachTop { pre, post } => {
                let ytop = grid.y.map_or(T::one(), |a| a.max);
                let state = if x < double_mach_shock_x(ytop, t) { post } else { pre };
                f.cell_mut(ix, ghost).copy_from_slice(state);
            }
            BoundaryCondition::DoubleMachBottom { post } => {
                if x <= lit(1.0 / 6.0) {
                    f.cell_mut(ix, ghost).copy_from_slice(post);
                } else {
                    reflect(f);
                }
            }
        }
    }
}
