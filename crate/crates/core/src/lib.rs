//! Finite-difference WENO solvers for hyperbolic conservation laws.
//!
//! The reconstructions are generic over the scalar type (`f32` or `f64`
//! through [`scalar::Real`]); the aliases below fix it to `f64`.

pub mod error;
pub mod exp_basis;
pub mod flux;
pub mod grid;
pub mod harness;
pub mod problems;
pub mod reconstruction;
pub mod riemann;
pub mod scalar;
pub mod spatial;
pub mod tension;
pub mod time;
pub mod weights;

pub use error::{BasisError, GridError, Result, SolverError};
pub use exp_basis::BasisKind;
pub use flux::Direction;
pub use harness::{RunConfig, RunSummary};
pub use problems::{ProblemId, ProblemSpec};
pub use reconstruction::BranchStats;
pub use scalar::Real;
pub use time::{Integrator, TimeStepLaw};
pub use weights::{Scheme, WeightParams};

pub type Grid = grid::UniformGrid<f64>;
pub type Field = grid::FieldArray<f64>;
pub type Boundaries = grid::Boundaries<f64>;
pub type FluxModel = flux::FluxModel<f64>;
pub type Primitive = flux::Primitive<f64>;
pub type ExpBasis = exp_basis::ExpBasis<f64>;
pub type InterfaceCoeffs = exp_basis::InterfaceCoeffs<f64>;
pub type WenoKernel = reconstruction::WenoKernel<f64>;
pub type SpatialOperator = spatial::SpatialOperator<f64>;
pub type Outcome = harness::Outcome<f64>;
