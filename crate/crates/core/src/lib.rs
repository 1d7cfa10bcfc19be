//! Exact computations for filtered and graded Lie algebras attached to
//! CR structures: Freeman sequences, contact filtrations, Tanaka
//! prolongation, Spencer cohomology, deformation rigidity and polynomial
//! vector-field checks on tube hypersurfaces.
//!
//! Everything works over Q(i) with arbitrary-precision rationals; nothing is
//! ever rounded.
#![no_std]

extern crate alloc;

pub mod cralg;
pub mod deform;
pub mod field;
pub mod liealg;
pub mod models;
pub mod poly;
pub mod prolong;
pub mod vfgeom;

pub use field::{Field, Matrix, Scalar, Subspace, Vector};
pub use liealg::LieAlgebra;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("characteristic polynomial does not split: {0}")]
    NotSplit(String),
    #[error("filtration is not bracket-compatible: {0}")]
    Filtration(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("degenerate base point: {0}")]
    DegenerateBasePoint(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
