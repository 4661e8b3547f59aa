//! Exact combinatorics and Lie algebra computations for cohomogeneity-one
//! actions on symmetric spaces of noncompact type.

pub mod catalog;
pub mod chevalley;
pub mod classify;
pub mod cli;
pub mod error;
pub mod hasse;
pub mod linalg;
pub mod nilcon;
pub mod rootsys;
pub mod shapeops;
pub mod verify;

pub use error::{Error, Result};
