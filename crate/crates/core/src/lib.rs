//! High-order edge finite elements for the time-harmonic Maxwell equations,
//! with overlapping Schwarz preconditioners and GMRES.

pub mod assembly;
pub mod dofmap;
pub mod elements;
pub mod error;
pub mod experiment;
pub mod geom;
pub mod interpolation;
pub mod krylov;
pub mod mesh;
pub mod physics;
pub mod quadrature;
pub mod schwarz;
pub mod sparse;

pub use error::{Error, Result};
