//! Spectral toolkit for photon localization on periodic 3D grids.
//!
//! The crate provides divergence-free complex vector fields with unitary
//! FFT transforms, the helicity operator and its projectors as Fourier
//! multipliers, Riesz-kernel smoothing, exact Maxwell time evolution in the
//! Riemann-Silberstein representation, one-photon localization footprints
//! and number densities, diffuse square-root-exponential states, radial
//! tail measurement and fitting, and an independent singular-integral
//! quadrature layer used as oracles throughout the test suite.

pub mod bump;
pub mod coherent;
pub mod constants;
pub mod demos;
pub mod diffuse;
pub mod error;
mod fft;
pub mod field;
pub mod footprint;
pub mod grid;
pub mod helicity;
pub mod io;
pub mod maxwell;
pub mod moments;
pub mod profile;
pub mod quadrature;
pub mod wavefunction;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use field::{random_real_transverse_field, random_transverse_field, ComplexField3, Direction, Domain};
pub use grid::{Grid, RegionSpec};
