//! Spectrally accurate corrected trapezoidal rules for weakly singular
//! radial kernels (`log r`, `r^-nu`) on uniform grids, fast FFT convolution
//! with the resulting regularized kernels, and two scattering solvers built
//! on top of them: a 2-D Lippmann-Schwinger volume solver and a Nystrom
//! combined-field boundary integral solver on smooth closed curves.
//!
//! The crate is organized by pipeline stage:
//!
//! - [`specfun`]: the special functions behind the exact Fourier
//!   coefficients of truncated singularities.
//! - [`singularity`]: those coefficients themselves, on anisotropic grids.
//! - [`quadrature`]: cut-off, regularized kernel, correction weights and the
//!   frequency-domain kernel spectrum.
//! - [`kernels`]: factorizations `K = alpha phi + beta log + Ktilde` for the
//!   static and Helmholtz kernels in arbitrary dimension, and the boundary
//!   layer kernels.
//! - [`convolve`]: zero-padded FFT convolution and its direct counterpart.
//! - [`solvers`]: GMRES, the Lippmann-Schwinger solver, the combined-field
//!   boundary solver, far-field and exterior evaluation.
//! - [`oracles`]: independent reference computations used by tests and the
//!   convergence suites.
//! - [`suites`]: the reproduction harness behind the CLI.

pub mod convolve;
pub mod dft;
pub mod error;
pub mod grid;
pub mod io;
pub mod kernels;
pub mod oracles;
pub mod quadrature;
pub mod singularity;
pub mod solvers;
pub mod specfun;
pub mod suites;

pub use error::{Error, Result};
pub use grid::GridSpec;
