//! Pseudospectral laboratory for the massless Dirac operator
//! `H = alpha . D + Q(x)` on a periodic cube standing in for R^3.
//!
//! The crate provides, bottom to top:
//!
//! * [`algebra`] -- exact Pauli/Dirac matrix algebra and spinor-pointwise
//!   operations;
//! * [`fields`] -- discretized spinor/scalar fields, the unitary Fourier
//!   transform contract, weighted norms and the `DZM1` field file format;
//! * [`spectral`] -- Fourier-multiplier realizations of the free operator
//!   `H0`, the singular integral operator `A`, the Riesz potential `I1`,
//!   and the resolvents `Gamma0(z)`, `R0(z)` on the boundary set of the
//!   spectral plane;
//! * [`kernels`] -- the same operators as closed-form integral kernels,
//!   off-grid quadrature, Hilbert-Schmidt norms, and the weight-integral
//!   table used by the decay bootstrap;
//! * [`zeromode`] -- zero-mode fixtures (Loss-Yau), residual and fixed-point
//!   diagnostics, decay-rate fits, the bootstrap exponent trace, resonance
//!   exclusion checks, and a Birman-Schwinger style coupling solver;
//! * [`lab`] -- reproducible experiment drivers with JSON/CSV reports,
//!   consumed by the `dzm` command-line tool.

pub mod algebra;
pub mod error;
pub mod fields;
pub mod kernels;
pub mod lab;
pub mod linalg;
pub mod quad;
pub mod spectral;
pub mod zeromode;

pub use error::DzmError;

/// Crate-wide complex scalar.
pub type C64 = num_complex::Complex64;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, DzmError>;
