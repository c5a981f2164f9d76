//! Radial (spherical) Fourier calculus on the Heisenberg group H^n and the
//! band-limited dispersive kernels built on top of it.
//!
//! The library provides:
//!
//! * overflow-safe Laguerre function evaluation ([`special`]),
//! * the spherical Fourier transform for radial functions, its inverse and
//!   the spectral-multiplier calculus of the sub-Laplacian ([`spherical`]),
//! * dyadic Littlewood-Paley kernels, projectors and discrete Besov norms
//!   ([`lp`]),
//! * evaluation of `e^{it phi(L)} phi_j` with oscillatory quadrature,
//!   sup-norm search and decay-exponent regression ([`evolve`], [`fitting`]),
//! * high-accuracy 1-D oscillatory integrals, critical-point solving and
//!   stationary-phase asymptotics ([`sharpness`]),
//! * an experiment harness with CSV/JSON/SVG output ([`config`], [`report`]).

pub mod config;
pub mod evolve;
pub mod fitting;
pub mod group;
pub mod harness;
pub mod lp;
pub mod oscillatory;
pub mod phase;
pub mod quad;
pub mod report;
pub mod sharpness;
pub mod special;
pub mod spherical;
pub mod window;

mod error;

pub use error::{Error, Result};
pub use group::GroupParams;
