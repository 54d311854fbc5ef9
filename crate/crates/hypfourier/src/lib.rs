//! Hyperbolic Fourier series toolkit.
//!
//! The crate computes the constructive objects around the biorthogonal
//! system {H_0, H_n, M_n} dual to the hyperbolic trigonometric system
//! 1, e^{i pi n x}, e^{i pi n / x} on the real line, and verifies the
//! identities tying it to theta functions, the elliptic modular function,
//! the even Gauss map, and interpolation for the Klein-Gordon equation
//! u_xy + u = 0 on the characteristics.
//!
//! Subsystems:
//!
//! - [`theta`], [`hypergeom`]: numeric theta/lambda kernels, the
//!   hypergeometric special case F(1/2,1/2;1;.) and the Schwarz map tau.
//! - [`exact`], [`faber`]: exact big-rational power series and the Schwarz
//!   triangle polynomials S_n with their Faber-type recursion.
//! - [`cfrac`]: even-integer continued fractions, the even Gauss map and the
//!   even-rational partition of the half-plane.
//! - [`genfun`]: the generating functions Phi^delta and their analytic
//!   continuation across the partition.
//! - [`biortho`]: contour evaluation of H_0, H_n, M_n, periodization with
//!   certified tails, biorthogonal pairings.
//! - [`hfs`]: hyperbolic Fourier analysis/synthesis and the conjugate series.
//! - [`kleingordon`]: U_phi transforms, interpolating functions R_n,
//!   reconstruction from lattice samples, residual checks.
//! - [`transfer`]: the Perron-Frobenius-Ruelle operator of the even Gauss map.
//!
//! Every runnable capability has a worked example under `examples/`; the
//! thin `hypfourier` binary exposes the same operations as subcommands.

pub mod biortho;
pub mod cfrac;
pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod faber;
pub mod genfun;
pub mod hfs;
pub mod hypergeom;
pub mod kleingordon;
pub mod quad;
pub mod theta;
pub mod transfer;

pub use config::{EvalConfig, QuadConfig};
pub use error::{Error, Result};
pub use theta::C64;
