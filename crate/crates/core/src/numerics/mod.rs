//! Shared numerical kernels: adaptive and principal-value quadrature on
//! complex-valued integrands, complex Newton iteration, winding-number
//! tracking along sampled paths, and Gauss-Legendre node generation.
//!
//! All kernels are stateless and deterministic: refinement order is fixed and
//! accumulation uses compensated summation, so identical inputs reproduce
//! results bit for bit.

mod gauss;
mod kahan;
mod quadrature;
mod rootfind;
mod winding;

pub use gauss::gauss_legendre;
pub use kahan::KahanSum;
pub use quadrature::{integrate, pv_integrate, EndpointMode, QuadratureSpec};
pub use rootfind::complex_newton;
pub use winding::{winding_number, winding_of_path, WindingOutcome};
