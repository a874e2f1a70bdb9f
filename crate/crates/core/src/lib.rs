//! Analytic solution of the half-space problem of degenerate-plasma
//! oscillations driven by a longitudinal external field, under
//! specular-accommodative reflection of electrons at the boundary.
//!
//! The library evaluates the dispersion function of the problem and its
//! boundary values on the cut, locates and counts the discrete modes by the
//! argument principle, computes the expansion coefficients of the solution
//! (Drude amplitude, Debye amplitude, the accommodation constant and the
//! continuous-spectrum density), and reconstructs the electric field and the
//! boundary electron distribution. Every closed form is backed by an
//! independent quadrature or residue oracle in `verify` and the test suite.
//!
//! With the default `parallel` feature, parameter-plane sweeps and grid
//! reconstructions fan out over rayon; disabling it yields a sequential
//! build with identical results.

pub mod coefficients;
pub mod dispersion;
mod error;
pub mod numerics;
mod params;
pub mod reconstruction;
pub mod spectrum;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use params::PlasmaParameters;

pub use num_complex::Complex64;

#[cfg(test)]
pub(crate) mod test_support;

/// Map a function over a slice, in parallel when the `parallel` feature is
/// enabled. Output order always matches input order.
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
