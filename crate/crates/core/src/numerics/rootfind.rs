use num_complex::Complex64;

use crate::error::{Error, Result};

/// Newton iteration on an analytic function with step damping: whenever a
/// full step fails to decrease |f|, the step is halved a few times before the
/// iterate is accepted anyway (saddle escapes).
pub fn complex_newton<F, D>(
    f: F,
    df: D,
    seed: Complex64,
    tol: f64,
    max_iter: u32,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let mut z = seed;
    let mut fz = f(z);
    for _ in 0..max_iter {
        if fz.norm() <= tol {
            return Ok(z);
        }
        let dfz = df(z);
        if dfz.norm() < 1e-300 {
            return Err(Error::DegenerateZero { modulus: dfz.norm() });
        }
        let mut step = fz / dfz;
        let mut z_next = z - step;
        let mut f_next = f(z_next);
        let mut halvings = 0;
        while f_next.norm() > fz.norm() && halvings < 8 {
            step *= 0.5;
            z_next = z - step;
            f_next = f(z_next);
            halvings += 1;
        }
        z = z_next;
        fz = f_next;
    }
    if fz.norm() <= tol {
        Ok(z)
    } else {
        Err(Error::NonConvergence {
            what: "complex Newton iteration",
            residual: fz.norm(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_root_of_z_squared_plus_one() {
        let f = |z: Complex64| z * z + 1.0;
        let df = |z: Complex64| 2.0 * z;
        let root = complex_newton(f, df, Complex64::new(0.5, 0.5), 1e-14, 50).unwrap();
        assert!((root - Complex64::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn quadratic_convergence_fits_iteration_budget() {
        // A simple root must converge well within 25 iterations at 1e-12.
        let f = |z: Complex64| z.exp() - 2.0;
        let df = |z: Complex64| z.exp();
        let root = complex_newton(f, df, Complex64::new(1.0, 0.3), 1e-12, 25).unwrap();
        assert!((root - Complex64::new(std::f64::consts::LN_2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        // No root anywhere near; derivative pushes the iterate around forever.
        let f = |_z: Complex64| Complex64::new(1.0, 0.0);
        let df = |_z: Complex64| Complex64::new(1.0, 0.0);
        let err = complex_newton(f, df, Complex64::new(0.0, 0.0), 1e-12, 10).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }
}
