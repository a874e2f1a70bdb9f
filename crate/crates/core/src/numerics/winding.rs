use num_complex::Complex64;

use crate::error::{Error, Result};

/// Outcome of winding analysis on a sampled path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindingOutcome {
    /// Net number of turns about the origin.
    Turns(i64),
    /// Two consecutive samples differ in argument by >= pi/2; the caller
    /// should insert samples between these indices and retry.
    Refine { between: usize },
}

/// Unwraps the argument along an ordered list of path values. Any consecutive
/// argument jump of at least pi/2 yields a refinement request instead of a
/// (potentially aliased) count.
pub fn winding_number(path_values: &[Complex64]) -> Result<WindingOutcome> {
    if path_values.len() < 2 {
        return Err(Error::InvalidParameters {
            field: "path_values",
            message: "need at least two samples".to_string(),
        });
    }
    let mut total = 0.0f64;
    for (i, pair) in path_values.windows(2).enumerate() {
        let (za, zb) = (pair[0], pair[1]);
        if za.norm() == 0.0 || zb.norm() == 0.0 {
            return Err(Error::ZeroCrossing { modulus: 0.0 });
        }
        let d = (zb / za).arg();
        if d.abs() >= std::f64::consts::FRAC_PI_2 {
            return Ok(WindingOutcome::Refine { between: i });
        }
        total += d;
    }
    let raw = total / (2.0 * std::f64::consts::PI);
    let rounded = raw.round();
    if (raw - rounded).abs() > 0.01 {
        return Err(Error::NonIntegerWinding { raw });
    }
    Ok(WindingOutcome::Turns(rounded as i64))
}

/// Total continuous argument change of `f` along the parameter interval
/// [t0, t1], with adaptive bisection wherever consecutive samples turn by
/// pi/2 or more. `min_modulus` guards against zero crossings.
pub fn winding_of_path<F>(
    f: &F,
    t0: f64,
    t1: f64,
    initial_samples: usize,
    min_modulus: f64,
    max_depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let n = initial_samples.max(2);
    let mut total = 0.0f64;
    let mut t_prev = t0;
    let mut v_prev = checked(f, t0, min_modulus)?;
    for k in 1..n {
        let t = t0 + (t1 - t0) * (k as f64) / ((n - 1) as f64);
        let v = checked(f, t, min_modulus)?;
        total += arg_delta(f, t_prev, v_prev, t, v, min_modulus, max_depth)?;
        t_prev = t;
        v_prev = v;
    }
    Ok(total)
}

fn checked<F>(f: &F, t: f64, min_modulus: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let v = f(t)?;
    if v.norm() < min_modulus {
        return Err(Error::ZeroCrossing { modulus: v.norm() });
    }
    Ok(v)
}

fn arg_delta<F>(
    f: &F,
    ta: f64,
    va: Complex64,
    tb: f64,
    vb: Complex64,
    min_modulus: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d = (vb / va).arg();
    if d.abs() < std::f64::consts::FRAC_PI_2 {
        return Ok(d);
    }
    if depth == 0 {
        return Err(Error::NonConvergence {
            what: "winding refinement budget",
            residual: d.abs(),
        });
    }
    let tm = 0.5 * (ta + tb);
    let vm = checked(f, tm, min_modulus)?;
    Ok(arg_delta(f, ta, va, tm, vm, min_modulus, depth - 1)?
        + arg_delta(f, tm, vm, tb, vb, min_modulus, depth - 1)?)
}
