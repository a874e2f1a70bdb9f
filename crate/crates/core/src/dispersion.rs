//! The Case dispersion function, the dispersion function of the problem
//! lambda(z), its boundary values on the cut, its Laurent head, and the
//! auxiliary integrals T, T0, T2 in closed form.
//!
//! Branch conventions: all logarithms are principal. The argument of the
//! log in `case_lambda` maps the cut [-1, 1] onto the negative real axis, so
//! the principal branch realises the cut exactly there; `t0` does the same
//! for [0, 1]. On the cut the principal-value forms are used.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::PlasmaParameters;

/// Refusal band around the cut endpoints: closer than this the closed forms
/// amplify cancellation instead of failing loudly.
const ENDPOINT_BAND: f64 = 1e-8;

/// |z| beyond which the Case function switches to its Laurent series to
/// avoid the 1 - (z/2)(2/z + ...) cancellation.
const SERIES_RADIUS: f64 = 8.0;

fn on_real_axis(z: Complex64) -> bool {
    z.im == 0.0
}

/// Case dispersion function
/// lambda_c(z) = 1 + (z/2) ln((1-z)/(-1-z)), cut on [-1, 1];
/// on the cut the principal value 1 + (mu/2) ln((1-mu)/(1+mu)).
pub fn case_lambda(z: Complex64) -> Result<Complex64> {
    if (z - 1.0).norm() < ENDPOINT_BAND || (z + 1.0).norm() < ENDPOINT_BAND {
        return Err(Error::EndpointSingularity { z: z.to_string() });
    }
    if on_real_axis(z) && z.re.abs() < 1.0 {
        let mu = z.re;
        if mu == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        return Ok(Complex64::new(
            1.0 + 0.5 * mu * ((1.0 - mu) / (1.0 + mu)).ln(),
            0.0,
        ));
    }
    if z.norm() >= SERIES_RADIUS {
        return Ok(case_lambda_series(z));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(one + 0.5 * z * ((one - z) / (-one - z)).ln())
}

/// lambda_c(z) = -sum_{k>=1} z^{-2k} / (2k+1), |z| > 1.
fn case_lambda_series(z: Complex64) -> Complex64 {
    let u2 = (z * z).inv();
    let mut term = u2;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=24 {
        let add = term / (2.0 * k as f64 + 1.0);
        sum += add;
        if add.norm() < 1e-18 * sum.norm() {
            break;
        }
        term *= u2;
    }
    -sum
}

/// d lambda_c / dz; series branch mirrors `case_lambda`.
pub fn case_lambda_prime(z: Complex64) -> Result<Complex64> {
    if (z - 1.0).norm() < ENDPOINT_BAND || (z + 1.0).norm() < ENDPOINT_BAND {
        return Err(Error::EndpointSingularity { z: z.to_string() });
    }
    if z.norm() >= SERIES_RADIUS {
        let u2 = (z * z).inv();
        let mut term = u2 / z;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..=24 {
            let kf = 2.0 * k as f64;
            sum += term * (kf / (kf + 1.0));
            term *= u2;
        }
        return Ok(sum);
    }
    let lc = case_lambda(z)?;
    Ok((lc - 1.0) / z + z / (z * z - 1.0))
}

/// Dispersion function of the problem via the Case reduction
/// lambda(z) = 1 - 1/z0 + (1/z0)(1 - z^2/eta1^2) lambda_c(z);
/// off-cut and on-cut (principal value) alike.
pub fn lambda(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let lc = case_lambda(z)?;
    let one = Complex64::new(1.0, 0.0);
    let inv_z0 = p.z0.inv();
    Ok(one - inv_z0 + inv_z0 * (one - z * z / p.eta1_sq) * lc)
}

/// d lambda / dz (analytic differentiation of the Case reduction).
pub fn lambda_prime(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let lc = case_lambda(z)?;
    let lcp = case_lambda_prime(z)?;
    let one = Complex64::new(1.0, 0.0);
    let inv_z0 = p.z0.inv();
    Ok(inv_z0 * (-2.0 * z / p.eta1_sq * lc + (one - z * z / p.eta1_sq) * lcp))
}

/// Boundary values (lambda^+, lambda^-) on the cut:
/// lambda(mu) +- i pi mu (eta1^2 - mu^2) / (2 eta1^2 z0).
pub fn lambda_boundary(mu: f64, p: &PlasmaParameters) -> Result<(Complex64, Complex64)> {
    if mu.abs() >= 1.0 - ENDPOINT_BAND {
        return Err(Error::EndpointSingularity { z: mu.to_string() });
    }
    let lam = lambda(Complex64::new(mu, 0.0), p)?;
    let jump_half =
        Complex64::new(0.0, std::f64::consts::PI * mu) * (p.eta1_sq - mu * mu) / (2.0 * p.c);
    Ok((lam + jump_half, lam - jump_half))
}

/// A lambda evaluation together with boundary values when the point lies on
/// the cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample {
    pub z: Complex64,
    pub lambda: Complex64,
    pub lambda_plus: Option<Complex64>,
    pub lambda_minus: Option<Complex64>,
}

pub fn sample(z: Complex64, p: &PlasmaParameters) -> Result<DispersionSample> {
    let lam = lambda(z, p)?;
    if on_real_axis(z) && z.re.abs() < 1.0 {
        let (lp, lm) = lambda_boundary(z.re, p)?;
        Ok(DispersionSample {
            z,
            lambda: lam,
            lambda_plus: Some(lp),
            lambda_minus: Some(lm),
        })
    } else {
        Ok(DispersionSample {
            z,
            lambda: lam,
            lambda_plus: None,
            lambda_minus: None,
        })
    }
}

/// Coefficients of the Laurent expansion
/// lambda(z) = lambda_inf + lambda_2/z^2 + lambda_4/z^4 + ... for |z| > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentHead {
    pub lambda_inf: Complex64,
    pub lambda_2: Complex64,
    pub lambda_4: Complex64,
}

/// Laurent head in the z0/eta1^2 form, cross-checked in debug builds against
/// the equivalent (gamma, eps) rational form.
pub fn laurent_head(p: &PlasmaParameters) -> LaurentHead {
    let one = Complex64::new(1.0, 0.0);
    let inv_z0 = p.z0.inv();
    let inv_eta = p.eta1_sq.inv();
    let head = LaurentHead {
        lambda_inf: one - inv_z0 + inv_z0 * inv_eta / 3.0,
        lambda_2: -inv_z0 * (one / 3.0 - inv_eta / 5.0),
        lambda_4: -inv_z0 * (one / 5.0 - inv_eta / 7.0),
    };
    debug_assert!({
        let alt = laurent_head_gamma_eps(p);
        (head.lambda_inf - alt.lambda_inf).norm() <= 1e-12 * alt.lambda_inf.norm().max(1e-30)
            && (head.lambda_2 - alt.lambda_2).norm() <= 1e-12 * alt.lambda_2.norm()
            && (head.lambda_4 - alt.lambda_4).norm() <= 1e-12 * alt.lambda_4.norm()
    });
    head
}

/// The same coefficients written directly through (gamma, eps), with
/// w = 1 + gamma + i eps.
pub fn laurent_head_gamma_eps(p: &PlasmaParameters) -> LaurentHead {
    let g = p.gamma;
    let e = p.eps;
    let w = Complex64::new(1.0 + g, e);
    let w2 = w * w;
    let ie = Complex64::new(0.0, e);
    LaurentHead {
        lambda_inf: (2.0 * g + ie + g * (g + ie)) / w2,
        lambda_2: -(9.0 + 5.0 * ie * w) / (15.0 * w2),
        lambda_4: -(15.0 + 7.0 * ie * w) / (35.0 * w2),
    }
}

/// T0(z) = (1/(2 eta1^2 z0)) ∫_0^1 (eta^2 - eta1^2)/(eta - z) deta
///        = (1/(2 eta1^2 z0)) [ 1/2 + z + (z^2 - eta1^2) ln(1 - 1/z) ],
/// cut on [0, 1].
pub fn t0(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    if z.norm() < 1e-12 {
        return Err(Error::CutCollision {
            z: z.to_string(),
            cut: "[0, 1]",
        });
    }
    if on_real_axis(z) && z.re > 0.0 && z.re <= 1.0 + 1e-12 {
        return Err(Error::CutCollision {
            z: z.to_string(),
            cut: "[0, 1]",
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let bracket = 0.5 * one + z + (z * z - p.eta1_sq) * (one - z.inv()).ln();
    Ok(bracket / (2.0 * p.c))
}

/// T(z) for z off the cut [-1, 1]:
/// (z/(2 eta1^2 z0)) [ 1 + (z^2 - eta1^2)(ln(1 - 1/z) + ln(1 + 1/z)) ];
/// on the cut the principal value
/// (eta/(2 eta1^2 z0)) [ 1 + (eta^2 - eta1^2) ln(1/eta^2 - 1) ].
pub fn t_func(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if on_real_axis(z) && z.re.abs() < 1.0 {
        let eta = z.re;
        if eta.abs() < ENDPOINT_BAND || eta.abs() > 1.0 - ENDPOINT_BAND {
            return Err(Error::EndpointSingularity { z: z.to_string() });
        }
        let log = (1.0 / (eta * eta) - 1.0).ln();
        return Ok(Complex64::new(eta, 0.0) * (one + (eta * eta - p.eta1_sq) * log) / (2.0 * p.c));
    }
    if on_real_axis(z) && (z.re.abs() - 1.0).abs() < ENDPOINT_BAND {
        return Err(Error::EndpointSingularity { z: z.to_string() });
    }
    let logs = (one - z.inv()).ln() + (one + z.inv()).ln();
    Ok(z * (one + (z * z - p.eta1_sq) * logs) / (2.0 * p.c))
}

/// lambda(eta) + T(eta) on (0, 1) in explicit form, also known as
/// T2(eta) = 1 + 2 eta T0(-eta):
/// 1 + (1/(2 eta1^2 z0)) [ eta - 2 eta^2 + 2 eta (eta^2 - eta1^2) ln(1/eta + 1) ].
pub fn lambda_plus_t(eta: f64, p: &PlasmaParameters) -> Result<Complex64> {
    if !(eta > 0.0 && eta < 1.0) || 1.0 - eta < 1e-13 || eta < 1e-13 {
        return Err(Error::EndpointSingularity { z: eta.to_string() });
    }
    let log = (1.0 / eta + 1.0).ln();
    let bracket = Complex64::new(eta - 2.0 * eta * eta, 0.0)
        + 2.0 * eta * (Complex64::new(eta * eta, 0.0) - p.eta1_sq) * log;
    Ok(Complex64::new(1.0, 0.0) + bracket / (2.0 * p.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{assert_close, sample_params, OFF_CUT_POINTS};

    #[test]
    fn case_lambda_at_origin_is_one() {
        assert_eq!(
            case_lambda(Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn case_lambda_at_two() {
        let v = case_lambda(Complex64::new(2.0, 0.0)).unwrap();
        assert_close(v, Complex64::new(1.0 + (1.0f64 / 3.0).ln(), 0.0), 1e-14);
    }

    #[test]
    fn case_lambda_on_cut_half() {
        let v = case_lambda(Complex64::new(0.5, 0.0)).unwrap();
        assert_close(v, Complex64::new(1.0 + 0.25 * (1.0f64 / 3.0).ln(), 0.0), 1e-14);
    }

    #[test]
    fn case_lambda_rejects_endpoints() {
        assert!(case_lambda(Complex64::new(1.0, 0.0)).is_err());
        assert!(case_lambda(Complex64::new(-1.0 + 1e-9, 0.0)).is_err());
    }

    #[test]
    fn series_and_log_paths_agree() {
        // Straddle the switch radius.
        for &r in &[7.9, 8.1] {
            for k in 0..8 {
                let th = 0.3 + k as f64 * 0.7;
                let z = Complex64::from_polar(r, th);
                let log_path = Complex64::new(1.0, 0.0)
                    + 0.5 * z * ((Complex64::new(1.0, 0.0) - z) / (-Complex64::new(1.0, 0.0) - z)).ln();
                let series = case_lambda_series(z);
                // The log path carries ~1e-16 absolute cancellation noise.
                assert!(
                    (log_path - series).norm() < 1e-15 + 1e-12 * series.norm(),
                    "z = {z}"
                );
            }
        }
    }

    #[test]
    fn lambda_at_origin_is_one() {
        let p = sample_params();
        let v = lambda(Complex64::new(0.0, 0.0), &p).unwrap();
        assert_close(v, Complex64::new(1.0, 0.0), 1e-14);
    }

    #[test]
    fn lambda_is_even() {
        let p = sample_params();
        for &z in OFF_CUT_POINTS {
            let a = lambda(z, &p).unwrap();
            let b = lambda(-z, &p).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-12), "z = {z}");
        }
    }

    #[test]
    fn lambda_is_even_at_eta1() {
        let p = sample_params();
        let e1 = p.eta1();
        let a = lambda(e1, &p).unwrap();
        let b = lambda(-e1, &p).unwrap();
        assert!((a - b).norm() <= 1e-13 * a.norm());
        assert_close(a, p.lambda_one(), 1e-12);
    }

    #[test]
    fn boundary_jump_is_exact_by_construction() {
        let p = sample_params();
        for &mu in &[-0.9, -0.3, 0.1, 0.5, 0.85] {
            let (lp, lm) = lambda_boundary(mu, &p).unwrap();
            let jump = Complex64::new(0.0, std::f64::consts::PI * mu) * (p.eta1_sq - mu * mu) / p.c;
            assert!((lp - lm - jump).norm() < 1e-15 * jump.norm().max(1e-12));
            // Sokhotski mean
            let lam = lambda(Complex64::new(mu, 0.0), &p).unwrap();
            assert_close(0.5 * (lp + lm), lam, 1e-13);
        }
    }

    #[test]
    fn boundary_at_zero_is_regular() {
        let p = sample_params();
        let (lp, lm) = lambda_boundary(0.0, &p).unwrap();
        assert_close(lp, Complex64::new(1.0, 0.0), 1e-14);
        assert_close(lm, Complex64::new(1.0, 0.0), 1e-14);
    }

    #[test]
    fn laurent_families_agree() {
        for (g, e) in [(-0.9, 0.05), (-0.3, 0.4), (0.0, 0.1), (0.7, 1.3), (2.0, 2.0)] {
            let p = crate::PlasmaParameters::new(g, e, 0.5, Complex64::new(1.0, 0.0)).unwrap();
            let a = laurent_head(&p);
            let b = laurent_head_gamma_eps(&p);
            assert!((a.lambda_inf - b.lambda_inf).norm() <= 1e-13 * b.lambda_inf.norm());
            assert!((a.lambda_2 - b.lambda_2).norm() <= 1e-13 * b.lambda_2.norm());
            assert!((a.lambda_4 - b.lambda_4).norm() <= 1e-13 * b.lambda_4.norm());
            assert!(a.lambda_inf.norm() > 0.0);
        }
    }

    #[test]
    fn laurent_tail_matches_lambda_far_out() {
        let p = sample_params();
        let head = laurent_head(&p);
        let z = Complex64::new(7071.0, 7071.0);
        let lam = lambda(z, &p).unwrap();
        let approx = head.lambda_inf + head.lambda_2 / (z * z) + head.lambda_4 / (z * z * z * z);
        assert!((lam - approx).norm() <= 1e-12 * head.lambda_inf.norm());
    }

    #[test]
    fn laurent_identity_lambda_inf() {
        // lambda_inf = lambda(eta1) + 1/(3c) on a (gamma, eps) grid.
        for i in 0..10 {
            for j in 0..10 {
                let g = -0.9 + 2.9 * i as f64 / 9.0;
                let e = 0.05 + 1.95 * j as f64 / 9.0;
                let p = crate::PlasmaParameters::new(g, e, 0.5, Complex64::new(1.0, 0.0)).unwrap();
                let head = laurent_head(&p);
                let rhs = p.lambda_one() + (3.0 * p.c).inv();
                assert!(
                    (head.lambda_inf - rhs).norm() <= 1e-11 * head.lambda_inf.norm().max(1e-12),
                    "gamma={g} eps={e}"
                );
            }
        }
    }

    #[test]
    fn t0_rejects_cut_points() {
        let p = sample_params();
        assert!(t0(Complex64::new(0.5, 0.0), &p).is_err());
        assert!(t0(Complex64::new(0.0, 0.0), &p).is_err());
        assert!(t0(Complex64::new(1.0, 0.0), &p).is_err());
        // but the mirrored segment is fine
        assert!(t0(Complex64::new(-0.5, 0.0), &p).is_ok());
    }

    #[test]
    fn representation_identities() {
        let p = sample_params();
        for &z in OFF_CUT_POINTS {
            let lam = lambda(z, &p).unwrap();
            let t0p = t0(z, &p).unwrap();
            let t0m = t0(-z, &p).unwrap();
            let t = t_func(z, &p).unwrap();
            let one = Complex64::new(1.0, 0.0);
            assert!(
                (lam - (one - z * t0p + z * t0m)).norm() <= 1e-10 * lam.norm().max(1.0),
                "lambda representation at z = {z}"
            );
            assert!(
                (t - (z * t0p + z * t0m)).norm() <= 1e-10 * t.norm().max(1.0),
                "T representation at z = {z}"
            );
            // oddness of T
            let tm = t_func(-z, &p).unwrap();
            assert!((t + tm).norm() <= 1e-12 * t.norm().max(1e-12));
        }
    }

    #[test]
    fn lambda_plus_t_identities_on_grid() {
        let p = sample_params();
        for k in 1..50 {
            let eta = k as f64 / 50.0;
            let t2 = lambda_plus_t(eta, &p).unwrap();
            let lam = lambda(Complex64::new(eta, 0.0), &p).unwrap();
            let t = t_func(Complex64::new(eta, 0.0), &p).unwrap();
            assert!(
                (t2 - (lam + t)).norm() <= 1e-11 * t2.norm().max(1.0),
                "eta = {eta}"
            );
            let direct = Complex64::new(1.0, 0.0)
                + 2.0 * eta * t0(Complex64::new(-eta, 0.0), &p).unwrap();
            assert!((t2 - direct).norm() <= 1e-11 * t2.norm().max(1.0));
        }
    }

    #[test]
    fn lambda_plus_t_tends_to_one_at_origin() {
        let p = sample_params();
        let v = lambda_plus_t(1e-9, &p).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn branch_continuity_on_small_circles() {
        // No branch tears: lambda sampled densely on circles around off-cut
        // points varies smoothly.
        let p = sample_params();
        for &z0 in OFF_CUT_POINTS {
            let dist = if z0.im.abs() > 0.0 {
                z0.im.abs().min((z0.re.abs() - 1.0).abs().max(0.3))
            } else {
                0.3
            };
            let r = 0.3 * dist.min(1.0);
            let mut prev: Option<Complex64> = None;
            let mut max_step = 0.0f64;
            let mut max_mod = 0.0f64;
            for k in 0..=256 {
                let th = 2.0 * std::f64::consts::PI * k as f64 / 256.0;
                let z = z0 + Complex64::from_polar(r, th);
                if on_real_axis(z) && z.re.abs() <= 1.0 {
                    prev = None;
                    continue;
                }
                let v = match lambda(z, &p) {
                    Ok(v) => v,
                    Err(_) => {
                        prev = None;
                        continue;
                    }
                };
                max_mod = max_mod.max(v.norm());
                if let Some(pv) = prev {
                    max_step = max_step.max((v - pv).norm());
                }
                prev = Some(v);
            }
            assert!(
                max_step < 0.2 * max_mod.max(1.0),
                "branch tear near {z0}: step {max_step}, scale {max_mod}"
            );
        }
    }
}
