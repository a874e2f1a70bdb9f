//! Built-in verification battery: exact identities of the dispersion
//! calculus, closed-form-versus-quadrature oracle checks, and end-to-end
//! boundary-condition closure. The quadrature oracles integrate the defining
//! integrals through the generic kernels and never touch the closed forms
//! they check.

use num_complex::Complex64;

use crate::coefficients::{m_continuum, m_discrete, solve_raw};
use crate::dispersion::{
    lambda, lambda_boundary, lambda_plus_t, laurent_head, t0, t_func,
};
use crate::error::Result;
use crate::numerics::{integrate, pv_integrate, EndpointMode, QuadratureSpec};
use crate::params::PlasmaParameters;
use crate::reconstruction::residual_report;
use crate::spectrum::Region;

/// One named check: the worst residual observed and the tolerance it must
/// stay under.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

fn params(gamma: f64, eps: f64, alpha: f64) -> PlasmaParameters {
    PlasmaParameters::new(gamma, eps, alpha, Complex64::new(1.0, 0.0)).unwrap()
}

/// Identity battery parameters: spread over both regions.
fn identity_params() -> Vec<PlasmaParameters> {
    vec![
        params(0.0, 0.1, 0.5),
        params(-0.5, 1.0, 0.5),
        params(0.7, 0.3, 0.5),
        params(2.0, 2.0, 0.5),
    ]
}

/// Deterministic off-cut sample points.
fn off_cut_points(n: usize) -> Vec<Complex64> {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let re = ((state >> 11) as f64 / (1u64 << 53) as f64) * 8.0 - 4.0;
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let mut im = ((state >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0;
        if im.abs() < 0.05 {
            im = if im >= 0.0 { 0.05 } else { -0.05 };
        }
        out.push(Complex64::new(re, im));
    }
    out
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

/// Evenness, Sokhotski mean, the Laurent identity and the T0/T
/// representations, each as a worst-case residual over points and parameters.
pub fn dispersion_identity_checks() -> Vec<CheckResult> {
    let pts = off_cut_points(100);
    let ps = identity_params();

    let mut evenness: f64 = 0.0;
    let mut representation_lambda: f64 = 0.0;
    let mut representation_t: f64 = 0.0;
    for p in &ps {
        for &z in &pts {
            let lam = lambda(z, p).unwrap();
            evenness = evenness.max(rel(lambda(-z, p).unwrap(), lam));
            representation_lambda = representation_lambda.max(rel(
                Complex64::new(1.0, 0.0) - z * t0(z, p).unwrap() + z * t0(-z, p).unwrap(),
                lam,
            ));
            representation_t = representation_t
                .max(rel(z * t0(z, p).unwrap() + z * t0(-z, p).unwrap(), t_func(z, p).unwrap()));
        }
    }

    let mut sokhotski: f64 = 0.0;
    let mut sum_identity: f64 = 0.0;
    for p in &ps {
        for k in 1..64 {
            let mu = k as f64 / 64.0;
            let (lp, lm) = lambda_boundary(mu, p).unwrap();
            let lam = lambda(Complex64::new(mu, 0.0), p).unwrap();
            sokhotski = sokhotski.max(rel(0.5 * (lp + lm), lam));
            let t2 = lambda_plus_t(mu, p).unwrap();
            let lhs = lam + t_func(Complex64::new(mu, 0.0), p).unwrap();
            sum_identity = sum_identity.max(rel(lhs, t2));
        }
    }

    let mut laurent: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let p = params(-0.9 + 2.9 * i as f64 / 9.0, 0.05 + 1.95 * j as f64 / 9.0, 0.5);
            let head = laurent_head(&p);
            let rhs = p.lambda_one() + (3.0 * p.c).inv();
            laurent = laurent.max((head.lambda_inf - rhs).norm() / head.lambda_inf.norm());
        }
    }

    vec![
        CheckResult::new("lambda evenness", evenness, 1e-10),
        CheckResult::new("sokhotski mean", sokhotski, 1e-10),
        CheckResult::new("lambda representation via T0", representation_lambda, 1e-10),
        CheckResult::new("T representation via T0", representation_t, 1e-10),
        CheckResult::new("lambda+T explicit form", sum_identity, 1e-10),
        CheckResult::new("laurent head identity", laurent, 1e-10),
    ]
}

/// Residual of the lambda representation identity with a caller-supplied T0
/// implementation; lets the test suite confirm that a corrupted T0 is caught.
pub fn representation_residual_with<F>(t0_fn: F, p: &PlasmaParameters) -> f64
where
    F: Fn(Complex64, &PlasmaParameters) -> Result<Complex64>,
{
    let mut worst: f64 = 0.0;
    for &z in &off_cut_points(20) {
        let lam = lambda(z, p).unwrap();
        let rhs = Complex64::new(1.0, 0.0) - z * t0_fn(z, p).unwrap() + z * t0_fn(-z, p).unwrap();
        worst = worst.max(rel(rhs, lam));
    }
    worst
}

// ---------------------------------------------------------------------------
// Quadrature oracles (defining integrals, evaluated generically)
// ---------------------------------------------------------------------------

pub fn oracle_case_lambda(z: Complex64) -> Result<Complex64> {
    let spec = QuadratureSpec::default();
    if z.im == 0.0 && z.re.abs() < 1.0 {
        return Ok(pv_integrate(|t| Complex64::new(0.5 * t, 0.0), z.re, -1.0, 1.0, &spec)?);
    }
    integrate(|t| 0.5 * t / (t - z), -1.0, 1.0, &spec)
}

pub fn oracle_lambda(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let spec = QuadratureSpec::default();
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 && z.re.abs() < 1.0 {
        let mu = z.re;
        let v = pv_integrate(
            |t| (p.eta1_sq - t * t) * mu / (2.0 * p.c),
            mu,
            -1.0,
            1.0,
            &spec,
        )?;
        return Ok(one + v);
    }
    let v = integrate(|t| (p.eta1_sq - z * t) / (t - z), -1.0, 1.0, &spec)?;
    Ok(one + z / (2.0 * p.c) * v)
}

pub fn oracle_t0(z: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let v = integrate(
        |t| (Complex64::new(t * t, 0.0) - p.eta1_sq) / (t - z),
        0.0,
        1.0,
        &QuadratureSpec::default(),
    )?;
    Ok(v / (2.0 * p.c))
}

/// Defining integral of T on the cut: the sign-weighted kernel splits into a
/// principal-value piece on (0, 1) and a regular piece on (-1, 0).
pub fn oracle_t_on_cut(eta: f64, p: &PlasmaParameters) -> Result<Complex64> {
    let spec = QuadratureSpec::default();
    let pv = pv_integrate(
        |t| (Complex64::new(t * t, 0.0) - p.eta1_sq) * t / (2.0 * p.c),
        eta,
        0.0,
        1.0,
        &spec,
    )?;
    let reg = integrate(
        |t| -t * (Complex64::new(t * t, 0.0) - p.eta1_sq) / (2.0 * p.c) / (t - eta),
        -1.0,
        0.0,
        &spec,
    )?;
    Ok(pv + reg)
}

pub fn oracle_m_discrete(w: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    integrate(
        |t| (t * t - 2.0 / 3.0 * t) * (t * w - p.eta1_sq) / (w - t),
        0.0,
        1.0,
        &QuadratureSpec::default(),
    )
}

/// Defining integral of the continuum accommodation moment: principal value
/// plus the delta-term contribution -2 eta1^2 z0 (eta - 2/3) lambda(eta) on
/// (0, 1); plain quadrature on (-1, 0).
pub fn oracle_m_continuum(eta: f64, p: &PlasmaParameters) -> Result<Complex64> {
    let spec = QuadratureSpec::default();
    if eta > 0.0 {
        let pv = pv_integrate(
            |t| -(t * t - 2.0 / 3.0 * t) * (Complex64::new(t * eta, 0.0) - p.eta1_sq),
            eta,
            0.0,
            1.0,
            &spec,
        )?;
        let delta = 2.0 * p.c * (eta - 2.0 / 3.0) * lambda(Complex64::new(eta, 0.0), p)?;
        Ok(pv - delta)
    } else {
        integrate(
            |t| (t * t - 2.0 / 3.0 * t) * (Complex64::new(t * eta, 0.0) - p.eta1_sq) / (eta - t),
            0.0,
            1.0,
            &spec,
        )
    }
}

/// Jump-integral forms of J1 and J2 over the full cut, from boundary values
/// only.
pub fn oracle_j_integrals(p: &PlasmaParameters) -> Result<(Complex64, Complex64)> {
    let spec = QuadratureSpec::with_mode(EndpointMode::LogRefined);
    let zero = Complex64::new(0.0, 0.0);
    let j1 = integrate(
        |eta| match lambda_boundary(eta, p) {
            Ok((lp, lm)) => {
                (lp.inv() - lm.inv()) * eta / (Complex64::new(eta * eta, 0.0) - p.eta1_sq)
            }
            Err(_) => zero,
        },
        -1.0,
        1.0,
        &spec,
    )?;
    let j2 = integrate(
        |eta| {
            let t = match t_func(Complex64::new(eta, 0.0), p) {
                Ok(t) => t,
                Err(_) => return zero,
            };
            let (lp, lm) = match lambda_boundary(eta, p) {
                Ok(v) => v,
                Err(_) => return zero,
            };
            let half_jump = Complex64::new(0.0, std::f64::consts::PI * eta.abs())
                * (Complex64::new(eta * eta, 0.0) - p.eta1_sq)
                / (2.0 * p.c);
            ((t + half_jump) / lp - (t - half_jump) / lm)
                / (Complex64::new(eta * eta, 0.0) - p.eta1_sq)
        },
        -1.0,
        1.0,
        &spec,
    )?;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok((j1 / two_pi_i, j2 / two_pi_i))
}

/// Closed forms against their defining integrals at a deterministic spread
/// of points and parameters.
pub fn oracle_equivalence_checks() -> Vec<CheckResult> {
    let ps = identity_params();
    let pts = off_cut_points(20);

    let mut case_off: f64 = 0.0;
    let mut case_on: f64 = 0.0;
    for &z in pts.iter().take(8) {
        let closed = crate::dispersion::case_lambda(z).unwrap();
        case_off = case_off.max(rel(oracle_case_lambda(z).unwrap(), closed));
    }
    for &mu in &[-0.7, -0.2, 0.3, 0.5, 0.9] {
        let z = Complex64::new(mu, 0.0);
        let closed = crate::dispersion::case_lambda(z).unwrap();
        case_on = case_on.max(rel(oracle_case_lambda(z).unwrap(), closed));
    }

    let mut lam_off: f64 = 0.0;
    let mut lam_on: f64 = 0.0;
    let mut t0_res: f64 = 0.0;
    let mut t_on: f64 = 0.0;
    let mut m_disc: f64 = 0.0;
    let mut m_cont: f64 = 0.0;
    let mut j_res: f64 = 0.0;
    for p in &ps {
        for &z in pts.iter().take(5) {
            lam_off = lam_off.max(rel(oracle_lambda(z, p).unwrap(), lambda(z, p).unwrap()));
            t0_res = t0_res.max(rel(oracle_t0(z, p).unwrap(), t0(z, p).unwrap()));
            m_disc = m_disc.max(rel(
                oracle_m_discrete(z, p).unwrap(),
                m_discrete(z, p).unwrap(),
            ));
        }
        for &mu in &[0.15, 0.4, 0.8] {
            lam_on = lam_on.max(rel(
                oracle_lambda(Complex64::new(mu, 0.0), p).unwrap(),
                lambda(Complex64::new(mu, 0.0), p).unwrap(),
            ));
            t_on = t_on.max(rel(
                oracle_t_on_cut(mu, p).unwrap(),
                t_func(Complex64::new(mu, 0.0), p).unwrap(),
            ));
        }
        for &eta in &[0.35, 0.75, -0.45, -0.85] {
            m_cont = m_cont.max(rel(
                oracle_m_continuum(eta, p).unwrap(),
                m_continuum(eta, p).unwrap(),
            ));
        }
        // J oracles need the classification (eta0 terms in D+).
        let eta0 = match crate::spectrum::classify(p) {
            Ok(cls) => cls.eta0,
            Err(_) => None,
        };
        let (j1c, j2c) = crate::coefficients::j_integrals(p, eta0).unwrap();
        let (j1o, j2o) = oracle_j_integrals(p).unwrap();
        j_res = j_res.max(rel(j1o, j1c)).max(rel(j2o, j2c));
    }

    vec![
        CheckResult::new("case_lambda vs quadrature (off cut)", case_off, 1e-9),
        CheckResult::new("case_lambda vs PV quadrature (on cut)", case_on, 1e-9),
        CheckResult::new("lambda vs quadrature (off cut)", lam_off, 1e-9),
        CheckResult::new("lambda vs PV quadrature (on cut)", lam_on, 1e-9),
        CheckResult::new("T0 vs quadrature", t0_res, 1e-9),
        CheckResult::new("T on-cut vs PV quadrature", t_on, 1e-9),
        CheckResult::new("m discrete vs quadrature", m_disc, 1e-9),
        CheckResult::new("m continuum vs quadrature", m_cont, 1e-9),
        CheckResult::new("J1/J2 residue forms vs jump quadrature", j_res, 1e-7),
    ]
}

// ---------------------------------------------------------------------------
// Closure suite
// ---------------------------------------------------------------------------

/// Closure battery: system residuals and boundary-condition recovery at a
/// parameter spread covering D+, D- and the accommodation range.
pub fn closure_params() -> Vec<PlasmaParameters> {
    vec![
        params(0.0, 0.1, 0.5),
        params(0.0, 0.1, 0.1),
        params(0.0, 0.1, 1.0),
        params(-0.5, 1.0, 0.5),
        params(0.5, 0.3, 0.9),
        params(-0.9, 0.2, 0.5),
        params(1.0, 1.0, 0.1),
        params(3.4, 0.3, 0.5),
        params(3.4, 0.3, 0.1),
        params(3.4, 0.3, 1.0),
        params(2.8, 1.0, 0.5),
        params(0.0, 2.0, 0.5),
    ]
}

pub fn closure_checks() -> Vec<CheckResult> {
    let mut system: f64 = 0.0;
    let mut field_bc: f64 = 0.0;
    let mut nonflow: f64 = 0.0;
    let mut spec_accom: f64 = 0.0;
    let mut alpha_err: f64 = 0.0;
    let mut saw_plus = false;
    let mut saw_minus = false;
    for p in closure_params() {
        let sol = match solve_raw(&p) {
            Ok(s) => s,
            Err(e) => {
                return vec![CheckResult::new(
                    &format!("closure battery (structural failure: {e})"),
                    f64::INFINITY,
                    1e-6,
                )]
            }
        };
        match sol.classification.region {
            Region::DPlus => saw_plus = true,
            Region::DMinus => saw_minus = true,
            Region::NearL => {}
        }
        let rep = residual_report(&sol).unwrap();
        system = system.max(rep.system.max());
        field_bc = field_bc.max(rep.field_bc);
        nonflow = nonflow.max(rep.nonflow);
        spec_accom = spec_accom.max(rep.spec_accom);
        alpha_err = alpha_err.max((rep.alpha_measured.re - p.alpha_p).abs());
    }
    let coverage = if saw_plus && saw_minus { 0.0 } else { 1.0 };

    // Specular limit: |z0 A1| decays linearly along alpha = 1e-1, 1e-2, 1e-3.
    let mut ratio_err: f64 = 0.0;
    let mut mags = Vec::new();
    for &alpha in &[0.1, 0.01, 0.001] {
        let p = params(0.0, 0.1, alpha);
        let sol = solve_raw(&p).unwrap();
        mags.push(sol.coefficients.z0_a1.norm());
    }
    for w in mags.windows(2) {
        ratio_err = ratio_err.max((w[0] / w[1] - 10.0).abs());
    }

    vec![
        CheckResult::new("system residuals (pole/field/accommodation)", system, 1e-6),
        CheckResult::new("field boundary condition e(0) = e0", field_bc, 1e-6),
        CheckResult::new("non-flow moment", nonflow, 1e-6),
        CheckResult::new("specular-accommodative relation", spec_accom, 1e-6),
        CheckResult::new("accommodation recovery alpha", alpha_err, 1e-4),
        CheckResult::new("battery covers both regions", coverage, 0.5),
        CheckResult::new("specular limit |z0 A1| ~ alpha (ratio-10 drift)", ratio_err, 0.5),
    ]
}

/// The full battery, in presentation order.
pub fn run_battery() -> Vec<CheckResult> {
    let mut out = dispersion_identity_checks();
    out.extend(oracle_equivalence_checks());
    out.extend(closure_checks());
    out
}
