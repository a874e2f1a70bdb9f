//! Expansion coefficients of the half-space solution: the Drude amplitude
//! E_inf, the Debye amplitude E_0, the accommodation constant A_1 (carried as
//! z0*A1), the Riemann-solution constant C_1 and the continuous-spectrum
//! density E(eta), together with the auxiliary moments m, a, b, J_1, J_2,
//! P_1, P_2 and the residuals of the defining equations.

use num_complex::Complex64;

use crate::dispersion::{lambda_boundary, lambda_plus_t, lambda_prime, laurent_head, t_func};
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, integrate, EndpointMode, QuadratureSpec};
use crate::params::PlasmaParameters;
use crate::spectrum::{classify, Region, SpectrumClassification};

/// Residual gate applied by `solve_all`.
pub const RESIDUAL_GATE: f64 = 1e-6;

/// Closed form of the accommodation moment at an off-cut point w:
/// m(w) = ∫_0^1 (mu^2 - (2/3)mu)(mu w - eta1^2)/(w - mu) dmu
///      = (eta1^2 - w^2) [ (-1/6 + w) + (w^2 - (2/3)w) ln(1 - 1/w) ].
/// Both discrete values m(eta0) and m(-eta0) are this function at ±eta0.
pub fn m_discrete(w: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    if w.im == 0.0 && w.re >= 0.0 && w.re <= 1.0 + 1e-12 {
        return Err(Error::CutCollision {
            z: w.to_string(),
            cut: "[0, 1]",
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let bracket = if w.norm() >= 50.0 {
        // The closed form cancels ~|w|^2 digits at large |w|; sum the tail
        // series (-1/6 + w) + (w^2 - 2w/3) ln(1-1/w) = sum_{k>=2} c_k w^-k
        // with c_k = 2/(3(k+1)) - 1/(k+2) instead.
        let mut sum = Complex64::new(0.0, 0.0);
        let mut wk = (w * w).inv();
        for k in 2..=28 {
            let kf = k as f64;
            sum += (2.0 / (3.0 * (kf + 1.0)) - 1.0 / (kf + 2.0)) * wk;
            wk /= w;
        }
        sum
    } else {
        (w - one / 6.0) + (w * w - 2.0 / 3.0 * w) * (one - w.inv()).ln()
    };
    Ok((p.eta1_sq - w * w) * bracket)
}

/// Accommodation moment on the continuous spectrum, eta in (-1, 1) \ {0}:
/// the principal-value integral plus, on (0, 1), the delta-term contribution
/// of the eigenfunction, which collapses to 2 (eta^2 - eta1^2 z0)(eta - 2/3).
pub fn m_continuum(eta: f64, p: &PlasmaParameters) -> Result<Complex64> {
    if eta.abs() < 1e-10 || eta.abs() > 1.0 - 1e-10 {
        return Err(Error::EndpointSingularity { z: eta.to_string() });
    }
    if eta.abs() >= 1.0 {
        return Err(Error::InvalidParameters {
            field: "eta",
            message: format!("must lie in (-1, 1), got {eta}"),
        });
    }
    let e2 = Complex64::new(eta * eta, 0.0);
    let poly = Complex64::new(eta * eta - 2.0 / 3.0 * eta, 0.0);
    let f_plus = if eta > 0.0 {
        ((1.0 + eta) / eta).ln()
    } else {
        ((1.0 - eta) / (-eta)).ln()
    };
    let mut m = (e2 - p.eta1_sq) * (Complex64::new(1.0 / 6.0 - eta, 0.0) - poly * f_plus);
    if eta > 0.0 {
        m += 2.0 * (e2 - p.c) * (eta - 2.0 / 3.0);
    }
    Ok(m)
}

/// Residue factors of the simple zero eta0:
/// a = eta0 / (lambda'(eta0)(eta0^2 - eta1^2)),
/// b = T(eta0) / (lambda'(eta0)(eta0^2 - eta1^2)).
pub fn ab_factors(eta0: Complex64, p: &PlasmaParameters) -> Result<(Complex64, Complex64)> {
    let lp = lambda_prime(eta0, p)?;
    if lp.norm() < 1e-12 {
        return Err(Error::DegenerateZero { modulus: lp.norm() });
    }
    let den = lp * (eta0 * eta0 - p.eta1_sq);
    if den.norm() < 1e-14 {
        return Err(Error::DegenerateZero { modulus: den.norm() });
    }
    Ok((eta0 / den, t_func(eta0, p)? / den))
}

fn lambda_one_checked(p: &PlasmaParameters) -> Result<Complex64> {
    let l1 = p.lambda_one();
    if l1.norm() < 1e-10 {
        return Err(Error::LambdaOneResonance { modulus: l1.norm() });
    }
    Ok(l1)
}

/// Residue closed forms of the jump integrals over the cut:
/// J1 = -1/lambda_inf + 1/lambda_1 + 2a(eta0),
/// J2 = 1/(2 lambda_1 c) + 2b(eta0);
/// the eta0 terms drop in D-.
pub fn j_integrals(p: &PlasmaParameters, eta0: Option<Complex64>) -> Result<(Complex64, Complex64)> {
    let head = laurent_head(p);
    let l1 = lambda_one_checked(p)?;
    let mut j1 = -head.lambda_inf.inv() + l1.inv();
    let mut j2 = (2.0 * l1 * p.c).inv();
    if let Some(eta0) = eta0 {
        let (a, b) = ab_factors(eta0, p)?;
        j1 += 2.0 * a;
        j2 += 2.0 * b;
    }
    Ok((j1, j2))
}

/// Product lambda^+ lambda^- at eta, with the near-L floor applied.
fn boundary_product(eta: f64, p: &PlasmaParameters, floor: f64) -> Result<Complex64> {
    let (lp, lm) = lambda_boundary(eta, p)?;
    if lp.norm() < floor || lm.norm() < floor {
        return Err(Error::Resonance {
            mu: eta,
            modulus: lp.norm().min(lm.norm()),
        });
    }
    Ok(lp * lm)
}

fn resonance_floor(p: &PlasmaParameters) -> f64 {
    1e-8 * laurent_head(p).lambda_inf.norm()
}

/// Scan (0, 1) for boundary-value zeros before running a quadrature there.
fn scan_for_resonance(p: &PlasmaParameters) -> Result<()> {
    let floor = resonance_floor(p);
    for k in 1..=127 {
        let eta = k as f64 / 128.0;
        boundary_product(eta, p, floor)?;
    }
    Ok(())
}

/// Quadrature over (0, 1) of `f`, tolerating the refusal bands at the very
/// endpoints (the integrands here vanish or stay bounded there, so dropping
/// a 1e-8-wide sliver is far below the tolerances in play).
fn integral_01<F: Fn(f64) -> Result<Complex64>>(f: F, spec: &QuadratureSpec) -> Result<Complex64> {
    integrate(
        |eta| f(eta).unwrap_or(Complex64::new(0.0, 0.0)),
        0.0,
        1.0,
        spec,
    )
}

/// P1 = (1/c) ∫_0^1 eta^2 m(eta) / (lambda^+ lambda^-) deta and
/// P2 = (1/c) ∫_0^1 eta T2(eta) m(eta) / (lambda^+ lambda^-) deta.
pub fn p_integrals(p: &PlasmaParameters) -> Result<(Complex64, Complex64)> {
    scan_for_resonance(p)?;
    let floor = resonance_floor(p);
    let spec = QuadratureSpec::with_mode(EndpointMode::LogRefined);
    let p1 = integral_01(
        |eta| {
            let prod = boundary_product(eta, p, floor)?;
            Ok(eta * eta * m_continuum(eta, p)? / prod)
        },
        &spec,
    )?;
    let p2 = integral_01(
        |eta| {
            let prod = boundary_product(eta, p, floor)?;
            Ok(eta * lambda_plus_t(eta, p)? * m_continuum(eta, p)? / prod)
        },
        &spec,
    )?;
    Ok((p1 / p.c, p2 / p.c))
}

/// Drude amplitude E_inf = e0 lambda_1 / lambda_inf.
pub fn e_infty_coeff(p: &PlasmaParameters) -> Complex64 {
    p.e0 * p.lambda_one() / laurent_head(p).lambda_inf
}

/// Everything the accommodation constant needs from the discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteAux {
    pub eta0: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub m_eta0: Complex64,
}

impl DiscreteAux {
    pub fn compute(eta0: Complex64, p: &PlasmaParameters) -> Result<Self> {
        let (a, b) = ab_factors(eta0, p)?;
        Ok(Self {
            eta0,
            a,
            b,
            m_eta0: m_discrete(eta0, p)?,
        })
    }
}

/// The accommodation constant, carried as z0*A1:
///
///   z0 A1 = e0 lambda_1 [ 2 a m(eta0) - 1/(36 lambda_inf) - P1 ]
///           / { [lambda_inf a - (2/3) b] m(eta0) + (1/3) P2
///               - (lambda_inf/2) P1 + (1 - alpha_p)/(36 alpha_p) },
///
/// with the m(eta0) products absent in D-. alpha_p = 0 short-circuits to 0.
pub fn a1_constant(
    p: &PlasmaParameters,
    disc: Option<&DiscreteAux>,
    p1: Complex64,
    p2: Complex64,
) -> Result<Complex64> {
    if p.alpha_p == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let head = laurent_head(p);
    let l1 = lambda_one_checked(p)?;
    let mut num = -(36.0 * head.lambda_inf).inv() - p1;
    let mut den = p2 / 3.0 - head.lambda_inf / 2.0 * p1
        + Complex64::new((1.0 - p.alpha_p) / (36.0 * p.alpha_p), 0.0);
    if let Some(d) = disc {
        num += 2.0 * d.a * d.m_eta0;
        den += (head.lambda_inf * d.a - 2.0 / 3.0 * d.b) * d.m_eta0;
    }
    let scale = den.norm().max(num.norm()).max(1e-30);
    if den.norm() < 1e-13 * scale {
        return Err(Error::ZeroDenominator { modulus: den.norm() });
    }
    Ok(p.e0 * l1 * num / den)
}

/// Debye amplitude from the pole-elimination relation:
/// E_0 = -2 e0 lambda_1 a(eta0) - z0 A1 ((2/3) b(eta0) - lambda_inf a(eta0)).
pub fn e_debye_coeff(p: &PlasmaParameters, eta0: Complex64, z0_a1: Complex64) -> Result<Complex64> {
    let head = laurent_head(p);
    let (a, b) = ab_factors(eta0, p)?;
    Ok(-2.0 * p.e0 * p.lambda_one() * a - z0_a1 * (2.0 / 3.0 * b - head.lambda_inf * a))
}

/// Equivalent form of the Debye amplitude through the Riemann-solution
/// constant, used as a cross-check:
/// [(2 E_inf - z0 A1) lambda_inf eta0 + (2/3) z0 A1 T(eta0)]
///   / [lambda'(eta0)(eta1^2 - eta0^2)].
pub fn e_debye_coeff_alt(
    p: &PlasmaParameters,
    eta0: Complex64,
    z0_a1: Complex64,
    e_infty: Complex64,
) -> Result<Complex64> {
    let head = laurent_head(p);
    let lp = lambda_prime(eta0, p)?;
    let num = (2.0 * e_infty - z0_a1) * head.lambda_inf * eta0
        + 2.0 / 3.0 * z0_a1 * t_func(eta0, p)?;
    Ok(num / (lp * (p.eta1_sq - eta0 * eta0)))
}

/// Continuous-spectrum density on (0, 1), reduced to the real-axis form
/// E(eta) = [ (2 E_inf - z0 A1) lambda_inf eta^2 + (2/3) z0 A1 eta T2(eta) ]
///          / (2 eta1^2 z0 lambda^+ lambda^-).
pub fn e_continuum(
    eta: f64,
    p: &PlasmaParameters,
    z0_a1: Complex64,
    e_infty: Complex64,
) -> Result<Complex64> {
    let head = laurent_head(p);
    let prod = boundary_product(eta, p, resonance_floor(p))?;
    let t2 = lambda_plus_t(eta, p)?;
    let num = (2.0 * e_infty - z0_a1) * head.lambda_inf * (eta * eta)
        + 2.0 / 3.0 * z0_a1 * eta * t2;
    Ok(num / (2.0 * p.c * prod))
}

/// The same density straight from the jump of the Riemann solution across
/// the cut (dual evaluation path):
/// E(eta) = [ (2/3) z0 A1 (T+/λ+ - T-/λ-) + (2E_inf - z0A1) λ_inf eta (1/λ+ - 1/λ-) ]
///          / (2 pi i (eta^2 - eta1^2)).
pub fn e_continuum_jump(
    eta: f64,
    p: &PlasmaParameters,
    z0_a1: Complex64,
    e_infty: Complex64,
) -> Result<Complex64> {
    let head = laurent_head(p);
    let (lp, lm) = lambda_boundary(eta, p)?;
    let t = t_func(Complex64::new(eta, 0.0), p)?;
    let half_jump = Complex64::new(0.0, std::f64::consts::PI * eta)
        * (Complex64::new(eta * eta, 0.0) - p.eta1_sq)
        / (2.0 * p.c);
    let (tp, tm) = (t + half_jump, t - half_jump);
    let curly = 2.0 / 3.0 * z0_a1 * (tp / lp - tm / lm)
        + (2.0 * e_infty - z0_a1) * head.lambda_inf * eta * (lp.inv() - lm.inv());
    let denom = Complex64::new(0.0, 2.0 * std::f64::consts::PI)
        * (Complex64::new(eta * eta, 0.0) - p.eta1_sq);
    Ok(curly / denom)
}

/// The assembled coefficient set.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub e_infty: Complex64,
    /// Debye amplitude; identically zero in D-.
    pub e_debye: Complex64,
    /// z0 * A1 as it appears in the formulas.
    pub z0_a1: Complex64,
    pub a1: Complex64,
    /// A0 = -(2/3) A1.
    pub a0: Complex64,
    /// C1 = (2 E_inf - z0 A1) lambda_inf.
    pub c1: Complex64,
    /// E(eta) sampled on a Gauss grid over (0, 1).
    pub cont_density: Vec<(f64, Complex64)>,
}

/// Residuals of the three defining equations, each normalised by the largest
/// constituent term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemResiduals {
    /// Pole elimination at ±eta0 (zero in D- where there is no pole).
    pub pole: f64,
    /// Field normalisation E_inf + E_0 + ∫ E = e0.
    pub field: f64,
    /// Accommodation moment equation.
    pub accommodation: f64,
}

impl SystemResiduals {
    pub fn max(&self) -> f64 {
        self.pole.max(self.field).max(self.accommodation)
    }
}

/// A solved instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub params: PlasmaParameters,
    pub classification: SpectrumClassification,
    pub coefficients: CoefficientSet,
    pub residuals: SystemResiduals,
    pub aux: SolutionAux,
}

/// Auxiliary quantities kept for verification and reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionAux {
    pub lambda_inf: Complex64,
    pub lambda_1: Complex64,
    pub p1: Complex64,
    pub p2: Complex64,
    pub disc: Option<DiscreteAux>,
}

/// Full pipeline with the residual gate: classify, assemble the closed-form
/// coefficients, then verify them against the defining system and fail if
/// any residual exceeds `RESIDUAL_GATE`.
pub fn solve_all(p: &PlasmaParameters) -> Result<Solution> {
    let sol = solve_raw(p)?;
    let r = &sol.residuals;
    if r.max() > RESIDUAL_GATE {
        return Err(Error::ResidualFailure {
            pole: r.pole,
            field: r.field,
            accommodation: r.accommodation,
        });
    }
    Ok(sol)
}

/// Same pipeline without the gate; the residuals are reported as computed.
pub fn solve_raw(p: &PlasmaParameters) -> Result<Solution> {
    let classification = classify(p)?;
    solve_classified(p, classification)
}

fn solve_classified(
    p: &PlasmaParameters,
    classification: SpectrumClassification,
) -> Result<Solution> {
    let head = laurent_head(p);
    let l1 = lambda_one_checked(p)?;
    let e_infty = p.e0 * l1 / head.lambda_inf;

    let disc = match classification.eta0 {
        Some(eta0) => Some(DiscreteAux::compute(eta0, p)?),
        None => None,
    };
    let (p1, p2) = p_integrals(p)?;
    let z0_a1 = a1_constant(p, disc.as_ref(), p1, p2)?;
    let e_debye = match &disc {
        Some(d) => e_debye_coeff(p, d.eta0, z0_a1)?,
        None => Complex64::new(0.0, 0.0),
    };
    let a1 = z0_a1 / p.z0;
    let c1 = (2.0 * e_infty - z0_a1) * head.lambda_inf;

    let (nodes, _) = gauss_legendre(160);
    let cont_density: Vec<(f64, Complex64)> = nodes
        .iter()
        .map(|x| {
            let eta = 0.5 * (x + 1.0);
            (
                eta,
                e_continuum(eta, p, z0_a1, e_infty).unwrap_or(Complex64::new(0.0, 0.0)),
            )
        })
        .collect();

    let coefficients = CoefficientSet {
        e_infty,
        e_debye,
        z0_a1,
        a1,
        a0: -2.0 / 3.0 * a1,
        c1,
        cont_density,
    };
    let aux = SolutionAux {
        lambda_inf: head.lambda_inf,
        lambda_1: l1,
        p1,
        p2,
        disc,
    };
    let residuals = system_residuals(p, &classification, &coefficients, &aux)?;
    Ok(Solution {
        params: *p,
        classification,
        coefficients,
        residuals,
        aux,
    })
}

/// Residuals of the defining system evaluated on a coefficient set. The
/// continuous-spectrum integrals are done by direct quadrature so this check
/// is independent of the residue algebra that produced A1.
pub fn system_residuals(
    p: &PlasmaParameters,
    classification: &SpectrumClassification,
    cs: &CoefficientSet,
    aux: &SolutionAux,
) -> Result<SystemResiduals> {
    let spec = QuadratureSpec::with_mode(EndpointMode::LogRefined);
    let e_cont = |eta: f64| e_continuum(eta, p, cs.z0_a1, cs.e_infty);

    // Pole elimination at ±eta0.
    let pole = match (classification.region, &aux.disc) {
        (Region::DPlus, Some(d)) => {
            let lp = lambda_prime(d.eta0, p)?;
            let t1 = cs.z0_a1 * (2.0 / 3.0 * t_func(d.eta0, p)? - aux.lambda_inf * d.eta0);
            let t2 = cs.e_debye * lp * (p.eta1_sq - d.eta0 * d.eta0);
            let t3 = 2.0 * cs.e_infty * aux.lambda_inf * d.eta0;
            let scale = t1.norm().max(t2.norm()).max(t3.norm()).max(1e-300);
            (t1 - (t2 - t3)).norm() / scale
        }
        _ => 0.0,
    };

    // Field normalisation e(0) = e0.
    let int_e = integral_01(e_cont, &spec)?;
    let field_lhs = cs.e_infty + cs.e_debye + int_e;
    let field_scale = cs
        .e_infty
        .norm()
        .max(cs.e_debye.norm())
        .max(int_e.norm())
        .max(p.e0.norm())
        .max(1e-300);
    let field = (field_lhs - p.e0).norm() / field_scale;

    // Accommodation moment equation.
    let accommodation = if p.alpha_p == 0.0 {
        cs.z0_a1.norm() / p.e0.norm().max(1e-300)
    } else {
        let int_me = integral_01(|eta| Ok(m_continuum(eta, p)? * e_cont(eta)?), &spec)?;
        let t_inf = cs.e_infty / 36.0;
        let t_deb = match &aux.disc {
            Some(d) => cs.e_debye * d.m_eta0,
            None => Complex64::new(0.0, 0.0),
        };
        let t_a1 = cs.z0_a1 * (1.0 - p.alpha_p) / (36.0 * p.alpha_p);
        let scale = t_inf
            .norm()
            .max(t_deb.norm())
            .max(int_me.norm())
            .max(t_a1.norm())
            .max(1e-300);
        (t_inf + t_deb + int_me + t_a1).norm() / scale
    };

    Ok(SystemResiduals {
        pole,
        field,
        accommodation,
    })
}
