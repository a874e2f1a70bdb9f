//! Discrete-mode census in the (gamma, eps) parameter plane: winding index
//! of G = lambda^+/lambda^- along (0, 1), an independent contour count of
//! the zeros of lambda, the mode-existence curve L, region classification
//! and location of the plasma zero eta0.

use num_complex::Complex64;

use crate::dispersion::{case_lambda, lambda, lambda_boundary, lambda_prime, laurent_head};
use crate::error::{Error, Result};
use crate::numerics::winding_of_path;
use crate::params::PlasmaParameters;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// |G| below this (or |lambda^±| below 1e-8 |lambda_inf|) marks the near-L
/// band where the census is refused rather than guessed.
const NEAR_L_G_THRESHOLD: f64 = 1e-6;
const NEAR_L_REL_THRESHOLD: f64 = 1e-8;

/// Which side of the mode-existence curve the parameters fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// kappa = 1: the Debye/plasma zero pair ±eta0 exists.
    DPlus,
    /// kappa = 0: no discrete zeros besides infinity.
    DMinus,
    /// Too close to the curve L to decide.
    NearL,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::DPlus => write!(f, "D_plus"),
            Region::DMinus => write!(f, "D_minus"),
            Region::NearL => write!(f, "near_L"),
        }
    }
}

/// Real/imaginary decomposition of G(mu) = lambda^+/lambda^- built from the
/// on-cut Case function:
///   P± = (1+gamma)^2 - lambda_c (eps^2 - 3 mu^2) ± eps (1+gamma) s,
///   Q± = eps (1+gamma)(1 + lambda_c) ± s (eps^2 - 3 mu^2),  s = (pi/2) mu,
/// so that G = (g1 + i g2)/g with g = (P+)^2 + (Q+)^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GDecomposition {
    pub mu: f64,
    pub g: f64,
    pub g1: f64,
    pub g2: f64,
    pub s: f64,
}

impl GDecomposition {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.g1 / self.g, self.g2 / self.g)
    }
}

pub fn g_decompose(mu: f64, p: &PlasmaParameters) -> Result<GDecomposition> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::InvalidParameters {
            field: "mu",
            message: format!("must lie in (0, 1), got {mu}"),
        });
    }
    let lc = case_lambda(Complex64::new(mu, 0.0))?.re;
    let s = 0.5 * std::f64::consts::PI * mu;
    let g = p.gamma;
    let e = p.eps;
    let og = 1.0 + g;
    let q = e * e - 3.0 * mu * mu;
    let p_plus = og * og - lc * q + e * og * s;
    let p_minus = og * og - lc * q - e * og * s;
    let q_plus = e * og * (1.0 + lc) + s * q;
    let q_minus = e * og * (1.0 + lc) - s * q;
    let gg = p_plus * p_plus + q_plus * q_plus;

    // lambda^- is proportional to P+ + iQ+; a vanishing denominator means a
    // boundary value of lambda vanishes (parameters on the curve L).
    let head = laurent_head(p);
    let scale = 3.0 * p.c.norm() * head.lambda_inf.norm() * NEAR_L_REL_THRESHOLD;
    if gg.sqrt() < scale {
        return Err(Error::Resonance {
            mu,
            modulus: gg.sqrt() / (3.0 * p.c.norm()),
        });
    }
    Ok(GDecomposition {
        mu,
        g: gg,
        g1: p_plus * p_minus + q_plus * q_minus,
        g2: p_plus * q_minus - p_minus * q_plus,
        s,
    })
}

fn g_value_checked(mu: f64, p: &PlasmaParameters, lam_inf_norm: f64) -> Result<Complex64> {
    let (lp, lm) = lambda_boundary(mu, p)?;
    let floor = NEAR_L_REL_THRESHOLD * lam_inf_norm;
    if lp.norm() < floor || lm.norm() < floor {
        return Err(Error::NearL {
            detail: format!("boundary value of lambda vanishes near mu = {mu}"),
        });
    }
    let g = lp / lm;
    if g.norm() < NEAR_L_G_THRESHOLD {
        return Err(Error::NearL {
            detail: format!("|G({mu})| = {:.3e}", g.norm()),
        });
    }
    Ok(g)
}

/// Index kappa(G) = winding of G(mu) = lambda^+/lambda^- about the origin as
/// mu runs over [0, 1], by continuity-based argument unwrapping on an
/// adaptively refined grid. G(0) = G(1) = 1, so the total is an exact
/// multiple of 2 pi.
pub fn winding_index(p: &PlasmaParameters) -> Result<u32> {
    let head = laurent_head(p);
    let lam_inf_norm = head.lambda_inf.norm();
    let f = |t: f64| -> Result<Complex64> {
        // Endpoint limits are exact; interior uses boundary values.
        if t <= 0.0 || t >= 1.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        g_value_checked(t, p, lam_inf_norm)
    };
    // Clustered initial grid: G turns fastest near the ends for small eps.
    let total = winding_of_path(&f, 0.0, 1.0, 257, 0.0, 44).map_err(near_l_from_winding)?;
    let raw = total / TWO_PI;
    let rounded = raw.round();
    if (raw - rounded).abs() > 0.01 {
        return Err(Error::NonIntegerWinding { raw });
    }
    if rounded < 0.0 {
        return Err(Error::NearL {
            detail: format!("negative winding index {rounded}"),
        });
    }
    Ok(rounded as u32)
}

fn near_l_from_winding(e: Error) -> Error {
    match e {
        Error::ZeroCrossing { modulus } => Error::NearL {
            detail: format!("G path passes through the origin (|G| = {modulus:.3e})"),
        },
        Error::NonConvergence { what, residual } => Error::NearL {
            detail: format!("{what} exhausted (last jump {residual:.3e})"),
        },
        other => other,
    }
}

/// Number of zeros of lambda outside the cut, by the argument principle on a
/// dog-bone-equivalent contour: winding along the circle |z| = radius minus
/// the winding along a stadium of half-width `cut_offset` around [-1, 1].
/// lambda is only ever evaluated off the cut.
///
/// Zeros can sit close to the cut (parameters near the curve L compress the
/// plasma zero onto it), so the stadium is evaluated at two small offsets;
/// disagreement means a zero lies between them and the count is refused.
pub fn contour_zero_count(p: &PlasmaParameters, radius: f64) -> Result<i64> {
    let a = contour_zero_count_with_offset(p, radius, 1.6e-4)?;
    let b = contour_zero_count_with_offset(p, radius, 3.2e-5)?;
    if a != b {
        return Err(Error::ContourTooClose {
            min_modulus: f64::NAN,
        });
    }
    Ok(a)
}

pub fn contour_zero_count_with_offset(
    p: &PlasmaParameters,
    radius: f64,
    cut_offset: f64,
) -> Result<i64> {
    if radius <= 1.0 {
        return Err(Error::InvalidParameters {
            field: "radius",
            message: format!("contour radius must exceed 1, got {radius}"),
        });
    }
    let head = laurent_head(p);
    let floor = 1e-8 * head.lambda_inf.norm();

    let circle = |t: f64| -> Result<Complex64> {
        let z = Complex64::from_polar(radius, TWO_PI * t);
        let v = lambda(z, p)?;
        if v.norm() < floor {
            return Err(Error::ContourTooClose { min_modulus: v.norm() });
        }
        Ok(v)
    };
    let w_circle = winding_of_path(&circle, 0.0, 1.0, 65, 0.0, 40)?;

    let d = cut_offset;
    // Counterclockwise stadium: bottom edge, right cap, top edge, left cap,
    // each on a quarter of the parameter interval.
    let stadium = |t: f64| -> Result<Complex64> {
        let z = if t < 0.25 {
            let u = t / 0.25;
            Complex64::new(-1.0 + 2.0 * u, -d)
        } else if t < 0.5 {
            let u = (t - 0.25) / 0.25;
            let th = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * u;
            Complex64::new(1.0, 0.0) + Complex64::from_polar(d, th)
        } else if t < 0.75 {
            let u = (t - 0.5) / 0.25;
            Complex64::new(1.0 - 2.0 * u, d)
        } else {
            let u = (t - 0.75) / 0.25;
            let th = std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * u;
            Complex64::new(-1.0, 0.0) + Complex64::from_polar(d, th)
        };
        let v = lambda(z, p)?;
        if v.norm() < floor {
            return Err(Error::ContourTooClose { min_modulus: v.norm() });
        }
        Ok(v)
    };
    let w_stadium = winding_of_path(&stadium, 0.0, 1.0, 513, 0.0, 44)?;

    let raw = (w_circle - w_stadium) / TWO_PI;
    let rounded = raw.round();
    if (raw - rounded).abs() > 0.01 {
        return Err(Error::NonIntegerWinding { raw });
    }
    Ok(rounded as i64)
}

/// A point of the mode-existence curve L in the (gamma, eps) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LCurvePoint {
    pub mu: f64,
    pub gamma: f64,
    pub eps: f64,
}

/// Traced curve plus the parameter values that produced negative radicands
/// (no real curve point there).
#[derive(Debug, Clone, PartialEq)]
pub struct LCurveTrace {
    pub points: Vec<LCurvePoint>,
    pub skipped: Vec<f64>,
}

/// Trace the curve L = {(gamma, eps): g1 = g2 = 0} parametrised by mu:
///   eps = sqrt(L2),  gamma = -1 + sqrt(L1),
///   L2 = -3 mu^2 s^2 / (lc [s^2 + (1+lc)^2]),
///   L1 = -3 mu^2 [s^2 + lc (1+lc)]^2 / (lc [s^2 + (1+lc)^2]),
/// with lc = lambda_c(mu), s = (pi/2) mu. Points require lc < 0.
pub fn l_curve(mu_grid: &[f64]) -> LCurveTrace {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &mu in mu_grid {
        if !(mu > 0.0 && mu < 1.0) {
            skipped.push(mu);
            continue;
        }
        match l_curve_point(mu) {
            Some(pt) => points.push(pt),
            None => skipped.push(mu),
        }
    }
    LCurveTrace { points, skipped }
}

pub fn l_curve_point(mu: f64) -> Option<LCurvePoint> {
    let lc = case_lambda(Complex64::new(mu, 0.0)).ok()?.re;
    let s = 0.5 * std::f64::consts::PI * mu;
    let s2 = s * s;
    let den = lc * (s2 + (1.0 + lc) * (1.0 + lc));
    if den == 0.0 {
        return None;
    }
    let l2 = -3.0 * mu * mu * s2 / den;
    let inner = s2 + lc * (1.0 + lc);
    let l1 = -3.0 * mu * mu * inner * inner / den;
    if l2 <= 0.0 || l1 < 0.0 {
        return None;
    }
    Some(LCurvePoint {
        mu,
        gamma: -1.0 + l1.sqrt(),
        eps: l2.sqrt(),
    })
}

/// Default mu grid for the curve tracer: points geometrically clustered
/// towards both ends of (0, 1) where the parametrisation degenerates.
pub fn default_l_curve_grid(n: usize) -> Vec<f64> {
    let n = n.max(4);
    let half = n / 2;
    let mut grid = Vec::with_capacity(n);
    // left half: 1e-4 .. 0.5 geometric
    for k in 0..half {
        let t = k as f64 / (half - 1) as f64;
        grid.push(1e-4 * (0.5f64 / 1e-4).powf(t));
    }
    // right half: mirrored cluster towards 1
    for k in 0..(n - half) {
        let t = k as f64 / (n - half - 1) as f64;
        let d = 1e-6 * (0.5f64 / 1e-6).powf(t);
        grid.push(1.0 - d);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

/// Census verdict for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumClassification {
    /// Winding index kappa(G) in {0, 1}.
    pub kappa: u32,
    /// Number of discrete zeros off the cut, always 2 kappa.
    pub n_zeros: u32,
    /// The zero with positive real part when present.
    pub eta0: Option<Complex64>,
    pub region: Region,
}

/// Classify (gamma, eps): winding index, then the plasma zero when kappa = 1.
/// Near-L parameters surface as `Error::NearL`; a kappa >= 2 (never observed
/// in the physical box) is reported as an anomaly through `NearL` as well.
pub fn classify(p: &PlasmaParameters) -> Result<SpectrumClassification> {
    let kappa = winding_index(p)?;
    match kappa {
        0 => Ok(SpectrumClassification {
            kappa: 0,
            n_zeros: 0,
            eta0: None,
            region: Region::DMinus,
        }),
        1 => {
            let eta0 = find_eta0(p)?;
            Ok(SpectrumClassification {
                kappa: 1,
                n_zeros: 2,
                eta0: Some(eta0),
                region: Region::DPlus,
            })
        }
        k => Err(Error::NearL {
            detail: format!("anomalous winding index {k}"),
        }),
    }
}

/// Zero-location tolerance relative to |lambda_inf|.
const ZERO_REL_TOL: f64 = 1e-10;

/// Locate the plasma zero eta0 (Re eta0 > 0): Newton seeded from the root of
/// the two-term Laurent truncation, with a grid-seeded fallback, confirmed by
/// a small-circle argument count of one.
pub fn find_eta0(p: &PlasmaParameters) -> Result<Complex64> {
    let newton = find_eta0_newton(p);
    let z = match newton {
        Ok(z) => z,
        Err(_) => find_eta0_subdivision(p)?,
    };
    confirm_simple_zero(z, p)?;
    Ok(z)
}

/// Newton from the Laurent seed z^2 = -lambda_2 / lambda_inf.
pub fn find_eta0_newton(p: &PlasmaParameters) -> Result<Complex64> {
    let head = laurent_head(p);
    if head.lambda_inf.norm() == 0.0 {
        return Err(Error::NotInDPlus);
    }
    let mut seed = (-head.lambda_2 / head.lambda_inf).sqrt();
    if seed.re < 0.0 {
        seed = -seed;
    }
    polish(seed, p)
}

/// Fallback: Newton from a deterministic grid of seeds over the right
/// half-plane (cut strip excluded), nearest-converged first.
pub fn find_eta0_subdivision(p: &PlasmaParameters) -> Result<Complex64> {
    let mut best: Option<Complex64> = None;
    let mut best_val = f64::INFINITY;
    let mut seeds = Vec::new();
    for i in 0..14 {
        for j in 0..21 {
            let re = 0.02 + 6.0 * (i as f64 / 13.0).powi(2);
            let im = -6.0 + 12.0 * j as f64 / 20.0;
            if re < 1.1 && im.abs() < 0.05 {
                continue;
            }
            seeds.push(Complex64::new(re, im));
        }
    }
    for seed in seeds {
        if let Ok(z) = polish(seed, p) {
            let v = lambda(z, p).map(|v| v.norm()).unwrap_or(f64::INFINITY);
            if z.re > 0.0 && v < best_val {
                best_val = v;
                best = Some(z);
            }
        }
    }
    best.ok_or(Error::NonConvergence {
        what: "plasma-zero subdivision search",
        residual: best_val,
    })
}

fn polish(seed: Complex64, p: &PlasmaParameters) -> Result<Complex64> {
    let head = laurent_head(p);
    let tol = ZERO_REL_TOL * head.lambda_inf.norm();
    let f = |z: Complex64| lambda(z, p).unwrap_or(Complex64::new(1e6, 0.0));
    let df = |z: Complex64| lambda_prime(z, p).unwrap_or(Complex64::new(1e-12, 0.0));
    let mut z = crate::numerics::complex_newton(f, df, seed, tol, 60)?;
    if z.re < 0.0 {
        z = -z; // lambda is even; report the positive-real-part member
    }
    if z.re <= 0.0 || (z.im.abs() < 1e-10 && z.re.abs() <= 1.0) {
        return Err(Error::NearL {
            detail: format!("zero converged onto the cut at {z}"),
        });
    }
    Ok(z)
}

/// Small-circle argument-principle count around z must be exactly one.
fn confirm_simple_zero(z: Complex64, p: &PlasmaParameters) -> Result<()> {
    let dist_to_cut = if z.re.abs() <= 1.0 {
        z.im.abs()
    } else {
        let dx = z.re.abs() - 1.0;
        (dx * dx + z.im * z.im).sqrt()
    };
    if dist_to_cut < 1e-8 {
        return Err(Error::NearL {
            detail: format!("zero {z} within 1e-8 of the cut"),
        });
    }
    let r = (1e-3 * z.norm().max(1.0)).min(0.5 * dist_to_cut);
    let f = |t: f64| -> Result<Complex64> {
        let w = z + Complex64::from_polar(r, TWO_PI * t);
        lambda(w, p)
    };
    let total = winding_of_path(&f, 0.0, 1.0, 33, 0.0, 40)?;
    let turns = (total / TWO_PI).round() as i64;
    if turns != 1 {
        return Err(Error::NonConvergence {
            what: "small-circle count around eta0 is not one",
            residual: turns as f64,
        });
    }
    Ok(())
}
