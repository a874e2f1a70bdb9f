use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dimensionless inputs of the half-space problem together with the derived
/// complex constants that every formula downstream consumes.
///
/// * `gamma` — frequency offset omega/omega_p - 1,
/// * `eps`   — collision-to-plasma frequency ratio nu/omega_p (> 0),
/// * `alpha_p` — normal momentum accommodation coefficient in [0, 1],
/// * `e0`    — boundary field amplitude e(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaParameters {
    pub gamma: f64,
    pub eps: f64,
    pub alpha_p: f64,
    pub e0: Complex64,
    /// z0 = 1 - i (1 + gamma) / eps
    pub z0: Complex64,
    /// eta1^2 = eps^2/3 - i eps (1 + gamma) / 3
    pub eta1_sq: Complex64,
    /// c = eta1^2 * z0
    pub c: Complex64,
}

impl PlasmaParameters {
    pub fn new(gamma: f64, eps: f64, alpha_p: f64, e0: Complex64) -> Result<Self> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidParameters {
                field: "eps",
                message: format!("must be finite and > 0, got {eps}"),
            });
        }
        if !gamma.is_finite() || gamma < -1.0 {
            return Err(Error::InvalidParameters {
                field: "gamma",
                message: format!("must be finite and >= -1, got {gamma}"),
            });
        }
        if !alpha_p.is_finite() || !(0.0..=1.0).contains(&alpha_p) {
            return Err(Error::InvalidParameters {
                field: "alpha_p",
                message: format!("must lie in [0, 1], got {alpha_p}"),
            });
        }
        if !e0.re.is_finite() || !e0.im.is_finite() {
            return Err(Error::InvalidParameters {
                field: "e0",
                message: "must be finite".to_string(),
            });
        }
        let z0 = Complex64::new(1.0, -(1.0 + gamma) / eps);
        let eta1_sq = Complex64::new(eps * eps / 3.0, -eps * (1.0 + gamma) / 3.0);
        let c = eta1_sq * z0;
        Ok(Self {
            gamma,
            eps,
            alpha_p,
            e0,
            z0,
            eta1_sq,
            c,
        })
    }

    /// Square root of eta1^2 with positive real part. Only eta1^2 and
    /// lambda(eta1) enter the final formulas, so the branch choice is
    /// observationally irrelevant (lambda is even).
    pub fn eta1(&self) -> Complex64 {
        let r = self.eta1_sq.sqrt();
        if r.re < 0.0 {
            -r
        } else {
            r
        }
    }

    /// lambda(eta1) = 1 - 1/z0. The quadratic factor of the Case reduction
    /// vanishes identically at z = eta1, leaving this closed value.
    pub fn lambda_one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.z0.inv()
    }

    /// Same parameters with a different boundary amplitude.
    pub fn with_e0(&self, e0: Complex64) -> Self {
        Self { e0, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants_match_definitions() {
        let p = PlasmaParameters::new(0.3, 0.7, 0.5, Complex64::new(1.0, 0.0)).unwrap();
        let z0 = Complex64::new(1.0, -(1.0 + 0.3) / 0.7);
        assert_eq!(p.z0, z0);
        let eta1_sq = Complex64::new(0.7 * 0.7 / 3.0, -0.7 * 1.3 / 3.0);
        assert_eq!(p.eta1_sq, eta1_sq);
        assert_eq!(p.c, eta1_sq * z0);
        // c = (1/3) [eps - i(1+gamma)]^2, the squared-bracket form
        let br = Complex64::new(0.7, -1.3);
        let c2 = br * br / 3.0;
        assert!((p.c - c2).norm() < 1e-15 * p.c.norm());
    }

    #[test]
    fn eta1_has_positive_real_part() {
        let p = PlasmaParameters::new(-0.5, 1.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(p.eta1().re > 0.0);
        let sq = p.eta1() * p.eta1();
        assert!((sq - p.eta1_sq).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let e0 = Complex64::new(1.0, 0.0);
        assert!(PlasmaParameters::new(0.0, -1.0, 0.5, e0).is_err());
        assert!(PlasmaParameters::new(0.0, 0.0, 0.5, e0).is_err());
        assert!(PlasmaParameters::new(-1.5, 0.5, 0.5, e0).is_err());
        assert!(PlasmaParameters::new(0.0, 0.5, 1.5, e0).is_err());
        assert!(PlasmaParameters::new(0.0, 0.5, -0.1, e0).is_err());
        assert!(PlasmaParameters::new(f64::NAN, 0.5, 0.5, e0).is_err());
        assert!(PlasmaParameters::new(0.0, 0.5, 0.5, Complex64::new(f64::INFINITY, 0.0)).is_err());
    }
}
