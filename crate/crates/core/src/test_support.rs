use num_complex::Complex64;

use crate::PlasmaParameters;

pub fn sample_params() -> PlasmaParameters {
    PlasmaParameters::new(0.0, 0.5, 0.5, Complex64::new(1.0, 0.0)).unwrap()
}

/// A spread of points safely away from the cut [-1, 1].
pub const OFF_CUT_POINTS: &[Complex64] = &[
    Complex64::new(3.0, 2.0),
    Complex64::new(-1.7, 0.4),
    Complex64::new(0.3, 1.2),
    Complex64::new(-0.2, -0.7),
    Complex64::new(2.4, -0.05),
    Complex64::new(0.05, 0.35),
    Complex64::new(-4.0, 1.0),
    Complex64::new(1.4, 0.02),
    Complex64::new(6.5, -3.0),
    Complex64::new(-2.0, -2.0),
];

pub fn assert_close(got: Complex64, want: Complex64, tol: f64) {
    let scale = want.norm().max(1.0);
    assert!(
        (got - want).norm() <= tol * scale,
        "got {got}, want {want} (tol {tol}, diff {})",
        (got - want).norm()
    );
}

/// Small deterministic xorshift generator for reproducible "random" sweeps in
/// tests.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_f64(&mut self) -> f64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        (x >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Complex point with |Im| >= `min_im`, guaranteed off the cut.
    pub fn off_cut_point(&mut self, min_im: f64) -> Complex64 {
        let re = self.in_range(-4.0, 4.0);
        let mut im = self.in_range(-3.0, 3.0);
        if im.abs() < min_im {
            im = if im >= 0.0 { min_im } else { -min_im };
        }
        Complex64::new(re, im)
    }
}
