use num_complex::Complex64;
use plasma_halfspace::coefficients::{m_discrete, solve_raw};
use plasma_halfspace::dispersion::{lambda, lambda_prime};
use plasma_halfspace::reconstruction::{boundary_at, boundary_distribution};
use plasma_halfspace::spectrum::{contour_zero_count, find_eta0, winding_index};
use plasma_halfspace::PlasmaParameters;

fn params(g: f64, e: f64, a: f64) -> PlasmaParameters {
    PlasmaParameters::new(g, e, a, Complex64::new(1.0, 0.0)).unwrap()
}

#[test]
fn diag_contour() {
    for (g, e) in [(0.0, 0.1), (0.0, 1.0), (2.0, 0.5), (3.0, 0.4), (-0.9, 0.2)] {
        let p = params(g, e, 0.5);
        let k = winding_index(&p);
        let n = contour_zero_count(&p, 10.0);
        println!("({g}, {e}): kappa = {k:?}, contour = {n:?}");
        if let Ok(1) = k {
            let eta0 = find_eta0(&p);
            println!("   eta0 = {eta0:?}");
        }
    }
}

#[test]
fn diag_lambda_prime() {
    let p = params(0.0, 0.1, 0.5);
    let eta0 = find_eta0(&p).unwrap();
    let analytic = lambda_prime(eta0, &p).unwrap();
    let h = 1e-7 * eta0.norm();
    let num = (lambda(eta0 + h, &p).unwrap() - lambda(eta0 - h, &p).unwrap()) / (2.0 * h);
    println!(
        "eta0 = {eta0}, analytic = {analytic}, fd = {num}, diff = {:.3e}, rel = {:.3e}",
        (analytic - num).norm(),
        (analytic - num).norm() / analytic.norm()
    );
}

#[test]
fn diag_m_large() {
    let p = params(0.0, 0.5, 0.5);
    let w = Complex64::new(700.0, 700.0);
    let got = m_discrete(w, &p).unwrap();
    let mut log = Complex64::new(0.0, 0.0);
    let mut term = -w.inv();
    for k in 1..=40 {
        log += term / k as f64;
        term *= w.inv();
    }
    let one = Complex64::new(1.0, 0.0);
    let series = (p.eta1_sq - w * w) * ((w - one / 6.0) + (w * w - 2.0 / 3.0 * w) * log);
    println!(
        "got = {got}, series = {series}, rel = {:.3e}",
        (got - series).norm() / series.norm()
    );
    let direct_log = (one - w.inv()).ln();
    println!("ln closed = {direct_log}, ln series = {log}, diff = {:.3e}", (direct_log - log).norm());
}

#[test]
fn diag_spec_accom() {
    let p = params(0.0, 0.1, 0.5);
    let sol = solve_raw(&p).unwrap();
    let bd = boundary_distribution(&sol, 400).unwrap();
    let n = bd.mu_grid.len() / 2;
    let h_scale = bd.h_values.iter().map(|h| h.norm()).fold(0.0f64, f64::max);
    let a1 = sol.coefficients.a1;
    let mut worst = (0.0f64, 0.0f64);
    for k in 0..n {
        let mu = bd.mu_grid[n + k];
        let lhs = bd.h_values[n + k] - bd.h_values[n - 1 - k] - a1 * (mu - 2.0 / 3.0);
        let r = lhs.norm() / h_scale;
        if r > worst.1 {
            worst = (mu, r);
        }
    }
    println!("worst spec_accom at mu = {} -> {:.3e} (h_scale {h_scale:.3})", worst.0, worst.1);
    // residual profile near the ends
    for &mu in &[bd.mu_grid[n], bd.mu_grid[n + 1], bd.mu_grid[2 * n - 2], bd.mu_grid[2 * n - 1]] {
        let h_pos = boundary_at(&sol, mu).unwrap();
        let h_neg = boundary_at(&sol, -mu).unwrap();
        let lhs = h_pos - h_neg - a1 * (mu - 2.0 / 3.0);
        println!("  mu = {mu:.9}: residual {:.3e}", lhs.norm() / h_scale);
    }
}

#[test]
fn diag_pv_tail() {
    use plasma_halfspace::coefficients::e_continuum;
    use plasma_halfspace::dispersion::lambda;
    use plasma_halfspace::numerics::{integrate, pv_integrate, EndpointMode, QuadratureSpec};
    let p = params(0.0, 0.1, 0.5);
    let sol = solve_raw(&p).unwrap();
    let cs = &sol.coefficients;
    let mu = 0.9999909863519812f64;
    let e_cont = |eta: f64| e_continuum(eta, &p, cs.z0_a1, cs.e_infty).unwrap_or(Complex64::new(0.0, 0.0));
    let g = |eta: f64| (Complex64::new(mu * eta, 0.0) - p.eta1_sq) * e_cont(eta);
    let loose = QuadratureSpec::default();
    let tight = QuadratureSpec { rel_tol: 1e-13, abs_tol: 1e-15, max_depth: 48, endpoint_mode: EndpointMode::Plain };
    let pv_loose = pv_integrate(g, mu, 0.0, 1.0, &loose).unwrap();
    let pv_tight = pv_integrate(g, mu, 0.0, 1.0, &tight).unwrap();
    println!("pv loose = {pv_loose}, tight = {pv_tight}, diff = {:.3e}", (pv_loose - pv_tight).norm());
    // negative-side plain integral at -mu
    let gm = |eta: f64| (Complex64::new(-mu * eta, 0.0) - p.eta1_sq) * e_cont(eta);
    let il = integrate(|eta| gm(eta) / (eta + mu), 0.0, 1.0, &loose).unwrap();
    let it = integrate(|eta| gm(eta) / (eta + mu), 0.0, 1.0, &tight).unwrap();
    println!("plain loose = {il}, tight = {it}, diff = {:.3e}", (il - it).norm());
    // delta term
    let delta = 2.0 * p.c * lambda(Complex64::new(mu, 0.0), &p).unwrap() / mu * e_cont(mu);
    println!("delta = {delta}");
    // residual with tight everything: recompute h(mu)-h(-mu)-A1*(mu-2/3)
    let h_mu = cs.e_infty / p.z0 * mu
        + cs.e_debye / p.z0 * (sol.classification.eta0.unwrap() * mu - p.eta1_sq) / (sol.classification.eta0.unwrap() - mu)
        + (pv_tight - delta) / p.z0;
    let h_neg = -cs.e_infty / p.z0 * mu
        + cs.e_debye / p.z0 * (sol.classification.eta0.unwrap() * (-mu) - p.eta1_sq) / (sol.classification.eta0.unwrap() + mu)
        + it / p.z0;
    let resid = h_mu - h_neg - cs.a1 * (mu - 2.0 / 3.0);
    println!("tight residual = {:.3e}", resid.norm() / 0.377);
}
