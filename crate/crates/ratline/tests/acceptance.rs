//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Run with `cargo test -p ratline --test acceptance`; the process exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratline::core::approx::{interpolate, interpolation_nodes, RationalExpansion};
use ratline::core::calculus::{differentiate, fourier_transform, fourier_weight};
use ratline::core::cauchy::{cauchy_basis, cauchy_offaxis, eta_coeff};
use ratline::core::trig::{kernel_norm, lebesgue_constant};
use ratline::core::{Complex64, KernelOrder, MobiusMap, OscillatoryFunction, Side};
use ratline::oracle::{oracle_cauchy, oracle_fourier, CauchyPoint, OracleOptions};
use ratline::report::{convergence_sweep, error_report, linear_fit, Grid};
use ratline::testfn::{by_name, two_part};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gauss(x: f64) -> Complex64 {
    c((-x * x).exp(), 0.0)
}

fn interpolation_identity() -> Outcome {
    let map = MobiusMap::default();
    let mut worst: f64 = 0.0;
    for n in (8..=512).step_by(8) {
        let e = interpolate(gauss, c(0.0, 0.0), n, map).unwrap();
        for x in interpolation_nodes(n, map) {
            worst = worst.max((e.evaluate_real(x) - gauss(x)).norm());
        }
        // node at infinity: the expansion vanishes there
        worst = worst.max(e.coefficient_sum().norm());
    }
    outcome(worst <= 1e-11, format!("max node residual {worst:.2e} over n = 8, 16, ..., 512 (need <= 1e-11)"))
}

fn spectral_convergence() -> Outcome {
    let f = two_part(2.0, -3.0);
    let r = convergence_sweep(&f, &[10, 50, 90, 130], 1.0, Grid::default()).unwrap();
    let sups: Vec<f64> = r.errors.iter().map(|e| e.sup).collect();
    let decreasing = sups.windows(2).all(|w| w[1] < w[0]);
    let steepening = r.fitted_orders.windows(2).all(|w| w[1] > w[0]);
    let g = f.interpolate(256, MobiusMap::default()).unwrap();
    let sup256 = error_report(&g, &f, Grid::default()).unwrap().sup;
    outcome(
        decreasing && steepening && sup256 <= 1e-8,
        format!(
            "sup errors {:.1e} {:.1e} {:.1e} {:.1e}, orders {:.1} {:.1} {:.1}, n = 256 sup {sup256:.1e} (need <= 1e-8)",
            sups[0], sups[1], sups[2], sups[3], r.fitted_orders[0], r.fitted_orders[1], r.fitted_orders[2]
        ),
    )
}

fn plemelj() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xs: Vec<f64> = (0..50).map(|_| rng.gen_range(-20.0..20.0)).collect();
    let mut worst: f64 = 0.0;
    for &beta in &[0.5, 1.0, 2.0] {
        let map = MobiusMap::new(beta).unwrap();
        for j in -15..=15 {
            for &k in &[-10.0, -2.0, -0.5, 0.5, 2.0, 10.0] {
                let p = cauchy_basis(j, k, Side::Plus, map);
                let m = cauchy_basis(j, k, Side::Minus, map);
                for &x in &xs {
                    let d = p.evaluate_real(x) - m.evaluate_real(x) - map.basis_rjk(j, k, x);
                    worst = worst.max(d.norm());
                }
            }
        }
    }
    outcome(worst <= 1e-11, format!("max |C+ - C- - R_jk| = {worst:.2e} over 3 beta, 31 j, 6 k, 50 x (need <= 1e-11)"))
}

/// Distance from the axis for the near-axis oracle values.
const NEAR_AXIS: f64 = 1e-8;

fn eta_calibration() -> Outcome {
    let beta = 1.0;
    let map = MobiusMap::new(beta).unwrap();
    let opts = OracleOptions::default();
    let xs = [-2.5, -0.4, 0.0, 0.7, 3.0];
    let mut near: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    let mut unconverged = 0;
    for j in (-8i64..=8).filter(|&j| j != 0) {
        for &k0 in &[0.5, 2.0, 8.0] {
            let k = k0 * j.signum() as f64;
            let f = |x: f64| map.basis_r_real(j, x);
            for side in [Side::Plus, Side::Minus] {
                let closed = cauchy_basis(j, k, side, map);
                let eps = if side == Side::Plus { NEAR_AXIS } else { -NEAR_AXIS };
                for &x in &xs {
                    let value = closed.evaluate_real(x);
                    let o = oracle_cauchy(f, k, CauchyPoint::OffAxis(c(x, eps)), opts);
                    let b = oracle_cauchy(f, k, CauchyPoint::Boundary(x, side), opts);
                    unconverged += usize::from(!o.converged) + usize::from(!b.converged);
                    near = near.max((o.value - value).norm());
                    boundary = boundary.max((b.value - value).norm());
                }
            }
        }
    }
    let mut anchors: f64 = 0.0;
    for &k in &[0.5, 2.0, 8.0] {
        let e = (-k * beta).exp();
        anchors = anchors
            .max((eta_coeff(1, 1, k, beta).unwrap() + e).abs())
            .max((eta_coeff(2, 1, k, beta).unwrap() - 2.0 * k * beta * e).abs())
            .max((eta_coeff(2, 2, k, beta).unwrap() + e).abs());
    }
    outcome(
        near <= 1e-5 && anchors <= 1e-10 && unconverged == 0,
        format!(
            "near-axis (|Im z| = {NEAR_AXIS:.0e}) max diff {near:.2e} (need <= 1e-5), exact-limit oracle {boundary:.2e}, \
             anchors {anchors:.1e} (need <= 1e-10), unconverged oracles {unconverged}"
        ),
    )
}

fn fourier_weights() -> Outcome {
    let opts = OracleOptions::default();
    let ks = [-8.0, -5.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 8.0];
    let mut worst: f64 = 0.0;
    let mut unconverged = 0;
    let mut branches_exact = true;
    for &beta in &[0.5, 1.0] {
        let map = MobiusMap::new(beta).unwrap();
        for j in (-10i64..=10).filter(|&j| j != 0) {
            for &k in &ks {
                let w = fourier_weight(j, k, beta);
                let o = oracle_fourier(|x| map.basis_r_real(j, x), k, opts);
                unconverged += usize::from(!o.converged);
                worst = worst.max((o.value - c(w, 0.0)).norm());
                if k == 0.0 {
                    branches_exact &= w == -2.0 * PI * j.abs() as f64 * beta;
                } else if (j > 0) != (k > 0.0) {
                    branches_exact &= w == 0.0;
                }
            }
        }
    }
    outcome(
        worst <= 1e-6 && branches_exact && unconverged == 0,
        format!(
            "max |omega - oracle| {worst:.2e} over |j| <= 10, {} k in [-8, 8], beta 0.5 and 1 (need <= 1e-6); \
             k = 0 and sign-mismatch branches exact: {branches_exact}; unconverged oracles {unconverged}",
            ks.len()
        ),
    )
}

fn fourier_asymptotics() -> Outcome {
    let f = by_name("gaussian").unwrap();
    let g = f.interpolate(64, MobiusMap::default()).unwrap();
    let err = |k: f64| (fourier_transform(&g, k) - f.exact_fourier(k).unwrap()).norm();
    let (e5, e40, em5, em40) = (err(5.0), err(40.0), err(-5.0), err(-40.0));
    outcome(
        e40 < e5 && em40 < em5,
        format!("n = 64 errors: k = 5 {e5:.2e}, k = 40 {e40:.2e}, k = -5 {em5:.2e}, k = -40 {em40:.2e}"),
    )
}

fn differentiation() -> Outcome {
    let map = MobiusMap::default();
    let e = interpolate(gauss, c(0.0, 0.0), 256, map).unwrap();
    let d = differentiate(&e);
    let mut exact_err: f64 = 0.0;
    for i in 0..=4000 {
        let x = -10.0 + 20.0 * i as f64 / 4000.0;
        exact_err = exact_err.max((d.evaluate_real(x) - c(-2.0 * x * (-x * x).exp(), 0.0)).norm());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fd_err: f64 = 0.0;
    for _ in 0..200 {
        let beta = rng.gen_range(0.5..2.0);
        let map = MobiusMap::new(beta).unwrap();
        let terms: Vec<(i64, Complex64)> = (0..rng.gen_range(1..6))
            .map(|_| (rng.gen_range(-40..=40), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        let total: f64 = terms.iter().map(|t| t.1.norm()).sum();
        let scale = if total > 10.0 { 10.0 / total } else { 1.0 };
        let e = RationalExpansion::from_terms(map, terms.into_iter().map(|(j, a)| (j, a * scale)));
        let de = differentiate(&e);
        let x: f64 = rng.gen_range(-5.0..5.0);
        let h = 1e-4;
        let f = |t: f64| e.evaluate_real(t);
        let fd = (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) / (12.0 * h);
        fd_err = fd_err.max((de.evaluate_real(x) - fd).norm());
    }
    outcome(
        exact_err <= 1e-7 && fd_err <= 1e-6,
        format!("n = 256 sup |x| <= 10 error {exact_err:.2e} (need <= 1e-7); random expansions vs central differences {fd_err:.2e} (need <= 1e-6)"),
    )
}

fn dyadic(lo: usize, hi: usize) -> Vec<usize> {
    std::iter::successors(Some(lo), |&n| Some(2 * n)).take_while(|&n| n <= hi).collect()
}

fn lebesgue() -> Outcome {
    let ns = dyadic(8, 1024);
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ns.iter().map(|&n| lebesgue_constant(n)).collect();
    let fit = linear_fit(&xs, &ys).unwrap();
    outcome(
        fit.r_squared >= 0.99 && fit.slope > 0.0,
        format!(
            "Lambda_n = {:.3} + {:.4} log n, R^2 = {:.5} over n = 8..1024 dyadic (need R^2 >= 0.99, slope > 0)",
            fit.intercept, fit.slope, fit.r_squared
        ),
    )
}

fn kernel_norms() -> Outcome {
    let ns = dyadic(8, 1024);
    let slope = |p: f64, order: KernelOrder| {
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = ns.iter().map(|&n| kernel_norm(n, p, order).ln()).collect();
        linear_fit(&xs, &ys).unwrap().slope
    };
    let s2 = slope(2.0, KernelOrder::Value);
    let s4 = slope(4.0, KernelOrder::Value);
    let d2 = slope(2.0, KernelOrder::Derivative);
    outcome(
        (s2 - 0.5).abs() <= 0.1 && (s4 - 0.75).abs() <= 0.1 && (d2 - 1.5).abs() <= 0.1,
        format!("slopes: L2 {s2:.4} (0.5), L4 {s4:.4} (0.75), derivative L2 {d2:.4} (1.5); tolerance 0.1"),
    )
}

fn fourier_jump() -> Outcome {
    let f = two_part(2.0, -3.0);
    let g: OscillatoryFunction = f.interpolate(130, MobiusMap::default()).unwrap();
    let (lo, hi) = (3.0 - 1e-3, 3.0 + 1e-3);
    let (vlo, vhi) = (fourier_transform(&g, lo), fourier_transform(&g, hi));
    let floor = (vlo - f.exact_fourier(lo).unwrap())
        .norm()
        .max((vhi - f.exact_fourier(hi).unwrap()).norm());
    let jump = (vhi - vlo).norm();
    outcome(
        jump > 10.0 * floor,
        format!("n = 130: |F(3.001) - F(2.999)| = {jump:.4}, local error floor {floor:.2e}"),
    )
}

/// Also confirms that a part sitting off-axis is evaluated consistently with
/// the boundary formula (not a numbered criterion, but cheap).
fn offaxis_consistency() -> bool {
    let map = MobiusMap::default();
    let g = OscillatoryFunction::basis(map, 2, 0.5, c(1.0, 0.0));
    let v = cauchy_offaxis(&g, c(0.3, 1e-9)).unwrap().value;
    (v - cauchy_basis(2, 0.5, Side::Plus, map).evaluate_real(0.3)).norm() < 1e-6
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("interpolation identity", interpolation_identity),
        ("spectral convergence, two-part function", spectral_convergence),
        ("Plemelj identity", plemelj),
        ("eta calibration against Cauchy oracle", eta_calibration),
        ("Fourier weights against quadrature", fourier_weights),
        ("Fourier asymptotics", fourier_asymptotics),
        ("differentiation", differentiation),
        ("Lebesgue constant growth", lebesgue),
        ("Dirichlet kernel norms", kernel_norms),
        ("Fourier jump at k = 3", fourier_jump),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {name}: {} ({:.1}s)", i + 1, o.detail, t.elapsed().as_secs_f64());
        failed += usize::from(!o.pass);
    }
    if !offaxis_consistency() {
        println!("FAIL off-axis evaluation disagrees with the boundary formula near the axis");
        failed += 1;
    }
    println!("{} of {} criteria passed", criteria.len() - failed.min(criteria.len()), criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
