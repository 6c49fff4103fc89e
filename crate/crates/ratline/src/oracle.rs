//! Brute-force quadrature references for Fourier and Cauchy integrals.
//!
//! Nothing here touches the closed forms in `ratline_core`; the integrals are
//! computed directly from point values of the integrand. The real line is
//! split into a finite part `[-R, R]`, integrated by adaptive Gauss–Kronrod,
//! and two tails:
//!
//! * without oscillation the tails are paired, `∫_R^∞ h(x) + h(-x) dx`, and
//!   mapped to `[0, 1]` by `x = R/t` (this is also the principal value at
//!   infinity when `h ~ c/x`);
//! * with oscillation `e^{-ikx}` each tail is summed over half periods and
//!   the partial sums are extrapolated with Wynn's epsilon algorithm.
//!
//! The result is recomputed for a sweep of truncations `R` and accepted once
//! consecutive values agree to the requested tolerance.

use std::f64::consts::PI;

use ratline_core::quad::{integrate, QuadOptions};
use ratline_core::{Complex64, Side};

/// Outcome of an oracle integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: Complex64,
    /// Estimated absolute error: quadrature estimates plus the spread over the
    /// last two truncations.
    pub abs_error: f64,
    pub converged: bool,
}

/// Truncation sweep `{R/8, R/4, R/2, R}` and agreement tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub truncation: f64,
    pub tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            truncation: 400.0,
            tol: 1e-8,
        }
    }
}

impl OracleOptions {
    fn sweep(&self, min_radius: f64) -> [f64; 4] {
        let r = self.truncation.max(8.0 * min_radius);
        [r / 8.0, r / 4.0, r / 2.0, r]
    }
}

const MAX_TAIL_PANELS: usize = 600;
/// Adaptive panel budget for one half-period tail piece.
const TAIL_PIECE_PANELS: usize = 256;

struct LineIntegrator<'a> {
    h: &'a dyn Fn(f64) -> Complex64,
    k: f64,
    quad_tol: f64,
    error: f64,
    ok: bool,
}

impl<'a> LineIntegrator<'a> {
    fn new(h: &'a dyn Fn(f64) -> Complex64, k: f64, tol: f64) -> Self {
        LineIntegrator {
            h,
            k,
            quad_tol: tol * 1e-2,
            error: 0.0,
            ok: true,
        }
    }

    fn panel_width(&self) -> f64 {
        if self.k == 0.0 {
            1.0
        } else {
            (2.0 * PI / (10.0 * self.k.abs())).min(1.0)
        }
    }

    fn quad<G: Fn(f64) -> Complex64>(&mut self, g: G, points: &[f64]) -> Complex64 {
        self.quad_budget(g, points, 8 * points.len() + 20_000)
    }

    fn quad_budget<G: Fn(f64) -> Complex64>(&mut self, g: G, points: &[f64], max_panels: usize) -> Complex64 {
        let opts = QuadOptions {
            abs_tol: self.quad_tol,
            rel_tol: 0.0,
            max_panels,
        };
        let r = integrate(g, points, opts);
        self.error += r.abs_error;
        self.ok &= r.converged;
        r.value
    }

    /// `∫_a^b h` with panels no wider than a tenth of a period; `extra`
    /// breakpoints inside `(a, b)` are honoured.
    fn finite(&mut self, a: f64, b: f64, extra: &[f64]) -> Complex64 {
        if b <= a {
            return Complex64::new(0.0, 0.0);
        }
        let width = self.panel_width();
        let count = ((b - a) / width).ceil().max(1.0) as usize;
        let mut points: Vec<f64> = (0..=count)
            .map(|i| if i == count { b } else { a + (b - a) * i as f64 / count as f64 })
            .collect();
        points.extend(extra.iter().copied().filter(|&p| p > a && p < b));
        points.sort_by(f64::total_cmp);
        points.dedup();
        let h = self.h;
        self.quad(h, &points)
    }

    fn tails(&mut self, r: f64) -> Complex64 {
        if self.k == 0.0 {
            let h = self.h;
            let g = |t: f64| {
                let x = r / t;
                (h(x) + h(-x)) * (r / (t * t))
            };
            self.quad(g, &[0.0, 0.25, 0.5, 1.0])
        } else {
            self.oscillatory_tail(r, 1.0) + self.oscillatory_tail(r, -1.0)
        }
    }

    /// `∫_R^∞ h(±x) dx` by half-period panels and epsilon extrapolation.
    fn oscillatory_tail(&mut self, r: f64, dir: f64) -> Complex64 {
        let step = PI / self.k.abs();
        let h = self.h;
        let mut sums: Vec<Complex64> = Vec::new();
        let mut total = Complex64::new(0.0, 0.0);
        let mut history: Vec<Complex64> = Vec::new();
        for m in 0..MAX_TAIL_PANELS {
            let a = r + step * m as f64;
            let b = a + step;
            let piece = self.quad_budget(|x| h(dir * x), &[a, b], TAIL_PIECE_PANELS);
            if !self.ok {
                return total + piece;
            }
            total += piece;
            sums.push(total);
            if m < 4 {
                continue;
            }
            let window = &sums[sums.len().saturating_sub(40)..];
            let est = epsilon_limit(window);
            history.push(est);
            let n = history.len();
            if n >= 3 {
                let d1 = (history[n - 1] - history[n - 2]).norm();
                let d2 = (history[n - 2] - history[n - 3]).norm();
                if d1.max(d2) <= self.quad_tol {
                    self.error += d1;
                    return est;
                }
            }
        }
        self.ok = false;
        let n = history.len();
        if n >= 2 {
            self.error += (history[n - 1] - history[n - 2]).norm();
        }
        history.last().copied().unwrap_or(total)
    }
}

/// Limit of a sequence by Wynn's epsilon algorithm: the last entry of the
/// highest even column reached.
pub fn epsilon_limit(s: &[Complex64]) -> Complex64 {
    let Some(&last) = s.last() else {
        return Complex64::new(0.0, 0.0);
    };
    let mut best = last;
    let mut prev = vec![Complex64::new(0.0, 0.0); s.len() + 1];
    let mut cur = s.to_vec();
    let mut column = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() <= 1e-300 {
                // converged exactly at this column
                return if column % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + d.inv());
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            best = *cur.last().expect("nonempty column");
        }
    }
    best
}

/// `scale · (offset + ∫ h)` for each radius of the sweep, extending the finite
/// part incrementally; the last two totals are compared.
fn line_sweep(
    h: &dyn Fn(f64) -> Complex64,
    k: f64,
    radii: [f64; 4],
    breakpoints: &[f64],
    tol: f64,
    offset: Complex64,
    scale: Complex64,
) -> OracleResult {
    let raw_tol = tol / scale.norm();
    let mut finite = Complex64::new(0.0, 0.0);
    let mut finite_error = 0.0;
    let mut ok = true;
    let mut reached = 0.0;
    let mut totals = Vec::with_capacity(radii.len());
    let mut tail_error = 0.0;
    for r in radii {
        let mut li = LineIntegrator::new(h, k, raw_tol);
        finite += li.finite(reached, r, breakpoints) + li.finite(-r, -reached, breakpoints);
        finite_error += li.error;
        li.error = 0.0;
        let tail = li.tails(r);
        tail_error = li.error;
        ok &= li.ok;
        reached = r;
        totals.push((offset + finite + tail) * scale);
        if !ok {
            // a larger radius cannot repair a failed quadrature
            break;
        }
    }
    if totals.len() < 2 {
        return OracleResult {
            value: totals[0],
            abs_error: (finite_error + tail_error) * scale.norm(),
            converged: false,
        };
    }
    let n = totals.len();
    let spread = (totals[n - 1] - totals[n - 2]).norm();
    let quad_error = (finite_error + tail_error) * scale.norm();
    OracleResult {
        value: totals[n - 1],
        abs_error: spread + quad_error,
        converged: ok && spread <= tol && quad_error <= tol,
    }
}

/// `⨍ e^{-ikx} f(x) dx` with symmetric truncation at infinity.
///
/// `f` should be free of oscillation at infinity (`e^{-ikx}` is applied
/// here) and decay at least like `1/x`.
pub fn oracle_fourier<F>(f: F, k: f64, opts: OracleOptions) -> OracleResult
where
    F: Fn(f64) -> Complex64,
{
    let h = |x: f64| Complex64::from_polar(1.0, -k * x) * f(x);
    line_sweep(
        &h,
        k,
        opts.sweep(1.0),
        &[],
        opts.tol,
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    )
}

/// Where the Cauchy kernel `1/(x - z)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CauchyPoint {
    /// A point `z` off the real axis.
    OffAxis(Complex64),
    /// The boundary value `lim_{ε→0+} at x ± iε`.
    Boundary(f64, Side),
}

impl CauchyPoint {
    fn center(&self) -> f64 {
        match *self {
            CauchyPoint::OffAxis(z) => z.re,
            CauchyPoint::Boundary(x, _) => x,
        }
    }
}

/// `(1/2πi) ∫ e^{-ikx} f(x) dx / (x - z)`.
///
/// Around `x0 = Re z` the value `g(x0)` is subtracted from `g = e^{-ikx} f`
/// and its integral `g(x0) log((x0 + w - z)/(x0 - w - z))` added back in
/// closed form; for [`CauchyPoint::Boundary`] that logarithm is exactly `±iπ`,
/// which gives the one-sided limit rather than a near-axis approximation.
pub fn oracle_cauchy<F>(f: F, k: f64, point: CauchyPoint, opts: OracleOptions) -> OracleResult
where
    F: Fn(f64) -> Complex64,
{
    let x0 = point.center();
    let z = match point {
        CauchyPoint::OffAxis(z) => z,
        CauchyPoint::Boundary(x, _) => Complex64::new(x, 0.0),
    };
    let g = |x: f64| Complex64::from_polar(1.0, -k * x) * f(x);
    let g0 = g(x0);
    let w = 1.0;
    let log_term = match point {
        CauchyPoint::OffAxis(z) => (Complex64::new(x0 + w, 0.0) - z).ln() - (Complex64::new(x0 - w, 0.0) - z).ln(),
        CauchyPoint::Boundary(_, Side::Plus) => Complex64::new(0.0, PI),
        CauchyPoint::Boundary(_, Side::Minus) => Complex64::new(0.0, -PI),
    };
    let h = |x: f64| {
        if (x - x0).abs() <= w {
            (g(x) - g0) / (x - z)
        } else {
            g(x) / (x - z)
        }
    };
    let scale = Complex64::new(0.0, 2.0 * PI).inv();
    let window = [x0 - w, x0, x0 + w];
    line_sweep(
        &h,
        k,
        opts.sweep(x0.abs() + 2.0 * w),
        &window,
        opts.tol,
        g0 * log_term,
        scale,
    )
}
