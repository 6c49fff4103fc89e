//! Trigonometric interpolation on the uniform grid `θ_ℓ = 2πℓ/n`.
//!
//! Coefficients are indexed `k = -n_-..=n_+` with `n_+ = ⌊n/2⌋` and
//! `n_- = ⌊(n-1)/2⌋`, so for even `n` the unpaired mode sits at `k = n_+`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::quad::{self, QuadOptions};
use crate::{fft, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrigGrid {
    n: usize,
}

impl TrigGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid size must be at least 1"));
        }
        Ok(TrigGrid { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn n_plus(&self) -> i64 {
        (self.n / 2) as i64
    }

    #[inline]
    pub fn n_minus(&self) -> i64 {
        ((self.n - 1) / 2) as i64
    }

    #[inline]
    pub fn node(&self, l: usize) -> f64 {
        TAU * (l as f64) / (self.n as f64)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|l| self.node(l)).collect()
    }
}

/// Output of the order-`n` DFT, `F̃_k` for `k = -n_-..=n_+`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoefficients {
    grid: TrigGrid,
    coeffs: Vec<Complex64>,
}

impl TrigCoefficients {
    pub fn grid(&self) -> TrigGrid {
        self.grid
    }

    /// Coefficients in index order `k = -n_-, ..., n_+`.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// `F̃_k`, or zero outside the stored band.
    pub fn get(&self, k: i64) -> Complex64 {
        let i = k + self.grid.n_minus();
        if k > self.grid.n_plus() || i < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let lo = -self.grid.n_minus();
        self.coeffs.iter().enumerate().map(move |(i, c)| (lo + i as i64, *c))
    }

    /// `I_n F(θ) = Σ_k e^{ikθ} F̃_k`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, (k as f64) * theta))
            .sum()
    }
}

/// `F̃_k = (1/n) Σ_ℓ e^{-ikθ_ℓ} F(θ_ℓ)` via the FFT.
pub fn dft(grid: TrigGrid, samples: &[Complex64]) -> Result<TrigCoefficients> {
    let n = grid.n();
    if samples.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: samples.len(),
        });
    }
    let mut work = samples.to_vec();
    fft::forward(&mut work);
    let scale = 1.0 / n as f64;
    let coeffs = (-grid.n_minus()..=grid.n_plus())
        .map(|k| work[k.rem_euclid(n as i64) as usize] * scale)
        .collect();
    Ok(TrigCoefficients { grid, coeffs })
}

/// Evaluate the interpolant; alias of [`TrigCoefficients::eval`].
pub fn trig_eval(c: &TrigCoefficients, theta: f64) -> Complex64 {
    c.eval(theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelOrder {
    Value,
    Derivative,
}

impl TryFrom<u32> for KernelOrder {
    type Error = Error;

    fn try_from(order: u32) -> Result<Self> {
        match order {
            0 => Ok(KernelOrder::Value),
            1 => Ok(KernelOrder::Derivative),
            other => Err(Error::InvalidOrder(other)),
        }
    }
}

/// Reduce to `(-π, π]`.
fn reduce_angle(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t > PI {
        t -= TAU;
    } else if t <= -PI {
        t += TAU;
    }
    t
}

/// The Dirichlet kernel `D_n(θ) = Σ_{k=-n_-}^{n_+} e^{ikθ}` or its derivative,
/// from the closed form
///
/// ```text
/// D_n(θ) = sin((n_- + 1/2)θ) / sin(θ/2) + σ e^{i n_+ θ},   σ = [n even]
/// ```
pub fn dirichlet_kernel(n: usize, theta: f64, order: KernelOrder) -> Complex64 {
    let grid = match TrigGrid::new(n) {
        Ok(g) => g,
        Err(_) => return Complex64::new(0.0, 0.0),
    };
    let m = grid.n_minus();
    let even = grid.n_plus() > m;
    let t = reduce_angle(theta);
    let a = m as f64 + 0.5;
    let np = grid.n_plus() as f64;

    match order {
        KernelOrder::Value => {
            let sym = if t == 0.0 {
                (2 * m + 1) as f64
            } else {
                (a * t).sin() / (0.5 * t).sin()
            };
            let mut d = Complex64::new(sym, 0.0);
            if even {
                d += Complex64::from_polar(1.0, np * t);
            }
            d
        }
        KernelOrder::Derivative => {
            // the quotient rule cancels to O(θ) near the origin; sum directly there
            let sym = if t.abs() < 1e-2 {
                -2.0 * (1..=m).map(|k| (k as f64) * ((k as f64) * t).sin()).sum::<f64>()
            } else {
                let (s, c) = (0.5 * t).sin_cos();
                let (sa, ca) = (a * t).sin_cos();
                (a * ca * s - 0.5 * c * sa) / (s * s)
            };
            let mut d = Complex64::new(sym, 0.0);
            if even {
                d += Complex64::new(0.0, np) * Complex64::from_polar(1.0, np * t);
            }
            d
        }
    }
}

/// Literal exponential sum for `D_n` or `D_n'`; O(n), used as a cross-check.
pub fn dirichlet_kernel_sum(n: usize, theta: f64, order: KernelOrder) -> Complex64 {
    let grid = match TrigGrid::new(n) {
        Ok(g) => g,
        Err(_) => return Complex64::new(0.0, 0.0),
    };
    (-grid.n_minus()..=grid.n_plus())
        .map(|k| {
            let e = Complex64::from_polar(1.0, (k as f64) * theta);
            match order {
                KernelOrder::Value => e,
                KernelOrder::Derivative => Complex64::new(0.0, k as f64) * e,
            }
        })
        .sum()
}

/// Points of each inter-node panel; 3 Kronrod sub-panels of 15 points.
const NORM_SUBPANELS: usize = 3;

/// `‖D_n^{(α)}‖_{L^p(𝕋)}` for α ∈ {0, 1}.
///
/// `|D_n(θ)| = |sin(nθ/2)/sin(θ/2)|` vanishes exactly at the nodes `2πℓ/n`,
/// so panels are split there; for the real (odd `n`) derivative the interior
/// sign changes are located by bisection so every sub-panel is smooth.
pub fn kernel_norm(n: usize, p: f64, order: KernelOrder) -> f64 {
    if n == 0 || p.is_nan() || p < 1.0 {
        return f64::NAN;
    }
    let abs_pow = |t: f64| dirichlet_kernel(n, t, order).norm().powf(p);
    let real_derivative = n % 2 == 1 && order == KernelOrder::Derivative && n > 1;

    let mut breaks: Vec<f64> = Vec::with_capacity(n * (NORM_SUBPANELS + 2) + 1);
    for l in 0..n {
        let a = TAU * l as f64 / n as f64;
        let b = TAU * (l + 1) as f64 / n as f64;
        let mut cuts = vec![a];
        if real_derivative {
            let g = |t: f64| dirichlet_kernel(n, t, order).re;
            const PROBES: usize = 16;
            let mut prev_t = a;
            let mut prev_v = g(a + (b - a) * 1e-9);
            for i in 1..=PROBES {
                let t = if i == PROBES { b - (b - a) * 1e-9 } else { a + (b - a) * i as f64 / PROBES as f64 };
                let v = g(t);
                if prev_v != 0.0 && v != 0.0 && prev_v.signum() != v.signum() {
                    cuts.push(bisect(&g, prev_t, t));
                }
                prev_t = t;
                prev_v = v;
            }
        }
        cuts.push(b);
        for w in cuts.windows(2) {
            for s in 0..NORM_SUBPANELS {
                breaks.push(w[0] + (w[1] - w[0]) * s as f64 / NORM_SUBPANELS as f64);
            }
        }
    }
    breaks.push(TAU);
    quad::composite_kronrod(abs_pow, &breaks).powf(1.0 / p)
}

fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64) -> f64 {
    let glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Samples per node-to-node cell when scanning the Lebesgue function.
const LEBESGUE_SAMPLES_PER_NODE: usize = 40;

/// `max_θ (1/n) Σ_ℓ |D_n(θ - θ_ℓ)|`.
///
/// The Lebesgue function is `2π/n`-periodic, so one cell is scanned with
/// `40n` points (at least `40n` overall, as dense as scanning `[0, 2π)`
/// with `40n²`).
pub fn lebesgue_constant(n: usize) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let h = TAU / n as f64;
    let samples = LEBESGUE_SAMPLES_PER_NODE * n;
    let nodes: Vec<f64> = (0..n).map(|l| h * l as f64).collect();
    let mut best: f64 = 1.0;
    for i in 0..samples {
        let theta = h * i as f64 / samples as f64;
        // |D_n(φ)| = |sin(nφ/2)| / |sin(φ/2)| and sin(n(θ-θ_ℓ)/2) = ±sin(nθ/2)
        let s = (0.5 * n as f64 * theta).sin().abs();
        let total = if s == 0.0 {
            n as f64
        } else {
            nodes
                .iter()
                .map(|&t| {
                    let d = (0.5 * (theta - t)).sin().abs();
                    if d == 0.0 {
                        n as f64
                    } else {
                        s / d
                    }
                })
                .sum::<f64>()
        };
        best = best.max(total / n as f64);
    }
    best
}

/// `F̂_k = (1/2π) ∫_0^{2π} e^{-ikθ} F(θ) dθ` by adaptive quadrature.
pub fn fourier_coefficient_oracle<F>(mut f: F, k: i64, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    let panels = 8 * (k.unsigned_abs() as usize + 1);
    let r = quad::integrate(
        |t| f(t) * Complex64::from_polar(1.0, -(k as f64) * t),
        &quad::uniform_breakpoints(0.0, TAU, panels),
        QuadOptions {
            abs_tol: tol * TAU,
            rel_tol: 0.0,
            max_panels: 50_000,
        },
    );
    if r.converged {
        Ok(r.value / TAU)
    } else {
        Err(Error::QuadratureNonConvergence {
            abs_error: r.abs_error / TAU,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_bookkeeping() {
        for n in 1..40 {
            let g = TrigGrid::new(n).unwrap();
            assert_eq!(g.n_plus() + g.n_minus() + 1, n as i64);
            let nodes = g.nodes();
            assert!(nodes.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(nodes[0], 0.0);
            assert!(*nodes.last().unwrap() < TAU);
        }
        assert!(TrigGrid::new(0).is_err());
    }

    #[test]
    fn dft_examples() {
        let g = TrigGrid::new(8).unwrap();
        let ones = vec![c(1.0, 0.0); 8];
        let d = dft(g, &ones).unwrap();
        for (k, v) in d.iter() {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((v - c(want, 0.0)).norm() < 1e-15);
        }
        assert!((d.eval(1.234) - c(1.0, 0.0)).norm() < 1e-15);

        let e1: Vec<_> = g.nodes().iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let d1 = dft(g, &e1).unwrap();
        for (k, v) in d1.iter() {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert!((v - c(want, 0.0)).norm() < 1e-15);
        }
        let e9: Vec<_> = g.nodes().iter().map(|&t| Complex64::from_polar(1.0, 9.0 * t)).collect();
        let d9 = dft(g, &e9).unwrap();
        for (a, b) in d1.as_slice().iter().zip(d9.as_slice()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert_eq!(
            dft(g, &ones[..5]),
            Err(Error::LengthMismatch { expected: 8, found: 5 })
        );
    }

    #[test]
    fn single_mode_evaluates_to_exponential() {
        let g = TrigGrid::new(4).unwrap();
        let mut samples = vec![c(0.0, 0.0); 4];
        for (l, s) in samples.iter_mut().enumerate() {
            *s = Complex64::from_polar(1.0, g.node(l));
        }
        let d = dft(g, &samples).unwrap();
        assert!((d.eval(PI / 2.0) - c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(d.get(1), d.as_slice()[2]);
        assert_eq!(d.get(7), c(0.0, 0.0));
    }

    #[test]
    fn smooth_periodic_interpolation_at_nodes() {
        let g = TrigGrid::new(64).unwrap();
        let f = |t: f64| {
            let s = (0.5 * t).sin();
            if s == 0.0 {
                c(0.0, 0.0)
            } else {
                c((-1.0 / (s * s)).exp(), 0.0)
            }
        };
        let samples: Vec<_> = g.nodes().iter().map(|&t| f(t)).collect();
        let d = dft(g, &samples).unwrap();
        for (l, s) in samples.iter().enumerate() {
            assert!((d.eval(g.node(l)) - s).norm() <= 1e-13 * (1.0 + s.norm()));
        }
    }

    #[test]
    fn dirichlet_examples() {
        assert!((dirichlet_kernel(5, 0.0, KernelOrder::Value) - c(5.0, 0.0)).norm() < 1e-15);
        assert!(dirichlet_kernel(5, TAU * 2.0 / 5.0, KernelOrder::Value).norm() < 1e-14);
        assert!(dirichlet_kernel(4, PI, KernelOrder::Value).norm() < 1e-14);
        assert_eq!(KernelOrder::try_from(2), Err(Error::InvalidOrder(2)));
        assert_eq!(KernelOrder::try_from(1), Ok(KernelOrder::Derivative));
    }

    #[test]
    fn dirichlet_derivative_near_origin_is_continuous() {
        for n in [6usize, 7] {
            let lo = dirichlet_kernel(n, 0.999e-2, KernelOrder::Derivative);
            let hi = dirichlet_kernel(n, 1.001e-2, KernelOrder::Derivative);
            let s = dirichlet_kernel_sum(n, 1.0e-2, KernelOrder::Derivative);
            assert!((lo - s).norm() < 1e-3 && (hi - s).norm() < 1e-3);
        }
    }

    #[test]
    fn kernel_norm_examples() {
        assert!((kernel_norm(1, 1.0, KernelOrder::Value) - TAU).abs() < 1e-12);
        // Parseval: ‖D_n‖_2^2 = 2πn and ‖D_n'‖_2^2 = 2π Σ k²
        for n in [3usize, 8, 33] {
            let l2 = kernel_norm(n, 2.0, KernelOrder::Value);
            assert!((l2 * l2 - TAU * n as f64).abs() < 1e-9 * n as f64);
            let g = TrigGrid::new(n).unwrap();
            let s: f64 = (-g.n_minus()..=g.n_plus()).map(|k| (k * k) as f64).sum();
            let d2 = kernel_norm(n, 2.0, KernelOrder::Derivative);
            assert!((d2 * d2 - TAU * s).abs() < 1e-9 * TAU * s);
        }
        assert!(kernel_norm(4, 0.5, KernelOrder::Value).is_nan());
    }

    #[test]
    fn lebesgue_small_cases() {
        assert_eq!(lebesgue_constant(1), 1.0);
        assert!(lebesgue_constant(2) >= 1.0);
        // the midpoint value for n = 2: (|D(π/2)| + |D(-π/2)|)/2 = √2
        assert!((lebesgue_constant(2) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fourier_coefficient_oracle_examples() {
        let one = fourier_coefficient_oracle(|_| c(1.0, 0.0), 0, 1e-12).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-12);
        let zero = fourier_coefficient_oracle(|_| c(1.0, 0.0), 3, 1e-12).unwrap();
        assert!(zero.norm() < 1e-12);
        let e2 = fourier_coefficient_oracle(|t| Complex64::from_polar(1.0, 2.0 * t), 2, 1e-12).unwrap();
        assert!((e2 - c(1.0, 0.0)).norm() < 1e-12);
    }
}
