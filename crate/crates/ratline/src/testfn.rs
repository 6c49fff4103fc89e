//! Reference functions with closed-form transforms and derivatives.

use std::f64::consts::PI;

use ratline_core::approx::interpolate;
use ratline_core::{Complex64, MobiusMap, OscillatoryFunction};

use crate::error::HarnessError;

type Real2Complex = fn(f64) -> Complex64;

/// One modulated piece `e^{-ikx} f(x)` of a reference function.
#[derive(Debug, Clone, Copy)]
pub struct TestPart {
    pub wavenumber: f64,
    pub handle: Real2Complex,
    /// `f'(x)` of the unmodulated piece.
    pub exact_derivative: Option<Real2Complex>,
    /// `⨍ e^{-iκx} f(x) dx` of the unmodulated piece, principal value at jumps.
    pub exact_fourier: Option<Real2Complex>,
}

impl TestPart {
    pub fn eval(&self, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.wavenumber * x) * (self.handle)(x)
    }
}

/// A named reference `f = Σ_m e^{-ik_m x} f_m(x)`.
///
/// When exact handles are present they are what oracle comparisons use.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub name: &'static str,
    pub parts: Vec<TestPart>,
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> Complex64 {
        self.parts.iter().map(|p| p.eval(x)).sum()
    }

    /// `f'(x)`, from the exact derivatives when every part has one and by a
    /// fourth-order central difference otherwise.
    pub fn derivative(&self, x: f64) -> Complex64 {
        self.parts
            .iter()
            .map(|p| {
                let k = p.wavenumber;
                let d = match p.exact_derivative {
                    Some(df) => df(x),
                    None => {
                        let h = 1e-3 * (1.0 + x.abs());
                        let f = p.handle;
                        (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) / (12.0 * h)
                    }
                };
                Complex64::from_polar(1.0, -k * x) * (d - Complex64::new(0.0, k) * (p.handle)(x))
            })
            .sum()
    }

    /// `F f(k) = Σ_m F f_m(k + k_m)` if every part has a closed form.
    pub fn exact_fourier(&self, k: f64) -> Option<Complex64> {
        self.parts
            .iter()
            .map(|p| p.exact_fourier.map(|ft| ft(k + p.wavenumber)))
            .sum()
    }

    pub fn max_wavenumber(&self) -> f64 {
        self.parts.iter().map(|p| p.wavenumber.abs()).fold(0.0, f64::max)
    }

    /// Interpolate each part separately and keep its modulation.
    pub fn interpolate(&self, n: usize, map: MobiusMap) -> Result<OscillatoryFunction, HarnessError> {
        let mut g = OscillatoryFunction::zero(map);
        for p in &self.parts {
            let e = interpolate(p.handle, Complex64::new(0.0, 0.0), n, map)?;
            g.add_part(p.wavenumber, &e);
        }
        Ok(g)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gaussian(x: f64) -> Complex64 {
    c((-x * x).exp(), 0.0)
}

fn gaussian_d(x: f64) -> Complex64 {
    c(-2.0 * x * (-x * x).exp(), 0.0)
}

fn gaussian_ft(k: f64) -> Complex64 {
    c(PI.sqrt() * (-0.25 * k * k).exp(), 0.0)
}

fn lorentzian(x: f64) -> Complex64 {
    c(1.0 / (1.0 + x * x), 0.0)
}

fn lorentzian_d(x: f64) -> Complex64 {
    let d = 1.0 + x * x;
    c(-2.0 * x / (d * d), 0.0)
}

fn lorentzian_ft(k: f64) -> Complex64 {
    c(PI * (-k.abs()).exp(), 0.0)
}

// 1/(x + 1 + i): pole at p = -1 - i
fn rational(x: f64) -> Complex64 {
    c(x + 1.0, 1.0).inv()
}

fn rational_d(x: f64) -> Complex64 {
    let d = c(x + 1.0, 1.0);
    -(d * d).inv()
}

fn rational_ft(k: f64) -> Complex64 {
    if k > 0.0 {
        // close below: -2πi e^{-ikp}
        c(0.0, -2.0 * PI) * (c(0.0, k) * c(1.0, 1.0)).exp()
    } else if k < 0.0 {
        c(0.0, 0.0)
    } else {
        c(0.0, -PI)
    }
}

// R_1 for β = 1: (x - i)/(x + i) - 1 = -2i/(x + i)
fn r1(x: f64) -> Complex64 {
    c(0.0, -2.0) / c(x, 1.0)
}

fn r1_d(x: f64) -> Complex64 {
    let d = c(x, 1.0);
    c(0.0, 2.0) / (d * d)
}

fn r1_ft(k: f64) -> Complex64 {
    if k > 0.0 {
        c(-4.0 * PI * (-k).exp(), 0.0)
    } else if k < 0.0 {
        c(0.0, 0.0)
    } else {
        c(-2.0 * PI, 0.0)
    }
}

fn part(wavenumber: f64, handle: Real2Complex, d: Real2Complex, ft: Real2Complex) -> TestPart {
    TestPart {
        wavenumber,
        handle,
        exact_derivative: Some(d),
        exact_fourier: Some(ft),
    }
}

/// `e^{-ik_1 x - x²} + e^{-ik_2 x}/(x + 1 + i)`.
pub fn two_part(k1: f64, k2: f64) -> TestFunction {
    TestFunction {
        name: "appendixA",
        parts: vec![
            part(k1, gaussian, gaussian_d, gaussian_ft),
            part(k2, rational, rational_d, rational_ft),
        ],
    }
}

pub const FUNCTION_NAMES: [&str; 5] = ["gaussian", "lorentzian", "rational", "appendixA", "r1"];

/// Look up a reference function by name.
pub fn by_name(name: &str) -> Result<TestFunction, HarnessError> {
    let single = |name, p| TestFunction { name, parts: vec![p] };
    Ok(match name {
        "gaussian" => single("gaussian", part(0.0, gaussian, gaussian_d, gaussian_ft)),
        "lorentzian" => single("lorentzian", part(0.0, lorentzian, lorentzian_d, lorentzian_ft)),
        "rational" => single("rational", part(0.0, rational, rational_d, rational_ft)),
        "appendixA" => two_part(2.0, -3.0),
        "r1" => single("r1", part(0.0, r1, r1_d, r1_ft)),
        other => return Err(HarnessError::UnknownFunction(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_derivatives_match_differences() {
        for name in FUNCTION_NAMES {
            let f = by_name(name).unwrap();
            for &x in &[-2.3, -0.1, 0.0, 0.7, 5.0] {
                let h = 1e-4;
                let fd = (f.eval(x - 2.0 * h) - f.eval(x + 2.0 * h) + (f.eval(x + h) - f.eval(x - h)) * 8.0) / (12.0 * h);
                assert!((f.derivative(x) - fd).norm() < 1e-9, "{name} at {x}");
            }
        }
    }

    #[test]
    fn two_part_jump_at_three() {
        let f = by_name("appendixA").unwrap();
        let below = f.exact_fourier(3.0 - 1e-9).unwrap();
        let above = f.exact_fourier(3.0 + 1e-9).unwrap();
        assert!(((above - below).norm() - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn r1_is_a_basis_element() {
        let map = MobiusMap::default();
        for &x in &[-3.0, 0.0, 0.4, 80.0] {
            assert!((r1(x) - map.basis_r_real(1, x)).norm() < 1e-15);
        }
        assert!(by_name("nope").is_err());
    }
}
