//! The Möbius family `M_β`, the circle/line change of variables, and the
//! rational basis functions `R_j` and `R_{j,k}`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtendedPoint {
    pub fn real(x: f64) -> Self {
        ExtendedPoint::Finite(Complex64::new(x, 0.0))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedPoint::Finite(z) => Some(z),
            ExtendedPoint::Infinity => None,
        }
    }
}

impl From<Complex64> for ExtendedPoint {
    fn from(z: Complex64) -> Self {
        ExtendedPoint::Finite(z)
    }
}

impl From<f64> for ExtendedPoint {
    fn from(x: f64) -> Self {
        ExtendedPoint::real(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `M_β(z) = (z - iβ)/(z + iβ)`, mapping ℝ onto the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct MobiusMap {
    beta: f64,
}

impl Default for MobiusMap {
    fn default() -> Self {
        MobiusMap { beta: 1.0 }
    }
}

impl TryFrom<f64> for MobiusMap {
    type Error = Error;

    fn try_from(beta: f64) -> Result<Self> {
        MobiusMap::new(beta)
    }
}

impl From<MobiusMap> for f64 {
    fn from(map: MobiusMap) -> f64 {
        map.beta
    }
}

impl MobiusMap {
    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta.is_finite() {
            Ok(MobiusMap { beta })
        } else {
            Err(Error::InvalidBeta(beta))
        }
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn ibeta(&self) -> Complex64 {
        Complex64::new(0.0, self.beta)
    }

    pub fn apply(&self, p: ExtendedPoint, direction: Direction) -> ExtendedPoint {
        match direction {
            Direction::Forward => self.forward(p),
            Direction::Inverse => self.inverse(p),
        }
    }

    /// `M_β`: sends `-iβ` to infinity and infinity to 1.
    pub fn forward(&self, p: ExtendedPoint) -> ExtendedPoint {
        match p {
            ExtendedPoint::Infinity => ExtendedPoint::Finite(Complex64::new(1.0, 0.0)),
            ExtendedPoint::Finite(z) => {
                let den = z + self.ibeta();
                if den == Complex64::new(0.0, 0.0) {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite((z - self.ibeta()) / den)
                }
            }
        }
    }

    /// `M_β^{-1}(w) = -iβ (w + 1)/(w - 1)`: sends 1 to infinity and infinity to `-iβ`.
    pub fn inverse(&self, p: ExtendedPoint) -> ExtendedPoint {
        match p {
            ExtendedPoint::Infinity => ExtendedPoint::Finite(-self.ibeta()),
            ExtendedPoint::Finite(w) => {
                let den = w - 1.0;
                if den == Complex64::new(0.0, 0.0) {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(-self.ibeta() * (w + 1.0) / den)
                }
            }
        }
    }

    /// `x = T(θ) = M_β^{-1}(e^{iθ}) = -β cot(θ/2)`; `T(0)` is the point at infinity.
    pub fn circle_to_line(&self, theta: f64) -> ExtendedPoint {
        let mut t = theta % TAU;
        if t < 0.0 {
            t += TAU;
        }
        if t == 0.0 || t == TAU {
            return ExtendedPoint::Infinity;
        }
        let half = 0.5 * t;
        ExtendedPoint::real(-self.beta * half.cos() / half.sin())
    }

    /// Inverse of [`circle_to_line`](Self::circle_to_line), valued in `(0, 2π)`.
    pub fn line_to_circle(&self, x: f64) -> f64 {
        let h = self.half_angle(x);
        if h > 0.0 {
            TAU - 2.0 * h
        } else {
            -2.0 * h
        }
    }

    /// `h(x) = atan(β/x) ∈ [-π/2, π/2]`, so that `M_β(x) = e^{-2ih}` for real x.
    ///
    /// Near `x = ±∞` this keeps full relative accuracy in `h`, which is what
    /// makes `R_j(x)` accurate in the tails.
    #[inline]
    pub(crate) fn half_angle(&self, x: f64) -> f64 {
        if x == 0.0 {
            PI / 2.0
        } else {
            (self.beta / x).atan()
        }
    }

    /// `M_β(x)^j` for real x, via the unimodular angle.
    pub fn power_real(&self, j: i64, x: f64) -> Complex64 {
        let a = -2.0 * (j as f64) * self.half_angle(x);
        Complex64::new(a.cos(), a.sin())
    }

    /// `R_j(x) = M_β(x)^j - 1` for real x.
    #[inline]
    pub fn basis_r_real(&self, j: i64, x: f64) -> Complex64 {
        basis_from_half_angle(j, self.half_angle(x))
    }

    /// `R_j(z) = M_β(z)^j - 1` anywhere off the poles (`-iβ` for `j > 0`, `iβ` for `j < 0`).
    pub fn basis_r(&self, j: i64, z: Complex64) -> Result<Complex64> {
        if j == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if z.im == 0.0 {
            return Ok(self.basis_r_real(j, z.re));
        }
        let num = z - self.ibeta();
        let den = z + self.ibeta();
        let zero = Complex64::new(0.0, 0.0);
        if (j > 0 && den == zero) || (j < 0 && num == zero) {
            return Err(Error::Pole { index: j });
        }
        let m = if j > 0 { num / den } else { den / num };
        Ok(powi(m, j.unsigned_abs()) - 1.0)
    }

    /// `R_{j,k}(x) = e^{-ikx} R_j(x)` on the real axis.
    pub fn basis_rjk(&self, j: i64, k: f64, x: f64) -> Complex64 {
        if j == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase = Complex64::from_polar(1.0, -k * x);
        phase * self.basis_r_real(j, x)
    }

    /// `R_{j,k}(z)` off the real axis.
    pub fn basis_rjk_complex(&self, j: i64, k: f64, z: Complex64) -> Result<Complex64> {
        let r = self.basis_r(j, z)?;
        Ok(r * (Complex64::new(0.0, -k) * z).exp())
    }
}

/// `e^{-2ijh} - 1 = -2i sin(jh) e^{-ijh}`, accurate when `jh` is small.
#[inline]
pub(crate) fn basis_from_half_angle(j: i64, h: f64) -> Complex64 {
    let a = (j as f64) * h;
    let (s, c) = a.sin_cos();
    // -2i s (c - i s) = -2 s^2 - 2i s c
    Complex64::new(-2.0 * s * s, -2.0 * s * c)
}

fn powi(mut base: Complex64, mut exp: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        exp >>= 1;
        if exp > 0 {
            base *= base;
        }
    }
    acc
}

/// One term of a symbolic `R_{index, wavenumber}` combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductTerm {
    pub index: i64,
    pub wavenumber: f64,
    pub coefficient: i64,
}

/// Expand `R_{j,k1} R_{l,k2} = R_{l+j,k1+k2} - R_{j,k1+k2} - R_{l,k1+k2}`,
/// dropping `R_0` and merging repeated indices.
pub fn product_reduce(j: i64, k1: f64, l: i64, k2: f64) -> Vec<ProductTerm> {
    let k = k1 + k2;
    let mut out: Vec<ProductTerm> = Vec::with_capacity(3);
    for (index, coefficient) in [(l + j, 1), (j, -1), (l, -1)] {
        if index == 0 {
            continue;
        }
        match out.iter_mut().find(|t| t.index == index) {
            Some(t) => t.coefficient += coefficient,
            None => out.push(ProductTerm {
                index,
                wavenumber: k,
                coefficient,
            }),
        }
    }
    out.retain(|t| t.coefficient != 0);
    out
}
