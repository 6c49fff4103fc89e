//! Rational spectral approximation of functions on the real line.
//!
//! A function `f` on ℝ is pulled back to the periodic interval through the
//! Möbius map `M_β(z) = (z - iβ)/(z + iβ)`, interpolated there with an FFT,
//! and pushed forward again. The result is an expansion in the rational basis
//!
//! ```text
//! R_j(x)    = M_β(x)^j - 1
//! R_{j,k}(x) = e^{-ikx} R_j(x)
//! ```
//!
//! which is closed under multiplication, differentiation, the Cauchy
//! transform and the Fourier transform. This crate holds the pure numerical
//! core and builds without `std`; the companion `ratline` crate carries the
//! oracles, file formats and the command line driver.
//!
//! ```
//! use ratline_core::{approx, MobiusMap};
//!
//! let map = MobiusMap::new(1.0).unwrap();
//! let gauss = approx::interpolate(|x| (-x * x).exp().into(), 0.0.into(), 128, map).unwrap();
//! let err = (gauss.evaluate_real(0.37) - (-0.37f64 * 0.37).exp()).norm();
//! assert!(err < 1e-10);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod approx;
pub mod calculus;
pub mod cauchy;
mod error;
mod fft;
pub mod mobius;
pub mod osc;
pub mod quad;
pub mod specfun;
pub mod trig;

pub use approx::RationalExpansion;
pub use cauchy::Side;
pub use error::{Error, Result};
pub use mobius::{ExtendedPoint, MobiusMap};
pub use num_complex::Complex64;
pub use osc::OscillatoryFunction;
pub use trig::{KernelOrder, TrigCoefficients, TrigGrid};
