//! Fourier transforms, oscillatory quadrature weights and differentiation,
//! all acting directly on basis coefficients.
//!
//! With `F f(k) = ⨍ e^{-ikx} f(x) dx` (principal value at infinity),
//!
//! ```text
//! F R_j(k) = ω_j(k) = 0                                  sign(j) = -sign(k)
//!                   = -2π|j|β                             k = 0
//!                   = -4πβ e^{-|k|β} L^{(1)}_{|j|-1}(2|k|β)  otherwise
//! ```
//!
//! and `F[e^{-ik_m x} g](k) = F g(k + k_m)`. The `k = 0` value is the average
//! of the one-sided limits `0` and `-4π|j|β`.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::approx::RationalExpansion;
use crate::fft;
use crate::mobius::MobiusMap;
use crate::osc::OscillatoryFunction;
use crate::specfun::laguerre_table;
use crate::trig::TrigGrid;
use crate::Result;

/// `ω_j(k)`, the principal-value Fourier transform of `R_j`.
///
/// ```
/// use ratline_core::calculus::fourier_weight;
/// use std::f64::consts::PI;
///
/// assert_eq!(fourier_weight(1, 0.0, 2.0), -4.0 * PI);
/// assert_eq!(fourier_weight(-3, 2.0, 1.0), 0.0);
/// assert!((fourier_weight(1, 1.0, 1.0) + 4.0 * PI / 1f64.exp()).abs() < 1e-15);
/// ```
pub fn fourier_weight(j: i64, k: f64, beta: f64) -> f64 {
    if j == 0 {
        return 0.0;
    }
    if k == 0.0 {
        return -2.0 * PI * j.unsigned_abs() as f64 * beta;
    }
    if (j > 0) != (k > 0.0) {
        return 0.0;
    }
    let n = j.unsigned_abs() as usize;
    let x = 2.0 * k.abs() * beta;
    let l = laguerre_table(n, 1.0, x)[n - 1];
    -4.0 * PI * (-k.abs() * beta).exp() * beta * l
}

/// `ω_j(k)` for a contiguous range of `j` at one `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierWeightTable {
    map: MobiusMap,
    k: f64,
    j_min: i64,
    weights: Vec<f64>,
}

impl FourierWeightTable {
    /// Tabulate `j_min..=j_max`; an empty range gives an empty table.
    pub fn new(map: MobiusMap, k: f64, j_min: i64, j_max: i64) -> Self {
        let beta = map.beta();
        let len = if j_max >= j_min { (j_max - j_min + 1) as usize } else { 0 };
        let mut weights = vec![0.0; len];
        let reach = j_min.unsigned_abs().max(j_max.unsigned_abs()) as usize;
        if len > 0 && reach > 0 {
            if k == 0.0 {
                for (i, w) in weights.iter_mut().enumerate() {
                    let j = j_min + i as i64;
                    *w = -2.0 * PI * j.unsigned_abs() as f64 * beta;
                }
            } else {
                let scale = -4.0 * PI * (-k.abs() * beta).exp() * beta;
                let lag = laguerre_table(reach, 1.0, 2.0 * k.abs() * beta);
                for (i, w) in weights.iter_mut().enumerate() {
                    let j = j_min + i as i64;
                    if j != 0 && (j > 0) == (k > 0.0) {
                        *w = scale * lag[j.unsigned_abs() as usize - 1];
                    }
                }
            }
        }
        FourierWeightTable { map, k, j_min, weights }
    }

    pub fn map(&self) -> MobiusMap {
        self.map
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `ω_j(k)`, zero outside the tabulated range.
    pub fn get(&self, j: i64) -> f64 {
        if j < self.j_min {
            return 0.0;
        }
        self.weights.get((j - self.j_min) as usize).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn expansion_transform(e: &RationalExpansion, k: f64) -> Complex64 {
    let table = FourierWeightTable::new(e.map(), k, e.j_min(), e.j_max());
    e.iter().map(|(j, a)| a * table.get(j)).sum()
}

/// `⨍ e^{-ikx} g(x) dx`. At a jump `k = -k_m` the principal value is used.
pub fn fourier_transform(g: &OscillatoryFunction, k: f64) -> Complex64 {
    g.parts()
        .iter()
        .map(|p| expansion_transform(&p.expansion, k + p.wavenumber))
        .sum()
}

/// Weights `w_ℓ = Σ_j (ω_j(k)/n) e^{-ijθ_ℓ}` with `Σ_ℓ w_ℓ f(x_ℓ)` equal to the
/// transform of the degree-`n` interpolant of `f`.
///
/// Node `ℓ = 0` sits at `x = ∞` and pairs with the limit there (zero for
/// decaying `f`); the rest are [`crate::approx::interpolation_nodes`].
pub fn quadrature_weights(n: usize, k: f64, map: MobiusMap) -> Result<Vec<Complex64>> {
    let grid = TrigGrid::new(n)?;
    let table = FourierWeightTable::new(map, k, -grid.n_minus(), grid.n_plus());
    let scale = 1.0 / n as f64;
    let mut work = vec![Complex64::new(0.0, 0.0); n];
    for j in -grid.n_minus()..=grid.n_plus() {
        work[j.rem_euclid(n as i64) as usize] = Complex64::new(table.get(j) * scale, 0.0);
    }
    fft::forward(&mut work);
    Ok(work)
}

/// Term-by-term derivative using
/// `R_j' = (ij/β) (R_j - (R_{j-1} + R_{j+1})/2)`.
///
/// The output band is one wider on each side. Its `j = 0` slot holds the
/// weight the rule assigns to `R_0`: it never affects values but keeps
/// `Σ_j` of the output coefficients at zero.
pub fn differentiate(e: &RationalExpansion) -> RationalExpansion {
    let map = e.map();
    let beta = map.beta();
    let j_min = e.j_min() - 1;
    let len = e.coeffs().len() + 2;
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (j, a) in e.iter() {
        if j == 0 {
            continue;
        }
        let d = a * Complex64::new(0.0, j as f64 / beta);
        let at = (j - j_min) as usize;
        out[at] += d;
        out[at - 1] -= d * 0.5;
        out[at + 1] -= d * 0.5;
    }
    RationalExpansion::from_coeffs(map, j_min, out).expect("band still contains 0")
}

/// `D[e^{-ik x} g] = e^{-ikx}(g' - ik g)` applied part by part.
pub fn differentiate_osc(g: &OscillatoryFunction) -> OscillatoryFunction {
    let mut out = OscillatoryFunction::zero(g.map());
    for p in g.parts() {
        let mut d = differentiate(&p.expansion);
        d.add_scaled(&p.expansion, Complex64::new(0.0, -p.wavenumber));
        out.add_part(p.wavenumber, &d);
    }
    out
}
