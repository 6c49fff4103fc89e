//! Oscillatory Cauchy transforms in closed form.
//!
//! For `f = Σ α_{j,m} R_{j,k_m}` the boundary values
//!
//! ```text
//! C^± f(x) = lim_{ε→0+} (1/2πi) ∫ f(s) ds / (s - (x ± iε))
//! ```
//!
//! are again finite sums in the same basis. When `e^{-ikx}R_j` is analytic and
//! decaying in one half plane the transform is trivial; otherwise the pole of
//! `M^j` on the wrong side is removed by a combination of non-oscillatory
//! terms `R_{n,0}` with coefficients
//!
//! ```text
//! η_{j,n}(k) = -e^{-|k|β} L^{(-1)}_{|j|-n}(2|k|β),   1 ≤ n ≤ |j|.
//! ```
//!
//! The same numbers can be written as an alternating double sum over binomials
//! (see [`eta_residue_sum`]); that form loses all accuracy once `|j|` passes
//! about 20 and is kept only as a cross-check.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::approx::RationalExpansion;
use crate::mobius::MobiusMap;
use crate::osc::OscillatoryFunction;
use crate::specfun::{binomial_f64, kummer_terminating, laguerre_table};
use crate::{Error, Result};

/// Off-axis evaluation is flagged as degraded beyond this index.
pub const STABLE_INDEX_LIMIT: u64 = 30;

/// Which boundary value of the Cauchy transform: from above (`Plus`) or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// `-(j/n) e^{-|k|β} (j-1 choose n) ₁F₁(n-j; 1+n; 2|k|β)`, read literally.
///
/// Diagnostic only. With the usual binomial convention this vanishes for
/// `n = j`, so it cannot reproduce `C^+R_{1,k} = e^{-kβ}R_{1,0}`; the transform
/// uses [`eta_coeff`] instead.
pub fn gamma_paper(j: i64, nn: i64, k: f64, beta: f64) -> f64 {
    if j < 1 || nn < 1 || nn > j {
        return 0.0;
    }
    let z = 2.0 * k.abs() * beta;
    let binom = binomial_f64(j - 1, nn);
    if binom == 0.0 {
        return 0.0;
    }
    let f11 = kummer_terminating(nn - j, 1 + nn, z).unwrap_or(f64::NAN);
    -(j as f64 / nn as f64) * (-k.abs() * beta).exp() * binom * f11
}

fn check_eta_domain(j: i64, nn: i64, k: f64, beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidBeta(beta));
    }
    if k.is_nan() || k * j as f64 <= 0.0 {
        return Err(Error::InvalidArgument("eta needs k * j > 0"));
    }
    if nn < 1 || nn as u64 > j.unsigned_abs() {
        return Err(Error::InvalidArgument("eta needs 1 <= n <= |j|"));
    }
    Ok(())
}

/// `η_{j,n}(k)`, the weight of `R_{±n,0}` in the transform of `R_{j,k}` when
/// `kj > 0`.
///
/// ```
/// use ratline_core::cauchy::eta_coeff;
///
/// let (k, beta): (f64, f64) = (0.7, 1.3);
/// let e = (-k * beta).exp();
/// assert!((eta_coeff(1, 1, k, beta).unwrap() + e).abs() < 1e-15);
/// assert!((eta_coeff(2, 1, k, beta).unwrap() - 2.0 * k * beta * e).abs() < 1e-15);
/// assert!((eta_coeff(-2, 2, -k, beta).unwrap() + e).abs() < 1e-15);
/// ```
pub fn eta_coeff(j: i64, nn: i64, k: f64, beta: f64) -> Result<f64> {
    check_eta_domain(j, nn, k, beta)?;
    let x = 2.0 * k.abs() * beta;
    let m = (j.unsigned_abs() - nn as u64) as usize;
    let table = laguerre_table(m + 1, -1.0, x);
    Ok(-(-k.abs() * beta).exp() * table[m])
}

/// `η_{j,n}(k)` from the residue expansion
/// `-(-1)^n e^{-|k|β} Σ_{q=n}^{|j|} (q choose n) c_q` with
/// `c_q = Σ_{m=q}^{|j|} (-1)^m (|j| choose m) (2|k|β)^{m-q}/(m-q)!`.
///
/// Suffers heavy cancellation; only trustworthy for small `|j|`.
pub fn eta_residue_sum(j: i64, nn: i64, k: f64, beta: f64) -> Result<f64> {
    check_eta_domain(j, nn, k, beta)?;
    let jj = j.abs();
    let x = 2.0 * k.abs() * beta;
    let mut outer = 0.0;
    for q in nn..=jj {
        let mut c = 0.0;
        let mut pow = 1.0;
        for m in q..=jj {
            if m > q {
                pow *= x / (m - q) as f64;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            c += sign * binomial_f64(jj, m) * pow;
        }
        outer += binomial_f64(q, nn) * c;
    }
    let sign = if nn % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-sign * (-k.abs() * beta).exp() * outer)
}

/// Accumulates `α · C^± R_{j,k}` for one wavenumber, reusing the Laguerre
/// table across indices.
struct PartTransform {
    k: f64,
    // -η_{j,n} = e^{-|k|β} L^{(-1)}_{|j|-n}(2|k|β), indexed by |j| - n
    neg_eta: Vec<f64>,
}

impl PartTransform {
    fn new(k: f64, beta: f64, max_index: u64) -> Self {
        let neg_eta = if k == 0.0 {
            Vec::new()
        } else {
            let x = 2.0 * k.abs() * beta;
            let scale = (-k.abs() * beta).exp();
            laguerre_table(max_index as usize, -1.0, x)
                .into_iter()
                .map(|v| scale * v)
                .collect()
        };
        PartTransform { k, neg_eta }
    }

    fn apply(&self, j: i64, alpha: Complex64, side: Side, out: &mut OscillatoryFunction) {
        if j == 0 || alpha == Complex64::new(0.0, 0.0) {
            return;
        }
        let k = self.k;
        let trivial = k == 0.0 || (k > 0.0) != (j > 0);
        if trivial {
            // e^{-ikx}R_j is analytic and decaying on the side picked out by sign(j)
            match (side, j > 0) {
                (Side::Plus, true) => out.add_term(j, k, alpha),
                (Side::Minus, false) => out.add_term(j, k, -alpha),
                _ => {}
            }
            return;
        }
        let ja = j.unsigned_abs();
        let sign = if j > 0 { 1 } else { -1 };
        match (side, j > 0) {
            (Side::Plus, false) => out.add_term(j, k, alpha),
            (Side::Minus, true) => out.add_term(j, k, -alpha),
            _ => {}
        }
        // j > 0: -Σ η R_{n,0} on both sides; j < 0: +Σ η R_{-n,0} on both sides
        let weight = if j > 0 { alpha } else { -alpha };
        for n in 1..=ja {
            let c = self.neg_eta[(ja - n) as usize];
            out.add_term(sign * n as i64, 0.0, weight * c);
        }
    }
}

/// `C^± R_{j,k}` as an oscillatory function.
///
/// ```
/// use ratline_core::{cauchy::cauchy_basis, MobiusMap, Side};
///
/// let map = MobiusMap::new(1.0).unwrap();
/// let g = cauchy_basis(1, 1.0, Side::Plus, map);
/// let a = g.part(0.0).unwrap().coefficient(1);
/// assert!((a.re - (-1.0f64).exp()).abs() < 1e-15);
/// assert!(cauchy_basis(-1, 2.0, Side::Plus, map).is_zero());
/// ```
pub fn cauchy_basis(j: i64, k: f64, side: Side, map: MobiusMap) -> OscillatoryFunction {
    let mut out = OscillatoryFunction::zero(map);
    let t = PartTransform::new(k, map.beta(), j.unsigned_abs());
    t.apply(j, Complex64::new(1.0, 0.0), side, &mut out);
    out.prune();
    out
}

/// `C^± g` for a whole oscillatory function, term by term.
pub fn cauchy_apply(g: &OscillatoryFunction, side: Side) -> OscillatoryFunction {
    let map = g.map();
    let mut out = OscillatoryFunction::zero(map);
    for part in g.parts() {
        let e: &RationalExpansion = &part.expansion;
        let t = PartTransform::new(part.wavenumber, map.beta(), e.max_abs_index());
        for (j, a) in e.iter() {
            t.apply(j, a, side, &mut out);
        }
    }
    out.prune();
    out
}

/// Value of the Cauchy integral away from the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffAxisValue {
    pub value: Complex64,
    /// Set when the input reaches `|j| > STABLE_INDEX_LIMIT`, where the
    /// closed form cancels large terms and may lose digits.
    pub degraded: bool,
}

/// `(1/2πi) ∫ g(s) ds/(s - z)` for `Im z ≠ 0`.
///
/// The boundary formula for the side containing `z` continues analytically
/// into that half plane, so it is simply evaluated at `z`.
pub fn cauchy_offaxis(g: &OscillatoryFunction, z: Complex64) -> Result<OffAxisValue> {
    if z.im == 0.0 || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::InvalidArgument("off-axis evaluation needs finite z with Im z != 0"));
    }
    let side = if z.im > 0.0 { Side::Plus } else { Side::Minus };
    let value = cauchy_apply(g, side).evaluate_complex(z)?;
    Ok(OffAxisValue {
        value,
        degraded: g.max_abs_index() > STABLE_INDEX_LIMIT,
    })
}
