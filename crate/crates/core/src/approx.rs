//! The rational interpolant `R_n f(x) = Σ_j α_j R_j(x)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::mobius::{basis_from_half_angle, ExtendedPoint, MobiusMap};
use crate::trig::{dft, TrigGrid};
use crate::{Error, Result};

/// Coefficients `α_j`, `j = j_min..=j_max`, of an expansion in the basis `R_j`.
///
/// `α_0` is kept (it carries the value of the underlying trigonometric
/// polynomial at `θ = 0`, so `Σ α_j` is meaningful) but never contributes to
/// evaluation since `R_0 ≡ 0`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(try_from = "record::ExpansionRecord", into = "record::ExpansionRecord")
)]
pub struct RationalExpansion {
    map: MobiusMap,
    j_min: i64,
    coeffs: Vec<Complex64>,
}

impl RationalExpansion {
    pub fn zero(map: MobiusMap) -> Self {
        RationalExpansion {
            map,
            j_min: 0,
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// Build from dense coefficients starting at index `j_min ≤ 0`; the band
    /// must reach `j = 0`.
    pub fn from_coeffs(map: MobiusMap, j_min: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        let j_max = j_min + coeffs.len() as i64 - 1;
        if j_min > 0 || j_max < 0 {
            return Err(Error::InvalidArgument("coefficient band must contain j = 0"));
        }
        Ok(RationalExpansion { map, j_min, coeffs })
    }

    /// Build from sparse `(j, α_j)` pairs; repeated indices add.
    pub fn from_terms<I>(map: MobiusMap, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut e = RationalExpansion::zero(map);
        for (j, a) in terms {
            e.add_term(j, a);
        }
        e
    }

    #[inline]
    pub fn map(&self) -> MobiusMap {
        self.map
    }

    #[inline]
    pub fn j_min(&self) -> i64 {
        self.j_min
    }

    #[inline]
    pub fn j_max(&self) -> i64 {
        self.j_min + self.coeffs.len() as i64 - 1
    }

    /// Dense coefficients in index order `j_min..=j_max`, including `α_0`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let lo = self.j_min;
        self.coeffs.iter().enumerate().map(move |(i, c)| (lo + i as i64, *c))
    }

    /// Basis weight of `R_j`: zero outside the band and for `j = 0`.
    pub fn coefficient(&self, j: i64) -> Complex64 {
        if j == 0 || j < self.j_min || j > self.j_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j - self.j_min) as usize]
        }
    }

    /// `Σ_j α_j` over the stored band, `α_0` included.
    pub fn coefficient_sum(&self) -> Complex64 {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|(j, c)| j == 0 || c == Complex64::new(0.0, 0.0))
    }

    /// Largest `|j|` carrying a nonzero coefficient.
    pub fn max_abs_index(&self) -> u64 {
        self.iter()
            .filter(|&(j, c)| j != 0 && c != Complex64::new(0.0, 0.0))
            .map(|(j, _)| j.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    fn grow_to(&mut self, j: i64) {
        if j < self.j_min {
            let extra = (self.j_min - j) as usize;
            let mut v = vec![Complex64::new(0.0, 0.0); extra];
            v.extend_from_slice(&self.coeffs);
            self.coeffs = v;
            self.j_min = j;
        } else if j > self.j_max() {
            let extra = (j - self.j_max()) as usize;
            self.coeffs.extend(core::iter::repeat(Complex64::new(0.0, 0.0)).take(extra));
        }
    }

    pub fn add_term(&mut self, j: i64, a: Complex64) {
        self.grow_to(j);
        self.coeffs[(j - self.j_min) as usize] += a;
    }

    /// `self += scale · other`; both must share the same map.
    pub fn add_scaled(&mut self, other: &RationalExpansion, scale: Complex64) {
        debug_assert_eq!(self.map, other.map);
        self.grow_to(other.j_min);
        self.grow_to(other.j_max());
        for (j, c) in other.iter() {
            self.coeffs[(j - self.j_min) as usize] += c * scale;
        }
    }

    pub fn scaled(&self, scale: Complex64) -> RationalExpansion {
        RationalExpansion {
            map: self.map,
            j_min: self.j_min,
            coeffs: self.coeffs.iter().map(|c| c * scale).collect(),
        }
    }

    /// `Σ_j α_j R_j(x)` on the real axis.
    pub fn evaluate_real(&self, x: f64) -> Complex64 {
        let h = self.map.half_angle(x);
        self.iter()
            .filter(|&(j, _)| j != 0)
            .map(|(j, c)| c * basis_from_half_angle(j, h))
            .sum()
    }

    /// `Σ_j α_j R_j(z)` anywhere in the plane except the active poles `∓iβ`.
    pub fn evaluate_complex(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 {
            return Ok(self.evaluate_real(z.re));
        }
        let ib = Complex64::new(0.0, self.map.beta());
        let num = z - ib;
        let den = z + ib;
        let zero = Complex64::new(0.0, 0.0);
        let mut total = zero;
        if self.j_max() > 0 {
            let active = self.iter().find(|&(j, c)| j > 0 && c != zero);
            if let Some((j, _)) = active {
                if den == zero {
                    return Err(Error::Pole { index: j });
                }
                let m = num / den;
                let mut p = Complex64::new(1.0, 0.0);
                for j in 1..=self.j_max() {
                    p *= m;
                    total += self.coefficient(j) * (p - 1.0);
                }
            }
        }
        if self.j_min < 0 {
            let active = self.iter().find(|&(j, c)| j < 0 && c != zero);
            if let Some((j, _)) = active {
                if num == zero {
                    return Err(Error::Pole { index: j });
                }
                let m = den / num;
                let mut p = Complex64::new(1.0, 0.0);
                for j in 1..=(-self.j_min) {
                    p *= m;
                    total += self.coefficient(-j) * (p - 1.0);
                }
            }
        }
        Ok(total)
    }

    /// Evaluate on the extended plane; the point at infinity gives 0.
    pub fn evaluate(&self, p: ExtendedPoint) -> Result<Complex64> {
        match p {
            ExtendedPoint::Infinity => Ok(Complex64::new(0.0, 0.0)),
            ExtendedPoint::Finite(z) => self.evaluate_complex(z),
        }
    }
}

/// Interpolate `f` at the mapped nodes `x_ℓ = T(θ_ℓ)`, `ℓ = 1..n-1`, with
/// `limit_at_infinity` standing in for the `ℓ = 0` node at `x = ∞`.
///
/// The basis vanishes at infinity, so the expansion represents
/// `f - limit_at_infinity`; for decaying `f` (the usual case) pass zero.
pub fn interpolate<F>(mut f: F, limit_at_infinity: Complex64, n: usize, map: MobiusMap) -> Result<RationalExpansion>
where
    F: FnMut(f64) -> Complex64,
{
    try_interpolate(|x| Ok::<_, Error>(f(x)), limit_at_infinity, n, map)
}

/// [`interpolate`] for fallible sample functions; the first failure is returned.
pub fn try_interpolate<F, E>(
    mut f: F,
    limit_at_infinity: Complex64,
    n: usize,
    map: MobiusMap,
) -> core::result::Result<RationalExpansion, E>
where
    F: FnMut(f64) -> core::result::Result<Complex64, E>,
    E: From<Error>,
{
    if n < 2 {
        return Err(Error::InvalidArgument("interpolation needs n >= 2").into());
    }
    let grid = TrigGrid::new(n)?;
    let mut samples = Vec::with_capacity(n);
    samples.push(limit_at_infinity);
    for l in 1..n {
        let x = map
            .circle_to_line(grid.node(l))
            .finite()
            .map(|z| z.re)
            .ok_or(Error::InvalidArgument("interior node mapped to infinity"))?;
        samples.push(f(x)?);
    }
    let c = dft(grid, &samples)?;
    let j_min = -grid.n_minus();
    Ok(RationalExpansion {
        map,
        j_min,
        coeffs: c.into_vec(),
    })
}

/// The finite interpolation nodes `x_ℓ = T(θ_ℓ)`, `ℓ = 1..n-1`.
pub fn interpolation_nodes(n: usize, map: MobiusMap) -> Vec<f64> {
    let grid = match TrigGrid::new(n) {
        Ok(g) => g,
        Err(_) => return Vec::new(),
    };
    (1..n)
        .filter_map(|l| map.circle_to_line(grid.node(l)).finite().map(|z| z.re))
        .collect()
}

#[cfg(feature = "serde")]
mod record {
    use super::*;

    /// Wire form: `{beta, j_min, j_max, coeffs: [[re, im], ...]}`.
    #[derive(Debug, serde::Serialize, serde::Deserialize)]
    pub struct ExpansionRecord {
        beta: f64,
        j_min: i64,
        j_max: i64,
        coeffs: Vec<[f64; 2]>,
    }

    impl From<RationalExpansion> for ExpansionRecord {
        fn from(e: RationalExpansion) -> Self {
            ExpansionRecord {
                beta: e.map.beta(),
                j_min: e.j_min,
                j_max: e.j_max(),
                coeffs: e.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            }
        }
    }

    impl TryFrom<ExpansionRecord> for RationalExpansion {
        type Error = Error;

        fn try_from(r: ExpansionRecord) -> Result<Self> {
            if r.j_max - r.j_min + 1 != r.coeffs.len() as i64 {
                return Err(Error::LengthMismatch {
                    expected: (r.j_max - r.j_min + 1).max(0) as usize,
                    found: r.coeffs.len(),
                });
            }
            let map = MobiusMap::new(r.beta)?;
            RationalExpansion::from_coeffs(
                map,
                r.j_min,
                r.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            )
        }
    }
}
