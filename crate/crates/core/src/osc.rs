//! Finite sums `Σ_m e^{-i k_m x} g_m(x)` of modulated rational expansions.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::approx::RationalExpansion;
use crate::mobius::MobiusMap;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OscPart {
    pub wavenumber: f64,
    pub expansion: RationalExpansion,
}

/// A sum of parts with pairwise distinct wavenumbers over one Möbius map.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatoryFunction {
    map: MobiusMap,
    parts: Vec<OscPart>,
}

impl OscillatoryFunction {
    pub fn zero(map: MobiusMap) -> Self {
        OscillatoryFunction {
            map,
            parts: Vec::new(),
        }
    }

    /// `e^{-ikx} g(x)` for a single expansion.
    pub fn modulated(wavenumber: f64, expansion: RationalExpansion) -> Self {
        let mut g = OscillatoryFunction::zero(expansion.map());
        g.add_part(wavenumber, &expansion);
        g
    }

    /// `coeff · R_{j,k}`.
    pub fn basis(map: MobiusMap, j: i64, k: f64, coeff: Complex64) -> Self {
        OscillatoryFunction::modulated(k, RationalExpansion::from_terms(map, [(j, coeff)]))
    }

    pub fn map(&self) -> MobiusMap {
        self.map
    }

    pub fn parts(&self) -> &[OscPart] {
        &self.parts
    }

    pub fn part(&self, wavenumber: f64) -> Option<&RationalExpansion> {
        self.parts
            .iter()
            .find(|p| p.wavenumber == wavenumber)
            .map(|p| &p.expansion)
    }

    /// Add `e^{-ikx} g(x)`, merging into an existing part with the same `k`.
    pub fn add_part(&mut self, wavenumber: f64, expansion: &RationalExpansion) {
        self.add_scaled_part(wavenumber, expansion, Complex64::new(1.0, 0.0));
    }

    pub fn add_scaled_part(&mut self, wavenumber: f64, expansion: &RationalExpansion, scale: Complex64) {
        debug_assert_eq!(self.map, expansion.map());
        match self.parts.iter_mut().find(|p| p.wavenumber == wavenumber) {
            Some(p) => p.expansion.add_scaled(expansion, scale),
            None => self.parts.push(OscPart {
                // normalizes -0.0
                wavenumber: wavenumber + 0.0,
                expansion: expansion.scaled(scale),
            }),
        }
    }

    pub fn add_term(&mut self, j: i64, wavenumber: f64, coeff: Complex64) {
        if j == 0 {
            return;
        }
        match self.parts.iter_mut().find(|p| p.wavenumber == wavenumber) {
            Some(p) => p.expansion.add_term(j, coeff),
            None => self.parts.push(OscPart {
                wavenumber: wavenumber + 0.0,
                expansion: RationalExpansion::from_terms(self.map, [(j, coeff)]),
            }),
        }
    }

    pub fn add_scaled(&mut self, other: &OscillatoryFunction, scale: Complex64) {
        for p in &other.parts {
            self.add_scaled_part(p.wavenumber, &p.expansion, scale);
        }
    }

    pub fn scaled(&self, scale: Complex64) -> OscillatoryFunction {
        let mut out = OscillatoryFunction::zero(self.map);
        out.add_scaled(self, scale);
        out
    }

    /// Drop parts whose basis weights are all zero.
    pub fn prune(&mut self) {
        self.parts.retain(|p| !p.expansion.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.expansion.is_zero())
    }

    pub fn max_abs_index(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.expansion.max_abs_index())
            .max()
            .unwrap_or(0)
    }

    /// `Σ_m e^{-ik_m x} g_m(x)` for real `x`.
    pub fn evaluate_real(&self, x: f64) -> Complex64 {
        self.parts
            .iter()
            .map(|p| Complex64::from_polar(1.0, -p.wavenumber * x) * p.expansion.evaluate_real(x))
            .sum()
    }

    /// Analytic continuation of the sum to complex `z`.
    pub fn evaluate_complex(&self, z: Complex64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for p in &self.parts {
            let phase = (Complex64::new(0.0, -p.wavenumber) * z).exp();
            total += phase * p.expansion.evaluate_complex(z)?;
        }
        Ok(total)
    }
}
