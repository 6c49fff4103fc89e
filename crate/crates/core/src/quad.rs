//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.
//!
//! This is the workhorse behind the independent oracles; nothing on the
//! approximation path depends on it.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights at the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: Complex64,
    pub error: f64,
}

/// Apply the 15-point Kronrod rule with its embedded 7-point Gauss estimate.
pub fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fv = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for (i, slot) in fv.iter_mut().enumerate() {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[i];
        if i % 2 == 1 {
            gauss += (f1 + f2) * WG[i / 2];
        }
        *slot = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).norm();
    let mut abs = WGK[7] * fc.norm();
    for (i, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[i] * ((f1 - mean).norm() + (f2 - mean).norm());
        abs += WGK[i] * (f1.norm() + f2.norm());
    }
    let value = kronrod * half;
    let asc = asc * half.abs();
    let abs = abs * half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs);
    }
    Panel { a, b, value, error }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_panels: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub panels: usize,
    pub converged: bool,
}

/// Integrate over consecutive breakpoints `points[0] < points[1] < ...`,
/// bisecting the panel with the largest error estimate until the total
/// estimate drops below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F>(mut f: F, points: &[f64], opts: QuadOptions) -> QuadResult
where
    F: FnMut(f64) -> Complex64,
{
    let mut panels: Vec<Panel> = points
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| gk15(&mut f, w[0], w[1]))
        .collect();
    loop {
        let value: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = opts.abs_tol.max(opts.rel_tol * value.norm());
        if error <= target || panels.is_empty() {
            return QuadResult {
                value,
                abs_error: error,
                panels: panels.len(),
                converged: true,
            };
        }
        if panels.len() >= opts.max_panels {
            return QuadResult {
                value,
                abs_error: error,
                panels: panels.len(),
                converged: false,
            };
        }
        // bisect the worst panels; several per sweep keeps this roughly N log N
        let mut order: Vec<usize> = (0..panels.len()).collect();
        order.sort_unstable_by(|&i, &j| panels[j].error.total_cmp(&panels[i].error));
        let batch = (panels.len() / 8).max(1);
        let mut split = Vec::with_capacity(batch);
        let mut remaining = error;
        for &i in order.iter().take(batch) {
            if remaining <= target {
                break;
            }
            remaining -= panels[i].error;
            split.push(i);
        }
        split.sort_unstable_by(|a, b| b.cmp(a));
        let mut stalled = true;
        for i in split {
            let p = panels[i];
            let mid = 0.5 * (p.a + p.b);
            if mid <= p.a || mid >= p.b {
                continue;
            }
            stalled = false;
            panels[i] = gk15(&mut f, p.a, mid);
            panels.push(gk15(&mut f, mid, p.b));
        }
        if stalled {
            let value: Complex64 = panels.iter().map(|p| p.value).sum();
            return QuadResult {
                value,
                abs_error: error,
                panels: panels.len(),
                converged: false,
            };
        }
    }
}

/// `n + 1` equally spaced breakpoints on `[a, b]`.
pub fn uniform_breakpoints(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| {
            if i == n {
                b
            } else {
                a + (b - a) * (i as f64) / (n as f64)
            }
        })
        .collect()
}

/// Fixed composite rule: the 15-point Kronrod formula on every panel.
/// For integrands that are smooth inside each panel this is exact to
/// polynomial degree 22 per panel.
pub fn composite_kronrod<F>(mut f: F, points: &[f64]) -> f64
where
    F: FnMut(f64) -> f64,
{
    let mut total = 0.0;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = WGK[7] * f(center);
        for i in 0..7 {
            let dx = half * XGK[i];
            acc += WGK[i] * (f(center - dx) + f(center + dx));
        }
        total += acc * half;
    }
    total
}
