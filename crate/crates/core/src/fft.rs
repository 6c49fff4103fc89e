//! Forward complex FFT of arbitrary length.
//!
//! Powers of two use an iterative radix-2 transform; every other length goes
//! through Bluestein's chirp-z reformulation on a power-of-two grid.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// In place `X_m = Σ_j x_j e^{-2πi jm/n}` (unnormalized).
pub(crate) fn forward(data: &mut [Complex64]) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(data, false);
    } else {
        bluestein(data);
    }
}

fn radix2(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let r = i.reverse_bits() >> (usize::BITS - bits);
        if r > i {
            data.swap(i, r);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    // twiddles for the largest stage; smaller stages stride through them
    let half = n / 2;
    let twiddles: Vec<Complex64> = (0..half)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * (k as f64) / (n as f64)))
        .collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = twiddles[k * stride];
                let a = data[start + k];
                let b = data[start + k + len / 2] * w;
                data[start + k] = a + b;
                data[start + k + len / 2] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(data: &mut [Complex64]) {
    let n = data.len();
    let m = (2 * n - 1).next_power_of_two();
    let two_n = 2 * n as u128;
    // chirp_k = e^{-iπ k²/n}; reduce k² mod 2n exactly before forming the angle
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let q = ((k as u128 * k as u128) % two_n) as f64;
            Complex64::from_polar(1.0, -PI * q / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = data[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, false);
    radix2(&mut b, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    radix2(&mut a, true);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        data[k] = a[k] * scale * chirp[k];
    }
}
