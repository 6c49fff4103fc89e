//! Binomial coefficients, the terminating Kummer function and generalized
//! Laguerre polynomials.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// `m choose r`, zero when `r < 0` or `r > m`.
///
/// Exact in integer arithmetic; every `m ≤ 62` fits, and larger `m` succeed
/// as long as the result fits in a `u64`.
pub fn binomial(m: u64, r: i64) -> Result<u64> {
    if r < 0 || r as u64 > m {
        return Ok(0);
    }
    let r = (r as u64).min(m - r as u64);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (m - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((m - i) as u128)
            .ok_or(Error::BinomialOverflow { m, r: r as i64 })?
            / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::BinomialOverflow { m, r: r as i64 });
        }
    }
    Ok(acc as u64)
}

/// Binomial coefficient as a float, for index ranges beyond exact integers.
pub fn binomial_f64(m: i64, r: i64) -> f64 {
    if m < 0 || r < 0 || r > m {
        return 0.0;
    }
    let r = r.min(m - r);
    let mut acc = 1.0;
    for i in 0..r {
        acc = acc * (m - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Unevaluated sum `hi + lo` carrying about 106 bits.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        DoubleDouble { hi: s, lo: err }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        DoubleDouble { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: DoubleDouble) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul_f64(self, b: f64) -> Self {
        let p = self.hi * b;
        let err = self.hi.mul_add(b, -p);
        Self::renorm(p, err + self.lo * b)
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = (-q1).mul_add(d, self.hi);
        let q2 = (r + self.lo) / d;
        Self::renorm(q1, q2)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `₁F₁(a; b; z)` for a non-positive integer `a`, where the series stops after
/// `|a| + 1` terms.
///
/// Terms and partial sums are carried in double-double arithmetic, so the
/// result is accurate to a few ulps unless the alternating series (`z > 0`)
/// cancels by more than about 16 digits. That starts to happen once `|a|`
/// grows past about 30 with `z` of comparable size.
pub fn kummer_terminating(a: i64, b: i64, z: f64) -> Result<f64> {
    if a > 0 {
        return Err(Error::NonTerminating(a));
    }
    if b < 1 {
        return Err(Error::InvalidArgument("terminating 1F1 needs b >= 1"));
    }
    let mut acc = DoubleDouble::from_f64(1.0);
    let mut term = DoubleDouble::from_f64(1.0);
    for l in 0..(-a) {
        term = term
            .mul_f64((a + l) as f64)
            .mul_f64(z)
            .div_f64((b + l) as f64)
            .div_f64((l + 1) as f64);
        acc = acc.add(term);
    }
    Ok(acc.value())
}

/// Generalized Laguerre polynomial `L_n^{(α)}(x)` by forward recurrence.
pub fn laguerre(n: u32, alpha: u32, x: f64) -> f64 {
    laguerre_any(n, alpha as f64, x)
}

/// `L_n^{(α)}(x)` for any real `α`, including the `α = -1` family used by the
/// Cauchy coefficients.
pub(crate) fn laguerre_any(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[L_0^{(α)}(x), ..., L_{len-1}^{(α)}(x)]` in one pass of the recurrence.
pub(crate) fn laguerre_table(len: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(1.0);
    if len == 1 {
        return out;
    }
    out.push(1.0 + alpha - x);
    for m in 1..len - 1 {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + alpha - x) * out[m] - (mf + alpha) * out[m - 1]) / (mf + 1.0);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), Ok(10));
        assert_eq!(binomial(0, 1), Ok(0));
        assert_eq!(binomial(7, 0), Ok(1));
        assert_eq!(binomial(7, -1), Ok(0));
        assert_eq!(binomial(62, 31), Ok(465_428_353_255_261_088));
        assert_eq!(binomial(67, 33), Ok(14_226_520_737_620_288_370));
        assert!(matches!(binomial(70, 35), Err(Error::BinomialOverflow { .. })));
        assert_eq!(binomial(1000, 1), Ok(1000));
    }

    #[test]
    fn binomial_float_matches_exact() {
        for m in 0..=40i64 {
            for r in -1..=m + 1 {
                let exact = binomial(m as u64, r).unwrap() as f64;
                assert!((binomial_f64(m, r) - exact).abs() <= 1e-15 * exact.max(1.0));
            }
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_terminating(0, 3, 7.2), Ok(1.0));
        assert!(kummer_terminating(-1, 2, 2.0).unwrap().abs() < 1e-16);
        assert!((kummer_terminating(-2, 3, 3.0).unwrap() + 0.25).abs() < 1e-15);
        assert_eq!(kummer_terminating(1, 3, 1.0), Err(Error::NonTerminating(1)));
        assert!(kummer_terminating(-1, 0, 1.0).is_err());
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 2, 13.7), 1.0);
        assert!((laguerre(1, 2, 1.0) - 2.0).abs() < 1e-15);
        assert!((laguerre(2, 2, 0.0) - 6.0).abs() < 1e-14);
        // L_2^{(-1)}(x) = x²/2 - x
        assert!((laguerre_any(2, -1.0, 3.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn table_matches_pointwise() {
        let t = laguerre_table(20, 2.0, 3.3);
        for (n, v) in t.iter().enumerate() {
            assert!((v - laguerre(n as u32, 2, 3.3)).abs() <= 1e-13 * v.abs().max(1.0));
        }
        assert!(laguerre_table(0, 1.0, 1.0).is_empty());
    }
}
