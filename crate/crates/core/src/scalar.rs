//! Exact rational scalars.
//!
//! All algebraic computations in this crate run over [`Scalar`], an
//! arbitrary-precision rational in canonical form (reduced, positive
//! denominator). Floating point only enters through explicit conversions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Scalar = BigRational;

/// Builds the integer `n` as a scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the fraction `n / d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Zero scalar.
pub fn zero() -> Scalar {
    Scalar::zero()
}

/// Unit scalar.
pub fn one() -> Scalar {
    Scalar::one()
}

/// Nearest `f64` to a rational.
pub fn to_f64(q: &Scalar) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 fails only on overflow of both parts; fall back to a
        // scaled division that keeps the exponent in range.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact rational equal to the given finite `f64`.
pub fn from_f64(x: f64) -> Option<Scalar> {
    BigRational::from_float(x)
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn sqrt_exact(q: &Scalar) -> Option<Scalar> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Exact integer power with a signed exponent. Panics on `0^k` with `k < 0`.
pub fn powi(q: &Scalar, k: i32) -> Scalar {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        assert!(!q.is_zero(), "negative power of zero");
        num_traits::pow(q.recip(), (-k) as usize)
    }
}

/// Absolute value.
pub fn abs(q: &Scalar) -> Scalar {
    q.abs()
}

/// Largest integer not exceeding `q`.
pub fn floor(q: &Scalar) -> Scalar {
    q.floor()
}
