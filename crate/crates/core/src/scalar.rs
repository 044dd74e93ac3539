//! Scalar fields the algebra is generic over.
//!
//! Exact fields (`BigRational`, the cyclotomic field in [`crate::census::cyclotomic`])
//! give certificates; floating fields (`f32`, `f64`, `Complex<f64>`) are used by the
//! numeric searches and treat values below [`FLOAT_NEGLIGIBLE`] as zero.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Complex;

/// Absolute threshold below which a floating-point value is considered zero
/// during elimination. Inputs are expected to be scaled to O(1).
pub const FLOAT_NEGLIGIBLE: f64 = 1e-9;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// Whether zero tests are exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Zero test used by elimination. Exact fields compare with zero.
    fn is_negligible(&self) -> bool;

    /// Size used to pick elimination pivots.
    fn magnitude(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_NEGLIGIBLE
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Field for f32 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn is_negligible(&self) -> bool {
        (self.abs() as f64) < 1e-5
    }

    fn magnitude(&self) -> f64 {
        self.abs() as f64
    }
}

impl Field for Complex<f64> {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn is_negligible(&self) -> bool {
        self.norm() < FLOAT_NEGLIGIBLE
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Conversion of exact scalars into floating point for the numeric routines.
pub trait ToFloat {
    fn to_f64_lossy(&self) -> f64;
}

impl ToFloat for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"`, or a decimal like `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num::pow(BigInt::from(10), frac_part.len());
        return Some(BigRational::new(n, d));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rationalize(x: f64, max_den: i64) -> BigRational {
    let negative = x < 0.0;
    let mut r = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::zero();
    }
    let v = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -v
    } else {
        v
    }
}
