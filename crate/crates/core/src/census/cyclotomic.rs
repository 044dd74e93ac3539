//! The field `Q(ζ)` with `ζ² + ζ + 1 = 0`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

use crate::scalar::{integer, Field};

/// `re + im·ζ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub re: BigRational,
    pub im: BigRational,
}

impl Eisenstein {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Eisenstein { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(integer(re), integer(im))
    }

    pub fn zeta() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Image under `ζ ↦ ζ²`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.re.clone() - self.im.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigRational {
        self.re.clone() * self.re.clone() - self.re.clone() * self.im.clone() + self.im.clone() * self.im.clone()
    }

    /// Complex embedding with `ζ = e^{2πi/3}`.
    pub fn to_complex(&self) -> num::Complex<f64> {
        let re = self.re.to_f64().unwrap();
        let im = self.im.to_f64().unwrap();
        num::Complex::new(re - im / 2.0, im * 3f64.sqrt() / 2.0)
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl Add for Eisenstein {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Eisenstein {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Eisenstein {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for Eisenstein {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let bd = self.im.clone() * rhs.im.clone();
        Self::new(self.re.clone() * rhs.re.clone() - bd.clone(), self.re * rhs.im + self.im * rhs.re - bd)
    }
}

impl Div for Eisenstein {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(ζ)");
        let p = self * rhs.conjugate();
        Self::new(p.re / n.clone(), p.im / n)
    }
}

impl Field for Eisenstein {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ζ", self.im),
            (false, false) => write!(f, "{}+{}ζ", self.re, self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_primitive_cube_root() {
        let z = Eisenstein::zeta();
        assert_ne!(z, Eisenstein::one());
        assert_eq!(z.pow(3), Eisenstein::one());
        assert_eq!(z.pow(2) + z + Eisenstein::one(), Eisenstein::zero());
    }

    #[test]
    fn inverse() {
        let x = Eisenstein::from_ints(3, -7);
        assert_eq!(x.clone() * x.inv(), Eisenstein::one());
        assert_eq!(x.norm(), integer(9 + 21 + 49));
    }

    #[test]
    fn embedding() {
        let c = Eisenstein::zeta().to_complex();
        assert!((c.powu(3) - num::Complex::new(1.0, 0.0)).norm() < 1e-12);
    }
}
