use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A characteristic-class expression on a surface with `c_1 = 0`.
///
/// Only degrees 0 and 4 occur. The degree-4 part is spanned by two symbols:
/// `c2` (the second Chern class of the surface) and `a` (the restriction
/// `c_2(X)·[Y]`). Any product of two degree-4 terms vanishes.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedClass<F> {
    pub constant: F,
    pub c2: F,
    pub a: F,
}

impl<F: Field> GradedClass<F> {
    pub fn new(constant: F, c2: F, a: F) -> Self {
        GradedClass { constant, c2, a }
    }

    pub fn constant(c: F) -> Self {
        Self::new(c, F::zero(), F::zero())
    }

    pub fn zero() -> Self {
        Self::constant(F::zero())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The symbol `c_2(Y)`.
    pub fn c2_symbol() -> Self {
        Self::new(F::zero(), F::one(), F::zero())
    }

    /// The symbol `c_2(X)·[Y]`.
    pub fn a_symbol() -> Self {
        Self::new(F::zero(), F::zero(), F::one())
    }

    pub fn is_pure_top_degree(&self) -> bool {
        self.constant.is_negligible()
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.constant.clone() * s.clone(), self.c2.clone() * s.clone(), self.a.clone() * s.clone())
    }

    /// `(x0 + t)^{-1} = 1/x0 - t/x0^2` since `t^2 = 0`.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.constant.is_negligible() {
            return Err(Error::InvalidArgument("inverse of a class with zero degree-0 part".into()));
        }
        let inv = self.constant.inv();
        let inv2 = -(inv.clone() * inv.clone());
        Ok(Self::new(inv, self.c2.clone() * inv2.clone(), self.a.clone() * inv2))
    }

    /// Integral over the surface: picks the degree-4 part with
    /// `∫ c_2(Y) = c2_integral` and `∫ c_2(X)·[Y] = a_value`.
    pub fn integrate(&self, c2_integral: &F, a_value: &F) -> F {
        self.c2.clone() * c2_integral.clone() + self.a.clone() * a_value.clone()
    }
}

impl<F: Field> Add for GradedClass<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.constant + rhs.constant, self.c2 + rhs.c2, self.a + rhs.a)
    }
}

impl<F: Field> Sub for GradedClass<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.constant - rhs.constant, self.c2 - rhs.c2, self.a - rhs.a)
    }
}

impl<F: Field> Neg for GradedClass<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.constant, -self.c2, -self.a)
    }
}

impl<F: Field> Mul for GradedClass<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.constant.clone() * rhs.constant.clone(),
            self.constant.clone() * rhs.c2 + self.c2 * rhs.constant.clone(),
            self.constant * rhs.a + self.a * rhs.constant,
        )
    }
}

impl<F: fmt::Display> fmt::Display for GradedClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·c2Y + ({})·a", self.constant, self.c2, self.a)
    }
}

/// Todd class of a surface with `c_1 = 0`: `1 + c_2/12`.
pub fn todd_surface<F: Field>() -> GradedClass<F> {
    GradedClass::one() + GradedClass::c2_symbol().scale(&F::from_ratio(1, 12))
}

/// Chern character of a rank-2 bundle with `c_1 = 0`: `2 - c_2`.
pub fn ch_rank2_c1zero<F: Field>(c2: &GradedClass<F>) -> Result<GradedClass<F>> {
    if !c2.is_pure_top_degree() {
        return Err(Error::InvalidArgument("second Chern class must be of degree 4".into()));
    }
    Ok(GradedClass::constant(F::from_i64(2)) - c2.clone())
}

/// Chern character of a line bundle with `c_1 = 0`.
pub fn ch_trivial_determinant<F: Field>() -> GradedClass<F> {
    GradedClass::one()
}
