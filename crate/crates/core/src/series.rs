//! First-order perturbative scalars.
//!
//! A [`Series1`] is the pair `(c0, c1)` standing for `c0 + α·c1 + O(α²)`.
//! Every arithmetic operation discards the `α²` terms, so results stay exact
//! to first order no matter how many operations are chained.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{GupError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Series1 {
    pub c0: f64,
    pub c1: f64,
}

impl Series1 {
    pub const ZERO: Series1 = Series1 { c0: 0.0, c1: 0.0 };
    pub const ONE: Series1 = Series1 { c0: 1.0, c1: 0.0 };

    pub const fn new(c0: f64, c1: f64) -> Self {
        Series1 { c0, c1 }
    }

    /// An α-independent value.
    pub const fn constant(c0: f64) -> Self {
        Series1 { c0, c1: 0.0 }
    }

    /// Evaluates the truncated series at a concrete α.
    pub fn eval(self, alpha: f64) -> f64 {
        self.c0 + alpha * self.c1
    }

    /// First-order relative correction `c1 / c0`.
    pub fn relative_correction(self) -> Result<f64> {
        if self.c0 == 0.0 {
            return Err(GupError::SeriesDomain(
                "relative correction of a series with c0 = 0",
            ));
        }
        Ok(self.c1 / self.c0)
    }

    pub fn scale(self, k: f64) -> Self {
        Series1::new(self.c0 * k, self.c1 * k)
    }

    pub fn recip(self) -> Result<Self> {
        if self.c0 == 0.0 {
            return Err(GupError::SeriesDomain("reciprocal of a series with c0 = 0"));
        }
        Ok(Series1::new(1.0 / self.c0, -self.c1 / (self.c0 * self.c0)))
    }

    pub fn checked_div(self, rhs: Series1) -> Result<Self> {
        if rhs.c0 == 0.0 {
            return Err(GupError::SeriesDomain("division by a series with c0 = 0"));
        }
        let q0 = self.c0 / rhs.c0;
        Ok(Series1::new(q0, (self.c1 - q0 * rhs.c1) / rhs.c0))
    }

    /// `ln(c0 + α c1) = ln c0 + α c1/c0`; requires `c0 > 0`.
    pub fn ln(self) -> Result<Self> {
        if !(self.c0 > 0.0) {
            return Err(GupError::SeriesDomain("logarithm of a series with c0 <= 0"));
        }
        Ok(Series1::new(self.c0.ln(), self.c1 / self.c0))
    }

    pub fn exp(self) -> Self {
        let e = self.c0.exp();
        Series1::new(e, e * self.c1)
    }

    /// Real power `x^p`; requires `c0 > 0`.
    pub fn powf(self, p: f64) -> Result<Self> {
        if !(self.c0 > 0.0) {
            return Err(GupError::SeriesDomain(
                "real power of a series with c0 <= 0",
            ));
        }
        let v = self.c0.powf(p);
        Ok(Series1::new(v, p * v * self.c1 / self.c0))
    }
}

impl From<f64> for Series1 {
    fn from(c0: f64) -> Self {
        Series1::constant(c0)
    }
}

impl Add for Series1 {
    type Output = Series1;
    fn add(self, rhs: Series1) -> Series1 {
        Series1::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl AddAssign for Series1 {
    fn add_assign(&mut self, rhs: Series1) {
        self.c0 += rhs.c0;
        self.c1 += rhs.c1;
    }
}

impl Sub for Series1 {
    type Output = Series1;
    fn sub(self, rhs: Series1) -> Series1 {
        Series1::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl Neg for Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1::new(-self.c0, -self.c1)
    }
}

impl Mul for Series1 {
    type Output = Series1;
    fn mul(self, rhs: Series1) -> Series1 {
        Series1::new(self.c0 * rhs.c0, self.c0 * rhs.c1 + self.c1 * rhs.c0)
    }
}

impl Mul<f64> for Series1 {
    type Output = Series1;
    fn mul(self, rhs: f64) -> Series1 {
        self.scale(rhs)
    }
}

impl Mul<Series1> for f64 {
    type Output = Series1;
    fn mul(self, rhs: Series1) -> Series1 {
        rhs.scale(self)
    }
}

impl Sum for Series1 {
    fn sum<I: Iterator<Item = Series1>>(iter: I) -> Series1 {
        iter.fold(Series1::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + α·({})", self.c0, self.c1)
    }
}
