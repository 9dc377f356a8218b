//! Minimal forward-mode differentiation.
//!
//! [`Dual`] carries a value and one directional derivative through ordinary
//! arithmetic; evaluating a function once per seeded input yields exact
//! partial derivatives. The chart Hamiltonians are written generically over
//! [`Scalar`] so the same source text produces both the f64 evaluation and
//! its gradient.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar interface shared by `f64` and [`Dual`]: field operations plus the
/// elementary functions the chart formulas use.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Lifts a constant.
    fn lift(x: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn powi(self, n: i32) -> Self;
}

impl Scalar for f64 {
    fn lift(x: f64) -> Self {
        x
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// A first-order dual number `re + du·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

impl Dual {
    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    /// A constant (zero derivative).
    pub const fn constant(re: f64) -> Self {
        Self { re, du: 0.0 }
    }

    /// The variable of differentiation (unit derivative).
    pub const fn seeded(re: f64) -> Self {
        Self { re, du: 1.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(self.re * rhs.re, self.du * rhs.re + self.re * rhs.du)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        Dual::new(
            self.re / rhs.re,
            (self.du * rhs.re - self.re * rhs.du) / (rhs.re * rhs.re),
        )
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.du)
    }
}

impl Scalar for Dual {
    fn lift(x: f64) -> Self {
        Dual::constant(x)
    }

    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.du * self.re.cos())
    }

    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -self.du * self.re.sin())
    }

    fn tan(self) -> Self {
        let c = self.re.cos();
        Dual::new(self.re.tan(), self.du / (c * c))
    }

    fn powi(self, n: i32) -> Self {
        Dual::new(
            self.re.powi(n),
            f64::from(n) * self.re.powi(n - 1) * self.du,
        )
    }
}
