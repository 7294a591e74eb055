//! Forward-mode dual numbers, used to differentiate the asymptotic
//! expansions in the order.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `v + d·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub const fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }
    pub const fn constant(v: f64) -> Self {
        Self { v, d: 0.0 }
    }
    pub const fn variable(v: f64) -> Self {
        Self { v, d: 1.0 }
    }
    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Self::new(s, 0.5 * self.d / s)
    }
    pub fn ln(self) -> Self {
        Self::new(self.v.ln(), self.d / self.v)
    }
    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Self::new(e, e * self.d)
    }
    pub fn asinh(self) -> Self {
        Self::new(self.v.asinh(), self.d / (self.v * self.v + 1.0).sqrt())
    }
    pub fn recip(self) -> Self {
        Self::new(1.0 / self.v, -self.d / (self.v * self.v))
    }
    pub fn powi(self, n: i32) -> Self {
        Self::new(self.v.powi(n), n as f64 * self.v.powi(n - 1) * self.d)
    }
    pub fn abs(self) -> Self {
        if self.v < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for Dual {
    fn from(v: f64) -> Self {
        Self::constant(v)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}
impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}
impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, o: f64) -> Dual {
        Dual::new(self.v + o, self.d)
    }
}
impl Sub<f64> for Dual {
    type Output = Dual;
    fn sub(self, o: f64) -> Dual {
        Dual::new(self.v - o, self.d)
    }
}
impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, o: f64) -> Dual {
        Dual::new(self.v * o, self.d * o)
    }
}
impl Div<f64> for Dual {
    type Output = Dual;
    fn div(self, o: f64) -> Dual {
        Dual::new(self.v / o, self.d / o)
    }
}
impl Add<Dual> for f64 {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        o + self
    }
}
impl Sub<Dual> for f64 {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self - o.v, -o.d)
    }
}
impl Mul<Dual> for f64 {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        o * self
    }
}
impl Div<Dual> for f64 {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::constant(self) / o
    }
}
