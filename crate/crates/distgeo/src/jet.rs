//! Truncated Taylor arithmetic: a value together with its first three
//! derivatives at a point, composed by the Leibniz and chain rules.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet {
    pub const fn constant(value: f64) -> Self {
        Jet { value, d1: 0.0, d2: 0.0, d3: 0.0 }
    }

    /// The jet of the identity function t ↦ t at the point `t`.
    pub const fn variable(t: f64) -> Self {
        Jet { value: t, d1: 1.0, d2: 0.0, d3: 0.0 }
    }

    /// Composes an outer univariate function, given by its derivatives
    /// `g = [g(u), g'(u), g''(u), g'''(u)]` at `u = self.value`, with `self`.
    pub fn compose(self, g: [f64; 4]) -> Jet {
        let u = self;
        Jet {
            value: g[0],
            d1: g[1] * u.d1,
            d2: g[2] * u.d1 * u.d1 + g[1] * u.d2,
            d3: g[3] * u.d1 * u.d1 * u.d1 + 3.0 * g[2] * u.d1 * u.d2 + g[1] * u.d3,
        }
    }

    pub fn exp(self) -> Jet {
        let e = self.value.exp();
        self.compose([e, e, e, e])
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.value.sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.value.sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn sqrt(self) -> Jet {
        self.powf(0.5)
    }

    /// Real power with arbitrary exponent; the base must be positive unless
    /// the exponent is an integer.
    pub fn powf(self, a: f64) -> Jet {
        let x = self.value;
        let g0 = x.powf(a);
        let g1 = a * x.powf(a - 1.0);
        let g2 = a * (a - 1.0) * x.powf(a - 2.0);
        let g3 = a * (a - 1.0) * (a - 2.0) * x.powf(a - 3.0);
        self.compose([g0, g1, g2, g3])
    }

    /// Integer power, valid for any base (negative included).
    pub fn powi(self, n: i64) -> Jet {
        let x = self.value;
        let pw = |k: i64| -> f64 {
            if k >= 0 {
                x.powi(k as i32)
            } else {
                x.powi(k as i32)
            }
        };
        let a = n as f64;
        let g0 = pw(n);
        let g1 = a * pw(n - 1);
        let g2 = a * (a - 1.0) * pw(n - 2);
        let g3 = a * (a - 1.0) * (a - 2.0) * pw(n - 3);
        self.compose([g0, g1, g2, g3])
    }

    pub fn recip(self) -> Jet {
        let v = self.value;
        let v2 = v * v;
        let v3 = v2 * v;
        let v4 = v3 * v;
        Jet {
            value: 1.0 / v,
            d1: -self.d1 / v2,
            d2: -self.d2 / v2 + 2.0 * self.d1 * self.d1 / v3,
            d3: -self.d3 / v2 + 6.0 * self.d1 * self.d2 / v3
                - 6.0 * self.d1 * self.d1 * self.d1 / v4,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            value: self.value + o.value,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            d3: self.d3 + o.d3,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet {
            value: self.value - o.value,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
            d3: self.d3 - o.d3,
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { value: -self.value, d1: -self.d1, d2: -self.d2, d3: -self.d3 }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
            d3: self.d3 * o.value
                + 3.0 * self.d2 * o.d1
                + 3.0 * self.d1 * o.d2
                + self.value * o.d3,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_derivatives() {
        let c = Jet::constant(3.5);
        assert_eq!(c.d1, 0.0);
        assert_eq!(c.d2, 0.0);
        assert_eq!(c.d3, 0.0);
    }

    #[test]
    fn product_leibniz() {
        // (t^2)·(t^3) = t^5 at t = 2
        let t = Jet::variable(2.0);
        let p = t.powi(2) * t.powi(3);
        let q = t.powi(5);
        assert!((p.value - q.value).abs() < 1e-12);
        assert!((p.d1 - q.d1).abs() < 1e-12);
        assert!((p.d2 - q.d2).abs() < 1e-12);
        assert!((p.d3 - q.d3).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_matches_power() {
        let t = Jet::variable(1.7);
        let a = t.recip();
        let b = t.powi(-1);
        assert!((a.d3 - b.d3).abs() < 1e-10);
    }
}
