//! Closed-form univariate scalar fields of the warp parameter `t`.
//!
//! Expressions are immutable reference-counted trees with rational constants
//! kept exact until evaluation. The tree language is closed under symbolic
//! differentiation, and evaluation produces an order-3 [`Jet`].

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GeoError, Result};
use crate::jet::Jet;

#[derive(Debug, PartialEq)]
pub enum ExprNode {
    Const(Rational64),
    Var,
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    Pow(Expr, Rational64),
    Exp(Expr),
    Sin(Expr),
    Cos(Expr),
    Sqrt(Expr),
}

#[derive(Clone, Debug)]
pub struct Expr(Rc<ExprNode>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

// Overflow-checked rational arithmetic: folding is an optimization, so on
// i64 overflow we keep the unfolded tree instead of panicking inside Ratio.
fn try_rat(mut n: i64, mut d: i64) -> Option<Rational64> {
    if d == 0 || n == i64::MIN || d == i64::MIN {
        return None;
    }
    if d < 0 {
        n = -n;
        d = -d;
    }
    let mut a = n.abs();
    let mut b = d;
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let g = a.max(1);
    Some(Rational64::new_raw(n / g, d / g))
}

fn try_add(a: Rational64, b: Rational64) -> Option<Rational64> {
    let n = a
        .numer()
        .checked_mul(*b.denom())?
        .checked_add(b.numer().checked_mul(*a.denom())?)?;
    try_rat(n, a.denom().checked_mul(*b.denom())?)
}

fn try_mul(a: Rational64, b: Rational64) -> Option<Rational64> {
    try_rat(
        a.numer().checked_mul(*b.numer())?,
        a.denom().checked_mul(*b.denom())?,
    )
}

impl Expr {
    pub fn node(&self) -> &ExprNode {
        &self.0
    }

    pub fn constant(c: Rational64) -> Expr {
        Expr(Rc::new(ExprNode::Const(c)))
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(rat(n, 1))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(rat(n, d))
    }

    /// Nearest representable rational constant (exact for small dyadics).
    pub fn float(x: f64) -> Expr {
        Expr::constant(Rational64::approximate_float(x).unwrap_or_else(|| rat(0, 1)))
    }

    pub fn var() -> Expr {
        Expr(Rc::new(ExprNode::Var))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn as_const(&self) -> Option<Rational64> {
        match self.node() {
            ExprNode::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), ExprNode::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), ExprNode::Const(c) if c.is_one())
    }

    pub fn add(a: &Expr, b: &Expr) -> Expr {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(c) = try_add(x, y) {
                return Expr::constant(c);
            }
        }
        Expr(Rc::new(ExprNode::Add(a.clone(), b.clone())))
    }

    pub fn sub(a: &Expr, b: &Expr) -> Expr {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return Expr::neg(b);
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(c) = try_add(x, -y) {
                return Expr::constant(c);
            }
        }
        Expr(Rc::new(ExprNode::Sub(a.clone(), b.clone())))
    }

    pub fn mul(a: &Expr, b: &Expr) -> Expr {
        if a.is_zero() || b.is_zero() {
            return Expr::zero();
        }
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(c) = try_mul(x, y) {
                return Expr::constant(c);
            }
        }
        Expr(Rc::new(ExprNode::Mul(a.clone(), b.clone())))
    }

    pub fn div(a: &Expr, b: &Expr) -> Expr {
        if a.is_zero() && !b.is_zero() {
            return Expr::zero();
        }
        if b.is_one() {
            return a.clone();
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if !y.is_zero() {
                if let Some(c) = try_mul(x, y.recip()) {
                    return Expr::constant(c);
                }
            }
        }
        Expr(Rc::new(ExprNode::Div(a.clone(), b.clone())))
    }

    pub fn neg(a: &Expr) -> Expr {
        if let Some(x) = a.as_const() {
            return Expr::constant(-x);
        }
        if let ExprNode::Neg(inner) = a.node() {
            return inner.clone();
        }
        Expr(Rc::new(ExprNode::Neg(a.clone())))
    }

    pub fn pow(a: &Expr, exponent: Rational64) -> Expr {
        if exponent.is_zero() {
            return Expr::one();
        }
        if exponent.is_one() {
            return a.clone();
        }
        if let Some(x) = a.as_const() {
            if exponent.is_integer() && exponent.numer().unsigned_abs() <= 8 {
                let n = *exponent.numer();
                if !(x.is_zero() && n < 0) {
                    let mut acc = Rational64::one();
                    for _ in 0..n.unsigned_abs() {
                        acc *= x;
                    }
                    if n < 0 {
                        acc = acc.recip();
                    }
                    return Expr::constant(acc);
                }
            }
        }
        Expr(Rc::new(ExprNode::Pow(a.clone(), exponent)))
    }

    pub fn exp(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::one();
        }
        Expr(Rc::new(ExprNode::Exp(a.clone())))
    }

    pub fn sin(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::zero();
        }
        Expr(Rc::new(ExprNode::Sin(a.clone())))
    }

    pub fn cos(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::one();
        }
        Expr(Rc::new(ExprNode::Cos(a.clone())))
    }

    pub fn sqrt(a: &Expr) -> Expr {
        Expr(Rc::new(ExprNode::Sqrt(a.clone())))
    }

    /// Symbolic derivative with respect to `t`. Total on the tree language.
    pub fn derive(&self) -> Expr {
        match self.node() {
            ExprNode::Const(_) => Expr::zero(),
            ExprNode::Var => Expr::one(),
            ExprNode::Add(a, b) => Expr::add(&a.derive(), &b.derive()),
            ExprNode::Sub(a, b) => Expr::sub(&a.derive(), &b.derive()),
            ExprNode::Mul(a, b) => {
                Expr::add(&Expr::mul(&a.derive(), b), &Expr::mul(a, &b.derive()))
            }
            ExprNode::Div(a, b) => {
                let num = Expr::sub(&Expr::mul(&a.derive(), b), &Expr::mul(a, &b.derive()));
                Expr::div(&num, &Expr::pow(b, rat(2, 1)))
            }
            ExprNode::Neg(a) => Expr::neg(&a.derive()),
            ExprNode::Pow(a, k) => {
                let outer = Expr::mul(&Expr::constant(*k), &Expr::pow(a, k - Rational64::one()));
                Expr::mul(&outer, &a.derive())
            }
            ExprNode::Exp(a) => Expr::mul(&Expr::exp(a), &a.derive()),
            ExprNode::Sin(a) => Expr::mul(&Expr::cos(a), &a.derive()),
            ExprNode::Cos(a) => Expr::neg(&Expr::mul(&Expr::sin(a), &a.derive())),
            ExprNode::Sqrt(a) => {
                Expr::div(&a.derive(), &Expr::mul(&Expr::int(2), &Expr::sqrt(a)))
            }
        }
    }

    /// Evaluates the expression and its first three derivatives at `t`.
    pub fn eval_jet(&self, t: f64) -> Result<Jet> {
        let mut memo: HashMap<*const ExprNode, Jet> = HashMap::new();
        self.eval_memo(t, &mut memo)
    }

    /// Convenience accessor for the plain value at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.eval_jet(t)?.value)
    }

    fn eval_memo(&self, t: f64, memo: &mut HashMap<*const ExprNode, Jet>) -> Result<Jet> {
        let key = Rc::as_ptr(&self.0);
        if let Some(j) = memo.get(&key) {
            return Ok(*j);
        }
        let jet = match self.node() {
            ExprNode::Const(c) => Jet::constant(c.to_f64().unwrap()),
            ExprNode::Var => Jet::variable(t),
            ExprNode::Add(a, b) => a.eval_memo(t, memo)? + b.eval_memo(t, memo)?,
            ExprNode::Sub(a, b) => a.eval_memo(t, memo)? - b.eval_memo(t, memo)?,
            ExprNode::Mul(a, b) => a.eval_memo(t, memo)? * b.eval_memo(t, memo)?,
            ExprNode::Div(a, b) => {
                let d = b.eval_memo(t, memo)?;
                if d.value == 0.0 {
                    return Err(GeoError::Domain { t, what: "division by zero".into() });
                }
                a.eval_memo(t, memo)? / d
            }
            ExprNode::Neg(a) => -a.eval_memo(t, memo)?,
            ExprNode::Pow(a, k) => {
                let base = a.eval_memo(t, memo)?;
                if k.is_integer() {
                    let n = *k.numer();
                    if base.value == 0.0 && n < 0 {
                        return Err(GeoError::Domain {
                            t,
                            what: "zero base with negative exponent".into(),
                        });
                    }
                    base.powi(n)
                } else {
                    if base.value <= 0.0 {
                        return Err(GeoError::Domain {
                            t,
                            what: format!(
                                "non-positive base {} with fractional exponent {}",
                                base.value, k
                            ),
                        });
                    }
                    base.powf(k.to_f64().unwrap())
                }
            }
            ExprNode::Exp(a) => a.eval_memo(t, memo)?.exp(),
            ExprNode::Sin(a) => a.eval_memo(t, memo)?.sin(),
            ExprNode::Cos(a) => a.eval_memo(t, memo)?.cos(),
            ExprNode::Sqrt(a) => {
                let inner = a.eval_memo(t, memo)?;
                if inner.value < 0.0 {
                    return Err(GeoError::Domain {
                        t,
                        what: format!("sqrt of negative value {}", inner.value),
                    });
                }
                inner.sqrt()
            }
        };
        memo.insert(key, jet);
        Ok(jet)
    }
}

fn fmt_rational(c: Rational64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        if c.is_negative() {
            write!(f, "({})", c.numer())
        } else {
            write!(f, "{}", c.numer())
        }
    } else {
        write!(f, "({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            ExprNode::Const(c) => fmt_rational(*c, f),
            ExprNode::Var => write!(f, "t"),
            ExprNode::Add(a, b) => write!(f, "({}+{})", a, b),
            ExprNode::Sub(a, b) => write!(f, "({}-{})", a, b),
            ExprNode::Mul(a, b) => write!(f, "({}*{})", a, b),
            ExprNode::Div(a, b) => write!(f, "({}/{})", a, b),
            ExprNode::Neg(a) => write!(f, "(-{})", a),
            ExprNode::Pow(a, k) => {
                write!(f, "({}^", a)?;
                if k.is_integer() {
                    if k.is_negative() {
                        write!(f, "({})", k.numer())?;
                    } else {
                        write!(f, "{}", k.numer())?;
                    }
                } else {
                    write!(f, "({}/{})", k.numer(), k.denom())?;
                }
                write!(f, ")")
            }
            ExprNode::Exp(a) => write!(f, "exp({})", a),
            ExprNode::Sin(a) => write!(f, "sin({})", a),
            ExprNode::Cos(a) => write!(f, "cos({})", a),
            ExprNode::Sqrt(a) => write!(f, "sqrt({})", a),
        }
    }
}

impl std::ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::add(self, rhs)
    }
}

impl std::ops::Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        Expr::sub(self, rhs)
    }
}

impl std::ops::Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::mul(self, rhs)
    }
}

impl std::ops::Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        Expr::div(self, rhs)
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
