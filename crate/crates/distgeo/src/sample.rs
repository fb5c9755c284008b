//! Sample-based equality testing. Identities between closed-form scalar
//! fields are checked by evaluation on a fixed grid of `t` values rather
//! than by symbolic canonicalization.

use crate::error::Result;
use crate::expr::Expr;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub points: Vec<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl SamplePlan {
    /// 17 uniform points on [0.10, 2.10], avoiding t = 0 where warp
    /// families like (c2·t+c1)^(2/3) can degenerate.
    pub fn default_plan() -> Self {
        SamplePlan::uniform(0.10, 2.10, 17)
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Self {
        assert!(n >= 2);
        let step = (b - a) / (n as f64 - 1.0);
        SamplePlan {
            points: (0..n).map(|k| a + step * k as f64).collect(),
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        }
    }

    pub fn with_tols(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn tolerance(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }

    /// Largest |e(t)| over the plan points.
    pub fn max_abs(&self, e: &Expr) -> Result<f64> {
        let mut worst = 0.0f64;
        for &t in &self.points {
            worst = worst.max(e.eval(t)?.abs());
        }
        Ok(worst)
    }

    /// True iff |e(t)| ≤ abs_tol + rel_tol·scale at every plan point.
    /// `scale` is the caller-supplied magnitude of the operands producing `e`.
    pub fn approx_zero_scaled(&self, e: &Expr, scale: f64) -> Result<bool> {
        Ok(self.max_abs(e)? <= self.tolerance(scale))
    }

    pub fn approx_zero(&self, e: &Expr) -> Result<bool> {
        self.approx_zero_scaled(e, 1.0)
    }

    /// Max residual between two expressions over the plan.
    pub fn max_diff(&self, a: &Expr, b: &Expr) -> Result<f64> {
        self.max_abs(&Expr::sub(a, b))
    }
}
