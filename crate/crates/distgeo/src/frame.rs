//! Frame description of a Riemannian manifold: an orthogonal frame with
//! t-dependent diagonal metric coefficients, structure functions for the
//! Lie brackets, and per-direction derivation weights. The Levi-Civita
//! connection is produced from the Koszul formula, which reduces to a
//! diagonal solve for g-orthogonal frames.

use num_rational::Rational64;

use crate::error::{GeoError, Result};
use crate::expr::Expr;
use crate::sample::SamplePlan;

#[derive(Debug, Clone)]
pub struct FrameManifold {
    pub names: Vec<String>,
    /// g(E_i, E_i); the frame is g-orthogonal so off-diagonal entries vanish.
    pub metric_diag: Vec<Expr>,
    /// c[i][j][k] with [E_i, E_j] = Σ_k c_{ij}^k E_k.
    pub structure: Vec<Vec<Vec<Expr>>>,
    /// w_i with E_i(φ) = w_i·φ' for every scalar φ.
    pub deriv_weight: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub coeffs: Vec<Expr>,
}

impl VectorField {
    pub fn zero(m: usize) -> Self {
        VectorField { coeffs: vec![Expr::zero(); m] }
    }

    /// The frame field E_i.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[i] = Expr::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<Expr>) -> Self {
        VectorField { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Expr::add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Expr::sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().map(Expr::neg).collect() }
    }

    pub fn scale(&self, s: &Expr) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().map(|c| Expr::mul(s, c)).collect() }
    }

    /// Max coefficient magnitude over the plan.
    pub fn max_abs(&self, plan: &SamplePlan) -> Result<f64> {
        let mut worst = 0.0f64;
        for c in &self.coeffs {
            worst = worst.max(plan.max_abs(c)?);
        }
        Ok(worst)
    }

    pub fn max_diff(&self, other: &VectorField, plan: &SamplePlan) -> Result<f64> {
        self.sub(other).max_abs(plan)
    }
}

/// Connection coefficients Γ over the frame: ∇_{E_i}E_j = Σ_k Γ_{ij}^k E_k.
#[derive(Debug, Clone)]
pub struct ConnectionTable {
    pub gamma: Vec<Vec<Vec<Expr>>>,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> VectorField {
        VectorField { coeffs: self.gamma[i][j].clone() }
    }
}

pub fn zero_table(m: usize) -> Vec<Vec<Vec<Expr>>> {
    vec![vec![vec![Expr::zero(); m]; m]; m]
}

impl FrameManifold {
    pub fn dim(&self) -> usize {
        self.metric_diag.len()
    }

    /// Derivation of a scalar along a vector field: V(φ) = Σ_i v^i w_i φ'.
    pub fn derive_along(&self, v: &VectorField, phi: &Expr) -> Expr {
        let dphi = phi.derive();
        let mut acc = Expr::zero();
        for i in 0..self.dim() {
            acc = Expr::add(&acc, &Expr::mul(&Expr::mul(&v.coeffs[i], &self.deriv_weight[i]), &dphi));
        }
        acc
    }

    /// Riemannian pairing g(V, W) = Σ_i v^i w^i g_i.
    pub fn pairing(&self, v: &VectorField, w: &VectorField) -> Expr {
        let mut acc = Expr::zero();
        for i in 0..self.dim() {
            acc = Expr::add(
                &acc,
                &Expr::mul(&Expr::mul(&v.coeffs[i], &w.coeffs[i]), &self.metric_diag[i]),
            );
        }
        acc
    }

    /// Lie bracket of general fields:
    /// [V,W] = Σ v^i w^j [E_i,E_j] + Σ V(w^j)E_j − Σ W(v^i)E_i.
    pub fn bracket(&self, v: &VectorField, w: &VectorField) -> VectorField {
        let m = self.dim();
        let mut out = VectorField::zero(m);
        for i in 0..m {
            if v.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if w.coeffs[j].is_zero() {
                    continue;
                }
                let scale = Expr::mul(&v.coeffs[i], &w.coeffs[j]);
                for k in 0..m {
                    out.coeffs[k] =
                        Expr::add(&out.coeffs[k], &Expr::mul(&scale, &self.structure[i][j][k]));
                }
            }
        }
        for j in 0..m {
            out.coeffs[j] = Expr::add(&out.coeffs[j], &self.derive_along(v, &w.coeffs[j]));
            out.coeffs[j] = Expr::sub(&out.coeffs[j], &self.derive_along(w, &v.coeffs[j]));
        }
        out
    }

    /// Covariant derivative ∇_V W from a coefficient table, extended by the
    /// Leibniz rule: ∇_V W = Σ_j V(w^j)E_j + Σ_{i,j} v^i w^j ∇_{E_i}E_j.
    pub fn cov_deriv(&self, table: &ConnectionTable, v: &VectorField, w: &VectorField) -> VectorField {
        let m = self.dim();
        let mut out = VectorField::zero(m);
        for j in 0..m {
            out.coeffs[j] = self.derive_along(v, &w.coeffs[j]);
        }
        for i in 0..m {
            if v.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if w.coeffs[j].is_zero() {
                    continue;
                }
                let scale = Expr::mul(&v.coeffs[i], &w.coeffs[j]);
                for k in 0..m {
                    out.coeffs[k] =
                        Expr::add(&out.coeffs[k], &Expr::mul(&scale, &table.gamma[i][j][k]));
                }
            }
        }
        out
    }

    /// Curvature R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]}Z.
    pub fn curvature(
        &self,
        table: &ConnectionTable,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
    ) -> VectorField {
        let a = self.cov_deriv(table, x, &self.cov_deriv(table, y, z));
        let b = self.cov_deriv(table, y, &self.cov_deriv(table, x, z));
        let c = self.cov_deriv(table, &self.bracket(x, y), z);
        a.sub(&b).sub(&c)
    }

    /// Precomputed curvature over frame triples: `r[i][j][k] = R(E_i,E_j)E_k`.
    pub fn curvature_table(&self, table: &ConnectionTable) -> Vec<Vec<Vec<VectorField>>> {
        let m = self.dim();
        let basis: Vec<VectorField> = (0..m).map(|i| VectorField::basis(m, i)).collect();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|k| self.curvature(table, &basis[i], &basis[j], &basis[k]))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Levi-Civita connection coefficients from the Koszul formula
    /// 2g(∇_X Y,Z) = Xg(Y,Z)+Yg(X,Z)−Zg(X,Y)
    ///             +g([X,Y],Z)−g([X,Z],Y)−g([Y,Z],X) on frame triples.
    pub fn koszul_levi_civita(&self, plan: &SamplePlan) -> Result<ConnectionTable> {
        self.check_metric_nonsingular(plan)?;
        let m = self.dim();
        let g = &self.metric_diag;
        let dg: Vec<Expr> = g.iter().map(Expr::derive).collect();
        let w = &self.deriv_weight;
        let c = &self.structure;
        let half = Expr::rational(1, 2);
        let mut gamma = zero_table(m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    // Xg(Y,Z) with X=E_i, Y=E_j, Z=E_k and diagonal g.
                    let mut acc = Expr::zero();
                    if j == k {
                        acc = Expr::add(&acc, &Expr::mul(&w[i], &dg[j]));
                    }
                    if i == k {
                        acc = Expr::add(&acc, &Expr::mul(&w[j], &dg[i]));
                    }
                    if i == j {
                        acc = Expr::sub(&acc, &Expr::mul(&w[k], &dg[i]));
                    }
                    acc = Expr::add(&acc, &Expr::mul(&c[i][j][k], &g[k]));
                    acc = Expr::sub(&acc, &Expr::mul(&c[i][k][j], &g[j]));
                    acc = Expr::sub(&acc, &Expr::mul(&c[j][k][i], &g[i]));
                    gamma[i][j][k] = Expr::mul(&half, &Expr::div(&acc, &g[k]));
                }
            }
        }
        Ok(ConnectionTable { gamma })
    }

    pub fn check_metric_nonsingular(&self, plan: &SamplePlan) -> Result<()> {
        for (idx, gi) in self.metric_diag.iter().enumerate() {
            for &t in &plan.points {
                if gi.eval(t)?.abs() <= plan.abs_tol {
                    return Err(GeoError::SingularMetric { index: idx, t });
                }
            }
        }
        Ok(())
    }

    /// 1/√(g_i), used to orthonormalize the frame for traces.
    pub fn inv_norm(&self, i: usize) -> Expr {
        Expr::pow(&self.metric_diag[i], Rational64::new(-1, 2))
    }

    /// Ricci tensor over the frame, Ric(X,Y) = Σ_k g(R(X,Ẽ_k)Y, Ẽ_k) with
    /// Ẽ_k = E_k/√(g_k); entries are reported in the unnormalized frame
    /// pairing, `ric[i][j] = Ric(E_i, E_j)`.
    pub fn ricci(&self, table: &ConnectionTable) -> Vec<Vec<Expr>> {
        let m = self.dim();
        let r = self.curvature_table(table);
        let mut ric = vec![vec![Expr::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = Expr::zero();
                for k in 0..m {
                    // g(R(E_i,E_k)E_j, E_k)/g_k
                    let val = Expr::mul(&r[i][k][j].coeffs[k], &self.metric_diag[k]);
                    acc = Expr::add(&acc, &Expr::div(&val, &self.metric_diag[k]));
                }
                ric[i][j] = acc;
            }
        }
        ric
    }

    /// Scalar curvature: trace of Ricci over the orthonormalized frame.
    pub fn scalar_curvature(&self, table: &ConnectionTable) -> Expr {
        let ric = self.ricci(table);
        let mut acc = Expr::zero();
        for i in 0..self.dim() {
            acc = Expr::add(&acc, &Expr::div(&ric[i][i], &self.metric_diag[i]));
        }
        acc
    }

    /// Bracket antisymmetry and the Jacobi identity at the plan points.
    pub fn check_structure(&self, plan: &SamplePlan) -> Result<f64> {
        let m = self.dim();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let anti = Expr::add(&self.structure[i][j][k], &self.structure[j][i][k]);
                    worst = worst.max(plan.max_abs(&anti)?);
                }
            }
        }
        let basis: Vec<VectorField> = (0..m).map(|i| VectorField::basis(m, i)).collect();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let cyc = self
                        .bracket(&basis[i], &self.bracket(&basis[j], &basis[k]))
                        .add(&self.bracket(&basis[j], &self.bracket(&basis[k], &basis[i])))
                        .add(&self.bracket(&basis[k], &self.bracket(&basis[i], &basis[j])));
                    worst = worst.max(cyc.max_abs(plan)?);
                }
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parser::parse_expr;

    fn plan() -> SamplePlan {
        SamplePlan::default_plan()
    }

    #[test]
    fn flat_frame_has_zero_connection() {
        let m = catalog::flat_abelian(4);
        let lc = m.koszul_levi_civita(&plan()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(lc.gamma[i][j][k].is_zero());
                }
            }
        }
    }

    #[test]
    fn sphere_koszul_table() {
        let m = catalog::sphere3();
        let p = plan();
        let lc = m.koszul_levi_civita(&p).unwrap();
        // ∇_{X1}X2 = X3, ∇_{X2}X1 = −X3, ∇_{X1}X1 = 0, ∇_{X3}X2 = −X1
        let e3 = VectorField::basis(3, 2);
        assert!(lc.entry(0, 1).max_diff(&e3, &p).unwrap() < 1e-12);
        assert!(lc.entry(1, 0).max_diff(&e3.neg(), &p).unwrap() < 1e-12);
        assert!(lc.entry(0, 0).max_abs(&p).unwrap() < 1e-12);
        let e1 = VectorField::basis(3, 0);
        assert!(lc.entry(2, 1).max_diff(&e1.neg(), &p).unwrap() < 1e-12);
    }

    #[test]
    fn sphere_bracket() {
        let m = catalog::sphere3();
        let p = plan();
        let x1 = VectorField::basis(3, 0);
        let x2 = VectorField::basis(3, 1);
        let b = m.bracket(&x1, &x2);
        let want = VectorField::basis(3, 2).scale(&Expr::int(2));
        assert!(b.max_diff(&want, &p).unwrap() < 1e-12);
        assert!(m.bracket(&x1, &x1).max_abs(&p).unwrap() < 1e-12);
    }

    #[test]
    fn heisenberg_bracket() {
        let m = catalog::heisenberg3();
        let p = plan();
        let e1 = VectorField::basis(3, 0);
        let e2 = VectorField::basis(3, 1);
        let e3 = VectorField::basis(3, 2);
        assert!(m.bracket(&e1, &e2).max_diff(&e3, &p).unwrap() < 1e-12);
        assert!(m.bracket(&e1, &e3).max_abs(&p).unwrap() < 1e-12);
    }

    #[test]
    fn bracket_module_rule() {
        // [φV, W] = φ[V,W] − W(φ)V on a warped frame where derivations act.
        let m = catalog::warped_sphere(&parse_expr("2*t+1").unwrap()).unwrap();
        let p = plan();
        let phi = parse_expr("t^2+1").unwrap();
        let v = VectorField::basis(4, 1);
        let w = VectorField::basis(4, 0);
        let lhs = m.bracket(&v.scale(&phi), &w);
        let rhs = m
            .bracket(&v, &w)
            .scale(&phi)
            .sub(&v.scale(&m.derive_along(&w, &phi)));
        assert!(lhs.max_diff(&rhs, &p).unwrap() < 1e-12);
    }

    #[test]
    fn warped_sphere_connection_matches_closed_form() {
        let f = parse_expr("2*t+1").unwrap();
        let m = catalog::warped_sphere(&f).unwrap();
        let p = plan();
        let lc = m.koszul_levi_civita(&p).unwrap();
        // ∇_{∂t}X1 = (f'/f)X1
        let fp = f.derive();
        let want = VectorField::basis(4, 1).scale(&Expr::div(&fp, &f));
        assert!(lc.entry(0, 1).max_diff(&want, &p).unwrap() < 1e-10);
        // ∇_{X1}X1 = −ff'∂t
        let want = VectorField::basis(4, 0).scale(&Expr::neg(&Expr::mul(&f, &fp)));
        assert!(lc.entry(1, 1).max_diff(&want, &p).unwrap() < 1e-10);
        // ∇_{X3}X1 = (2 − 1/f²)X2
        let coeff = Expr::sub(&Expr::int(2), &Expr::pow(&f, Rational64::new(-2, 1)));
        let want = VectorField::basis(4, 2).scale(&coeff);
        assert!(lc.entry(3, 1).max_diff(&want, &p).unwrap() < 1e-10);
    }

    #[test]
    fn levi_civita_is_metric_and_torsion_free() {
        for m in [
            catalog::sphere3(),
            catalog::heisenberg3(),
            catalog::warped_sphere(&parse_expr("exp(t)").unwrap()).unwrap(),
            catalog::warped_heisenberg(&parse_expr("2*t+1").unwrap()).unwrap(),
        ] {
            let p = plan();
            let lc = m.koszul_levi_civita(&p).unwrap();
            let dim = m.dim();
            for i in 0..dim {
                for j in 0..dim {
                    // torsion: Γ_{ij}^k − Γ_{ji}^k − c_{ij}^k = 0
                    for k in 0..dim {
                        let torsion = Expr::sub(
                            &Expr::sub(&lc.gamma[i][j][k], &lc.gamma[j][i][k]),
                            &m.structure[i][j][k],
                        );
                        assert!(p.max_abs(&torsion).unwrap() < 1e-9);
                    }
                    // metric compatibility over frame triples
                    for k in 0..dim {
                        let mut lhs = Expr::zero();
                        if j == k {
                            lhs = Expr::mul(&m.deriv_weight[i], &m.metric_diag[j].derive());
                        }
                        let a = Expr::mul(&lc.gamma[i][j][k], &m.metric_diag[k]);
                        let b = Expr::mul(&lc.gamma[i][k][j], &m.metric_diag[j]);
                        let resid = Expr::sub(&lhs, &Expr::add(&a, &b));
                        assert!(p.max_abs(&resid).unwrap() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn warped_sphere_curvature_and_ricci() {
        let f = parse_expr("exp(t)").unwrap();
        let m = catalog::warped_sphere(&f).unwrap();
        let p = plan();
        let lc = m.koszul_levi_civita(&p).unwrap();
        let dt = VectorField::basis(4, 0);
        let x1 = VectorField::basis(4, 1);
        // R(∂t,X1)∂t = (f''/f)X1
        let fpp = f.derive().derive();
        let want = x1.scale(&Expr::div(&fpp, &f));
        let got = m.curvature(&lc, &dt, &x1, &dt);
        assert!(got.max_diff(&want, &p).unwrap() < 1e-9);
        // antisymmetry in the first two slots
        let got2 = m.curvature(&lc, &x1, &dt, &dt);
        assert!(got.add(&got2).max_abs(&p).unwrap() < 1e-9);
        // Ric(∂t,∂t) = 2f''/f
        let ric = m.ricci(&lc);
        let want = Expr::mul(&Expr::int(2), &Expr::div(&fpp, &f));
        assert!(p.max_diff(&ric[0][0], &want).unwrap() < 1e-9);
        // s^f = 4f''/f + 2(f')²/f² − 8/f² + 2/f⁴ (trace of the Ricci entries)
        let s = m.scalar_curvature(&lc);
        let fp = f.derive();
        let want = Expr::mul(&Expr::int(4), &Expr::div(&fpp, &f));
        let want = Expr::add(
            &want,
            &Expr::mul(&Expr::int(2), &Expr::div(&Expr::mul(&fp, &fp), &Expr::mul(&f, &f))),
        );
        let want = Expr::sub(&want, &Expr::div(&Expr::int(8), &Expr::mul(&f, &f)));
        let want = Expr::add(&want, &Expr::div(&Expr::int(2), &Expr::pow(&f, Rational64::new(4, 1))));
        assert!(p.max_diff(&s, &want).unwrap() < 1e-8);
    }

    #[test]
    fn first_bianchi_on_catalog() {
        for m in [
            catalog::sphere3(),
            catalog::heisenberg3(),
            catalog::warped_sphere(&parse_expr("2*t+1").unwrap()).unwrap(),
            catalog::warped_heisenberg(&parse_expr("exp(t)").unwrap()).unwrap(),
        ] {
            let p = plan();
            let lc = m.koszul_levi_civita(&p).unwrap();
            let r = m.curvature_table(&lc);
            let dim = m.dim();
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        let cyc = r[i][j][k].add(&r[j][k][i]).add(&r[k][i][j]);
                        assert!(cyc.max_abs(&p).unwrap() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn structure_invariants_on_catalog() {
        for m in [
            catalog::sphere3(),
            catalog::heisenberg3(),
            catalog::warped_sphere(&parse_expr("2*t+1").unwrap()).unwrap(),
            catalog::warped_heisenberg(&parse_expr("exp(t)").unwrap()).unwrap(),
        ] {
            assert!(m.check_structure(&plan()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn singular_metric_rejected() {
        let mut m = catalog::flat_abelian(3);
        m.metric_diag[1] = parse_expr("t - 0.225").unwrap();
        assert!(matches!(
            m.koszul_levi_civita(&plan()),
            Err(GeoError::SingularMetric { .. })
        ));
    }
}
