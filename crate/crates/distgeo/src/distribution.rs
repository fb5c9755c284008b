//! Distributions as frame-aligned index subsets: projections, the induced
//! connection ∇^D, second fundamental form B, shape operator A_ξ, normal
//! derivative L^⊥, mean curvature, and the minimal / totally geodesic /
//! umbilical predicates.

use crate::error::{GeoError, Result};
use crate::expr::Expr;
use crate::frame::{ConnectionTable, FrameManifold, VectorField};
use crate::sample::SamplePlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    D,
    Dperp,
}

#[derive(Debug, Clone)]
pub struct Distribution {
    /// Frame indices (0-based) spanning D, sorted ascending.
    pub indices: Vec<usize>,
    /// The remaining indices, spanning D^⊥.
    pub complement: Vec<usize>,
    pub dim_ambient: usize,
}

/// Boolean verdict with the worst residual behind it.
#[derive(Debug, Clone, Copy)]
pub struct Verdict {
    pub holds: bool,
    pub residual: f64,
}

impl Verdict {
    pub fn from_residual(residual: f64, tol: f64) -> Self {
        Verdict { holds: residual < tol, residual }
    }
}

impl Distribution {
    pub fn new(m: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices.len() >= m || indices.iter().any(|&i| i >= m) {
            return Err(GeoError::Scenario(format!(
                "distribution indices must be a nonempty proper subset of 1..={m}"
            )));
        }
        let complement = (0..m).filter(|i| !indices.contains(i)).collect();
        Ok(Distribution { indices, complement, dim_ambient: m })
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn side_indices(&self, side: Side) -> &[usize] {
        match side {
            Side::D => &self.indices,
            Side::Dperp => &self.complement,
        }
    }

    pub fn project(&self, v: &VectorField, side: Side) -> VectorField {
        let keep = self.side_indices(side);
        let mut out = VectorField::zero(self.dim_ambient);
        for &i in keep {
            out.coeffs[i] = v.coeffs[i].clone();
        }
        out
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    fn check_side(&self, v: &VectorField, side: Side, plan: &SamplePlan) -> Result<()> {
        let other = match side {
            Side::D => Side::Dperp,
            Side::Dperp => Side::D,
        };
        for &i in self.side_indices(other) {
            if plan.max_abs(&v.coeffs[i])? > plan.abs_tol {
                return match side {
                    Side::D => Err(GeoError::NotTangent { index: i }),
                    Side::Dperp => Err(GeoError::NotNormal { index: i }),
                };
            }
        }
        Ok(())
    }

    /// Non-integrability witness: a frame pair (E_i, E_j) in D whose bracket
    /// leaves D at some sample point.
    pub fn integrability(
        &self,
        m: &FrameManifold,
        plan: &SamplePlan,
    ) -> Result<(bool, Option<(usize, usize)>)> {
        for (a, &i) in self.indices.iter().enumerate() {
            for &j in &self.indices[a + 1..] {
                let b = m.bracket(&VectorField::basis(self.dim_ambient, i), &VectorField::basis(self.dim_ambient, j));
                let leak = self.project(&b, Side::Dperp);
                if leak.max_abs(plan)? > plan.abs_tol {
                    return Ok((false, Some((i, j))));
                }
            }
        }
        Ok((true, None))
    }

    /// Induced connection ∇^D_X Y = π^D ∇_X Y for X, Y ∈ Γ(D).
    pub fn induced_connection(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        x: &VectorField,
        y: &VectorField,
        plan: &SamplePlan,
    ) -> Result<VectorField> {
        self.check_side(x, Side::D, plan)?;
        self.check_side(y, Side::D, plan)?;
        Ok(self.project(&m.cov_deriv(table, x, y), Side::D))
    }

    /// Second fundamental form B(X,Y) = π^{D⊥}∇_X Y; not symmetric in general.
    pub fn second_fundamental_form(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        x: &VectorField,
        y: &VectorField,
        plan: &SamplePlan,
    ) -> Result<VectorField> {
        self.check_side(x, Side::D, plan)?;
        self.check_side(y, Side::D, plan)?;
        Ok(self.project(&m.cov_deriv(table, x, y), Side::Dperp))
    }

    /// B over all D-frame pairs: `b[a][b]` is B(E_{i_a}, E_{i_b}).
    pub fn b_table(&self, m: &FrameManifold, table: &ConnectionTable) -> Vec<Vec<VectorField>> {
        self.indices
            .iter()
            .map(|&i| {
                self.indices
                    .iter()
                    .map(|&j| {
                        self.project(
                            &m.cov_deriv(
                                table,
                                &VectorField::basis(self.dim_ambient, i),
                                &VectorField::basis(self.dim_ambient, j),
                            ),
                            Side::Dperp,
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// Shape operator defined by g^D(A_ξ X, Y) = g^{D⊥}(B(X,Y), ξ); with the
    /// diagonal metric, A_ξ E_i = Σ_{j∈D} g(B(E_i,E_j), ξ)/g_j · E_j.
    pub fn shape_operator(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        xi: &VectorField,
        plan: &SamplePlan,
    ) -> Result<Vec<VectorField>> {
        self.check_side(xi, Side::Dperp, plan)?;
        let b = self.b_table(m, table);
        let mut out = Vec::with_capacity(self.rank());
        for (a, _) in self.indices.iter().enumerate() {
            let mut v = VectorField::zero(self.dim_ambient);
            for (c, &j) in self.indices.iter().enumerate() {
                let val = Expr::div(&m.pairing(&b[a][c], xi), &m.metric_diag[j]);
                v.coeffs[j] = val;
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Normal derivative L^⊥_X ξ = π^{D⊥}∇_X ξ for X ∈ Γ(D), ξ ∈ Γ(D^⊥).
    pub fn normal_derivative(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        x: &VectorField,
        xi: &VectorField,
        plan: &SamplePlan,
    ) -> Result<VectorField> {
        self.check_side(x, Side::D, plan)?;
        self.check_side(xi, Side::Dperp, plan)?;
        Ok(self.project(&m.cov_deriv(table, x, xi), Side::Dperp))
    }

    /// Mean curvature H = (1/n) Σ_i B(Ẽ_i, Ẽ_i) over the orthonormalized
    /// D-frame; with the diagonal metric this is (1/n) Σ_i B(E_i,E_i)/g_i.
    pub fn mean_curvature(&self, m: &FrameManifold, table: &ConnectionTable) -> VectorField {
        let n = self.rank() as i64;
        let b = self.b_table(m, table);
        let mut h = VectorField::zero(self.dim_ambient);
        for (a, &i) in self.indices.iter().enumerate() {
            h = h.add(&b[a][a].scale(&Expr::div(&Expr::one(), &m.metric_diag[i])));
        }
        h.scale(&Expr::rational(1, n))
    }

    /// Symmetrized second fundamental form h(E_i,E_j) = ½(B_{ij} + B_{ji}).
    pub fn h_table(&self, m: &FrameManifold, table: &ConnectionTable) -> Vec<Vec<VectorField>> {
        let b = self.b_table(m, table);
        let n = self.rank();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|c| b[a][c].add(&b[c][a]).scale(&Expr::rational(1, 2)))
                    .collect()
            })
            .collect()
    }

    pub fn is_minimal(&self, m: &FrameManifold, table: &ConnectionTable, plan: &SamplePlan) -> Result<Verdict> {
        let r = self.mean_curvature(m, table).max_abs(plan)?;
        Ok(Verdict::from_residual(r, plan.abs_tol))
    }

    pub fn is_totally_geodesic(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        plan: &SamplePlan,
    ) -> Result<Verdict> {
        let h = self.h_table(m, table);
        let mut worst = 0.0f64;
        for row in &h {
            for v in row {
                worst = worst.max(v.max_abs(plan)?);
            }
        }
        Ok(Verdict::from_residual(worst, plan.abs_tol))
    }

    /// Umbilical ⟺ h(X,Y) = g^D(X,Y)·H over the D-frame.
    pub fn is_umbilical(
        &self,
        m: &FrameManifold,
        table: &ConnectionTable,
        plan: &SamplePlan,
    ) -> Result<Verdict> {
        let h = self.h_table(m, table);
        let big_h = self.mean_curvature(m, table);
        let mut worst = 0.0f64;
        for (a, &i) in self.indices.iter().enumerate() {
            for (c, &j) in self.indices.iter().enumerate() {
                let want = if i == j {
                    big_h.scale(&m.metric_diag[i])
                } else {
                    VectorField::zero(self.dim_ambient)
                };
                worst = worst.max(h[a][c].max_diff(&want, plan)?);
            }
        }
        Ok(Verdict::from_residual(worst, plan.abs_tol))
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
    fn projection_complementarity() {
        let d = Distribution::new(3, vec![0, 1]).unwrap();
        let v = VectorField::from_coeffs(vec![
            parse_expr("t").unwrap(),
            Expr::one(),
            parse_expr("sin(t)").unwrap(),
        ]);
        let back = d.project(&v, Side::D).add(&d.project(&v, Side::Dperp));
        assert!(back.max_diff(&v, &plan()).unwrap() < 1e-15);
        assert!(d.project(&VectorField::basis(3, 2), Side::D).max_abs(&plan()).unwrap() == 0.0);
    }

    #[test]
    fn improper_subsets_rejected() {
        assert!(Distribution::new(3, vec![]).is_err());
        assert!(Distribution::new(3, vec![0, 1, 2]).is_err());
        assert!(Distribution::new(3, vec![5]).is_err());
    }

    #[test]
    fn integrability_witnesses() {
        let p = plan();
        let s = catalog::sphere3();
        let d1 = Distribution::new(3, vec![0, 1]).unwrap();
        let (ok, wit) = d1.integrability(&s, &p).unwrap();
        assert!(!ok);
        assert_eq!(wit, Some((0, 1)));

        let h = catalog::heisenberg3();
        let d13 = Distribution::new(3, vec![0, 2]).unwrap();
        assert!(d13.integrability(&h, &p).unwrap().0);

        let flat = catalog::flat_abelian(4);
        let d = Distribution::new(4, vec![1, 3]).unwrap();
        assert!(d.integrability(&flat, &p).unwrap().0);
    }

    #[test]
    fn sphere_second_fundamental_form() {
        let p = plan();
        let s = catalog::sphere3();
        let lc = s.koszul_levi_civita(&p).unwrap();
        let d1 = Distribution::new(3, vec![0, 1]).unwrap();
        let x1 = VectorField::basis(3, 0);
        let x2 = VectorField::basis(3, 1);
        let x3 = VectorField::basis(3, 2);
        let b12 = d1.second_fundamental_form(&s, &lc, &x1, &x2, &p).unwrap();
        assert!(b12.max_diff(&x3, &p).unwrap() < 1e-12);
        let b21 = d1.second_fundamental_form(&s, &lc, &x2, &x1, &p).unwrap();
        assert!(b21.max_diff(&x3.neg(), &p).unwrap() < 1e-12);
        let b11 = d1.second_fundamental_form(&s, &lc, &x1, &x1, &p).unwrap();
        assert!(b11.max_abs(&p).unwrap() < 1e-12);
        // tangency guard
        assert!(matches!(
            d1.second_fundamental_form(&s, &lc, &x3, &x1, &p),
            Err(GeoError::NotTangent { index: 2 })
        ));
    }

    #[test]
    fn sphere_shape_operator() {
        let p = plan();
        let s = catalog::sphere3();
        let lc = s.koszul_levi_civita(&p).unwrap();
        let d1 = Distribution::new(3, vec![0, 1]).unwrap();
        let x3 = VectorField::basis(3, 2);
        let a = d1.shape_operator(&s, &lc, &x3, &p).unwrap();
        assert!(a[0].max_diff(&VectorField::basis(3, 1), &p).unwrap() < 1e-12);
        assert!(a[1].max_diff(&VectorField::basis(3, 0).neg(), &p).unwrap() < 1e-12);
        assert!(matches!(
            d1.shape_operator(&s, &lc, &VectorField::basis(3, 0), &p),
            Err(GeoError::NotNormal { index: 0 })
        ));
    }

    #[test]
    fn warped_shape_operator() {
        let p = plan();
        let f = parse_expr("2*t+1").unwrap();
        let m = catalog::warped_sphere(&f).unwrap();
        let lc = m.koszul_levi_civita(&p).unwrap();
        let d = Distribution::new(4, vec![0, 1, 2]).unwrap();
        let x3 = VectorField::basis(4, 3);
        let a = d.shape_operator(&m, &lc, &x3, &p).unwrap();
        // A_{X3}∂t = 0, A_{X3}X1 = X2/f²
        assert!(a[0].max_abs(&p).unwrap() < 1e-12);
        let f2 = Expr::mul(&f, &f);
        let want = VectorField::basis(4, 2).scale(&Expr::div(&Expr::one(), &f2));
        assert!(a[1].max_diff(&want, &p).unwrap() < 1e-10);
    }

    #[test]
    fn weingarten_split() {
        // ∇_X ξ = −A_ξ X + L^⊥_X ξ on the warped sphere.
        let p = plan();
        let f = parse_expr("exp(t)").unwrap();
        let m = catalog::warped_sphere(&f).unwrap();
        let lc = m.koszul_levi_civita(&p).unwrap();
        let d = Distribution::new(4, vec![0, 1, 2]).unwrap();
        let xi = VectorField::basis(4, 3);
        let a = d.shape_operator(&m, &lc, &xi, &p).unwrap();
        for (slot, &i) in d.indices.iter().enumerate() {
            let x = VectorField::basis(4, i);
            let full = m.cov_deriv(&lc, &x, &xi);
            let lperp = d.normal_derivative(&m, &lc, &x, &xi, &p).unwrap();
            let rhs = a[slot].neg().add(&lperp);
            assert!(full.max_diff(&rhs, &p).unwrap() < 1e-10);
        }
    }

    #[test]
    fn gauss_split_and_torsion_identity() {
        let p = plan();
        let m = catalog::warped_heisenberg(&parse_expr("2*t+1").unwrap()).unwrap();
        let lc = m.koszul_levi_civita(&p).unwrap();
        let d = Distribution::new(4, vec![0, 1, 2]).unwrap();
        for &i in &d.indices {
            for &j in &d.indices {
                let x = VectorField::basis(4, i);
                let y = VectorField::basis(4, j);
                let full = m.cov_deriv(&lc, &x, &y);
                let tang = d.induced_connection(&m, &lc, &x, &y, &p).unwrap();
                let norm = d.second_fundamental_form(&m, &lc, &x, &y, &p).unwrap();
                assert!(full.max_diff(&tang.add(&norm), &p).unwrap() < 1e-12);
                // ∇^D_X Y − ∇^D_Y X − [X,Y] = −[X,Y]^{D⊥}
                let yx = d.induced_connection(&m, &lc, &y, &x, &p).unwrap();
                let br = m.bracket(&x, &y);
                let lhs = tang.sub(&yx).sub(&br);
                let rhs = d.project(&br, Side::Dperp).neg();
                assert!(lhs.max_diff(&rhs, &p).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn sphere_predicates() {
        let p = plan();
        let s = catalog::sphere3();
        let lc = s.koszul_levi_civita(&p).unwrap();
        let d1 = Distribution::new(3, vec![0, 1]).unwrap();
        assert!(d1.is_totally_geodesic(&s, &lc, &p).unwrap().holds);
        assert!(d1.is_minimal(&s, &lc, &p).unwrap().holds);
        assert!(d1.is_umbilical(&s, &lc, &p).unwrap().holds);
        assert!(d1.mean_curvature(&s, &lc).max_abs(&p).unwrap() < 1e-12);
    }

    #[test]
    fn heisenberg_b_and_mean_curvature() {
        let p = plan();
        let h = catalog::heisenberg3();
        let lc = h.koszul_levi_civita(&p).unwrap();
        let d = Distribution::new(3, vec![0, 1]).unwrap();
        let e1 = VectorField::basis(3, 0);
        let e2 = VectorField::basis(3, 1);
        let want = VectorField::basis(3, 2).scale(&Expr::rational(1, 2));
        let b12 = d.second_fundamental_form(&h, &lc, &e1, &e2, &p).unwrap();
        assert!(b12.max_diff(&want, &p).unwrap() < 1e-12);
        assert!(d.is_minimal(&h, &lc, &p).unwrap().holds);
        assert!(d.is_totally_geodesic(&h, &lc, &p).unwrap().holds);
    }

    #[test]
    fn warped_sphere_not_totally_geodesic() {
        let p = plan();
        let f = parse_expr("2*t+1").unwrap();
        let m = catalog::warped_sphere(&f).unwrap();
        let lc = m.koszul_levi_civita(&p).unwrap();
        let d = Distribution::new(4, vec![0, 1, 2]).unwrap();
        // B(X1,X2) = X3 and B(X2,X1) = −X3: antisymmetric, so D is totally
        // geodesic and minimal but the form itself is nonzero.
        assert!(d.is_totally_geodesic(&m, &lc, &p).unwrap().holds);
        let x1 = VectorField::basis(4, 1);
        let x2 = VectorField::basis(4, 2);
        let b = d.second_fundamental_form(&m, &lc, &x1, &x2, &p).unwrap();
        assert!(b.max_diff(&VectorField::basis(4, 3), &p).unwrap() < 1e-10);
    }
}
