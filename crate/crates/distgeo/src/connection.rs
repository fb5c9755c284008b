//! The four ambient connection families — Levi-Civita, semi-symmetric
//! metric (∇ + ω(Y)X − g(X,Y)U), semi-symmetric non-metric (∇ + ω(Y)X),
//! and the statistical pair (∇ ± K) — together with the objects they induce
//! on a distribution: ∇^D, the second fundamental form, shape operators,
//! and the normal derivative.

use crate::distribution::{Distribution, Side, Verdict};
use crate::error::{GeoError, Result};
use crate::expr::Expr;
use crate::frame::{zero_table, ConnectionTable, FrameManifold, VectorField};
use crate::sample::SamplePlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    SemiSymmetricMetric,
    SemiSymmetricNonMetric,
    Statistical,
    StatisticalDual,
}

impl ConnectionKind {
    pub fn label(self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "lc",
            ConnectionKind::SemiSymmetricMetric => "ssm",
            ConnectionKind::SemiSymmetricNonMetric => "ssnm",
            ConnectionKind::Statistical => "stat",
            ConnectionKind::StatisticalDual => "stat_dual",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConnectionSpec {
    pub kind: ConnectionKind,
    /// Torsion vector U for the semi-symmetric kinds.
    pub u: Option<VectorField>,
    /// Cubic-form coefficients for the statistical kinds:
    /// K(E_i,E_j) = Σ_k k[i][j][k] E_k with C(X,Y,Z)=g(K(X,Y),Z) symmetric.
    pub k: Option<Vec<Vec<Vec<Expr>>>>,
}

impl ConnectionSpec {
    pub fn levi_civita() -> Self {
        ConnectionSpec { kind: ConnectionKind::LeviCivita, u: None, k: None }
    }

    pub fn ssm(u: VectorField) -> Self {
        ConnectionSpec { kind: ConnectionKind::SemiSymmetricMetric, u: Some(u), k: None }
    }

    pub fn ssnm(u: VectorField) -> Self {
        ConnectionSpec { kind: ConnectionKind::SemiSymmetricNonMetric, u: Some(u), k: None }
    }

    pub fn statistical(k: Vec<Vec<Vec<Expr>>>) -> Self {
        ConnectionSpec { kind: ConnectionKind::Statistical, u: None, k: Some(k) }
    }

    pub fn statistical_dual(k: Vec<Vec<Vec<Expr>>>) -> Self {
        ConnectionSpec { kind: ConnectionKind::StatisticalDual, u: None, k: Some(k) }
    }

    pub fn u_field(&self, m: usize) -> VectorField {
        self.u.clone().unwrap_or_else(|| VectorField::zero(m))
    }

    /// The statistical kinds require C(X,Y,Z) = g(K(X,Y),Z) fully symmetric.
    pub fn validate(&self, m: &FrameManifold, plan: &SamplePlan) -> Result<()> {
        if !matches!(self.kind, ConnectionKind::Statistical | ConnectionKind::StatisticalDual) {
            return Ok(());
        }
        let k = self.k.as_ref().ok_or_else(|| {
            GeoError::Scenario("statistical connection requires a K table".into())
        })?;
        let dim = m.dim();
        if k.len() != dim || k.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(GeoError::ShapeMismatch(format!("K table must be {dim}x{dim}x{dim}")));
        }
        let c = |i: usize, j: usize, l: usize| Expr::mul(&k[i][j][l], &m.metric_diag[l]);
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    let base = c(i, j, l);
                    for perm in [c(j, i, l), c(i, l, j), c(l, j, i)] {
                        worst = worst.max(plan.max_diff(&base, &perm)?);
                    }
                }
            }
        }
        if worst > plan.abs_tol {
            return Err(GeoError::AsymmetricCubicForm { residual: worst });
        }
        Ok(())
    }
}

/// One-form ω(V) = g(U,V).
pub fn omega(m: &FrameManifold, u: &VectorField, v: &VectorField) -> Expr {
    m.pairing(u, v)
}

/// K(X,Y) extended bilinearly from the coefficient table.
pub fn k_apply(k: &[Vec<Vec<Expr>>], x: &VectorField, y: &VectorField) -> VectorField {
    let m = k.len();
    let mut out = VectorField::zero(m);
    for i in 0..m {
        if x.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..m {
            if y.coeffs[j].is_zero() {
                continue;
            }
            let s = Expr::mul(&x.coeffs[i], &y.coeffs[j]);
            for l in 0..m {
                out.coeffs[l] = Expr::add(&out.coeffs[l], &Expr::mul(&s, &k[i][j][l]));
            }
        }
    }
    out
}

/// Ambient connection table for the chosen family, built on the Koszul output.
pub fn ambient_connection(
    m: &FrameManifold,
    spec: &ConnectionSpec,
    plan: &SamplePlan,
) -> Result<ConnectionTable> {
    spec.validate(m, plan)?;
    let lc = m.koszul_levi_civita(plan)?;
    Ok(modify_table(m, spec, &lc))
}

/// Applies the family's correction term to an already-computed base table.
pub fn modify_table(m: &FrameManifold, spec: &ConnectionSpec, lc: &ConnectionTable) -> ConnectionTable {
    let dim = m.dim();
    let mut gamma = lc.gamma.clone();
    match spec.kind {
        ConnectionKind::LeviCivita => {}
        ConnectionKind::SemiSymmetricMetric | ConnectionKind::SemiSymmetricNonMetric => {
            let u = spec.u_field(dim);
            for i in 0..dim {
                for j in 0..dim {
                    // + ω(E_j)E_i with ω(E_j) = u^j g_j for the diagonal metric
                    let w = Expr::mul(&u.coeffs[j], &m.metric_diag[j]);
                    gamma[i][j][i] = Expr::add(&gamma[i][j][i], &w);
                    if spec.kind == ConnectionKind::SemiSymmetricMetric && i == j {
                        // − g(E_i,E_j)U
                        for l in 0..dim {
                            gamma[i][j][l] = Expr::sub(
                                &gamma[i][j][l],
                                &Expr::mul(&m.metric_diag[i], &u.coeffs[l]),
                            );
                        }
                    }
                }
            }
        }
        ConnectionKind::Statistical | ConnectionKind::StatisticalDual => {
            let k = spec.k.as_ref().expect("validated");
            let sign = if spec.kind == ConnectionKind::Statistical { 1 } else { -1 };
            for i in 0..dim {
                for j in 0..dim {
                    for l in 0..dim {
                        let term = if sign > 0 { k[i][j][l].clone() } else { Expr::neg(&k[i][j][l]) };
                        gamma[i][j][l] = Expr::add(&gamma[i][j][l], &term);
                    }
                }
            }
        }
    }
    ConnectionTable { gamma }
}

/// A manifold + distribution + connection bundle with the tables needed by
/// every induced-object computation.
pub struct InducedGeometry {
    pub manifold: FrameManifold,
    pub dist: Distribution,
    pub spec: ConnectionSpec,
    /// Levi-Civita ambient table.
    pub lc: ConnectionTable,
    /// Ambient table of the chosen family.
    pub ambient: ConnectionTable,
    /// Ambient table of the dual connection (STAT kinds; equals `ambient` otherwise).
    pub ambient_dual: ConnectionTable,
}

impl InducedGeometry {
    pub fn new(
        manifold: FrameManifold,
        dist: Distribution,
        spec: ConnectionSpec,
        plan: &SamplePlan,
    ) -> Result<Self> {
        spec.validate(&manifold, plan)?;
        let lc = manifold.koszul_levi_civita(plan)?;
        let ambient = modify_table(&manifold, &spec, &lc);
        let dual_spec = match spec.kind {
            ConnectionKind::Statistical => {
                ConnectionSpec::statistical_dual(spec.k.clone().expect("validated"))
            }
            ConnectionKind::StatisticalDual => {
                ConnectionSpec::statistical(spec.k.clone().expect("validated"))
            }
            _ => spec.clone(),
        };
        let ambient_dual = modify_table(&manifold, &dual_spec, &lc);
        Ok(InducedGeometry { manifold, dist, spec, lc, ambient, ambient_dual })
    }

    pub fn dim(&self) -> usize {
        self.manifold.dim()
    }

    pub fn omega(&self, v: &VectorField) -> Expr {
        omega(&self.manifold, &self.spec.u_field(self.dim()), v)
    }

    /// Induced connection ∇̃^D_X Y = π^D ∇̃_X Y for X,Y ∈ Γ(D).
    pub fn nabla_d(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.ambient, x, y), Side::D)
    }

    /// Second fundamental form of the family: B̃(X,Y) = π^{D⊥}∇̃_X Y.
    pub fn b(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.ambient, x, y), Side::Dperp)
    }

    /// Dual second fundamental form B̄*(X,Y) (STAT kinds; equals B̃ otherwise).
    pub fn b_dual(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.ambient_dual, x, y), Side::Dperp)
    }

    /// Levi-Civita second fundamental form B(X,Y), used by the closed forms.
    pub fn b_lc(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.lc, x, y), Side::Dperp)
    }

    /// Mean curvature of the family over the orthonormalized D-frame.
    pub fn mean_curvature(&self) -> VectorField {
        let n = self.dist.rank() as i64;
        let mut h = VectorField::zero(self.dim());
        for &i in &self.dist.indices {
            let e = VectorField::basis(self.dim(), i);
            h = h.add(&self.b(&e, &e).scale(&Expr::div(&Expr::one(), &self.manifold.metric_diag[i])));
        }
        h.scale(&Expr::rational(1, n))
    }

    /// Shape operator of the family and the normal derivative L^⊥ along ξ.
    ///
    /// SSM/SSNM: Ã_ξ = A_ξ − ω(ξ)Id with A_ξ the Levi-Civita shape operator;
    /// STAT: Ā_ξX = −π^D ∇̄*_X ξ. The returned maps are verified against the
    /// direct projection −π^D ∇̃_X ξ by `weingarten_residual`.
    pub fn shape_operator(&self, xi: &VectorField, plan: &SamplePlan) -> Result<Vec<VectorField>> {
        for &i in &self.dist.indices {
            if plan.max_abs(&xi.coeffs[i])? > plan.abs_tol {
                return Err(GeoError::NotNormal { index: i });
            }
        }
        let dim = self.dim();
        match self.spec.kind {
            ConnectionKind::SemiSymmetricMetric | ConnectionKind::SemiSymmetricNonMetric => {
                let a = self.dist.shape_operator(&self.manifold, &self.lc, xi, plan)?;
                let w = self.omega(xi);
                Ok(self
                    .dist
                    .indices
                    .iter()
                    .enumerate()
                    .map(|(slot, &i)| {
                        a[slot].sub(&VectorField::basis(dim, i).scale(&w))
                    })
                    .collect())
            }
            _ => Ok(self
                .dist
                .indices
                .iter()
                .map(|&i| {
                    let x = VectorField::basis(dim, i);
                    self.dist
                        .project(&self.manifold.cov_deriv(&self.ambient_dual, &x, xi), Side::D)
                        .neg()
                })
                .collect()),
        }
    }

    /// Normal derivative of the family: L^⊥_X ξ = π^{D⊥}∇̃_X ξ. For the
    /// semi-symmetric kinds this coincides with the Levi-Civita L^⊥.
    pub fn l_perp(&self, x: &VectorField, xi: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.ambient, x, xi), Side::Dperp)
    }

    pub fn l_perp_dual(&self, x: &VectorField, xi: &VectorField) -> VectorField {
        self.dist.project(&self.manifold.cov_deriv(&self.ambient_dual, x, xi), Side::Dperp)
    }

    /// Residual of the Weingarten split ∇̃_X ξ = −Ã_ξX + L^⊥_X ξ over the
    /// D-frame, evaluating the shape operator through its closed form.
    pub fn weingarten_residual(&self, xi: &VectorField, plan: &SamplePlan) -> Result<f64> {
        let a = self.shape_operator(xi, plan)?;
        let mut worst = 0.0f64;
        let table = if matches!(self.spec.kind, ConnectionKind::Statistical | ConnectionKind::StatisticalDual)
        {
            &self.ambient
        } else {
            &self.ambient
        };
        for (slot, &i) in self.dist.indices.iter().enumerate() {
            let x = VectorField::basis(self.dim(), i);
            let full = self.manifold.cov_deriv(table, &x, xi);
            let rhs = a[slot].neg().add(&self.l_perp(&x, xi));
            worst = worst.max(full.max_diff(&rhs, plan)?);
        }
        Ok(worst)
    }

    /// Residuals of the closed-form reductions of the induced second
    /// fundamental form against the Levi-Civita B:
    /// SSM: B̃ = B − g(X,Y)U^{D⊥}; SSNM: B̂ = B; STAT: B̄ = B + π^{D⊥}K.
    pub fn b_closed_form_residual(&self, plan: &SamplePlan) -> Result<f64> {
        let dim = self.dim();
        let u_perp = self.dist.project(&self.spec.u_field(dim), Side::Dperp);
        let mut worst = 0.0f64;
        for &i in &self.dist.indices {
            for &j in &self.dist.indices {
                let x = VectorField::basis(dim, i);
                let y = VectorField::basis(dim, j);
                let lhs = self.b(&x, &y);
                let base = self.b_lc(&x, &y);
                let rhs = match self.spec.kind {
                    ConnectionKind::LeviCivita => base,
                    ConnectionKind::SemiSymmetricMetric => {
                        base.sub(&u_perp.scale(&self.manifold.pairing(&x, &y)))
                    }
                    ConnectionKind::SemiSymmetricNonMetric => base,
                    ConnectionKind::Statistical => {
                        let k = self.spec.k.as_ref().expect("validated");
                        base.add(&self.dist.project(&k_apply(k, &x, &y), Side::Dperp))
                    }
                    ConnectionKind::StatisticalDual => {
                        let k = self.spec.k.as_ref().expect("validated");
                        base.sub(&self.dist.project(&k_apply(k, &x, &y), Side::Dperp))
                    }
                };
                worst = worst.max(lhs.max_diff(&rhs, plan)?);
            }
        }
        Ok(worst)
    }

    /// Characterization identities of the semi-symmetric families: torsion
    /// T^D(X,Y) = −[X,Y]^{D⊥} + ω(Y)X − ω(X)Y, and metric behaviour
    /// (∇̃^D g^D = 0 for SSM; (∇̂^D g^D)(Y,Z) = −ω(Y)g(X,Z) − ω(Z)g(X,Y)).
    pub fn verify_characterization(&self, plan: &SamplePlan) -> Result<Verdict> {
        let dim = self.dim();
        let u = self.spec.u_field(dim);
        let mut worst = 0.0f64;
        for &i in &self.dist.indices {
            for &j in &self.dist.indices {
                let x = VectorField::basis(dim, i);
                let y = VectorField::basis(dim, j);
                let br = self.manifold.bracket(&x, &y);
                // torsion with the full bracket
                let lhs = self.nabla_d(&x, &y).sub(&self.nabla_d(&y, &x)).sub(&br);
                let mut rhs = self.dist.project(&br, Side::Dperp).neg();
                if self.spec.kind != ConnectionKind::LeviCivita {
                    rhs = rhs
                        .add(&x.scale(&omega(&self.manifold, &u, &y)))
                        .sub(&y.scale(&omega(&self.manifold, &u, &x)));
                }
                worst = worst.max(lhs.max_diff(&rhs, plan)?);
                // metric behaviour: X g(Y,Z) − g(∇^D_XY,Z) − g(Y,∇^D_XZ)
                for &l in &self.dist.indices {
                    let z = VectorField::basis(dim, l);
                    let xg = self.manifold.derive_along(&x, &self.manifold.pairing(&y, &z));
                    let lhs = Expr::sub(
                        &Expr::sub(&xg, &self.manifold.pairing(&self.nabla_d(&x, &y), &z)),
                        &self.manifold.pairing(&y, &self.nabla_d(&x, &z)),
                    );
                    let rhs = match self.spec.kind {
                        ConnectionKind::SemiSymmetricNonMetric => {
                            let wy = omega(&self.manifold, &u, &y);
                            let wz = omega(&self.manifold, &u, &z);
                            Expr::neg(&Expr::add(
                                &Expr::mul(&wy, &self.manifold.pairing(&x, &z)),
                                &Expr::mul(&wz, &self.manifold.pairing(&x, &y)),
                            ))
                        }
                        _ => Expr::zero(),
                    };
                    if matches!(
                        self.spec.kind,
                        ConnectionKind::LeviCivita | ConnectionKind::SemiSymmetricMetric
                            | ConnectionKind::SemiSymmetricNonMetric
                    ) {
                        worst = worst.max(plan.max_diff(&lhs, &rhs)?);
                    }
                }
            }
        }
        Ok(Verdict::from_residual(worst, plan.abs_tol))
    }

    /// Statistical duality: X g(Y,Z) = g(∇̄_XY,Z) + g(Y,∇̄*_XZ) over frame triples.
    pub fn duality_residual(&self, plan: &SamplePlan) -> Result<f64> {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    let x = VectorField::basis(dim, i);
                    let y = VectorField::basis(dim, j);
                    let z = VectorField::basis(dim, l);
                    let lhs = self.manifold.derive_along(&x, &self.manifold.pairing(&y, &z));
                    let rhs = Expr::add(
                        &self.manifold.pairing(&self.manifold.cov_deriv(&self.ambient, &x, &y), &z),
                        &self.manifold.pairing(&y, &self.manifold.cov_deriv(&self.ambient_dual, &x, &z)),
                    );
                    worst = worst.max(plan.max_diff(&lhs, &rhs)?);
                }
            }
        }
        Ok(worst)
    }
}

/// Zero K table for statistical specs.
pub fn zero_k(m: usize) -> Vec<Vec<Vec<Expr>>> {
    zero_table(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parser::parse_expr;

    fn plan() -> SamplePlan {
        SamplePlan::default_plan()
    }

    fn u13() -> VectorField {
        let mut u = VectorField::zero(3);
        u.coeffs[0] = Expr::one();
        u.coeffs[2] = Expr::one();
        u
    }

    #[test]
    fn zero_u_reduces_to_lc() {
        let p = plan();
        let m = catalog::sphere3();
        let lc = m.koszul_levi_civita(&p).unwrap();
        for spec in [
            ConnectionSpec::ssm(VectorField::zero(3)),
            ConnectionSpec::ssnm(VectorField::zero(3)),
            ConnectionSpec::statistical(zero_k(3)),
            ConnectionSpec::statistical_dual(zero_k(3)),
        ] {
            let t = ambient_connection(&m, &spec, &p).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    for l in 0..3 {
                        assert!(p.max_diff(&t.gamma[i][j][l], &lc.gamma[i][j][l]).unwrap() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn asymmetric_k_rejected() {
        let m = catalog::sphere3();
        let mut k = zero_k(3);
        k[0][1][2] = Expr::one();
        let spec = ConnectionSpec::statistical(k);
        assert!(matches!(
            spec.validate(&m, &plan()),
            Err(GeoError::AsymmetricCubicForm { .. })
        ));
    }

    #[test]
    fn sphere_ssm_induced_objects() {
        // U = X1 + X3, D1 = span{X1,X2}: paper's worked SSM table.
        let p = plan();
        let geo = InducedGeometry::new(
            catalog::sphere3(),
            Distribution::new(3, vec![0, 1]).unwrap(),
            ConnectionSpec::ssm(u13()),
            &p,
        )
        .unwrap();
        let x1 = VectorField::basis(3, 0);
        let x2 = VectorField::basis(3, 1);
        let x3 = VectorField::basis(3, 2);
        // ∇̃^{D1}_{X2}X1 = X2 (per the closed form ∇^D + g(X1,Y)X − g(X,Y)X1),
        // ∇̃^{D1}_{X2}X2 = −X1
        assert!(geo.nabla_d(&x2, &x1).max_diff(&x2, &p).unwrap() < 1e-12);
        assert!(geo.nabla_d(&x2, &x2).max_diff(&x1.neg(), &p).unwrap() < 1e-12);
        // B̃(X1,X1) = −X3, B̃(X1,X2) = X3
        assert!(geo.b(&x1, &x1).max_diff(&x3.neg(), &p).unwrap() < 1e-12);
        assert!(geo.b(&x1, &x2).max_diff(&x3, &p).unwrap() < 1e-12);
        // H̃ = −X3
        assert!(geo.mean_curvature().max_diff(&x3.neg(), &p).unwrap() < 1e-12);
        // Ã_{X3}X1 = X2 − X1, Ã_{X3}X2 = −X1 − X2, L⊥ = 0
        let a = geo.shape_operator(&x3, &p).unwrap();
        assert!(a[0].max_diff(&x2.sub(&x1), &p).unwrap() < 1e-12);
        assert!(a[1].max_diff(&x1.neg().sub(&x2), &p).unwrap() < 1e-12);
        assert!(geo.l_perp(&x1, &x3).max_abs(&p).unwrap() < 1e-12);
        assert!(geo.l_perp(&x2, &x3).max_abs(&p).unwrap() < 1e-12);
        assert!(geo.weingarten_residual(&x3, &p).unwrap() < 1e-12);
        assert!(geo.b_closed_form_residual(&p).unwrap() < 1e-12);
        assert!(geo.verify_characterization(&p).unwrap().holds);
    }

    #[test]
    fn sphere_ssnm_b_equals_lc_b() {
        let p = plan();
        let geo = InducedGeometry::new(
            catalog::sphere3(),
            Distribution::new(3, vec![0, 1]).unwrap(),
            ConnectionSpec::ssnm(u13()),
            &p,
        )
        .unwrap();
        let x1 = VectorField::basis(3, 0);
        let x2 = VectorField::basis(3, 1);
        let x3 = VectorField::basis(3, 2);
        // B̂ = B: B̂(X2,X1) = −X3
        assert!(geo.b(&x2, &x1).max_diff(&x3.neg(), &p).unwrap() < 1e-12);
        assert!(geo.b_closed_form_residual(&p).unwrap() < 1e-12);
        assert!(geo.verify_characterization(&p).unwrap().holds);
        assert!(geo.weingarten_residual(&x3, &p).unwrap() < 1e-12);
    }

    #[test]
    fn heisenberg_ssm_table() {
        let p = plan();
        let mut u = VectorField::zero(3);
        for c in &mut u.coeffs {
            *c = Expr::one();
        }
        let geo = InducedGeometry::new(
            catalog::heisenberg3(),
            Distribution::new(3, vec![0, 1]).unwrap(),
            ConnectionSpec::ssm(u),
            &p,
        )
        .unwrap();
        let e1 = VectorField::basis(3, 0);
        let e2 = VectorField::basis(3, 1);
        let e3 = VectorField::basis(3, 2);
        // ∇̃^D_{e1}e1 = −e2, B̃(e1,e1) = −e3
        assert!(geo.nabla_d(&e1, &e1).max_diff(&e2.neg(), &p).unwrap() < 1e-12);
        assert!(geo.b(&e1, &e1).max_diff(&e3.neg(), &p).unwrap() < 1e-12);
        assert!(geo.verify_characterization(&p).unwrap().holds);
    }

    #[test]
    fn statistical_duality_and_weingarten_pairing() {
        let p = plan();
        // K(∂t,∂t) = ∂t on the warped sphere: C has a single symmetric entry.
        let mut k = zero_k(4);
        k[0][0][0] = Expr::one();
        let f = parse_expr("2*t+1").unwrap();
        let geo = InducedGeometry::new(
            catalog::warped_sphere(&f).unwrap(),
            Distribution::new(4, vec![0, 1, 2]).unwrap(),
            ConnectionSpec::statistical(k),
            &p,
        )
        .unwrap();
        assert!(geo.duality_residual(&p).unwrap() < 1e-9);
        assert!(geo.b_closed_form_residual(&p).unwrap() < 1e-12);
        // duality pairing of the shape operators:
        // g(Ā_ξX,Y) = g(B̄(X,Y),ξ) and Ā_ξX = −π^D∇̄*_Xξ
        let xi = VectorField::basis(4, 3);
        let a = geo.shape_operator(&xi, &p).unwrap();
        for (slot, &i) in geo.dist.indices.iter().enumerate() {
            let x = VectorField::basis(4, i);
            for &j in &geo.dist.indices {
                let y = VectorField::basis(4, j);
                let lhs = geo.manifold.pairing(&a[slot], &y);
                let rhs = geo.manifold.pairing(&geo.b(&x, &y), &xi);
                assert!(p.max_diff(&lhs, &rhs).unwrap() < 1e-10);
            }
        }
        assert!(geo.weingarten_residual(&xi, &p).unwrap() < 1e-10);
    }

    #[test]
    fn ssm_normal_derivative_rule() {
        // Eq (2.8): ∇̃_Xξ = ∇_Xξ + ω(ξ)X for ξ normal to X in the pairing.
        let p = plan();
        let m = catalog::sphere3();
        let spec = ConnectionSpec::ssm(u13());
        let lc = m.koszul_levi_civita(&p).unwrap();
        let tilde = modify_table(&m, &spec, &lc);
        let x1 = VectorField::basis(3, 0);
        let x3 = VectorField::basis(3, 2);
        let lhs = m.cov_deriv(&tilde, &x1, &x3);
        let w = omega(&m, &spec.u_field(3), &x3);
        let rhs = m.cov_deriv(&lc, &x1, &x3).add(&x1.scale(&w));
        assert!(lhs.max_diff(&rhs, &p).unwrap() < 1e-12);
    }

    #[test]
    fn ssnm_predicates_agree_with_lc() {
        // Prop 3.2 on random scenarios: the SSNM connection preserves the
        // minimal / totally geodesic / umbilical verdicts.
        use rand::Rng;
        use rand_chacha::ChaCha8Rng;
        use rand::SeedableRng;
        let p = plan();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (m, dist) = if rng.gen_bool(0.5) {
                (catalog::sphere3(), Distribution::new(3, vec![0, 1]).unwrap())
            } else {
                (catalog::heisenberg3(), Distribution::new(3, vec![0, 2]).unwrap())
            };
            let mut u = VectorField::zero(3);
            for c in &mut u.coeffs {
                *c = Expr::rational(rng.gen_range(-3i64..=3), 1);
            }
            let lc = m.koszul_levi_civita(&p).unwrap();
            let hat = modify_table(&m, &ConnectionSpec::ssnm(u), &lc);
            for (a, b) in [
                (dist.is_minimal(&m, &lc, &p).unwrap(), dist.is_minimal(&m, &hat, &p).unwrap()),
                (
                    dist.is_totally_geodesic(&m, &lc, &p).unwrap(),
                    dist.is_totally_geodesic(&m, &hat, &p).unwrap(),
                ),
                (dist.is_umbilical(&m, &lc, &p).unwrap(), dist.is_umbilical(&m, &hat, &p).unwrap()),
            ] {
                assert_eq!(a.holds, b.holds);
            }
        }
    }

    #[test]
    fn ssm_mean_curvature_relation() {
        // H̃ = H − U^{D⊥} for random U on the warped Heisenberg frame.
        use rand::Rng;
        use rand_chacha::ChaCha8Rng;
        use rand::SeedableRng;
        let p = plan();
        let f = parse_expr("exp(t)").unwrap();
        let m = catalog::warped_heisenberg(&f).unwrap();
        let dist = Distribution::new(4, vec![0, 1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let mut u = VectorField::zero(4);
            for c in &mut u.coeffs {
                *c = Expr::rational(rng.gen_range(-2i64..=2), 1);
            }
            let geo = InducedGeometry::new(m.clone(), dist.clone(), ConnectionSpec::ssm(u.clone()), &p)
                .unwrap();
            let lc_h = dist.mean_curvature(&m, &geo.lc);
            let want = lc_h.sub(&dist.project(&u, Side::Dperp));
            assert!(geo.mean_curvature().max_diff(&want, &p).unwrap() < 1e-10);
        }
    }
}
