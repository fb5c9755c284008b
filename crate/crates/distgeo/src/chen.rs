//! Chen first and Chen–Ricci inequalities on a distribution of a space form,
//! for the semi-symmetric metric and non-metric families. Both sides are
//! evaluated pointwise; the right side is cross-checked by raw summation
//! over h-coefficient tables.

use crate::connection::{ConnectionKind, InducedGeometry};
use crate::curvature::constant_curvature;
use crate::error::{GeoError, Result};
use crate::expr::Expr;
use crate::frame::VectorField;
use crate::sample::SamplePlan;

const SPACE_FORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ChenReport {
    pub lhs: Expr,
    pub rhs: Expr,
    /// min over sample points of rhs − lhs
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ChenQuantities {
    pub c: f64,
    pub lambda: Expr,
    pub lambda1: Expr,
    pub a_d: Expr,
    pub omega_pi: Expr,
    pub omega_pi_star: Expr,
    pub tr_alpha1_pi: Expr,
    pub tr_b_pi: VectorField,
    pub norm_b_sq: Expr,
    pub norm_btilde_sq: Expr,
    pub h_norm_sq: Expr,
    pub htilde_norm_sq: Expr,
    /// Levi-Civita h^r_{ij} over the orthonormalized frames, indexed [r][i][j]
    pub h: Vec<Vec<Vec<Expr>>>,
    /// family h̃^r_{ij}, indexed [r][i][j]
    pub htilde: Vec<Vec<Vec<Expr>>>,
}

fn u_of(geo: &InducedGeometry) -> Result<VectorField> {
    match geo.spec.kind {
        ConnectionKind::LeviCivita => Ok(VectorField::zero(geo.dim())),
        ConnectionKind::SemiSymmetricMetric | ConnectionKind::SemiSymmetricNonMetric => Ok(geo
            .spec
            .u
            .clone()
            .unwrap_or_else(|| VectorField::zero(geo.dim()))),
        _ => Err(GeoError::Scenario(
            "Chen inequalities are stated for the lc/ssm/ssnm kinds".into(),
        )),
    }
}

/// Orthonormalized frames of D and D⊥ as ambient fields.
fn frames(geo: &InducedGeometry) -> (Vec<VectorField>, Vec<VectorField>) {
    let m = geo.dim();
    let unit = |i: usize| VectorField::basis(m, i).scale(&geo.manifold.inv_norm(i));
    let d: Vec<_> = geo.dist.indices.iter().map(|&i| unit(i)).collect();
    let p: Vec<_> = (0..m)
        .filter(|i| !geo.dist.indices.contains(i))
        .map(unit)
        .collect();
    (d, p)
}

/// α(X,Y) = (∇_Xω)(Y) − ω(X)ω(Y) + ½g(X,Y)ω(U), ω = g(U,·), ∇ Levi-Civita.
pub fn alpha(geo: &InducedGeometry, x: &VectorField, y: &VectorField) -> Result<Expr> {
    let u = u_of(geo)?;
    let m = &geo.manifold;
    let nabla_omega = Expr::sub(
        &m.derive_along(x, &m.pairing(&u, y)),
        &m.pairing(&u, &m.cov_deriv(&geo.lc, x, y)),
    );
    Ok(Expr::add(
        &Expr::sub(&nabla_omega, &Expr::mul(&m.pairing(&u, x), &m.pairing(&u, y))),
        &Expr::mul(
            &Expr::rational(1, 2),
            &Expr::mul(&m.pairing(x, y), &m.pairing(&u, &u)),
        ),
    ))
}

/// α₁(X,Y) = (∇_Xω)(Y) − ω(X)ω(Y).
pub fn alpha1(geo: &InducedGeometry, x: &VectorField, y: &VectorField) -> Result<Expr> {
    let u = u_of(geo)?;
    let m = &geo.manifold;
    let nabla_omega = Expr::sub(
        &m.derive_along(x, &m.pairing(&u, y)),
        &m.pairing(&u, &m.cov_deriv(&geo.lc, x, y)),
    );
    Ok(Expr::sub(
        &nabla_omega,
        &Expr::mul(&m.pairing(&u, x), &m.pairing(&u, y)),
    ))
}

/// A^D = ½ Σ_{i,j} g(B(E_j,E_i),[E_j,E_i]) over an orthonormal D-frame.
pub fn a_d(geo: &InducedGeometry, frame: &[VectorField]) -> Expr {
    let m = &geo.manifold;
    let mut acc = Expr::zero();
    for ej in frame {
        for ei in frame {
            acc = Expr::add(&acc, &m.pairing(&geo.b_lc(ej, ei), &m.bracket(ej, ei)));
        }
    }
    Expr::mul(&Expr::rational(1, 2), &acc)
}

/// Ω^Π = α(E1,E1) + α(E2,E2) − ½g(B(E1,E2)−B(E2,E1),[E1,E2]).
pub fn omega_pi(geo: &InducedGeometry, e1: &VectorField, e2: &VectorField) -> Result<Expr> {
    let m = &geo.manifold;
    let skew = geo.b_lc(e1, e2).sub(&geo.b_lc(e2, e1));
    Ok(Expr::sub(
        &Expr::add(&alpha(geo, e1, e1)?, &alpha(geo, e2, e2)?),
        &Expr::mul(&Expr::rational(1, 2), &m.pairing(&skew, &m.bracket(e1, e2))),
    ))
}

/// Ω^{Π*} = −½g(B(E1,E2)−B(E2,E1),[E1,E2]).
pub fn omega_pi_star(geo: &InducedGeometry, e1: &VectorField, e2: &VectorField) -> Expr {
    let m = &geo.manifold;
    let skew = geo.b_lc(e1, e2).sub(&geo.b_lc(e2, e1));
    Expr::neg(&Expr::mul(
        &Expr::rational(1, 2),
        &m.pairing(&skew, &m.bracket(e1, e2)),
    ))
}

/// Sectional curvature of the plane spanned by explicit orthonormal fields:
/// K = ½[R^D(E1,E2,E2,E1) − R^D(E1,E2,E1,E2)].
pub fn sectional_plane(geo: &InducedGeometry, e1: &VectorField, e2: &VectorField) -> Expr {
    let m = &geo.manifold;
    let r1 = m.pairing(&geo.curvature_d(e1, e2, e2), e1);
    let r2 = m.pairing(&geo.curvature_d(e1, e2, e1), e2);
    Expr::mul(&Expr::rational(1, 2), &Expr::sub(&r1, &r2))
}

fn h_table(
    geo: &InducedGeometry,
    family: bool,
) -> Vec<Vec<Vec<Expr>>> {
    // B is tensorial once projected off D, so h^r_{ij} over unit frames is a
    // plain rescaling of the basis table.
    let m = &geo.manifold;
    let d = &geo.dist.indices;
    let perp: Vec<usize> = (0..geo.dim()).filter(|i| !d.contains(i)).collect();
    let mut out = vec![vec![vec![Expr::zero(); d.len()]; d.len()]; perp.len()];
    for (ri, &r) in perp.iter().enumerate() {
        let er = VectorField::basis(geo.dim(), r);
        for (a, &i) in d.iter().enumerate() {
            let ei = VectorField::basis(geo.dim(), i);
            for (b, &j) in d.iter().enumerate() {
                let ej = VectorField::basis(geo.dim(), j);
                let bij = if family { geo.b(&ei, &ej) } else { geo.b_lc(&ei, &ej) };
                let scale = Expr::mul(
                    &Expr::mul(&m.inv_norm(i), &m.inv_norm(j)),
                    &m.inv_norm(r),
                );
                out[ri][a][b] = Expr::mul(&m.pairing(&bij, &er), &scale);
            }
        }
    }
    out
}

fn ensure_space_form(geo: &InducedGeometry, c: f64, plan: &SamplePlan) -> Result<()> {
    let est = constant_curvature(&geo.manifold, &geo.lc, plan)?;
    if (est - c).abs() > SPACE_FORM_TOL {
        return Err(GeoError::NotConstantCurvature(format!(
            "declared c = {c} but ambient sectional curvature is {est}"
        )));
    }
    Ok(())
}

/// Everything entering the two inequalities for the plane (i,j) (ambient
/// frame indices inside D).
pub fn quantities(
    geo: &InducedGeometry,
    plane: (usize, usize),
    c: f64,
    plan: &SamplePlan,
) -> Result<ChenQuantities> {
    let (i, j) = plane;
    if i == j {
        return Err(GeoError::SamePlane(i));
    }
    for k in [i, j] {
        if !geo.dist.indices.contains(&k) {
            return Err(GeoError::NotTangent { index: k });
        }
    }
    ensure_space_form(geo, c, plan)?;
    let (d_frame, _) = frames(geo);
    let m = &geo.manifold;
    let pos = |k: usize| geo.dist.indices.iter().position(|&x| x == k).unwrap();
    let e1 = &d_frame[pos(i)];
    let e2 = &d_frame[pos(j)];
    let n = geo.dist.rank() as i64;

    let mut lambda = Expr::zero();
    let mut lambda1 = Expr::zero();
    for e in &d_frame {
        lambda = Expr::add(&lambda, &alpha(geo, e, e)?);
        lambda1 = Expr::add(&lambda1, &alpha1(geo, e, e)?);
    }

    let h = h_table(geo, false);
    let htilde = h_table(geo, true);
    let sq_sum = |t: &Vec<Vec<Vec<Expr>>>| {
        let mut acc = Expr::zero();
        for r in t {
            for row in r {
                for x in row {
                    acc = Expr::add(&acc, &Expr::mul(x, x));
                }
            }
        }
        acc
    };

    let u = u_of(geo)?;
    let h_lc = {
        // Levi-Civita mean curvature, independent of the family
        let mut acc = VectorField::zero(geo.dim());
        for e in &d_frame {
            acc = acc.add(&geo.b_lc(e, e));
        }
        acc.scale(&Expr::rational(1, n))
    };
    let h_fam = geo.mean_curvature();
    let _ = &u;

    Ok(ChenQuantities {
        c,
        lambda,
        lambda1,
        a_d: a_d(geo, &d_frame),
        omega_pi: omega_pi(geo, e1, e2)?,
        omega_pi_star: omega_pi_star(geo, e1, e2),
        tr_alpha1_pi: Expr::add(&alpha1(geo, e1, e1)?, &alpha1(geo, e2, e2)?),
        tr_b_pi: geo.b_lc(e1, e1).add(&geo.b_lc(e2, e2)),
        norm_b_sq: sq_sum(&h),
        norm_btilde_sq: sq_sum(&htilde),
        h_norm_sq: m.pairing(&h_lc, &h_lc),
        htilde_norm_sq: m.pairing(&h_fam, &h_fam),
        h,
        htilde,
    })
}

fn rhs_first(geo: &InducedGeometry, q: &ChenQuantities, n: i64) -> Result<Expr> {
    let cexpr = Expr::float(q.c);
    let lead = Expr::mul(&Expr::rational((n + 1) * (n - 2), 2), &cexpr);
    let lemma_coef = Expr::rational(n * n * (n - 2), 2 * (n - 1));
    let u = u_of(geo)?;
    let m = &geo.manifold;
    Ok(match geo.spec.kind {
        ConnectionKind::LeviCivita | ConnectionKind::SemiSymmetricMetric => {
            let mut rhs = Expr::sub(&lead, &Expr::mul(&Expr::int(n - 1), &q.lambda));
            rhs = Expr::add(&rhs, &q.a_d);
            rhs = Expr::add(&rhs, &q.omega_pi);
            rhs = Expr::add(&rhs, &Expr::mul(&lemma_coef, &q.htilde_norm_sq));
            Expr::add(&rhs, &Expr::mul(&Expr::rational(1, 2), &q.norm_btilde_sq))
        }
        ConnectionKind::SemiSymmetricNonMetric => {
            // (3.12), with λ₁ throughout: the theorem's own derivation sums
            // α₁ traces, so the printed λ in its proof is read as λ₁.
            let h_lc = {
                let (d_frame, _) = frames(geo);
                let mut acc = VectorField::zero(geo.dim());
                for e in &d_frame {
                    acc = acc.add(&geo.b_lc(e, e));
                }
                acc.scale(&Expr::rational(1, n))
            };
            let mut rhs = Expr::sub(
                &lead,
                &Expr::mul(&Expr::rational(n - 1, 2), &q.lambda1),
            );
            rhs = Expr::sub(
                &rhs,
                &Expr::mul(&Expr::rational(n * (n - 1), 2), &m.pairing(&u, &h_lc)),
            );
            rhs = Expr::add(&rhs, &Expr::mul(&Expr::rational(1, 2), &q.tr_alpha1_pi));
            rhs = Expr::add(
                &rhs,
                &Expr::mul(&Expr::rational(1, 2), &m.pairing(&u, &q.tr_b_pi)),
            );
            rhs = Expr::add(&rhs, &q.a_d);
            rhs = Expr::add(&rhs, &q.omega_pi_star);
            rhs = Expr::add(&rhs, &Expr::mul(&lemma_coef, &q.h_norm_sq));
            Expr::add(&rhs, &Expr::mul(&Expr::rational(1, 2), &q.norm_b_sq))
        }
        _ => unreachable!("guarded by u_of"),
    })
}

fn report(lhs: Expr, rhs: Expr, plan: &SamplePlan) -> Result<ChenReport> {
    let diff = Expr::sub(&rhs, &lhs);
    let mut slack = f64::INFINITY;
    for &t in &plan.points {
        slack = slack.min(diff.eval(t)?);
    }
    let pass = slack >= -plan.abs_tol;
    Ok(ChenReport { lhs, rhs, slack, pass })
}

/// Chen first inequality (Thm 2.10 for SSM, Thm 3.4 for SSNM) on the plane
/// spanned by ambient frame indices (i,j) inside D.
pub fn chen_first(
    geo: &InducedGeometry,
    plane: (usize, usize),
    c: f64,
    plan: &SamplePlan,
) -> Result<ChenReport> {
    let n = geo.dist.rank();
    if n < 3 {
        return Err(GeoError::DimensionTooSmall { n, min: 3 });
    }
    let q = quantities(geo, plane, c, plan)?;
    let lhs = Expr::sub(&geo.scalar_tau(), &geo.sectional(plane.0, plane.1)?);
    let rhs = rhs_first(geo, &q, n as i64)?;
    report(lhs, rhs, plan)
}

/// Residual between the named-quantity rhs and the rhs reassembled from raw
/// h-table sums (mean curvature and ‖B‖ norms recomputed entrywise).
pub fn chen_first_two_path(
    geo: &InducedGeometry,
    plane: (usize, usize),
    c: f64,
    plan: &SamplePlan,
) -> Result<f64> {
    let n = geo.dist.rank();
    if n < 3 {
        return Err(GeoError::DimensionTooSmall { n, min: 3 });
    }
    let q = quantities(geo, plane, c, plan)?;
    let rhs = rhs_first(geo, &q, n as i64)?;

    let raw_norms = |t: &Vec<Vec<Vec<Expr>>>| {
        let mut hsq = Expr::zero();
        let mut bsq = Expr::zero();
        for r in t {
            let mut tr = Expr::zero();
            for (i, row) in r.iter().enumerate() {
                tr = Expr::add(&tr, &row[i]);
                for x in row {
                    bsq = Expr::add(&bsq, &Expr::mul(x, x));
                }
            }
            let mean = Expr::mul(&Expr::rational(1, n as i64), &tr);
            hsq = Expr::add(&hsq, &Expr::mul(&mean, &mean));
        }
        (hsq, bsq)
    };
    let (hsq_t, bsq_t) = raw_norms(&q.htilde);
    let (hsq, bsq) = raw_norms(&q.h);
    let mut q2 = q.clone();
    q2.htilde_norm_sq = hsq_t;
    q2.norm_btilde_sq = bsq_t;
    q2.h_norm_sq = hsq;
    q2.norm_b_sq = bsq;
    let rhs2 = rhs_first(geo, &q2, n as i64)?;
    plan.max_diff(&rhs, &rhs2)
}

/// Decomposes a unit field X ∈ Γ(D) into constant coefficients over the
/// orthonormalized D-frame and completes it to an adapted orthonormal basis.
fn adapted_basis(
    geo: &InducedGeometry,
    x: &VectorField,
    plan: &SamplePlan,
) -> Result<Vec<VectorField>> {
    let (d_frame, _) = frames(geo);
    let n = d_frame.len();
    let m = &geo.manifold;
    let t0 = plan.points[0];
    let mut a = vec![0.0f64; n];
    for (k, e) in d_frame.iter().enumerate() {
        a[k] = m.pairing(x, e).eval(t0)?;
    }
    // reject non-constant coefficients or a D⊥ component
    let mut recon = VectorField::zero(geo.dim());
    for (k, e) in d_frame.iter().enumerate() {
        recon = recon.add(&e.scale(&Expr::float(a[k])));
    }
    if x.max_diff(&recon, plan)? > plan.abs_tol.max(1e-9) {
        return Err(GeoError::Scenario(
            "chen_ricci expects a constant-coefficient combination of the orthonormalized D-frame".into(),
        ));
    }
    let norm_sq: f64 = a.iter().map(|v| v * v).sum();
    if (norm_sq - 1.0).abs() > plan.rel_tol.max(1e-9) {
        return Err(GeoError::NotUnit { t: t0, norm_sq });
    }

    // Gram-Schmidt completion of `a` inside R^n
    let mut rows: Vec<Vec<f64>> = vec![a.clone()];
    for k in 0..n {
        if rows.len() == n {
            break;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for r in &rows {
            let dot: f64 = r.iter().zip(&v).map(|(p, q)| p * q).sum();
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi -= dot * ri;
            }
        }
        let nn: f64 = v.iter().map(|p| p * p).sum::<f64>().sqrt();
        if nn > 1e-8 {
            for vi in &mut v {
                *vi /= nn;
            }
            rows.push(v);
        }
    }
    Ok(rows
        .into_iter()
        .map(|r| {
            let mut f = VectorField::zero(geo.dim());
            for (k, e) in d_frame.iter().enumerate() {
                f = f.add(&e.scale(&Expr::float(r[k])));
            }
            f
        })
        .collect())
}

/// Chen–Ricci inequality (Thm 2.13 for SSM, Thm 3.6 for SSNM) for a unit
/// field X ∈ Γ(D).
pub fn chen_ricci(
    geo: &InducedGeometry,
    x: &VectorField,
    c: f64,
    plan: &SamplePlan,
) -> Result<ChenReport> {
    let n = geo.dist.rank();
    if n < 2 {
        return Err(GeoError::DimensionTooSmall { n, min: 2 });
    }
    let u = u_of(geo)?;
    ensure_space_form(geo, c, plan)?;
    let basis = adapted_basis(geo, x, plan)?;
    let m = &geo.manifold;
    let nn = n as i64;

    let mut lhs = Expr::zero();
    for ej in &basis[1..] {
        lhs = Expr::add(&lhs, &m.pairing(&geo.curvature_d(x, ej, ej), x));
    }

    let mut a_d_x = Expr::zero();
    for ej in &basis[1..] {
        a_d_x = Expr::add(&a_d_x, &m.pairing(&geo.b_lc(ej, x), &m.bracket(ej, x)));
    }
    let bx_sq = |family: bool| {
        let mut acc = Expr::zero();
        for ej in &basis[1..] {
            let b1 = if family { geo.b(x, ej) } else { geo.b_lc(x, ej) };
            let b2 = if family { geo.b(ej, x) } else { geo.b_lc(ej, x) };
            acc = Expr::add(&acc, &Expr::add(&m.pairing(&b1, &b1), &m.pairing(&b2, &b2)));
        }
        acc
    };
    let (d_frame, _) = frames(geo);
    let h_lc = {
        let mut acc = VectorField::zero(geo.dim());
        for e in &d_frame {
            acc = acc.add(&geo.b_lc(e, e));
        }
        acc.scale(&Expr::rational(1, nn))
    };
    let cexpr = Expr::float(c);

    let rhs = match geo.spec.kind {
        ConnectionKind::LeviCivita | ConnectionKind::SemiSymmetricMetric => {
            let mut lambda = Expr::zero();
            for e in &d_frame {
                lambda = Expr::add(&lambda, &alpha(geo, e, e)?);
            }
            let h_fam = geo.mean_curvature();
            let mut rhs = Expr::sub(&Expr::mul(&Expr::int(nn - 1), &cexpr), &lambda);
            rhs = Expr::add(&rhs, &Expr::mul(&Expr::int(2 - nn), &alpha(geo, x, x)?));
            rhs = Expr::add(
                &rhs,
                &Expr::mul(&Expr::rational(nn * nn, 4), &m.pairing(&h_fam, &h_fam)),
            );
            rhs = Expr::add(&rhs, &Expr::mul(&Expr::rational(1, 2), &bx_sq(true)));
            Expr::add(&rhs, &a_d_x)
        }
        ConnectionKind::SemiSymmetricNonMetric => {
            // (3.21) with λ₁ (see rhs_first note)
            let mut lambda1 = Expr::zero();
            for e in &d_frame {
                lambda1 = Expr::add(&lambda1, &alpha1(geo, e, e)?);
            }
            let mut rhs = Expr::sub(&Expr::mul(&Expr::int(nn - 1), &cexpr), &lambda1);
            rhs = Expr::add(&rhs, &alpha1(geo, x, x)?);
            rhs = Expr::sub(&rhs, &Expr::mul(&Expr::int(nn), &m.pairing(&u, &h_lc)));
            rhs = Expr::add(&rhs, &m.pairing(&u, &geo.b_lc(x, x)));
            rhs = Expr::add(
                &rhs,
                &Expr::mul(&Expr::rational(nn * nn, 4), &m.pairing(&h_lc, &h_lc)),
            );
            rhs = Expr::add(&rhs, &Expr::mul(&Expr::rational(1, 2), &bx_sq(false)));
            Expr::add(&rhs, &a_d_x)
        }
        _ => unreachable!("guarded by u_of"),
    };
    report(lhs, rhs, plan)
}

#[derive(Debug, Clone)]
pub struct PointDiagnosis {
    pub t: f64,
    pub conditions_hold: bool,
    pub slack: f64,
}

#[derive(Debug, Clone)]
pub struct EqualityDiagnosis {
    pub per_point: Vec<PointDiagnosis>,
    pub conditions_hold_everywhere: bool,
    pub equality_everywhere: bool,
}

/// Equality-case diagnosis for the first inequality (Cor 2.12 / 3.5): the
/// stated conditions and the observed slack, reported side by side.
pub fn equality_diagnosis_first(
    geo: &InducedGeometry,
    plane: (usize, usize),
    c: f64,
    plan: &SamplePlan,
) -> Result<EqualityDiagnosis> {
    let rep = chen_first(geo, plane, c, plan)?;
    let ht = h_table(geo, true);
    let diff = Expr::sub(&rep.rhs, &rep.lhs);
    let tol = plan.abs_tol.max(1e-9);
    let mut per_point = Vec::new();
    for &t in &plan.points {
        let mut cond = true;
        for r in &ht {
            for row in r {
                for x in row {
                    if x.eval(t)?.abs() > tol {
                        cond = false;
                    }
                }
            }
        }
        per_point.push(PointDiagnosis { t, conditions_hold: cond, slack: diff.eval(t)? });
    }
    Ok(summarize(per_point, tol))
}

/// Equality-case diagnosis for the Chen–Ricci inequality (Cor 2.14 / 3.7):
/// h̃^r_{1j} = −h̃^r_{j1} and h̃^r_{11} − Σ_{j≥2} h̃^r_{jj} = 0 in the
/// X-adapted basis.
pub fn equality_diagnosis_ricci(
    geo: &InducedGeometry,
    x: &VectorField,
    c: f64,
    plan: &SamplePlan,
) -> Result<EqualityDiagnosis> {
    let rep = chen_ricci(geo, x, c, plan)?;
    let basis = adapted_basis(geo, x, plan)?;
    let (_, perp) = frames(geo);
    let m = &geo.manifold;
    let family = !matches!(geo.spec.kind, ConnectionKind::SemiSymmetricNonMetric);
    let h = |ei: &VectorField, ej: &VectorField, er: &VectorField| {
        let b = if family { geo.b(ei, ej) } else { geo.b_lc(ei, ej) };
        m.pairing(&b, er)
    };
    let diff = Expr::sub(&rep.rhs, &rep.lhs);
    let tol = plan.abs_tol.max(1e-9);
    let mut per_point = Vec::new();
    for &t in &plan.points {
        let mut cond = true;
        for er in &perp {
            let mut trace = h(&basis[0], &basis[0], er).eval(t)?;
            for ej in &basis[1..] {
                let h1j = h(&basis[0], ej, er).eval(t)?;
                let hj1 = h(ej, &basis[0], er).eval(t)?;
                if (h1j + hj1).abs() > tol {
                    cond = false;
                }
                trace -= h(ej, ej, er).eval(t)?;
            }
            if trace.abs() > tol {
                cond = false;
            }
        }
        per_point.push(PointDiagnosis { t, conditions_hold: cond, slack: diff.eval(t)? });
    }
    Ok(summarize(per_point, tol))
}

fn summarize(per_point: Vec<PointDiagnosis>, tol: f64) -> EqualityDiagnosis {
    let conditions_hold_everywhere = per_point.iter().all(|p| p.conditions_hold);
    let equality_everywhere = per_point.iter().all(|p| p.slack.abs() <= tol);
    EqualityDiagnosis { per_point, conditions_hold_everywhere, equality_everywhere }
}

#[derive(Debug, Clone, Copy)]
pub struct LemmaCheck {
    pub lhs48: Option<f64>,
    pub rhs48: Option<f64>,
    pub lhs54: f64,
    pub rhs54: f64,
}

impl LemmaCheck {
    pub fn holds(&self, tol: f64) -> bool {
        let b48 = match (self.lhs48, self.rhs48) {
            (Some(l), Some(r)) => l <= r + tol,
            _ => true,
        };
        b48 && self.lhs54 <= self.rhs54 + tol
    }
}

/// Both sides of the algebraic lemmas (2.48) and (2.54) on a raw
/// (m−n)-indexed array of n×n h-coefficient matrices.
pub fn algebraic_lemmas(h: &[Vec<Vec<f64>>]) -> Result<LemmaCheck> {
    let n = h.first().map(|r| r.len()).unwrap_or(0);
    if n < 2 {
        return Err(GeoError::ShapeMismatch(format!("n = {n}, need n >= 2")));
    }
    for r in h {
        if r.len() != n || r.iter().any(|row| row.len() != n) {
            return Err(GeoError::ShapeMismatch("ragged h array".into()));
        }
    }
    let h_norm_sq: f64 = h
        .iter()
        .map(|r| {
            let tr: f64 = (0..n).map(|i| r[i][i]).sum();
            (tr / n as f64).powi(2)
        })
        .sum();

    let lhs54: f64 = h
        .iter()
        .map(|r| (1..n).map(|j| r[0][0] * r[j][j]).sum::<f64>())
        .sum();
    let rhs54 = (n * n) as f64 / 4.0 * h_norm_sq;

    let (lhs48, rhs48) = if n >= 3 {
        let lhs: f64 = h
            .iter()
            .map(|r| {
                let tail: f64 = (2..n).map(|j| r[j][j]).sum();
                let cross: f64 = (2..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .map(|(i, j)| r[i][i] * r[j][j])
                    .sum();
                (r[0][0] + r[1][1]) * tail + cross
            })
            .sum();
        let rhs = (n * n * (n - 2)) as f64 / (2 * (n - 1)) as f64 * h_norm_sq;
        (Some(lhs), Some(rhs))
    } else {
        (None, None)
    };
    Ok(LemmaCheck { lhs48, rhs48, lhs54, rhs54 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::connection::ConnectionSpec;
    use crate::distribution::Distribution;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plan() -> SamplePlan {
        SamplePlan::default_plan()
    }

    fn flat_geo(dim: usize, d: Vec<usize>, spec: ConnectionSpec) -> InducedGeometry {
        let m = catalog::flat_abelian(dim);
        let dist = Distribution::new(dim, d).unwrap();
        InducedGeometry::new(m, dist, spec, &plan()).unwrap()
    }

    #[test]
    fn lemma_examples() {
        let zero = vec![vec![vec![0.0; 3]; 3]];
        let l = algebraic_lemmas(&zero).unwrap();
        assert_eq!(l.lhs48, Some(0.0));
        assert!(l.holds(0.0));

        let diag = vec![vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]];
        let l = algebraic_lemmas(&diag).unwrap();
        assert_eq!(l.lhs48, Some(2.0));
        assert_eq!(l.rhs48, Some(2.25));
        assert_eq!(l.lhs54, 2.0);
        assert_eq!(l.rhs54, 2.25);
        assert!(l.holds(0.0));

        assert!(algebraic_lemmas(&[vec![vec![1.0]]]).is_err());
    }

    #[test]
    fn lemmas_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let p = rng.gen_range(1..=3usize);
            let n = rng.gen_range(3..=5usize);
            let h: Vec<Vec<Vec<f64>>> = (0..p)
                .map(|_| {
                    (0..n)
                        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                        .collect()
                })
                .collect();
            assert!(algebraic_lemmas(&h).unwrap().holds(1e-12));
        }
    }

    #[test]
    fn chen_first_flat5_ssm() {
        let u = VectorField::basis(5, 4);
        let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(u));
        let rep = chen_first(&geo, (0, 1), 0.0, &plan()).unwrap();
        assert!(rep.pass, "slack = {}", rep.slack);
        // hand value: rhs = −6 + 1 + 16/3 + 2 = 7/3, lhs = 0
        assert!((rep.slack - 7.0 / 3.0).abs() < 1e-9);
        assert!(chen_first_two_path(&geo, (0, 1), 0.0, &plan()).unwrap() < 1e-9);
    }

    #[test]
    fn chen_first_flat5_ssnm_and_zero_u() {
        let u = VectorField::basis(5, 4);
        let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssnm(u));
        let rep = chen_first(&geo, (0, 1), 0.0, &plan()).unwrap();
        assert!(rep.pass);
        assert!(chen_first_two_path(&geo, (0, 1), 0.0, &plan()).unwrap() < 1e-9);

        // U = 0 collapses every correction term
        let geo0 = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(VectorField::zero(5)));
        let rep0 = chen_first(&geo0, (0, 1), 0.0, &plan()).unwrap();
        assert!(rep0.pass && rep0.slack.abs() < 1e-9);
    }

    #[test]
    fn tangent_u_reduces_to_lc_mean_curvature() {
        // Cor 2.11: U ∈ Γ(D) ⇒ H̃ = H
        let u = VectorField::basis(5, 0);
        let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(u));
        let (d_frame, _) = frames(&geo);
        let mut h_lc = VectorField::zero(5);
        for e in &d_frame {
            h_lc = h_lc.add(&geo.b_lc(e, e));
        }
        let h_lc = h_lc.scale(&Expr::rational(1, 4));
        assert!(geo.mean_curvature().max_diff(&h_lc, &plan()).unwrap() < 1e-12);
    }

    #[test]
    fn guards() {
        // rank too small for the first inequality
        let m = catalog::sphere3();
        let dist = Distribution::new(3, vec![0, 1]).unwrap();
        let geo = InducedGeometry::new(
            m,
            dist,
            ConnectionSpec::ssm(VectorField::basis(3, 2)),
            &plan(),
        )
        .unwrap();
        assert!(matches!(
            chen_first(&geo, (0, 1), 1.0, &plan()),
            Err(GeoError::DimensionTooSmall { n: 2, min: 3 })
        ));

        // heisenberg is not a space form
        let m = catalog::heisenberg3();
        let dist = Distribution::new(3, vec![0, 1]).unwrap();
        let geo = InducedGeometry::new(
            m,
            dist,
            ConnectionSpec::ssm(VectorField::basis(3, 2)),
            &plan(),
        )
        .unwrap();
        assert!(matches!(
            chen_ricci(&geo, &VectorField::basis(3, 0), 0.0, &plan()),
            Err(GeoError::NotConstantCurvature(_))
        ));

        // NotUnit
        let u = VectorField::basis(4, 3);
        let geo = flat_geo(4, vec![0, 1, 2], ConnectionSpec::ssm(u));
        let x2 = VectorField::basis(4, 0).scale(&Expr::int(2));
        assert!(matches!(
            chen_ricci(&geo, &x2, 0.0, &plan()),
            Err(GeoError::NotUnit { .. })
        ));
    }

    #[test]
    fn chen_ricci_flat4() {
        let u = VectorField::basis(4, 3);
        let geo = flat_geo(4, vec![0, 1, 2], ConnectionSpec::ssm(u));
        let x = VectorField::basis(4, 0);
        let rep = chen_ricci(&geo, &x, 0.0, &plan()).unwrap();
        assert!(rep.pass);
        // hand value: rhs = −3/2 − 1/2 + 9/4 = 1/4, lhs = 0
        assert!((rep.slack - 0.25).abs() < 1e-9);

        let geo0 = flat_geo(4, vec![0, 1, 2], ConnectionSpec::ssm(VectorField::zero(4)));
        let rep0 = chen_ricci(&geo0, &x, 0.0, &plan()).unwrap();
        assert!(rep0.slack.abs() < 1e-12); // lhs = rhs = (n−1)c = 0

        let geon = flat_geo(4, vec![0, 1, 2], ConnectionSpec::ssnm(VectorField::basis(4, 3)));
        let repn = chen_ricci(&geon, &x, 0.0, &plan()).unwrap();
        assert!(repn.pass);
    }

    #[test]
    fn frame_rotation_invariance() {
        // A^D and Ω^Π are claimed independent of the orthonormal basis
        let m = catalog::sphere3();
        let dist = Distribution::new(3, vec![0, 1]).unwrap();
        let u = VectorField::basis(3, 0).add(&VectorField::basis(3, 2));
        let geo = InducedGeometry::new(m, dist, ConnectionSpec::ssm(u), &plan()).unwrap();
        let e1 = VectorField::basis(3, 0);
        let e2 = VectorField::basis(3, 1);
        let base_a = a_d(&geo, &[e1.clone(), e2.clone()]);
        let base_o = omega_pi(&geo, &e1, &e2).unwrap();
        for theta in [std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_3] {
            let (s, c) = theta.sin_cos();
            let r1 = e1.scale(&Expr::float(c)).add(&e2.scale(&Expr::float(s)));
            let r2 = e1.scale(&Expr::float(-s)).add(&e2.scale(&Expr::float(c)));
            let rot_a = a_d(&geo, &[r1.clone(), r2.clone()]);
            let rot_o = omega_pi(&geo, &r1, &r2).unwrap();
            assert!(plan().max_diff(&base_a, &rot_a).unwrap() < 1e-8);
            assert!(plan().max_diff(&base_o, &rot_o).unwrap() < 1e-8);
        }
    }

    #[test]
    fn tau_expansion_identity() {
        // independent oracle for τ̃ via (2.46):
        // τ̃ = n(n−1)/2 c − (n−1)λ + A^D + Σ_r Σ_{i<j}[h̃ii h̃jj − h̃ij h̃ji]
        for u in [
            VectorField::basis(5, 4),
            VectorField::basis(5, 0).add(&VectorField::basis(5, 4)),
        ] {
            let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(u));
            let q = quantities(&geo, (0, 1), 0.0, &plan()).unwrap();
            let n = 4i64;
            let mut rhs = Expr::sub(&Expr::zero(), &Expr::mul(&Expr::int(n - 1), &q.lambda));
            rhs = Expr::add(&rhs, &q.a_d);
            for r in &q.htilde {
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        rhs = Expr::add(
                            &rhs,
                            &Expr::sub(
                                &Expr::mul(&r[i][i], &r[j][j]),
                                &Expr::mul(&r[i][j], &r[j][i]),
                            ),
                        );
                    }
                }
            }
            assert!(plan().max_diff(&geo.scalar_tau(), &rhs).unwrap() < 1e-9);
        }
    }

    #[test]
    fn equality_diagnosis_cases() {
        // totally geodesic wrt ∇̃: flat frame with U tangent to D and ω(Y)X −
        // g(X,Y)U both in D ⇒ B̃ ≡ 0 when U ∈ D... use U = 0 for a clean case
        let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(VectorField::zero(5)));
        let d = equality_diagnosis_first(&geo, (0, 1), 0.0, &plan()).unwrap();
        assert!(d.conditions_hold_everywhere && d.equality_everywhere);

        // nonzero h̃: conditions fail and slack > 0
        let geo = flat_geo(5, vec![0, 1, 2, 3], ConnectionSpec::ssm(VectorField::basis(5, 4)));
        let d = equality_diagnosis_first(&geo, (0, 1), 0.0, &plan()).unwrap();
        assert!(!d.conditions_hold_everywhere && !d.equality_everywhere);
        assert!(d.per_point.iter().all(|p| p.slack > 0.0));

        let dr = equality_diagnosis_ricci(&geo, &VectorField::basis(5, 0), 0.0, &plan()).unwrap();
        assert!(!dr.conditions_hold_everywhere);
    }

    #[test]
    fn randomized_flat6_slack_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let plan = plan();
        for _ in 0..25 {
            let mut idx: Vec<usize> = (0..6).collect();
            // random 4-subset
            for i in 0..6 {
                let j = rng.gen_range(i..6);
                idx.swap(i, j);
            }
            let mut d: Vec<usize> = idx[..4].to_vec();
            d.sort_unstable();
            let mut u = VectorField::zero(6);
            for c in u.coeffs.iter_mut() {
                *c = Expr::float(rng.gen_range(-1.0..1.0));
            }
            for spec in [ConnectionSpec::ssm(u.clone()), ConnectionSpec::ssnm(u.clone())] {
                let geo = flat_geo(6, d.clone(), spec);
                let rep = chen_first(&geo, (d[0], d[1]), 0.0, &plan).unwrap();
                assert!(rep.slack >= -1e-9, "slack = {}", rep.slack);
                let x = VectorField::basis(6, d[rng.gen_range(0..4)]);
                let rr = chen_ricci(&geo, &x, 0.0, &plan).unwrap();
                assert!(rr.slack >= -1e-9, "ricci slack = {}", rr.slack);
            }
        }
    }
}
