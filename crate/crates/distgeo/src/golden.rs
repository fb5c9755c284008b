//! Golden-value ledger: the worked-example tables stored as data and
//! compared three-way against engine output (paper value, engine value,
//! residual). Comparison never gates computation — the engine's Koszul
//! pipeline is the ground truth and mismatches are reported as findings.

use serde::Serialize;

use crate::catalog;
use crate::connection::{ConnectionSpec, InducedGeometry};
use crate::distribution::{Distribution, Side};
use crate::error::Result;
use crate::expr::Expr;
use crate::frame::VectorField;
use crate::sample::SamplePlan;

pub const GOLDEN_TOL: f64 = 1e-8;

/// Paper-side coefficient as a function of (f, f′, f″) at a sample point.
/// Unwarped scenarios pass constants and ignore the arguments.
type Co = fn(f64, f64, f64) -> f64;

#[derive(Debug, Clone, Serialize)]
pub struct GoldenRecord {
    pub eq: String,
    pub item: String,
    pub paper: String,
    pub engine: String,
    pub residual: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenLedger {
    pub scenario: String,
    pub records: Vec<GoldenRecord>,
}

impl GoldenLedger {
    pub fn mismatches(&self) -> Vec<&GoldenRecord> {
        self.records.iter().filter(|r| !r.matches).collect()
    }

    pub fn match_count(&self) -> usize {
        self.records.iter().filter(|r| r.matches).count()
    }

    pub fn max_match_residual(&self) -> f64 {
        self.records
            .iter()
            .filter(|r| r.matches)
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }
}

/// Entries whose printed values disagree with the engine and whose
/// discrepancies trace to identifiable slips in the printed tables
/// (each one verified against the closed forms and the independent
/// two-path Gauss/Codazzi oracles). Keyed by (equation label, item).
pub const DOCUMENTED_FINDINGS: &[(&str, &str)] = &[
    ("5.5", "ssm nabla^D_{X2}X1"),
    ("5.10", "ssm R^D(X1,X3)X1"),
    ("5.10", "ssm K"),
    ("5.10", "ssm tau"),
    ("5.11", "ssnm R^D(X1,X3)X1"),
    ("5.11", "ssnm K"),
    ("5.11", "ssnm tau"),
    ("5.16", "s^f"),
    ("5.26", "ssm nabla^D_{X1}dt"),
    ("5.26", "ssm nabla^D_{X2}dt"),
    ("5.27", "ssm R^D(dt,X1)dt"),
    ("5.27", "ssm R^D(dt,X2)dt"),
    ("5.27", "ssm R^D(X1,X2)dt"),
    ("5.27", "ssm R^D(X1,X2)X1"),
    ("5.27", "ssm R^D(X1,X2)X2"),
    ("5.28", "ssm K(dt,X~1)"),
    ("5.28", "ssm K(dt,X~2)"),
    ("5.28", "ssm K(X~1,X~2)"),
    ("5.29", "ssm Ric^D(dt,dt)"),
    ("5.29", "ssm Ric^D(X1,X1)"),
    ("5.29", "ssm Ric^D(X2,X2)"),
    ("5.29", "ssm Ric^D(X1,dt)"),
    ("5.29", "ssm Ric^D(X2,dt)"),
    ("5.30", "ssm s^D"),
    ("5.31", "ssnm nabla^D_{X1}dt"),
    ("5.31", "ssnm nabla^D_{X2}dt"),
    ("5.32", "ssnm R^D(dt,X1)dt"),
    ("5.32", "ssnm R^D(dt,X2)dt"),
    ("5.32", "ssnm R^D(X1,X2)dt"),
    ("5.32", "ssnm R^D(X1,X2)X1"),
    ("5.32", "ssnm R^D(X1,X2)X2"),
    ("5.33", "ssnm Ric^D(dt,dt)"),
    ("5.33", "ssnm Ric^D(X1,X1)"),
    ("5.33", "ssnm Ric^D(X2,X2)"),
    ("5.33", "ssnm Ric^D(X1,dt)"),
    ("5.33", "ssnm Ric^D(X2,dt)"),
    ("5.34", "ssnm K(dt,X~1)"),
    ("5.34", "ssnm K(dt,X~2)"),
    ("5.34", "ssnm K(X~1,X~2)"),
    ("5.35", "ssnm s^D"),
    ("5.50", "lc K(e~1,e~2)"),
    ("5.55", "ssm nabla^D_{e1}dt"),
    ("5.55", "ssm nabla^D_{e2}dt"),
    ("5.56", "ssm R^D(dt,e1)dt"),
    ("5.56", "ssm R^D(dt,e2)dt"),
    ("5.56", "ssm R^D(e1,e2)dt"),
    ("5.56", "ssm R^D(e1,e2)e1"),
    ("5.56", "ssm R^D(e1,e2)e2"),
    ("5.57", "ssm Ric^D(dt,dt)"),
    ("5.57", "ssm Ric^D(e1,e1)"),
    ("5.57", "ssm Ric^D(e2,e2)"),
    ("5.57", "ssm Ric^D(e1,dt)"),
    ("5.57", "ssm Ric^D(e2,dt)"),
    ("5.58", "ssm s^D"),
    ("5.59", "ssnm nabla^D_{e1}dt"),
    ("5.59", "ssnm nabla^D_{e2}dt"),
    ("5.60", "ssnm R^D(dt,e1)dt"),
    ("5.60", "ssnm R^D(dt,e2)dt"),
    ("5.60", "ssnm R^D(e1,e2)dt"),
    ("5.60", "ssnm R^D(e1,e2)e1"),
    ("5.60", "ssnm R^D(e1,e2)e2"),
    ("5.61", "ssnm Ric^D(dt,dt)"),
    ("5.61", "ssnm Ric^D(e1,e1)"),
    ("5.61", "ssnm Ric^D(e2,e2)"),
    ("5.61", "ssnm Ric^D(e1,dt)"),
    ("5.61", "ssnm Ric^D(e2,dt)"),
    ("5.62", "ssnm s^D"),
];

pub fn is_documented_finding(eq: &str, item: &str) -> bool {
    DOCUMENTED_FINDINGS.iter().any(|&(e, i)| e == eq && i == item)
}

struct Gb<'a> {
    plan: &'a SamplePlan,
    names: Vec<String>,
    f: Expr,
    fp: Expr,
    fpp: Expr,
    records: Vec<GoldenRecord>,
}

impl<'a> Gb<'a> {
    fn new(plan: &'a SamplePlan, names: &[String], f: Option<&Expr>) -> Self {
        let f = f.cloned().unwrap_or_else(Expr::one);
        let fp = f.derive();
        let fpp = fp.derive();
        Gb { plan, names: names.to_vec(), f, fp, fpp, records: Vec::new() }
    }

    fn fj(&self, t: f64) -> Result<(f64, f64, f64)> {
        Ok((self.f.eval(t)?, self.fp.eval(t)?, self.fpp.eval(t)?))
    }

    fn render_vec(&self, v: &VectorField) -> Result<String> {
        let mut parts = Vec::new();
        for (i, c) in v.coeffs.iter().enumerate() {
            if self.plan.max_abs(c)? > 1e-12 {
                parts.push(format!("({})*{}", c, self.names[i]));
            }
        }
        Ok(if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }

    fn push(&mut self, eq: &str, item: &str, paper: &str, engine: String, residual: f64) {
        self.records.push(GoldenRecord {
            eq: eq.into(),
            item: item.into(),
            paper: paper.into(),
            engine,
            residual,
            matches: residual < GOLDEN_TOL,
        });
    }

    /// Vector-valued entry: `paper` lists (frame index, coefficient) pairs.
    fn vec(
        &mut self,
        eq: &str,
        item: &str,
        engine: &VectorField,
        paper: &[(usize, Co)],
        show: &str,
    ) -> Result<()> {
        let mut worst = 0.0f64;
        for &t in &self.plan.points {
            let (f, fp, fpp) = self.fj(t)?;
            for i in 0..engine.dim() {
                let pv: f64 = paper
                    .iter()
                    .filter(|&&(j, _)| j == i)
                    .map(|&(_, co)| co(f, fp, fpp))
                    .sum();
                worst = worst.max((engine.coeffs[i].eval(t)? - pv).abs());
            }
        }
        let rendered = self.render_vec(engine)?;
        self.push(eq, item, show, rendered, worst);
        Ok(())
    }

    fn scl(&mut self, eq: &str, item: &str, engine: &Expr, paper: Co, show: &str) -> Result<()> {
        let mut worst = 0.0f64;
        for &t in &self.plan.points {
            let (f, fp, fpp) = self.fj(t)?;
            worst = worst.max((engine.eval(t)? - paper(f, fp, fpp)).abs());
        }
        self.push(eq, item, show, engine.to_string(), worst);
        Ok(())
    }

    /// Identity-style entry: the engine value is already a residual.
    fn res(&mut self, eq: &str, item: &str, residual: f64) {
        self.push(eq, item, "0", format!("{residual:.3e}"), residual);
    }

    fn finish(self, scenario: &str) -> GoldenLedger {
        GoldenLedger { scenario: scenario.into(), records: self.records }
    }
}

fn basis(m: usize) -> Vec<VectorField> {
    (0..m).map(|i| VectorField::basis(m, i)).collect()
}

fn u_from(m: usize, idx: &[usize]) -> VectorField {
    let mut u = VectorField::zero(m);
    for &i in idx {
        u.coeffs[i] = Expr::one();
    }
    u
}

/// Example-1 ledger: unit sphere, D¹ = span{X1,X2} with U = X1+X3 and
/// D² = span{X1,X3} with U = X2+X3.
pub fn golden_sphere(plan: &SamplePlan) -> Result<GoldenLedger> {
    let m = catalog::sphere3();
    let e = basis(3);
    let mut g = Gb::new(plan, &m.names, None);
    let lc = m.koszul_levi_civita(plan)?;

    // brackets
    g.vec("5.1", "[X1,X2]", &m.bracket(&e[0], &e[1]), &[(2, |_, _, _| 2.0)], "2X3")?;
    g.vec("5.1", "[X1,X3]", &m.bracket(&e[0], &e[2]), &[(1, |_, _, _| -2.0)], "-2X2")?;
    g.vec("5.1", "[X2,X3]", &m.bracket(&e[1], &e[2]), &[(0, |_, _, _| 2.0)], "2X1")?;

    // ambient Levi-Civita table
    for (i, j, paper, show) in [
        (0usize, 1usize, vec![(2usize, (|_, _, _| 1.0) as Co)], "X3"),
        (1, 0, vec![(2, |_, _, _| -1.0)], "-X3"),
        (0, 0, vec![], "0"),
        (1, 1, vec![], "0"),
        (2, 2, vec![], "0"),
        (0, 2, vec![(1, |_, _, _| -1.0)], "-X2"),
        (2, 0, vec![(1, |_, _, _| 1.0)], "X2"),
        (1, 2, vec![(0, |_, _, _| 1.0)], "X1"),
        (2, 1, vec![(0, |_, _, _| -1.0)], "-X1"),
    ] {
        let item = format!("nabla_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.2", &item, &lc.entry(i, j), &paper, show)?;
    }

    // D1 scenario
    let d1 = Distribution::new(3, vec![0, 1])?;
    let ssm = InducedGeometry::new(m.clone(), d1.clone(), ConnectionSpec::ssm(u_from(3, &[0, 2])), plan)?;
    let ssnm = InducedGeometry::new(m.clone(), d1.clone(), ConnectionSpec::ssnm(u_from(3, &[0, 2])), plan)?;

    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let item = format!("lc nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.3", &item, &d1.project(&m.cov_deriv(&lc, &e[i], &e[j]), Side::D), &[], "0")?;
    }
    g.vec("5.3", "lc B(X1,X1)", &ssm.b_lc(&e[0], &e[0]), &[], "0")?;
    g.vec("5.3", "lc B(X2,X2)", &ssm.b_lc(&e[1], &e[1]), &[], "0")?;
    g.vec("5.3", "lc B(X1,X2)", &ssm.b_lc(&e[0], &e[1]), &[(2, |_, _, _| 1.0)], "X3")?;
    g.vec("5.3", "lc B(X2,X1)", &ssm.b_lc(&e[1], &e[0]), &[(2, |_, _, _| -1.0)], "-X3")?;

    // closed-form identity B~(X,Y) = B(X,Y) − g(X,Y)X3 over the D1 frame
    let mut worst = 0.0f64;
    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let want = ssm
            .b_lc(&e[i], &e[j])
            .sub(&e[2].scale(&m.pairing(&e[i], &e[j])));
        worst = worst.max(ssm.b(&e[i], &e[j]).max_diff(&want, plan)?);
    }
    g.res("5.4", "ssm B~ = B - g(X,Y)X3", worst);

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (0, 1, vec![], "0"),
        (1, 0, vec![(0usize, (|_, _, _| 1.0) as Co)], "X1"),
        (1, 1, vec![(0, |_, _, _| -1.0)], "-X1"),
    ] {
        let item = format!("ssm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.5", &item, &ssm.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    g.vec("5.5", "ssm B(X1,X1)", &ssm.b(&e[0], &e[0]), &[(2, |_, _, _| -1.0)], "-X3")?;
    g.vec("5.5", "ssm B(X1,X2)", &ssm.b(&e[0], &e[1]), &[(2, |_, _, _| 1.0)], "X3")?;
    g.vec("5.5", "ssm B(X2,X1)", &ssm.b(&e[1], &e[0]), &[(2, |_, _, _| -1.0)], "-X3")?;
    g.vec("5.5", "ssm B(X2,X2)", &ssm.b(&e[1], &e[1]), &[(2, |_, _, _| -1.0)], "-X3")?;
    g.vec("5.5", "ssm H", &ssm.mean_curvature(), &[(2, |_, _, _| -1.0)], "-X3")?;

    let a_lc = d1.shape_operator(&m, &lc, &e[2], plan)?;
    g.vec("5.6", "lc A_{X3}X1", &a_lc[0], &[(1, |_, _, _| 1.0)], "X2")?;
    g.vec("5.6", "lc A_{X3}X2", &a_lc[1], &[(0, |_, _, _| -1.0)], "-X1")?;
    let a_ssm = ssm.shape_operator(&e[2], plan)?;
    g.vec("5.6", "ssm A_{X3}X1", &a_ssm[0], &[(1, |_, _, _| 1.0), (0, |_, _, _| -1.0)], "X2-X1")?;
    g.vec("5.6", "ssm A_{X3}X2", &a_ssm[1], &[(0, |_, _, _| -1.0), (1, |_, _, _| -1.0)], "-X1-X2")?;
    g.vec("5.6", "lc Lperp_{X1}X3", &ssm.l_perp(&e[0], &e[2]), &[], "0")?;
    g.vec("5.6", "lc Lperp_{X2}X3", &ssm.l_perp(&e[1], &e[2]), &[], "0")?;

    g.vec("5.7", "ssm R^D(X1,X2)X1", &ssm.curvature_d(&e[0], &e[1], &e[0]), &[(1, |_, _, _| -4.0)], "-4X2")?;
    g.vec("5.7", "ssm R^D(X1,X2)X2", &ssm.curvature_d(&e[0], &e[1], &e[1]), &[(0, |_, _, _| 4.0)], "4X1")?;
    g.scl("5.7", "ssm K", &ssm.sectional(0, 1)?, |_, _, _| 4.0, "4")?;
    g.scl("5.7", "ssm tau", &ssm.scalar_tau(), |_, _, _| 4.0, "4")?;

    // closed-form identity B^(X,Y) = B(X,Y) over the D1 frame
    let mut worst = 0.0f64;
    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        worst = worst.max(ssnm.b(&e[i], &e[j]).max_diff(&ssnm.b_lc(&e[i], &e[j]), plan)?);
    }
    g.res("5.8", "ssnm B^ = B", worst);

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![(0usize, (|_, _, _| 1.0) as Co)], "X1"),
        (0, 1, vec![], "0"),
        (1, 0, vec![(1, |_, _, _| 1.0)], "X2"),
        (1, 1, vec![], "0"),
    ] {
        let item = format!("ssnm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.9", &item, &ssnm.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    g.vec("5.9", "ssnm B(X1,X1)", &ssnm.b(&e[0], &e[0]), &[], "0")?;
    g.vec("5.9", "ssnm B(X1,X2)", &ssnm.b(&e[0], &e[1]), &[(2, |_, _, _| 1.0)], "X3")?;
    g.vec("5.9", "ssnm B(X2,X1)", &ssnm.b(&e[1], &e[0]), &[(2, |_, _, _| -1.0)], "-X3")?;
    g.vec("5.9", "ssnm B(X2,X2)", &ssnm.b(&e[1], &e[1]), &[], "0")?;
    g.vec("5.9", "ssnm R^D(X1,X2)X1", &ssnm.curvature_d(&e[0], &e[1], &e[0]), &[(1, |_, _, _| -5.0)], "-5X2")?;
    g.vec("5.9", "ssnm R^D(X1,X2)X2", &ssnm.curvature_d(&e[0], &e[1], &e[1]), &[(0, |_, _, _| 4.0)], "4X1")?;

    // D2 scenario
    let d2 = Distribution::new(3, vec![0, 2])?;
    let ssm2 = InducedGeometry::new(m.clone(), d2.clone(), ConnectionSpec::ssm(u_from(3, &[1, 2])), plan)?;
    let ssnm2 = InducedGeometry::new(m.clone(), d2, ConnectionSpec::ssnm(u_from(3, &[1, 2])), plan)?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![(2usize, (|_, _, _| -1.0) as Co)], "-X3"),
        (0, 2, vec![(0, |_, _, _| 1.0)], "X1"),
        (2, 0, vec![], "0"),
        (2, 2, vec![], "0"),
    ] {
        let item = format!("ssm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.10", &item, &ssm2.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    g.vec("5.10", "ssm R^D(X1,X3)X1", &ssm2.curvature_d(&e[0], &e[2], &e[0]), &[(2, |_, _, _| 4.0)], "4X3")?;
    g.vec("5.10", "ssm R^D(X1,X3)X3", &ssm2.curvature_d(&e[0], &e[2], &e[2]), &[(0, |_, _, _| 4.0)], "4X1")?;
    g.scl("5.10", "ssm K", &ssm2.sectional(0, 2)?, |_, _, _| 0.0, "0")?;
    g.scl("5.10", "ssm tau", &ssm2.scalar_tau(), |_, _, _| 0.0, "0")?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (0, 2, vec![(0usize, (|_, _, _| 1.0) as Co)], "X1"),
        (2, 0, vec![], "0"),
        (2, 2, vec![(2, |_, _, _| 1.0)], "X3"),
    ] {
        let item = format!("ssnm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.11", &item, &ssnm2.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    g.vec("5.11", "ssnm R^D(X1,X3)X1", &ssnm2.curvature_d(&e[0], &e[2], &e[0]), &[(2, |_, _, _| 4.0)], "4X3")?;
    g.vec("5.11", "ssnm R^D(X1,X3)X3", &ssnm2.curvature_d(&e[0], &e[2], &e[2]), &[(0, |_, _, _| 5.0)], "5X1")?;
    g.scl("5.11", "ssnm K", &ssnm2.sectional(0, 2)?, |_, _, _| 0.5, "1/2")?;
    g.scl("5.11", "ssnm tau", &ssnm2.scalar_tau(), |_, _, _| 0.5, "1/2")?;

    Ok(g.finish("sphere3"))
}

/// Example-3 ledger: Heisenberg group, D = span{e1,e2}, U = e1+e2+e3.
pub fn golden_heisenberg(plan: &SamplePlan) -> Result<GoldenLedger> {
    let m = catalog::heisenberg3();
    let e = basis(3);
    let mut g = Gb::new(plan, &m.names, None);
    let lc = m.koszul_levi_civita(plan)?;

    g.vec("5.39", "[e1,e2]", &m.bracket(&e[0], &e[1]), &[(2, |_, _, _| 1.0)], "e3")?;
    g.vec("5.39", "[e1,e3]", &m.bracket(&e[0], &e[2]), &[], "0")?;
    g.vec("5.39", "[e2,e3]", &m.bracket(&e[1], &e[2]), &[], "0")?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (1, 1, vec![], "0"),
        (2, 2, vec![], "0"),
        (0, 1, vec![(2usize, (|_, _, _| 0.5) as Co)], "(1/2)e3"),
        (1, 0, vec![(2, |_, _, _| -0.5)], "-(1/2)e3"),
        (0, 2, vec![(1, |_, _, _| -0.5)], "-(1/2)e2"),
        (2, 0, vec![(1, |_, _, _| -0.5)], "-(1/2)e2"),
        (1, 2, vec![(0, |_, _, _| 0.5)], "(1/2)e1"),
        (2, 1, vec![(0, |_, _, _| 0.5)], "(1/2)e1"),
    ] {
        let item = format!("nabla_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.40", &item, &lc.entry(i, j), &paper, show)?;
    }

    let d = Distribution::new(3, vec![0, 1])?;
    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let item = format!("lc nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.40", &item, &d.project(&m.cov_deriv(&lc, &e[i], &e[j]), Side::D), &[], "0")?;
    }

    let u = u_from(3, &[0, 1, 2]);
    let ssm = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::ssm(u.clone()), plan)?;
    let ssnm = InducedGeometry::new(m.clone(), d, ConnectionSpec::ssnm(u), plan)?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![(1usize, (|_, _, _| -1.0) as Co)], "-e2"),
        (0, 1, vec![(0, |_, _, _| 1.0)], "e1"),
        (1, 0, vec![(1, |_, _, _| 1.0)], "e2"),
        (1, 1, vec![(0, |_, _, _| -1.0)], "-e1"),
    ] {
        let item = format!("ssm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.41", &item, &ssm.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    g.vec("5.41", "ssm B(e1,e1)", &ssm.b(&e[0], &e[0]), &[(2, |_, _, _| -1.0)], "-e3")?;
    g.vec("5.41", "ssm B(e2,e2)", &ssm.b(&e[1], &e[1]), &[(2, |_, _, _| -1.0)], "-e3")?;
    g.vec("5.41", "ssm B(e1,e2)", &ssm.b(&e[0], &e[1]), &[(2, |_, _, _| 0.5)], "(1/2)e3")?;
    g.vec("5.41", "ssm B(e2,e1)", &ssm.b(&e[1], &e[0]), &[(2, |_, _, _| -0.5)], "-(1/2)e3")?;
    g.vec("5.41", "ssm R^D(e1,e2)e1", &ssm.curvature_d(&e[0], &e[1], &e[0]), &[], "0")?;
    g.vec("5.41", "ssm R^D(e1,e2)e2", &ssm.curvature_d(&e[0], &e[1], &e[1]), &[], "0")?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![(0usize, (|_, _, _| 1.0) as Co)], "e1"),
        (0, 1, vec![(0, |_, _, _| 1.0)], "e1"),
        (1, 0, vec![(1, |_, _, _| 1.0)], "e2"),
        (1, 1, vec![(1, |_, _, _| 1.0)], "e2"),
    ] {
        let item = format!("ssnm nabla^D_{{{}}}{}", m.names[i], m.names[j]);
        g.vec("5.42", &item, &ssnm.nabla_d(&e[i], &e[j]), &paper, show)?;
    }
    let paper_r = [(0usize, (|_, _, _| 1.0) as Co), (1, |_, _, _| -1.0)];
    g.vec("5.42", "ssnm R^D(e1,e2)e1", &ssnm.curvature_d(&e[0], &e[1], &e[0]), &paper_r, "e1-e2")?;
    g.vec("5.42", "ssnm R^D(e1,e2)e2", &ssnm.curvature_d(&e[0], &e[1], &e[1]), &paper_r, "e1-e2")?;

    Ok(g.finish("heisenberg3"))
}

/// Example-2 ledger: warped sphere, D = span{∂t,X1,X2}, U = ∂t.
pub fn golden_warped_sphere(f: &Expr, plan: &SamplePlan) -> Result<GoldenLedger> {
    let m = catalog::warped_sphere(f)?;
    let e = basis(4);
    let mut g = Gb::new(plan, &m.names, Some(f));
    let lc = m.koszul_levi_civita(plan)?;
    // frame positions: 0=dt, 1=X1, 2=X2, 3=X3
    let nm = ["dt", "X1", "X2", "X3"];

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (0, 1, vec![(1usize, (|f, fp, _| fp / f) as Co)], "(f'/f)X1"),
        (1, 0, vec![(1, |f, fp, _| fp / f)], "(f'/f)X1"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (2, 0, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (0, 3, vec![], "0"),
        (3, 0, vec![], "0"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![(3, |_, _, _| 1.0)], "X3"),
        (2, 1, vec![(3, |_, _, _| -1.0)], "-X3"),
        (1, 3, vec![(2, |f, _, _| -1.0 / (f * f))], "-(1/f^2)X2"),
        (3, 1, vec![(2, |f, _, _| 2.0 - 1.0 / (f * f))], "(2-1/f^2)X2"),
        (2, 3, vec![(1, |f, _, _| 1.0 / (f * f))], "(1/f^2)X1"),
        (3, 2, vec![(1, |f, _, _| 1.0 / (f * f) - 2.0)], "(1/f^2-2)X1"),
        (3, 3, vec![], "0"),
    ] {
        let item = format!("nabla_{{{}}}{}", nm[i], nm[j]);
        g.vec("5.13", &item, &lc.entry(i, j), &paper, show)?;
    }

    for (x, y, z, paper, show) in [
        (0usize, 1usize, 0usize, vec![(1usize, (|f, _, fpp| fpp / f) as Co)], "(f''/f)X1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)X2"),
        (0, 3, 0, vec![], "0"),
        (0, 1, 1, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 1, 2, vec![(3, |f, fp, _| -fp / f)], "-(f'/f)X3"),
        (0, 1, 3, vec![(2, |f, fp, _| fp / (f * f * f))], "(f'/f^3)X2"),
        (0, 2, 1, vec![(3, |f, fp, _| fp / f)], "(f'/f)X3"),
        (0, 2, 2, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 2, 3, vec![(1, |f, fp, _| -fp / (f * f * f))], "-(f'/f^3)X1"),
        (0, 3, 1, vec![(2, |f, fp, _| 2.0 * fp / (f * f * f))], "(2f'/f^3)X2"),
        (0, 3, 2, vec![(1, |f, fp, _| -2.0 * fp / (f * f * f))], "-(2f'/f^3)X1"),
        (0, 3, 3, vec![], "0"),
        (1, 2, 0, vec![(3, |f, fp, _| 2.0 * fp / f)], "(2f'/f)X3"),
        (1, 3, 0, vec![(2, |f, fp, _| fp / (f * f * f))], "(f'/f^3)X2"),
        (2, 3, 0, vec![(1, |f, fp, _| -fp / (f * f * f))], "-(f'/f^3)X1"),
        (1, 2, 1, vec![(2, |f, fp, _| fp * fp + 3.0 / (f * f) - 4.0)], "((f')^2+3/f^2-4)X2"),
        (1, 2, 2, vec![(1, |f, fp, _| -(fp * fp) - 3.0 / (f * f) + 4.0)], "(-(f')^2-3/f^2+4)X1"),
        (1, 2, 3, vec![(0, |f, fp, _| -2.0 * fp / f)], "-(2f'/f)dt"),
        (1, 3, 1, vec![(3, |f, _, _| -1.0 / (f * f))], "-(1/f^2)X3"),
        (1, 3, 2, vec![(0, |f, fp, _| -fp / f)], "-(f'/f)dt"),
        (1, 3, 3, vec![(1, |f, _, _| 1.0 / (f * f * f * f))], "(1/f^4)X1"),
        (2, 3, 1, vec![(0, |f, fp, _| fp / f)], "(f'/f)dt"),
        (2, 3, 2, vec![(3, |f, _, _| -1.0 / (f * f))], "-(1/f^2)X3"),
        (2, 3, 3, vec![(2, |f, _, _| 1.0 / (f * f * f * f))], "(1/f^4)X2"),
    ] {
        let item = format!("R^f({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.14", &item, &m.curvature(&lc, &e[x], &e[y], &e[z]), &paper, show)?;
    }

    let ric = m.ricci(&lc);
    g.scl("5.15", "Ric^f(dt,dt)", &ric[0][0], |f, _, fpp| 2.0 * fpp / f, "2f''/f")?;
    let diag: Co = |f, fp, fpp| f * fpp + fp * fp + 2.0 / (f * f) - 4.0;
    g.scl("5.15", "Ric^f(X1,X1)", &ric[1][1], diag, "ff''+(f')^2+2/f^2-4")?;
    g.scl("5.15", "Ric^f(X2,X2)", &ric[2][2], diag, "ff''+(f')^2+2/f^2-4")?;
    g.scl("5.15", "Ric^f(X3,X3)", &ric[3][3], |f, _, _| -2.0 / f.powi(4), "-2/f^4")?;
    for (a, b) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let item = format!("Ric^f({},{})", nm[a], nm[b]);
        g.scl("5.15", &item, &ric[a][b], |_, _, _| 0.0, "0")?;
    }
    g.scl(
        "5.16",
        "s^f",
        &m.scalar_curvature(&lc),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f) - 8.0 / (f * f) - 2.0 / f.powi(4) + 4.0,
        "4f''/f+2(f')^2/f^2-8/f^2-2/f^4+4",
    )?;

    let d = Distribution::new(4, vec![0, 1, 2])?;
    let lc_geo = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::levi_civita(), plan)?;
    let ssm = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::ssm(u_from(4, &[0])), plan)?;
    let ssnm = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::ssnm(u_from(4, &[0])), plan)?;

    let nabla_d_items = |gb: &mut Gb, eq: &str, tag: &str, geo: &InducedGeometry, rows: &[(usize, usize, Vec<(usize, Co)>, &str)]| -> Result<()> {
        for (i, j, paper, show) in rows {
            let item = format!("{tag} nabla^D_{{{}}}{}", nm[*i], nm[*j]);
            gb.vec(eq, &item, &geo.nabla_d(&e[*i], &e[*j]), paper, show)?;
        }
        Ok(())
    };

    nabla_d_items(&mut g, "5.17", "lc", &lc_geo, &[
        (0, 0, vec![], "0"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)X1"),
        (1, 0, vec![(1, |f, fp, _| fp / f)], "(f'/f)X1"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (2, 0, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (1, 1, vec![], "0"),
        (2, 2, vec![], "0"),
        (0, 1, vec![], "0"),
        (1, 0, vec![], "0"),
        (0, 2, vec![], "0"),
        (2, 0, vec![], "0"),
        (1, 2, vec![(3usize, (|_, _, _| 1.0) as Co)], "X3"),
        (2, 1, vec![(3, |_, _, _| -1.0)], "-X3"),
    ] {
        let item = format!("lc B({},{})", nm[i], nm[j]);
        g.vec("5.18", &item, &lc_geo.b_lc(&e[i], &e[j]), &paper, show)?;
    }
    let a_lc = d.shape_operator(&m, &lc, &e[3], plan)?;
    g.vec("5.18", "lc A_{X3}dt", &a_lc[0], &[], "0")?;
    g.vec("5.18", "lc A_{X3}X1", &a_lc[1], &[(2, |f, _, _| 1.0 / (f * f))], "(1/f^2)X2")?;
    g.vec("5.18", "lc A_{X3}X2", &a_lc[2], &[(1, |f, _, _| -1.0 / (f * f))], "-(1/f^2)X1")?;
    for i in 0..3usize {
        let item = format!("lc Lperp_{{{}}}X3", nm[i]);
        g.vec("5.18", &item, &lc_geo.l_perp(&e[i], &e[3]), &[], "0")?;
    }

    let r_rows_lc: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, _, fpp| fpp / f)], "(f''/f)X1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)X2"),
        (0, 1, 1, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (1, 2, 0, vec![], "0"),
        (1, 2, 1, vec![(2, |_, fp, _| fp * fp - 4.0)], "((f')^2-4)X2"),
    ];
    for (x, y, z, paper, show) in r_rows_lc {
        let item = format!("lc R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.19", &item, &lc_geo.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.19", "lc R^D(X1,X2)X2", &lc_geo.curvature_d(&e[1], &e[2], &e[2]), &[(1, |_, fp, _| 4.0 - fp * fp)], "(4-(f')^2)X1")?;

    g.scl("5.20", "lc K(dt,X~1)", &lc_geo.sectional(0, 1)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.20", "lc K(dt,X~2)", &lc_geo.sectional(0, 2)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.20", "lc K(X~1,X~2)", &lc_geo.sectional(1, 2)?, |f, fp, _| (4.0 - fp * fp) / (f * f), "(4-(f')^2)/f^2")?;

    let ric_items = |gb: &mut Gb, eq: &str, tag: &str, geo: &InducedGeometry,
                     d00: Co, s00: &str, dxx: Co, sxx: &str, xdt: Co, sxdt: &str| -> Result<()> {
        let ric = geo.ricci_d();
        gb.scl(eq, &format!("{tag} Ric^D(dt,dt)"), &ric[0][0], d00, s00)?;
        gb.scl(eq, &format!("{tag} Ric^D(X1,X1)"), &ric[1][1], dxx, sxx)?;
        gb.scl(eq, &format!("{tag} Ric^D(X2,X2)"), &ric[2][2], dxx, sxx)?;
        gb.scl(eq, &format!("{tag} Ric^D(dt,X1)"), &ric[0][1], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(dt,X2)"), &ric[0][2], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(X1,dt)"), &ric[1][0], xdt, sxdt)?;
        gb.scl(eq, &format!("{tag} Ric^D(X2,dt)"), &ric[2][0], xdt, sxdt)?;
        gb.scl(eq, &format!("{tag} Ric^D(X1,X2)"), &ric[1][2], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(X2,X1)"), &ric[2][1], |_, _, _| 0.0, "0")?;
        Ok(())
    };

    ric_items(&mut g, "5.21", "lc", &lc_geo,
        |f, _, fpp| 2.0 * fpp / f, "2f''/f",
        |f, fp, fpp| f * fpp + fp * fp - 4.0, "ff''+(f')^2-4",
        |_, _, _| 0.0, "0")?;
    g.scl("5.24", "lc s^D", &lc_geo.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f) - 8.0 / (f * f),
        "4f''/f+2(f')^2/f^2-8/f^2")?;

    // SSM, U = dt
    nabla_d_items(&mut g, "5.26", "ssm", &ssm, &[
        (0, 0, vec![], "0"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)X1"),
        (1, 0, vec![(1, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)X1+dt"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (2, 0, vec![(2, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)X2+dt"),
        (1, 1, vec![(0, |f, fp, _| -f * fp - f * f)], "-ff'dt-f^2dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp - f * f)], "-ff'dt-f^2dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    let r_rows_ssm: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, _, fpp| fpp / f)], "(f''/f)X1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)X2"),
        (0, 1, 1, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (1, 2, 0, vec![(1, |f, fp, _| fp / f), (2, |f, fp, _| -fp / f)], "(f'/f)(X1-X2)"),
        (1, 2, 1, vec![(2, |f, fp, _| fp * fp + f * fp - 4.0), (0, |f, fp, _| f * fp + f * f)], "((f')^2+ff'-4)X2+(ff'+f^2)dt"),
    ];
    for (x, y, z, paper, show) in r_rows_ssm {
        let item = format!("ssm R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.27", &item, &ssm.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.27", "ssm R^D(X1,X2)X2", &ssm.curvature_d(&e[1], &e[2], &e[2]),
        &[(1, |f, fp, _| -(fp * fp + f * fp - 4.0)), (0, |f, fp, _| -(f * fp + f * f))],
        "-((f')^2+ff'-4)X1-(ff'+f^2)dt")?;

    let ktilde: Co = |f, fp, fpp| -(2.0 * fpp + fp) / (2.0 * f);
    g.scl("5.28", "ssm K(dt,X~1)", &ssm.sectional(0, 1)?, ktilde, "-(2f''+f')/(2f)")?;
    g.scl("5.28", "ssm K(dt,X~2)", &ssm.sectional(0, 2)?, ktilde, "-(2f''+f')/(2f)")?;
    g.scl("5.28", "ssm K(X~1,X~2)", &ssm.sectional(1, 2)?,
        |f, fp, _| (4.0 - f * fp - fp * fp) / (f * f), "(4-ff'-(f')^2)/f^2")?;

    ric_items(&mut g, "5.29", "ssm", &ssm,
        |f, _, fpp| 2.0 * fpp / f, "2f''/f",
        |f, fp, fpp| f * fpp + 2.0 * f * fp + fp * fp - 4.0, "ff''+2ff'+(f')^2-4",
        |f, fp, _| -fp / f, "-f'/f")?;
    g.scl("5.30", "ssm s^D", &ssm.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 4.0 * fp / f + 2.0 * fp * fp / (f * f) - 8.0 / (f * f),
        "4f''/f+4f'/f+2(f')^2/f^2-8/f^2")?;

    // SSNM, U = dt
    nabla_d_items(&mut g, "5.31", "ssnm", &ssnm, &[
        (0, 0, vec![(0, |_, _, _| 1.0)], "dt"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)X1"),
        (1, 0, vec![(1, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)X1+dt"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)X2"),
        (2, 0, vec![(2, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)X2+dt"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    let r_rows_ssnm: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, fp, fpp| (fpp - fp) / f)], "((f''-f')/f)X1"),
        (0, 2, 0, vec![(2, |f, fp, fpp| (fpp - fp) / f)], "((f''-f')/f)X2"),
        (0, 1, 1, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (1, 2, 0, vec![(1, |f, fp, _| fp / f), (2, |f, fp, _| -fp / f)], "(f'/f)(X1-X2)"),
        (1, 2, 1, vec![(2, |_, fp, _| fp * fp - 4.0), (0, |f, fp, _| f * fp)], "((f')^2-4)X2+ff'dt"),
    ];
    for (x, y, z, paper, show) in r_rows_ssnm {
        let item = format!("ssnm R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.32", &item, &ssnm.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.32", "ssnm R^D(X1,X2)X2", &ssnm.curvature_d(&e[1], &e[2], &e[2]),
        &[(1, |_, fp, _| -(fp * fp - 4.0)), (0, |f, fp, _| -f * fp)],
        "-((f')^2-4)X1-ff'dt")?;

    ric_items(&mut g, "5.33", "ssnm", &ssnm,
        |f, fp, fpp| 2.0 * (fpp - fp) / f, "2(f''-f')/f",
        |f, fp, fpp| f * fpp + f * fp + fp * fp - 4.0, "ff''+ff'+(f')^2-4",
        |f, fp, _| -fp / f, "-f'/f")?;
    g.scl("5.34", "ssnm K(dt,X~1)", &ssnm.sectional(0, 1)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.34", "ssnm K(dt,X~2)", &ssnm.sectional(0, 2)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.34", "ssnm K(X~1,X~2)", &ssnm.sectional(1, 2)?,
        |f, fp, _| (4.0 - fp * fp) / (f * f), "(4-(f')^2)/f^2")?;
    g.scl("5.35", "ssnm s^D", &ssnm.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f) - 8.0 / (f * f),
        "4f''/f+2(f')^2/f^2-8/f^2")?;

    Ok(g.finish(&format!("warped_sphere f={f}")))
}

/// Example-4 ledger: warped Heisenberg, D = span{∂t,e1,e2}, U = ∂t.
pub fn golden_warped_heisenberg(f: &Expr, plan: &SamplePlan) -> Result<GoldenLedger> {
    let m = catalog::warped_heisenberg(f)?;
    let e = basis(4);
    let mut g = Gb::new(plan, &m.names, Some(f));
    let lc = m.koszul_levi_civita(plan)?;
    let nm = ["dt", "e1", "e2", "e3"];

    for (i, j, paper, show) in [
        (0usize, 0usize, vec![], "0"),
        (0, 1, vec![(1usize, (|f, fp, _| fp / f) as Co)], "(f'/f)e1"),
        (1, 0, vec![(1, |f, fp, _| fp / f)], "(f'/f)e1"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (2, 0, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (0, 3, vec![], "0"),
        (3, 0, vec![], "0"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![(3, |_, _, _| 0.5)], "(1/2)e3"),
        (2, 1, vec![(3, |_, _, _| -0.5)], "-(1/2)e3"),
        (1, 3, vec![(2, |f, _, _| -0.5 / (f * f))], "-(1/(2f^2))e2"),
        (3, 1, vec![(2, |f, _, _| -0.5 / (f * f))], "-(1/(2f^2))e2"),
        (2, 3, vec![(1, |f, _, _| 0.5 / (f * f))], "(1/(2f^2))e1"),
        (3, 2, vec![(1, |f, _, _| 0.5 / (f * f))], "(1/(2f^2))e1"),
        (3, 3, vec![], "0"),
    ] {
        let item = format!("nabla_{{{}}}{}", nm[i], nm[j]);
        g.vec("5.44", &item, &lc.entry(i, j), &paper, show)?;
    }

    for (x, y, z, paper, show) in [
        (0usize, 1usize, 0usize, vec![(1usize, (|f, _, fpp| fpp / f) as Co)], "(f''/f)e1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)e2"),
        (0, 3, 0, vec![], "0"),
        (0, 1, 1, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 1, 2, vec![(3, |f, fp, _| -fp / (2.0 * f))], "-(f'/(2f))e3"),
        (0, 1, 3, vec![(2, |f, fp, _| 0.5 * fp / (f * f * f))], "(f'/(2f^3))e2"),
        (0, 2, 1, vec![(3, |f, fp, _| fp / (2.0 * f))], "(f'/(2f))e3"),
        (0, 2, 2, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 2, 3, vec![(1, |f, fp, _| -0.5 * fp / (f * f * f))], "-(f'/(2f^3))e1"),
        (0, 3, 1, vec![(2, |f, fp, _| fp / (f * f * f))], "(f'/f^3)e2"),
        (0, 3, 2, vec![(1, |f, fp, _| -fp / (f * f * f))], "-(f'/f^3)e1"),
        (0, 3, 3, vec![], "0"),
        (1, 2, 0, vec![(3, |f, fp, _| fp / f)], "(f'/f)e3"),
        (1, 3, 0, vec![(2, |f, fp, _| 0.5 * fp / (f * f * f))], "(f'/(2f^3))e2"),
        (2, 3, 0, vec![(1, |f, fp, _| -0.5 * fp / (f * f * f))], "-(f'/(2f^3))e1"),
        (1, 2, 1, vec![(2, |f, fp, _| fp * fp + 0.75 / (f * f))], "((f')^2+3/(4f^2))e2"),
        (1, 2, 2, vec![(1, |f, fp, _| -(fp * fp + 0.75 / (f * f)))], "-((f')^2+3/(4f^2))e1"),
        (1, 2, 3, vec![(0, |f, fp, _| -fp / f)], "-(f'/f)dt"),
        (1, 3, 1, vec![(3, |f, _, _| -0.25 / (f * f))], "-(1/(4f^2))e3"),
        (1, 3, 2, vec![(0, |f, fp, _| -0.5 * fp / f)], "-(f'/(2f))dt"),
        (1, 3, 3, vec![(1, |f, _, _| 0.25 / f.powi(4))], "(1/(4f^4))e1"),
        (2, 3, 1, vec![(0, |f, fp, _| 0.5 * fp / f)], "(f'/(2f))dt"),
        (2, 3, 2, vec![(3, |f, _, _| -0.25 / (f * f))], "-(1/(4f^2))e3"),
        (2, 3, 3, vec![(2, |f, _, _| 0.25 / f.powi(4))], "(1/(4f^4))e2"),
    ] {
        let item = format!("R^f({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.45", &item, &m.curvature(&lc, &e[x], &e[y], &e[z]), &paper, show)?;
    }

    let ric = m.ricci(&lc);
    g.scl("5.46", "Ric^f(dt,dt)", &ric[0][0], |f, _, fpp| 2.0 * fpp / f, "2f''/f")?;
    let diag: Co = |f, fp, fpp| f * fpp + fp * fp + 0.5 / (f * f);
    g.scl("5.46", "Ric^f(e1,e1)", &ric[1][1], diag, "ff''+(f')^2+1/(2f^2)")?;
    g.scl("5.46", "Ric^f(e2,e2)", &ric[2][2], diag, "ff''+(f')^2+1/(2f^2)")?;
    g.scl("5.46", "Ric^f(e3,e3)", &ric[3][3], |f, _, _| -0.5 / f.powi(4), "-1/(2f^4)")?;
    for (a, b) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let item = format!("Ric^f({},{})", nm[a], nm[b]);
        g.scl("5.46", &item, &ric[a][b], |_, _, _| 0.0, "0")?;
    }
    g.scl("5.47", "s^f", &m.scalar_curvature(&lc),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f) + 0.5 / f.powi(4),
        "4f''/f+2(f')^2/f^2+1/(2f^4)")?;

    let d = Distribution::new(4, vec![0, 1, 2])?;
    let lc_geo = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::levi_civita(), plan)?;
    let ssm = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::ssm(u_from(4, &[0])), plan)?;
    let ssnm = InducedGeometry::new(m.clone(), d.clone(), ConnectionSpec::ssnm(u_from(4, &[0])), plan)?;

    let nabla_d_items = |gb: &mut Gb, eq: &str, tag: &str, geo: &InducedGeometry, rows: &[(usize, usize, Vec<(usize, Co)>, &str)]| -> Result<()> {
        for (i, j, paper, show) in rows {
            let item = format!("{tag} nabla^D_{{{}}}{}", nm[*i], nm[*j]);
            gb.vec(eq, &item, &geo.nabla_d(&e[*i], &e[*j]), paper, show)?;
        }
        Ok(())
    };
    let ric_items = |gb: &mut Gb, eq: &str, tag: &str, geo: &InducedGeometry,
                     d00: Co, s00: &str, dxx: Co, sxx: &str, xdt: Co, sxdt: &str| -> Result<()> {
        let ric = geo.ricci_d();
        gb.scl(eq, &format!("{tag} Ric^D(dt,dt)"), &ric[0][0], d00, s00)?;
        gb.scl(eq, &format!("{tag} Ric^D(e1,e1)"), &ric[1][1], dxx, sxx)?;
        gb.scl(eq, &format!("{tag} Ric^D(e2,e2)"), &ric[2][2], dxx, sxx)?;
        gb.scl(eq, &format!("{tag} Ric^D(dt,e1)"), &ric[0][1], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(dt,e2)"), &ric[0][2], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(e1,dt)"), &ric[1][0], xdt, sxdt)?;
        gb.scl(eq, &format!("{tag} Ric^D(e2,dt)"), &ric[2][0], xdt, sxdt)?;
        gb.scl(eq, &format!("{tag} Ric^D(e1,e2)"), &ric[1][2], |_, _, _| 0.0, "0")?;
        gb.scl(eq, &format!("{tag} Ric^D(e2,e1)"), &ric[2][1], |_, _, _| 0.0, "0")?;
        Ok(())
    };

    nabla_d_items(&mut g, "5.48", "lc", &lc_geo, &[
        (0, 0, vec![], "0"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)e1"),
        (1, 0, vec![(1, |f, fp, _| fp / f)], "(f'/f)e1"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (2, 0, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    let r_rows_lc: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, _, fpp| fpp / f)], "(f''/f)e1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)e2"),
        (0, 1, 1, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, _, fpp| -f * fpp)], "-ff''dt"),
        (1, 2, 0, vec![], "0"),
        (1, 2, 1, vec![(2, |_, fp, _| fp * fp)], "((f')^2)e2"),
    ];
    for (x, y, z, paper, show) in r_rows_lc {
        let item = format!("lc R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.49", &item, &lc_geo.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.49", "lc R^D(e1,e2)e2", &lc_geo.curvature_d(&e[1], &e[2], &e[2]), &[(1, |_, fp, _| -(fp * fp))], "-((f')^2)e1")?;

    g.scl("5.50", "lc K(dt,e~1)", &lc_geo.sectional(0, 1)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.50", "lc K(dt,e~2)", &lc_geo.sectional(0, 2)?, |f, _, fpp| -fpp / f, "-f''/f")?;
    g.scl("5.50", "lc K(e~1,e~2)", &lc_geo.sectional(1, 2)?, |f, fp, _| fp * fp / (f * f), "(f')^2/f^2")?;

    ric_items(&mut g, "5.51", "lc", &lc_geo,
        |f, _, fpp| 2.0 * fpp / f, "2f''/f",
        |f, fp, fpp| f * fpp + fp * fp, "ff''+(f')^2",
        |_, _, _| 0.0, "0")?;
    g.scl("5.54", "lc s^D", &lc_geo.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f),
        "4f''/f+2(f')^2/f^2")?;

    nabla_d_items(&mut g, "5.55", "ssm", &ssm, &[
        (0, 0, vec![], "0"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)e1"),
        (1, 0, vec![(1, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)e1+dt"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (2, 0, vec![(2, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)e2+dt"),
        (1, 1, vec![(0, |f, fp, _| -f * fp - f * f)], "-ff'dt-f^2dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp - f * f)], "-ff'dt-f^2dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    let r_rows_ssm: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, _, fpp| fpp / f)], "(f''/f)e1"),
        (0, 2, 0, vec![(2, |f, _, fpp| fpp / f)], "(f''/f)e2"),
        (0, 1, 1, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (1, 2, 0, vec![(1, |f, fp, _| fp / f), (2, |f, fp, _| -fp / f)], "(f'/f)(e1-e2)"),
        (1, 2, 1, vec![(2, |f, fp, _| fp * fp + f * fp), (0, |f, fp, _| f * fp + f * f)], "((f')^2+ff')e2+(ff'+f^2)dt"),
    ];
    for (x, y, z, paper, show) in r_rows_ssm {
        let item = format!("ssm R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.56", &item, &ssm.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.56", "ssm R^D(e1,e2)e2", &ssm.curvature_d(&e[1], &e[2], &e[2]),
        &[(1, |f, fp, _| -(fp * fp + f * fp)), (0, |f, fp, _| -(f * fp + f * f))],
        "-((f')^2+ff')e1-(ff'+f^2)dt")?;

    ric_items(&mut g, "5.57", "ssm", &ssm,
        |f, _, fpp| 2.0 * fpp / f, "2f''/f",
        |f, fp, fpp| f * fpp + 2.0 * f * fp + fp * fp, "ff''+2ff'+(f')^2",
        |f, fp, _| -fp / f, "-f'/f")?;
    g.scl("5.58", "ssm s^D", &ssm.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 4.0 * fp / f + 2.0 * fp * fp / (f * f),
        "4f''/f+4f'/f+2(f')^2/f^2")?;

    nabla_d_items(&mut g, "5.59", "ssnm", &ssnm, &[
        (0, 0, vec![(0, |_, _, _| 1.0)], "dt"),
        (0, 1, vec![(1, |f, fp, _| fp / f)], "(f'/f)e1"),
        (1, 0, vec![(1, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)e1+dt"),
        (0, 2, vec![(2, |f, fp, _| fp / f)], "(f'/f)e2"),
        (2, 0, vec![(2, |f, fp, _| fp / f), (0, |_, _, _| 1.0)], "(f'/f)e2+dt"),
        (1, 1, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (2, 2, vec![(0, |f, fp, _| -f * fp)], "-ff'dt"),
        (1, 2, vec![], "0"),
        (2, 1, vec![], "0"),
    ])?;

    let r_rows_ssnm: [(usize, usize, usize, Vec<(usize, Co)>, &str); 8] = [
        (0, 1, 0, vec![(1, |f, fp, fpp| (fpp - fp) / f)], "((f''-f')/f)e1"),
        (0, 2, 0, vec![(2, |f, fp, fpp| (fpp - fp) / f)], "((f''-f')/f)e2"),
        (0, 1, 1, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (0, 1, 2, vec![], "0"),
        (0, 2, 1, vec![], "0"),
        (0, 2, 2, vec![(0, |f, fp, fpp| -(f * fpp + f * fp))], "-(ff''+ff')dt"),
        (1, 2, 0, vec![(1, |f, fp, _| fp / f), (2, |f, fp, _| -fp / f)], "(f'/f)(e1-e2)"),
        (1, 2, 1, vec![(2, |_, fp, _| fp * fp), (0, |f, fp, _| f * fp)], "((f')^2)e2+ff'dt"),
    ];
    for (x, y, z, paper, show) in r_rows_ssnm {
        let item = format!("ssnm R^D({},{}){}", nm[x], nm[y], nm[z]);
        g.vec("5.60", &item, &ssnm.curvature_d(&e[x], &e[y], &e[z]), &paper, show)?;
    }
    g.vec("5.60", "ssnm R^D(e1,e2)e2", &ssnm.curvature_d(&e[1], &e[2], &e[2]),
        &[(1, |_, fp, _| -(fp * fp)), (0, |f, fp, _| -f * fp)],
        "-((f')^2)e1-ff'dt")?;

    ric_items(&mut g, "5.61", "ssnm", &ssnm,
        |f, fp, fpp| 2.0 * (fpp - fp) / f, "2(f''-f')/f",
        |f, fp, fpp| f * fpp + f * fp + fp * fp, "ff''+ff'+(f')^2",
        |f, fp, _| -fp / f, "-f'/f")?;
    g.scl("5.62", "ssnm s^D", &ssnm.s_d(),
        |f, fp, fpp| 4.0 * fpp / f + 2.0 * fp * fp / (f * f),
        "4f''/f+2(f')^2/f^2")?;

    Ok(g.finish(&format!("warped_heisenberg f={f}")))
}

/// All four example ledgers, warped ones at the given f.
pub fn golden_all(f: &Expr, plan: &SamplePlan) -> Result<Vec<GoldenLedger>> {
    Ok(vec![
        golden_sphere(plan)?,
        golden_heisenberg(plan)?,
        golden_warped_sphere(f, plan)?,
        golden_warped_heisenberg(f, plan)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn plan() -> SamplePlan {
        SamplePlan::default_plan()
    }

    fn check_ledger(l: &GoldenLedger) {
        for r in &l.records {
            if is_documented_finding(&r.eq, &r.item) {
                continue; // may match or not depending on f
            }
            assert!(
                r.matches,
                "{}: unexpected mismatch at ({}, {}): paper {} vs engine {} (residual {})",
                l.scenario, r.eq, r.item, r.paper, r.engine, r.residual
            );
        }
    }

    #[test]
    fn sphere_ledger() {
        let l = golden_sphere(&plan()).unwrap();
        check_ledger(&l);
        // the documented sign slips show up as mismatches
        let mis: Vec<(String, String)> = l
            .mismatches()
            .iter()
            .map(|r| (r.eq.clone(), r.item.clone()))
            .collect();
        assert_eq!(mis.len(), 7);
        assert!(mis.contains(&("5.5".into(), "ssm nabla^D_{X2}X1".into())));
        assert!(mis.contains(&("5.11".into(), "ssnm K".into())));
    }

    #[test]
    fn heisenberg_ledger() {
        let l = golden_heisenberg(&plan()).unwrap();
        check_ledger(&l);
        assert_eq!(l.mismatches().len(), 0);
    }

    #[test]
    fn warped_ledgers() {
        for src in ["2*t+1", "exp(t)", "(2*t+1)^(2/3)"] {
            let f = parse_expr(src).unwrap();
            let ws = golden_warped_sphere(&f, &plan()).unwrap();
            check_ledger(&ws);
            let wh = golden_warped_heisenberg(&f, &plan()).unwrap();
            check_ledger(&wh);
            for l in [&ws, &wh] {
                for r in l.mismatches() {
                    assert!(
                        is_documented_finding(&r.eq, &r.item),
                        "{}: undocumented mismatch ({}, {})",
                        l.scenario,
                        r.eq,
                        r.item
                    );
                }
            }
            // the scalar-curvature lines are among the findings at every f
            assert!(ws.mismatches().iter().any(|r| r.eq == "5.30"));
            assert!(wh.mismatches().iter().any(|r| r.eq == "5.58"));
            assert!(wh.mismatches().iter().any(|r| r.eq == "5.62"));
        }
    }

    #[test]
    fn matched_entries_are_tight() {
        let l = golden_sphere(&plan()).unwrap();
        assert!(l.max_match_residual() < 1e-9);
        assert_eq!(l.records.len(), 67);
        assert_eq!(l.match_count(), 60);
    }
}
