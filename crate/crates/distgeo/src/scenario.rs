//! Scenario files: JSON with expression-string leaves, resolved into module
//! inputs. Indices in scenario files are 1-based (matching the worked-example
//! labels X1, X2, …); everything internal stays 0-based.

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::connection::{ConnectionSpec, InducedGeometry};
use crate::distribution::Distribution;
use crate::error::{GeoError, Result};
use crate::expr::Expr;
use crate::frame::{FrameManifold, VectorField};
use crate::parser::parse_expr;
use crate::sample::SamplePlan;

pub const KNOWN_CHECKS: &[&str] = &[
    "gauss",
    "codazzi",
    "ricci",
    "golden",
    "chen",
    "chen_ricci",
    "einstein",
    "csc",
    "mixed_ricci_flat",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ManifoldSpec {
    Preset(String),
    Inline {
        names: Vec<String>,
        metric: Vec<String>,
        structure: Vec<Vec<Vec<String>>>,
        deriv_weight: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionField {
    pub kind: String,
    #[serde(default, rename = "U")]
    pub u: Option<Vec<String>>,
    #[serde(default, rename = "K")]
    pub k: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    #[serde(default)]
    pub abs_tol: Option<f64>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub manifold: ManifoldSpec,
    /// warp function for the warped presets
    #[serde(default)]
    pub f: Option<String>,
    /// 1-based ambient frame indices spanning D
    pub distribution: Vec<usize>,
    pub connection: ConnectionField,
    #[serde(default)]
    pub declared_c: Option<f64>,
    /// Einstein constant for the `einstein` check
    #[serde(default)]
    pub c0: Option<f64>,
    /// scalar-curvature constant for the `csc` check
    #[serde(default)]
    pub lambda0: Option<f64>,
    /// 1-based ambient plane for `chen`
    #[serde(default)]
    pub plane: Option<(usize, usize)>,
    /// coefficients of the unit field for `chen_ricci`
    #[serde(default, rename = "X")]
    pub x: Option<Vec<String>>,
    pub checks: Vec<String>,
    #[serde(default)]
    pub sample_plan: Option<PlanSpec>,
}

/// Scenario plus everything resolved from it.
pub struct Built {
    pub scenario: Scenario,
    pub preset: Option<String>,
    pub warp: Option<Expr>,
    pub plan: SamplePlan,
    pub geo: InducedGeometry,
}

fn scenario_err(msg: impl Into<String>) -> GeoError {
    GeoError::Scenario(msg.into())
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let sc: Scenario =
        serde_json::from_str(text).map_err(|e| scenario_err(format!("scenario JSON: {e}")))?;
    for c in &sc.checks {
        if !KNOWN_CHECKS.contains(&c.as_str()) {
            return Err(scenario_err(format!(
                "unknown check `{c}` (known: {})",
                KNOWN_CHECKS.join(", ")
            )));
        }
    }
    Ok(sc)
}

fn parse_field(m: usize, coeffs: &[String]) -> Result<VectorField> {
    if coeffs.len() != m {
        return Err(GeoError::ShapeMismatch(format!(
            "vector field has {} coefficients, frame dimension is {m}",
            coeffs.len()
        )));
    }
    let mut out = Vec::with_capacity(m);
    for c in coeffs {
        out.push(parse_expr(c)?);
    }
    Ok(VectorField::from_coeffs(out))
}

fn parse_manifold(sc: &Scenario) -> Result<(FrameManifold, Option<String>, Option<Expr>)> {
    match &sc.manifold {
        ManifoldSpec::Preset(name) => {
            let warp = sc.f.as_deref().map(parse_expr).transpose()?;
            let m = catalog::preset(name, warp.as_ref())?;
            Ok((m, Some(name.clone()), warp))
        }
        ManifoldSpec::Inline { names, metric, structure, deriv_weight } => {
            let dim = names.len();
            let shape_ok = metric.len() == dim
                && deriv_weight.len() == dim
                && structure.len() == dim
                && structure
                    .iter()
                    .all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim));
            if !shape_ok {
                return Err(GeoError::ShapeMismatch(format!(
                    "inline manifold arrays must all have dimension {dim}"
                )));
            }
            let parse_all = |v: &[String]| -> Result<Vec<Expr>> {
                v.iter().map(|s| parse_expr(s)).collect()
            };
            let mut st = Vec::with_capacity(dim);
            for row in structure {
                let mut r = Vec::with_capacity(dim);
                for col in row {
                    r.push(parse_all(col)?);
                }
                st.push(r);
            }
            let m = FrameManifold {
                names: names.clone(),
                metric_diag: parse_all(metric)?,
                structure: st,
                deriv_weight: parse_all(deriv_weight)?,
            };
            Ok((m, None, None))
        }
    }
}

fn parse_connection(cf: &ConnectionField, m: usize) -> Result<ConnectionSpec> {
    match cf.kind.as_str() {
        "lc" => Ok(ConnectionSpec::levi_civita()),
        "ssm" | "ssnm" => {
            let u = cf
                .u
                .as_ref()
                .ok_or_else(|| scenario_err(format!("kind `{}` requires U", cf.kind)))?;
            let u = parse_field(m, u)?;
            Ok(if cf.kind == "ssm" { ConnectionSpec::ssm(u) } else { ConnectionSpec::ssnm(u) })
        }
        "stat" | "stat_dual" => {
            let k = cf
                .k
                .as_ref()
                .ok_or_else(|| scenario_err(format!("kind `{}` requires K", cf.kind)))?;
            let mut table = Vec::with_capacity(m);
            for row in k {
                let mut r = Vec::with_capacity(m);
                for col in row {
                    r.push(col.iter().map(|s| parse_expr(s)).collect::<Result<Vec<_>>>()?);
                }
                table.push(r);
            }
            Ok(if cf.kind == "stat" {
                ConnectionSpec::statistical(table)
            } else {
                ConnectionSpec::statistical_dual(table)
            })
        }
        other => Err(scenario_err(format!(
            "unknown connection kind `{other}` (known: lc, ssm, ssnm, stat, stat_dual)"
        ))),
    }
}

pub fn build(sc: Scenario) -> Result<Built> {
    let (m, preset, warp) = parse_manifold(&sc)?;
    let dim = m.dim();
    let plan = match &sc.sample_plan {
        None => SamplePlan::default_plan(),
        Some(p) => {
            if p.points < 2 {
                return Err(scenario_err("sample_plan.points must be at least 2"));
            }
            let mut plan = SamplePlan::uniform(p.start, p.end, p.points);
            plan.abs_tol = p.abs_tol.unwrap_or(plan.abs_tol);
            plan.rel_tol = p.rel_tol.unwrap_or(plan.rel_tol);
            plan
        }
    };
    let indices: Vec<usize> = sc
        .distribution
        .iter()
        .map(|&i| {
            if i == 0 || i > dim {
                Err(scenario_err(format!("distribution index {i} out of 1..={dim}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<_>>()?;
    let dist = Distribution::new(dim, indices)?;
    let spec = parse_connection(&sc.connection, dim)?;
    let geo = InducedGeometry::new(m, dist, spec, &plan)?;
    Ok(Built { scenario: sc, preset, warp, plan, geo })
}
