//! Curvature of the warped products over the sphere and Heisenberg frames:
//! induced Ricci tensor and scalar curvature of D = span{∂t, X1, X2} for a
//! few warp functions, under all three connection choices with U = ∂t.

use distgeo::catalog;
use distgeo::connection::{ConnectionSpec, InducedGeometry};
use distgeo::distribution::Distribution;
use distgeo::error::Result;
use distgeo::parser::parse_expr;
use distgeo::sample::SamplePlan;

fn main() -> Result<()> {
    let plan = SamplePlan::default_plan();
    let t0 = plan.points[0];
    for f_text in ["2*t+1", "exp(t)", "(2*t+1)^(2/3)"] {
        let f = parse_expr(f_text)?;
        println!("f = {f_text}:");
        for (name, m) in [
            ("warped-sphere", catalog::warped_sphere(&f)?),
            ("warped-heisenberg", catalog::warped_heisenberg(&f)?),
        ] {
            for spec in [
                ConnectionSpec::levi_civita(),
                ConnectionSpec::ssm(catalog::dt_field(4)),
                ConnectionSpec::ssnm(catalog::dt_field(4)),
            ] {
                let geo = InducedGeometry::new(
                    m.clone(),
                    Distribution::new(4, vec![0, 1, 2])?,
                    spec,
                    &plan,
                )?;
                let ric = geo.ricci_d();
                let diag: Vec<f64> = (0..3)
                    .map(|a| {
                        let i = geo.dist.indices[a];
                        let inv = geo.manifold.inv_norm(i);
                        distgeo::expr::Expr::mul(
                            &ric[a][a],
                            &distgeo::expr::Expr::mul(&inv, &inv),
                        )
                        .eval(t0)
                        .unwrap()
                    })
                    .collect();
                println!(
                    " {name} {}: Ric~diag(t0) = [{:.4}, {:.4}, {:.4}], s^D(t0) = {:.4}, mixed_ricci_flat = {}",
                    geo.spec.kind.label(),
                    diag[0],
                    diag[1],
                    diag[2],
                    geo.s_d().eval(t0)?,
                    geo.is_mixed_ricci_flat(&plan)?,
                );
            }
        }
    }
    Ok(())
}
