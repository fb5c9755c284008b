//! Example 1 of the worked examples: the unit-metric sphere frame with
//! distributions D¹ = span{X1, X2} and D² = span{X1, X3}, comparing the
//! Levi-Civita, semi-symmetric metric, and semi-symmetric non-metric
//! geometries induced on them.

use distgeo::catalog;
use distgeo::connection::{ConnectionSpec, InducedGeometry};
use distgeo::distribution::Distribution;
use distgeo::error::Result;
use distgeo::frame::VectorField;
use distgeo::sample::SamplePlan;

fn show(name: &str, v: &VectorField, plan: &SamplePlan) {
    let coeffs: Vec<f64> = v
        .coeffs
        .iter()
        .map(|c| c.eval(plan.points[0]).unwrap())
        .collect();
    println!("  {name} = {coeffs:?}");
}

fn main() -> Result<()> {
    let plan = SamplePlan::default_plan();
    let m = catalog::sphere3();
    let u = VectorField::basis(3, 0).add(&VectorField::basis(3, 2));

    for (dist_name, indices) in [("D1 = {X1,X2}", vec![0, 1]), ("D2 = {X1,X3}", vec![0, 2])] {
        println!("{dist_name}:");
        for spec in [
            ConnectionSpec::levi_civita(),
            ConnectionSpec::ssm(u.clone()),
            ConnectionSpec::ssnm(u.clone()),
        ] {
            let geo = InducedGeometry::new(
                m.clone(),
                Distribution::new(3, indices.clone())?,
                spec,
                &plan,
            )?;
            let kind = geo.spec.kind.label();
            let (i, j) = (indices[0], indices[1]);
            let (x, y) = (VectorField::basis(3, i), VectorField::basis(3, j));
            println!(" {kind}:");
            show("nabla^D_X Y", &geo.nabla_d(&x, &y), &plan);
            show("B(X,Y)", &geo.b(&x, &y), &plan);
            show("H", &geo.mean_curvature(), &plan);
            show("R^D(X,Y)X", &geo.curvature_d(&x, &y, &x), &plan);
            println!(
                "  K = {:.4}, tau = {:.4}",
                geo.sectional(i, j)?.eval(plan.points[0])?,
                geo.scalar_tau().eval(plan.points[0])?,
            );
        }
    }
    Ok(())
}
