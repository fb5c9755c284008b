//! Scenario plumbing without the CLI: parse a JSON scenario, build the
//! geometry, run its checks, and print the report.

use distgeo::error::Result;
use distgeo::report;
use distgeo::scenario;

const SCENARIO: &str = r#"{
    "manifold": "sphere3",
    "distribution": [1, 2],
    "connection": {"kind": "ssm", "U": ["1", "0", "1"]},
    "checks": ["gauss", "codazzi", "ricci", "golden"]
}"#;

fn main() -> Result<()> {
    let built = scenario::build(scenario::parse_scenario(SCENARIO)?)?;
    let rep = report::run(&built, false)?;
    for c in &rep.checks {
        println!(
            "{}: pass = {}, max residual = {:.2e} ({})",
            c.name, c.pass, c.max_residual, c.detail
        );
    }
    let mismatches: Vec<_> = rep.golden.iter().filter(|g| !g.matches).collect();
    println!(
        "golden ledger: {} entries, {} mismatches",
        rep.golden.len(),
        mismatches.len()
    );
    for g in mismatches {
        println!("  {} {}: paper `{}` vs engine `{}`", g.eq, g.item, g.paper, g.engine);
    }
    println!("summary pass = {}", rep.summary.pass);
    Ok(())
}
