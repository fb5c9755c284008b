//! The three-way golden ledger: printed table value, engine value, residual.
//! Matches confirm the engine against the worked examples; mismatches are
//! findings about the printed tables and are listed with both values.

use distgeo::error::Result;
use distgeo::golden;
use distgeo::parser::parse_expr;
use distgeo::sample::SamplePlan;

fn main() -> Result<()> {
    let plan = SamplePlan::default_plan();
    let f = parse_expr("2*t+1")?;
    let mut ledgers = vec![golden::golden_sphere(&plan)?, golden::golden_heisenberg(&plan)?];
    ledgers.extend(golden::golden_all(&f, &plan)?);
    for ledger in &ledgers {
        let mis = ledger.mismatches();
        println!(
            "{}: {} entries, {} match (max residual {:.2e}), {} mismatches",
            ledger.scenario,
            ledger.records.len(),
            ledger.match_count(),
            ledger.max_match_residual(),
            mis.len()
        );
        for r in mis {
            let documented = golden::is_documented_finding(&r.eq, &r.item);
            println!(
                "  {} {}: paper `{}` vs engine `{}` (residual {:.3e}){}",
                r.eq,
                r.item,
                r.paper,
                r.engine,
                r.residual,
                if documented { "" } else { "  <-- UNDOCUMENTED" }
            );
        }
    }
    Ok(())
}
