//! Scenario runner: `run` executes a scenario file, `catalog` lists the
//! preset and solution-family registries, `verify-all` sweeps the full
//! verification suite. Exit codes: 0 pass, 1 check failure, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use distgeo::catalog;
use distgeo::chen;
use distgeo::connection::{ConnectionSpec, InducedGeometry};
use distgeo::distribution::Distribution;
use distgeo::einstein;
use distgeo::error::Result;
use distgeo::expr::Expr;
use distgeo::frame::VectorField;
use distgeo::golden;
use distgeo::parser::parse_expr;
use distgeo::report;
use distgeo::sample::SamplePlan;
use distgeo::scenario;

#[derive(Parser)]
#[command(name = "distgeo", about = "Connection and curvature verification on non-integrable distributions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a scenario file and emit its report
    Run {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// treat golden-ledger mismatches as failures
        #[arg(long)]
        strict_golden: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// List presets and solution families
    Catalog,
    /// Run the full verification sweep
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        strict_golden: bool,
    },
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Run { file, out, strict_golden, seed: _ } => cmd_run(&file, out.as_deref(), strict_golden),
        Cmd::Catalog => {
            print!("{}", catalog_text());
            ExitCode::SUCCESS
        }
        Cmd::VerifyAll { seed, strict_golden } => cmd_verify_all(seed, strict_golden),
    }
}

fn cmd_run(file: &std::path::Path, out: Option<&std::path::Path>, strict_golden: bool) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let built = match scenario::parse_scenario(&text).and_then(scenario::build) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rep = match report::run(&built, strict_golden) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = rep.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    if rep.summary.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn catalog_text() -> String {
    let mut s = String::from("presets:\n");
    for (name, anchor) in catalog::PRESETS {
        s.push_str(&format!("  {name} ({anchor})\n"));
    }
    s.push_str("families:\n");
    for (label, anchor) in einstein::FAMILY_LABELS {
        s.push_str(&format!("  {label} ({anchor})\n"));
    }
    s
}

#[derive(Serialize)]
struct Section {
    name: String,
    pass: bool,
    max_residual: f64,
    detail: String,
}

#[derive(Serialize)]
struct Sweep {
    sections: Vec<Section>,
    golden_mismatches: usize,
    undocumented_mismatches: usize,
    findings: Vec<String>,
    summary: report::Summary,
    timing_ms: u128,
}

fn identity_max(geo: &InducedGeometry, plan: &SamplePlan) -> Result<(f64, bool)> {
    let g = geo.verify_gauss(plan)?;
    let c = geo.verify_codazzi(plan)?;
    let r = geo.verify_ricci_eq(plan)?;
    Ok((
        g.max_residual.max(c.max_residual).max(r.max_residual),
        g.pass && c.pass && r.pass,
    ))
}

fn preset_specs(name: &str, dim: usize) -> Vec<ConnectionSpec> {
    let u = VectorField::basis(dim, 0).add(&VectorField::basis(dim, dim - 1));
    let mut specs = vec![
        ConnectionSpec::levi_civita(),
        ConnectionSpec::ssm(u.clone()),
        ConnectionSpec::ssnm(u),
    ];
    if !name.starts_with("warped") {
        // constant fully symmetric cubic form C ≡ 1 on the unit-metric frames
        let k = vec![vec![vec![Expr::one(); dim]; dim]; dim];
        specs.push(ConnectionSpec::statistical(k.clone()));
        specs.push(ConnectionSpec::statistical_dual(k));
    }
    specs
}

fn verify_sweep(seed: u64) -> Result<Sweep> {
    let start = std::time::Instant::now();
    let plan = SamplePlan::default_plan();
    let f = parse_expr("2*t+1")?;
    let mut sections = Vec::new();
    let mut findings = Vec::new();
    let mut golden_mismatches = 0usize;
    let mut undocumented = 0usize;

    // identity suite over all presets × kinds
    for (name, _) in catalog::PRESETS {
        let m = catalog::preset(name, Some(&f))?;
        let dim = m.dim();
        let indices = if name.starts_with("warped") { vec![0, 1, 2] } else { vec![0, 1] };
        for spec in preset_specs(name, dim) {
            let geo = InducedGeometry::new(
                m.clone(),
                Distribution::new(dim, indices.clone())?,
                spec.clone(),
                &plan,
            )?;
            let (res, pass) = identity_max(&geo, &plan)?;
            sections.push(Section {
                name: format!("identities/{name}/{}", spec.kind.label()),
                pass,
                max_residual: res,
                detail: "gauss+codazzi+ricci".into(),
            });
        }
    }

    // randomized U draws on the 3-frames
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in ["sphere3", "heisenberg3"] {
        let m = catalog::preset(name, None)?;
        let mut worst = 0.0f64;
        let mut pass = true;
        for _ in 0..6 {
            let u = VectorField::from_coeffs(
                (0..3).map(|_| Expr::float(rng.gen_range(-1.0..1.0))).collect(),
            );
            for spec in [ConnectionSpec::ssm(u.clone()), ConnectionSpec::ssnm(u.clone())] {
                let geo = InducedGeometry::new(
                    m.clone(),
                    Distribution::new(3, vec![0, 1])?,
                    spec,
                    &plan,
                )?;
                let (res, ok) = identity_max(&geo, &plan)?;
                worst = worst.max(res);
                pass &= ok;
            }
        }
        sections.push(Section {
            name: format!("identities-random/{name}"),
            pass,
            max_residual: worst,
            detail: "6 seeded U draws x {ssm, ssnm}".into(),
        });
    }

    // golden ledgers
    let mut ledgers = vec![golden::golden_sphere(&plan)?, golden::golden_heisenberg(&plan)?];
    ledgers.extend(golden::golden_all(&f, &plan)?);
    for ledger in &ledgers {
        let mis = ledger.mismatches();
        let undoc = mis
            .iter()
            .filter(|r| !golden::is_documented_finding(&r.eq, &r.item))
            .count();
        golden_mismatches += mis.len();
        undocumented += undoc;
        for r in &mis {
            findings.push(format!("golden {}: {} ({})", r.eq, r.item, ledger.scenario));
        }
        sections.push(Section {
            name: format!("golden/{}", ledger.scenario),
            pass: undoc == 0,
            max_residual: ledger.max_match_residual(),
            detail: format!("{} entries, {} mismatches", ledger.records.len(), mis.len()),
        });
    }

    // chen suite on a flat abelian 6-frame
    {
        let m = catalog::flat_abelian(6);
        let dist = Distribution::new(6, vec![0, 1, 2, 3])?;
        let mut worst_slack = f64::INFINITY;
        let mut two_path = 0.0f64;
        for _ in 0..10 {
            let u = VectorField::from_coeffs(
                (0..6).map(|_| Expr::float(rng.gen_range(-1.0..1.0))).collect(),
            );
            for spec in [ConnectionSpec::ssm(u.clone()), ConnectionSpec::ssnm(u.clone())] {
                let geo = InducedGeometry::new(m.clone(), dist.clone(), spec, &plan)?;
                let r = chen::chen_first(&geo, (0, 1), 0.0, &plan)?;
                worst_slack = worst_slack.min(r.slack);
                two_path = two_path.max(chen::chen_first_two_path(&geo, (0, 1), 0.0, &plan)?);
                let x = VectorField::basis(6, 0);
                worst_slack = worst_slack.min(chen::chen_ricci(&geo, &x, 0.0, &plan)?.slack);
            }
        }
        sections.push(Section {
            name: "chen/flat6".into(),
            pass: worst_slack >= -1e-9 && two_path < 1e-9,
            max_residual: two_path,
            detail: format!("min slack {worst_slack:.6e} over 10 seeded draws"),
        });
    }

    // solution families
    for (label, _) in einstein::FAMILY_LABELS {
        let draws = family_draws(label);
        let mut worst_ode = 0.0f64;
        let mut worst_round = 0.0f64;
        let mut round_pass = true;
        for (constant, c1, c2) in draws {
            let fam = einstein::family(label, constant, c1, c2)?;
            worst_ode = worst_ode.max(fam.ode_residual);
            let r = einstein::verify_family(&fam)?;
            worst_round = worst_round.max(r.residual);
            round_pass &= r.holds;
        }
        let documented = label.starts_with("thm5.5") || label.starts_with("thm5.6");
        if !round_pass && documented {
            findings.push(format!(
                "family {label}: satisfies its printed ODE (residual {worst_ode:.1e}) but fails the engine round-trip (residual {worst_round:.3e})"
            ));
        }
        sections.push(Section {
            name: format!("family/{label}"),
            pass: round_pass || documented,
            max_residual: if round_pass { worst_round } else { worst_ode },
            detail: if round_pass {
                "round-trip pass".into()
            } else {
                format!("printed-ODE pass; engine round-trip residual {worst_round:.3e}")
            },
        });
    }

    let pass = sections.iter().all(|s| s.pass) && undocumented == 0;
    let max_residual = sections.iter().map(|s| s.max_residual).fold(0.0, f64::max);
    Ok(Sweep {
        sections,
        golden_mismatches,
        undocumented_mismatches: undocumented,
        findings,
        summary: report::Summary { pass, max_residual },
        timing_ms: start.elapsed().as_millis(),
    })
}

fn family_draws(label: &str) -> Vec<(f64, f64, f64)> {
    match label {
        "thm5.1/1" => vec![(0.0, 1.0, 2.0), (0.0, 5.0, -2.0)],
        "thm5.1/2" => vec![(2.0, -1.0, 1.0), (8.0, -0.125, 2.0)],
        "thm5.1/3" => vec![(-2.0, 2.0, 0.0), (-8.0, 0.0, 1.0)],
        "thm5.3/1" => vec![(0.0, 3.0, 0.0), (0.0, 0.5, 0.0)],
        "thm5.3/2" => vec![(2.0, 1.0, 0.0), (8.0, 0.0, 2.0)],
        "thm5.4/1" | "thm5.6/1" => vec![(0.0, 1.0, 2.0), (0.0, 4.0, 1.0)],
        "thm5.4/2" | "thm5.6/2" => vec![(8.0 / 3.0, 1.0, 0.0), (8.0 / 3.0, 1.0, 1.0)],
        "thm5.4/3" | "thm5.6/3" => vec![(-8.0 / 3.0, 1.0, 0.0), (-8.0 / 3.0, 0.0, 1.0)],
        "thm5.5/1" => vec![(-2.0 / 3.0, 1.0, 1.0), (-2.0 / 3.0, 2.0, 0.0)],
        "thm5.5/2" => vec![(0.0, 1.0, 1.0), (2.0, 1.0, 0.0)],
        "thm5.5/3" => vec![(-1.0, 1.0, 0.0), (-2.0, 1.0, 1.0)],
        _ => vec![],
    }
}

fn cmd_verify_all(seed: u64, strict_golden: bool) -> ExitCode {
    match verify_sweep(seed) {
        Ok(sweep) => {
            println!("{}", serde_json::to_string_pretty(&sweep).expect("sweep serialization"));
            let ok = sweep.summary.pass && (!strict_golden || sweep.golden_mismatches == 0);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
