//! Sector selection vs exhaustive scanning on the H2 fixture.
//!
//! With k tapered qubits there are 2^k eigensectors; picking the right one
//! from the Hartree-Fock occupation avoids solving all of them.
//!
//! Run with: cargo run --example sector_scan

use std::path::Path;

use symtaper::pipeline::{run_taper_pipeline, RunConfig};
use symtaper::taper::{sector_scan, SectorValue};

fn main() -> symtaper::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let cfg =
        RunConfig::new(fixtures.join("h2.fcidump")).with_symmetries(fixtures.join("h2_sym.json"));
    let art = run_taper_pipeline(&cfg)?;

    println!(
        "selected sector (HF occupation): {:?}",
        art.plan.sector_values()?
    );

    let all_unknown = vec![SectorValue::Unknown; art.plan.n_tapered()];
    let scan = sector_scan(&art.transformed, &art.plan, &all_unknown, 0)?;
    println!("exhaustive scan over {} sectors:", scan.entries.len());
    for entry in &scan.entries {
        let marks: Vec<String> = entry.sector.iter().map(|v| format!("{v:+}")).collect();
        println!(
            "  [{}]  min eigenvalue {:+.9} Ha",
            marks.join(" "),
            entry.energy
        );
    }
    println!(
        "argmin sector {:?} at {:+.9} Ha",
        scan.best.sector, scan.best.energy
    );
    Ok(())
}
