//! Deterministic text reports. Qubit and orbital indices are printed 1-based
//! here; everything internal stays 0-based.

use std::io::{self, Write};

use crate::pauli::{Pauli, PauliSum};
use crate::taper::{ScanOutcome, SectorValue, TaperingPlan};

/// Everything the taper report needs beyond the plan and the reduced sum.
#[derive(Debug, Clone, Default)]
pub struct ReportMeta {
    pub input: String,
    pub mapping: String,
    pub n_qubits_before: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    /// free-form context lines (point-group summary, rotation summary)
    pub preamble: Vec<String>,
    /// one origin label per generator, aligned with the plan
    pub origins: Vec<String>,
    /// dimension of the generator span reachable by the kernel method alone
    pub kernel_reachable: usize,
    pub sector_source: String,
    pub scan: Option<ScanOutcome>,
}

fn sector_str(s: &SectorValue) -> String {
    match s {
        SectorValue::Known(v) => format!("{v:+}"),
        SectorValue::Unknown => "?".into(),
    }
}

fn partner_char(p: Pauli) -> char {
    p.label()
}

/// Write the tapering report: generators, chosen qubits, sector eigenvalues,
/// qubit counts, per-origin breakdown, and the reduced Hamiltonian in the
/// Pauli-sum text format.
pub fn write_report<W: Write>(
    w: &mut W,
    meta: &ReportMeta,
    plan: &TaperingPlan,
    reduced: &PauliSum,
) -> io::Result<()> {
    writeln!(w, "symtaper report")?;
    writeln!(w, "===============")?;
    writeln!(w, "input: {}", meta.input)?;
    writeln!(w, "mapping: {}", meta.mapping)?;
    writeln!(w, "qubits before: {}", meta.n_qubits_before)?;
    writeln!(
        w,
        "electrons: n_alpha={} n_beta={}{}",
        meta.n_alpha,
        meta.n_beta,
        if meta.n_alpha != meta.n_beta {
            " [open shell: HF-occupation sector selection is experimental]"
        } else {
            ""
        }
    )?;
    for line in &meta.preamble {
        writeln!(w, "{line}")?;
    }

    let k = plan.n_tapered();
    writeln!(w, "symmetry generators: {k}")?;
    for i in 0..k {
        writeln!(
            w,
            "  g{}: {}  q={} partner={} sector={} origin={}",
            i + 1,
            plan.generators[i].label(),
            plan.qubit_choices[i] + 1,
            partner_char(plan.single_paulis[i]),
            sector_str(&plan.sector[i]),
            meta.origins.get(i).map(String::as_str).unwrap_or("kernel"),
        )?;
    }
    writeln!(w, "sector selection: {}", meta.sector_source)?;
    if let Some(scan) = &meta.scan {
        writeln!(w, "sector scan ({} sectors):", scan.entries.len())?;
        for e in &scan.entries {
            let marks: Vec<String> = e.sector.iter().map(|v| format!("{v:+}")).collect();
            writeln!(w, "  [{}]  min-eig {:.12}", marks.join(" "), e.energy)?;
        }
    }

    writeln!(w, "qubits after: {}", meta.n_qubits_before - k)?;
    writeln!(
        w,
        "tapered: {k} (kernel-reachable {}, point-group-extra {})",
        meta.kernel_reachable,
        k - meta.kernel_reachable
    )?;
    writeln!(w, "reduced hamiltonian ({} terms):", reduced.n_terms())?;
    write!(w, "{}", reduced.to_text())?;
    Ok(())
}

/// Render to a string (the CLI prints this; tests diff it byte-for-byte).
pub fn report_string(meta: &ReportMeta, plan: &TaperingPlan, reduced: &PauliSum) -> String {
    let mut buf = Vec::new();
    write_report(&mut buf, meta, plan, reduced).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("report is UTF-8")
}
