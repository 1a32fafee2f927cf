//! Region map of the (q, ω) plane as CSV: `q,omega,region,unit_q,unit_omega`.

use crate::output::{num, separation_text, Units, TOOL};
use crate::sweep::linspace;
use crate::CliError;
use casimir_core::kernels::{classify, KernelPoint, Region, Separation};
use casimir_core::units::Dimension;
use std::io::Write;

pub const HEADER: &str = "q,omega,region,unit_q,unit_omega";

/// n×n grid over [0, q_max] × [0, ω_max], ω varying fastest.
pub fn region_grid(h: Separation, q_max: f64, omega_max: f64, n: usize) -> Result<Vec<(f64, f64, Region)>, CliError> {
    if n < 2 {
        return Err(CliError::Validation("n must be at least 2".into()));
    }
    for (name, v) in [("q_max", q_max), ("omega_max", omega_max)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(CliError::Validation(format!("{name} must be > 0, got {v}")));
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for q in linspace(0.0, q_max, n) {
        for w in linspace(0.0, omega_max, n) {
            out.push((q, w, classify(&KernelPoint::new(q, w, h)?)));
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write + ?Sized>(grid: &[(f64, f64, Region)], h: Separation, units: Units, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "# tool: {TOOL}")?;
    writeln!(out, "# command: regions")?;
    writeln!(out, "# units: {}", units.describe())?;
    writeln!(out, "# H: {}", separation_text(h))?;
    writeln!(out, "{HEADER}")?;
    let uq = units.label(Dimension::INVERSE_LENGTH);
    let uw = units.label(Dimension::FREQUENCY);
    for &(q, w, r) in grid {
        writeln!(out, "{},{},{},{uq},{uw}", num(q), num(units.value(w, Dimension::FREQUENCY)), r.label())?;
    }
    Ok(())
}
