//! Kernel sweeps over a (q, ω) grid, written as CSV.
//!
//! Header (fixed):
//!
//! ```text
//! q,omega,Q2,region,re_A,im_A,err,method,kernel,K,unit_q,unit_omega,unit_Q2,unit_A
//! ```
//!
//! preceded by `#` metadata lines. Region IIb rows leave `re_A`, `im_A` and
//! `err` empty and fill `K = 2Q'H/π`; every other row leaves `K` empty.

use crate::output::{num, separation_text, Units, KERNEL, TOOL};
use crate::CliError;
use casimir_core::kernels::{classify, evaluate, KernelError, KernelKind, KernelMethod, KernelPoint, Region, Separation};
use casimir_core::units::Dimension;
use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;

pub const HEADER: &str = "q,omega,Q2,region,re_A,im_A,err,method,kernel,K,unit_q,unit_omega,unit_Q2,unit_A";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelChoice {
    APlus,
    AMinus,
    Both,
}

impl KernelChoice {
    fn kinds(self) -> &'static [KernelKind] {
        match self {
            KernelChoice::APlus => &[KernelKind::Plus],
            KernelChoice::AMinus => &[KernelKind::Minus],
            KernelChoice::Both => &[KernelKind::Plus, KernelKind::Minus],
        }
    }
}

fn kind_label(k: KernelKind) -> &'static str {
    match k {
        KernelKind::Plus => "A+",
        KernelKind::Minus => "A-",
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub q_grid: Vec<f64>,
    pub omega_grid: Vec<f64>,
    pub h: Separation,
    pub kernel: KernelChoice,
    pub rel_tol: f64,
}

fn check_grid(name: &str, g: &[f64]) -> Result<(), CliError> {
    if g.is_empty() {
        return Err(CliError::Validation(format!("{name} grid is empty")));
    }
    if g.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Validation(format!("{name} grid has non-finite entries")));
    }
    if g.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CliError::Validation(format!("{name} grid must be strictly increasing")));
    }
    Ok(())
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        check_grid("q", &self.q_grid)?;
        check_grid("omega", &self.omega_grid)?;
        if self.q_grid[0] < 0.0 {
            return Err(CliError::Validation("q must be ≥ 0".into()));
        }
        crate::output::check_tolerance(self.rel_tol)
    }
}

/// Evenly spaced grid including both ends.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => (0..n).map(|i| start + (stop - start) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value { value: Complex64, error: f64, method: KernelMethod },
    Divergent { k: f64 },
    NonConverged { best: Complex64, error: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub q: f64,
    pub omega: f64,
    pub q2: f64,
    pub region: Region,
    pub kernel: KernelKind,
    pub outcome: Outcome,
}

fn eval_point(q: f64, omega: f64, h: Separation, kind: KernelKind, rel_tol: f64) -> Result<SweepRow, CliError> {
    let p = KernelPoint::new(q, omega, h)?;
    let outcome = match evaluate(&p, kind, rel_tol) {
        Ok(v) => match (v.value, v.divergence) {
            (Some(value), _) => Outcome::Value { value, error: v.error_estimate, method: v.method },
            (None, Some(info)) => Outcome::Divergent { k: info.k },
            (None, None) => unreachable!("kernel value without value or divergence data"),
        },
        Err(KernelError::NonConvergence { best, error_estimate }) => Outcome::NonConverged { best, error: error_estimate },
        Err(e) => return Err(e.into()),
    };
    Ok(SweepRow { q, omega, q2: p.q2, region: classify(&p), kernel: kind, outcome })
}

/// Evaluates the grid in parallel; rows come back in grid order (q outer,
/// ω inner, kernel innermost).
pub fn run(spec: &SweepSpec, pool: &rayon::ThreadPool) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let mut points = Vec::new();
    for &q in &spec.q_grid {
        for &w in &spec.omega_grid {
            for &kind in spec.kernel.kinds() {
                points.push((q, w, kind));
            }
        }
    }
    pool.install(|| {
        points
            .par_iter()
            .map(|&(q, w, kind)| eval_point(q, w, spec.h, kind, spec.rel_tol))
            .collect::<Result<Vec<_>, _>>()
    })
}

pub fn any_nonconverged(rows: &[SweepRow]) -> bool {
    rows.iter().any(|r| matches!(r.outcome, Outcome::NonConverged { .. }))
}

pub fn write_csv<W: Write + ?Sized>(rows: &[SweepRow], spec: &SweepSpec, units: Units, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "# tool: {TOOL}")?;
    writeln!(out, "# command: sweep")?;
    writeln!(out, "# units: {}", units.describe())?;
    writeln!(out, "# rel_tol: {}", num(spec.rel_tol))?;
    writeln!(out, "# H: {}", separation_text(spec.h))?;
    writeln!(out, "{HEADER}")?;
    let uq = units.label(Dimension::INVERSE_LENGTH);
    let uw = units.label(Dimension::FREQUENCY);
    let uq2 = units.label(Dimension::INVERSE_LENGTH * Dimension::INVERSE_LENGTH);
    let ua = units.label(KERNEL);
    for r in rows {
        let (re, im, err, method, k) = match r.outcome {
            Outcome::Value { value, error, method } => (
                num(units.value(value.re, KERNEL)),
                num(units.value(value.im, KERNEL)),
                num(units.value(error, KERNEL)),
                method.label(),
                String::new(),
            ),
            Outcome::Divergent { k } => (String::new(), String::new(), String::new(), "divergent", num(k)),
            Outcome::NonConverged { best, error } => (
                num(units.value(best.re, KERNEL)),
                num(units.value(best.im, KERNEL)),
                num(units.value(error, KERNEL)),
                "nonconverged",
                String::new(),
            ),
        };
        writeln!(
            out,
            "{},{},{},{},{re},{im},{err},{method},{},{k},{uq},{uw},{uq2},{ua}",
            num(r.q),
            num(units.value(r.omega, Dimension::FREQUENCY)),
            num(r.q2),
            r.region.label(),
            kind_label(r.kernel),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(0.0, std::f64::consts::PI, 5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[4], std::f64::consts::PI);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let mut s = SweepSpec { q_grid: vec![], omega_grid: vec![1.0], h: Separation::Finite(1.0), kernel: KernelChoice::APlus, rel_tol: 1e-8 };
        assert!(s.validate().is_err());
        s.q_grid = vec![1.0, 1.0];
        assert!(s.validate().is_err());
        s.q_grid = vec![1.0, 2.0];
        assert!(s.validate().is_ok());
        s.rel_tol = 1e-13;
        assert!(s.validate().is_err());
    }
}
