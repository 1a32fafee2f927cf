//! Unit handling and number formatting at the output edge.

use crate::CliError;
use casimir_core::kernels::Separation;
use casimir_core::units::{from_natural, unit_label, Dimension, Quantity, UnitMode, UnitSystem};

/// Dimension of A± once ħc is restored (J/m⁴ in SI, m⁻⁵ natural).
pub const KERNEL: Dimension = Dimension::new(-2, -2, 1);
/// Dimension of χ (force per displacement).
pub const STIFFNESS: Dimension = Dimension::new(0, -2, 1);

pub const TOOL: &str = concat!("dyncasimir ", env!("CARGO_PKG_VERSION"));

/// Converts natural-unit results for display.
#[derive(Debug, Clone, Copy)]
pub struct Units {
    pub mode: UnitMode,
}

impl Units {
    pub fn new(si: bool) -> Self {
        Self { mode: if si { UnitMode::SI } else { UnitMode::Natural } }
    }

    pub fn value(&self, x: f64, dim: Dimension) -> f64 {
        match self.mode {
            UnitMode::Natural => x,
            UnitMode::SI => from_natural(Quantity::natural(x, dim), &UnitSystem::si())
                .expect("output dimensions are well formed")
                .value,
        }
    }

    pub fn label(&self, dim: Dimension) -> String {
        unit_label(dim, self.mode)
    }

    pub fn describe(&self) -> &'static str {
        match self.mode {
            UnitMode::Natural => "natural (hbar = c = 1, lengths in m)",
            UnitMode::SI => "SI",
        }
    }
}

/// Shortest round-trip representation; identical inputs give identical text.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn parse_separation(s: &str) -> Result<Separation, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinite" | "infinity" => Ok(Separation::Infinite),
        t => {
            let h: f64 = t.parse().map_err(|_| CliError::Validation(format!("H must be a number or 'inf', got {s:?}")))?;
            if !(h > 0.0) || !h.is_finite() {
                return Err(CliError::Validation(format!("H must be > 0, got {h}")));
            }
            Ok(Separation::Finite(h))
        }
    }
}

pub fn separation_text(h: Separation) -> String {
    match h {
        Separation::Finite(h) => num(h),
        Separation::Infinite => "inf".into(),
    }
}

pub fn check_tolerance(rel_tol: f64) -> Result<(), CliError> {
    if rel_tol > 1e-12 && rel_tol < 1e-2 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("tolerance must lie in (1e-12, 1e-2), got {rel_tol}")))
    }
}

/// Thread pool with `jobs` workers (all cores when `None`).
pub fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Validation("--jobs must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Validation(e.to_string()))
}
