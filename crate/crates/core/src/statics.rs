//! Static Casimir energy and force between flat plates, and the
//! capillary-wave corrections for a fluid surface under a plate.
//!
//! Natural units throughout: energies per area and surface tensions are in
//! m⁻³, forces in m⁻², areas in m².

use crate::kernels::b_constant;
use crate::quad::{integrate_semi_infinite_abs, QuadError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StaticsError {
    #[error("separation must be finite and positive, got {0}")]
    BadSeparation(f64),
    #[error("{0} must be finite and positive, got {1}")]
    BadParameter(&'static str, f64),
    #[error("energy quadrature did not converge (estimate {value}, error {error:.3e})")]
    NonConvergence { value: f64, error: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

fn check_h(h: f64) -> Result<(), StaticsError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(StaticsError::BadSeparation(h))
    }
}

/// An energy with the quadrature error attached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// −ln Z/(A T) for two plates at separation `h`, metric component g⁰⁰:
///
/// ```text
/// ln Z = −A T ∫ d³p/(2π)³ ln(1 − exp[−2H (g⁰⁰p₀² + p²)^{1/2}])
/// ```
///
/// Rescaling p₀ makes the integrand isotropic, leaving (g⁰⁰)^{−1/2} times
/// the radial integral (1/2π²) ∫ p² ln(1 − e^{−2Hp}) dp.
pub fn free_energy_density(h: f64, g00: f64, rel_tol: f64) -> Result<Estimate, StaticsError> {
    check_h(h)?;
    if !(g00 > 0.0) || !g00.is_finite() {
        return Err(StaticsError::BadParameter("g00", g00));
    }
    let r = integrate_semi_infinite_abs(
        |p: f64| p * p * (-(-2.0 * h * p).exp()).ln_1p(),
        0.0,
        1.0 / (2.0 * h),
        rel_tol,
        0.0,
    )?;
    let scale = 1.0 / (2.0 * PI * PI * g00.sqrt());
    if !r.converged {
        return Err(StaticsError::NonConvergence { value: scale * r.value, error: scale * r.abs_error_estimate });
    }
    Ok(Estimate { value: scale * r.value, error_estimate: scale * r.abs_error_estimate })
}

/// Casimir energy per area from the momentum integral; equals
/// −π²/(720 H³).
pub fn casimir_energy_per_area(h: f64, rel_tol: f64) -> Result<Estimate, StaticsError> {
    free_energy_density(h, 1.0, rel_tol)
}

/// −π²/(720 H³), the closed form.
pub fn casimir_energy_closed_form(h: f64) -> f64 {
    -PI * PI / (720.0 * h.powi(3))
}

/// Attractive force −(π²/240)·A/H⁴ between plates of area `area`.
pub fn casimir_force(h: f64, area: f64) -> Result<f64, StaticsError> {
    check_h(h)?;
    if !(area > 0.0) || !area.is_finite() {
        return Err(StaticsError::BadParameter("area", area));
    }
    Ok(-PI * PI / 240.0 * area / h.powi(4))
}

/// −d(E·A)/dH by a central difference of [`casimir_energy_per_area`].
pub fn casimir_force_from_energy(h: f64, area: f64, rel_tol: f64) -> Result<f64, StaticsError> {
    check_h(h)?;
    let dh = 1e-3 * h;
    let up = casimir_energy_per_area(h + dh, rel_tol)?.value;
    let down = casimir_energy_per_area(h - dh, rel_tol)?.value;
    Ok(-area * (up - down) / (2.0 * dh))
}

/// Corrections to a fluid surface facing a plate at distance H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapillaryResult {
    /// δρ = B/(48H³), surface mass density (ħ/c restored: ħB/(48cH³)).
    pub delta_rho: f64,
    /// δσ = B/(48H³), surface tension (ħc restored: ħcB/(48H³)).
    pub delta_sigma: f64,
    /// δc_s/c_s⁰ = B/(96σH³).
    pub relative_speed_shift: f64,
    /// The B used.
    pub b: f64,
}

/// Capillary corrections for separation `h` and bare surface tension
/// `sigma` (m⁻³ in natural units).
pub fn capillary_corrections(h: f64, sigma: f64) -> Result<CapillaryResult, StaticsError> {
    capillary_corrections_with_b(h, sigma, b_constant())
}

/// [`capillary_corrections`] with an explicit B.
pub fn capillary_corrections_with_b(h: f64, sigma: f64, b: f64) -> Result<CapillaryResult, StaticsError> {
    check_h(h)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(StaticsError::BadParameter("sigma", sigma));
    }
    let h3 = h.powi(3);
    Ok(CapillaryResult {
        delta_rho: b / (48.0 * h3),
        delta_sigma: b / (48.0 * h3),
        relative_speed_shift: b / (96.0 * sigma * h3),
        b,
    })
}
