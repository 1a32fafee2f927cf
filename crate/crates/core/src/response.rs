//! Mechanical response of corrugated plates: the response tensor χ(ω),
//! mass and viscosity corrections, dissipation, and the Josephson-like
//! lateral forces between two matched corrugations.
//!
//! For a cosine profile the q-integral of the response tensor collapses
//! onto ±k, giving
//!
//! ```text
//! χ∥(ω) = (A d₁²/2) k² [A₊(k,ω) − A₊(k,0)] + (A d₁d₂/2) cos α · k² A₋(k,0)
//! ```
//!
//! with every other component zero. Natural units (ħ = c = 1): lengths in
//! m, masses in m⁻¹, forces in m⁻², viscosities in m⁻².
//!
//! Sign convention: the force on plate 1 is f = χ·r, so the power absorbed
//! by the vacuum is ½ Σ ω Im(c†χc) for r(t) = Σ Re[c e^{−iωt}], and the
//! viscosity is η = Im χ/ω. Both are non-negative.

use crate::kernels::{
    a_minus, a_plus_single, b_constant, classify, remainder, DivergenceInfo, KernelError,
    KernelKind, KernelPoint, Region, Separation,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub type Vec2 = [f64; 2];

/// Relative tolerance for "same wavevector" comparisons.
const MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResponseError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("response diverges in region IIb (K = {:.6}); no finite force can drive this motion", .0.k)]
    Divergent(DivergenceInfo),
    #[error(transparent)]
    Kernel(KernelError),
}

impl From<KernelError> for ResponseError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Divergent(info) => ResponseError::Divergent(info),
            other => ResponseError::Kernel(other),
        }
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ResponseError> {
    Err(ResponseError::InvalidScenario(msg.into()))
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Vec2) -> f64 {
    a[0].hypot(a[1])
}

fn scale(a: Vec2, c: f64) -> Vec2 {
    [a[0] * c, a[1] * c]
}

/// Uniaxial corrugation h(x) = d·cos(k·x + phase).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrugatedPlate {
    pub d: f64,
    pub k: Vec2,
    pub phase: f64,
}

impl CorrugatedPlate {
    pub fn new(d: f64, k: Vec2, phase: f64) -> Result<Self, ResponseError> {
        let p = Self { d, k, phase };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ResponseError> {
        if !(self.d >= 0.0) || !self.d.is_finite() {
            return invalid(format!("amplitude d must be finite and ≥ 0, got {}", self.d));
        }
        if !(self.k_norm() > 0.0) || !self.k_norm().is_finite() {
            return invalid("corrugation wavevector must be nonzero and finite");
        }
        if !self.phase.is_finite() {
            return invalid("phase must be finite");
        }
        Ok(())
    }

    pub fn k_norm(&self) -> f64 {
        norm(self.k)
    }

    pub fn k_hat(&self) -> Vec2 {
        scale(self.k, 1.0 / self.k_norm())
    }

    pub fn height(&self, x: Vec2) -> f64 {
        self.d * (dot(self.k, x) + self.phase).cos()
    }

    // Fourier weights with h(q) = ∫ d²x e^{iq·x} h(x): (d/2)e^{iφ} at −k and
    // (d/2)e^{−iφ} at +k, in units of (2π)²δ².
    fn spectrum(&self, shift: Vec2) -> [(Vec2, Complex64); 2] {
        let phi = self.phase - dot(self.k, shift);
        let c = 0.5 * self.d;
        [
            ([-self.k[0], -self.k[1]], Complex64::from_polar(c, phi)),
            (self.k, Complex64::from_polar(c, -phi)),
        ]
    }
}

/// Lateral motion of plate 1; plate 2 is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Motion {
    Static { r0: Vec2 },
    Uniform { v: Vec2, r0: Vec2 },
    Oscillatory { amplitude: Vec2, omega: f64 },
}

impl Motion {
    fn offset(&self) -> Vec2 {
        match *self {
            Motion::Static { r0 } | Motion::Uniform { r0, .. } => r0,
            Motion::Oscillatory { .. } => [0.0, 0.0],
        }
    }
}

/// One or two corrugated plates and the motion of the first. A second plate
/// with d = 0 stands for a flat plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityScenario {
    pub plate1: CorrugatedPlate,
    pub plate2: Option<CorrugatedPlate>,
    pub h: Separation,
    pub area: f64,
    pub motion: Motion,
}

impl CavityScenario {
    pub fn validate(&self) -> Result<(), ResponseError> {
        self.plate1.validate()?;
        if !(self.area > 0.0) || !self.area.is_finite() {
            return invalid(format!("area must be finite and > 0, got {}", self.area));
        }
        match (&self.plate2, self.h) {
            (None, Separation::Finite(_)) => return invalid("a single plate needs H = infinite"),
            (Some(_), Separation::Infinite) => return invalid("two plates need a finite H"),
            (Some(p), Separation::Finite(h)) => {
                p.validate()?;
                if !(h > 0.0) || !h.is_finite() {
                    return invalid(format!("H must be finite and > 0, got {h}"));
                }
            }
            (None, Separation::Infinite) => {}
        }
        let finite = |v: Vec2| v.iter().all(|x| x.is_finite());
        let ok = match self.motion {
            Motion::Static { r0 } => finite(r0),
            Motion::Uniform { v, r0 } => finite(v) && finite(r0),
            Motion::Oscillatory { amplitude, omega } => finite(amplitude) && omega.is_finite(),
        };
        if !ok {
            return invalid("motion parameters must be finite");
        }
        Ok(())
    }

    /// Plate 2 re-expressed with the wavevector of plate 1, when the two
    /// corrugations match (equal |k|, parallel or antiparallel).
    pub fn matched_partner(&self) -> Option<CorrugatedPlate> {
        let p2 = self.plate2?;
        let (k1, k2) = (self.plate1.k_norm(), p2.k_norm());
        if (k1 - k2).abs() > MATCH_TOL * k1 {
            return None;
        }
        let c = dot(self.plate1.k, p2.k) / (k1 * k2);
        if (c - 1.0).abs() <= MATCH_TOL {
            Some(CorrugatedPlate { k: self.plate1.k, ..p2 })
        } else if (c + 1.0).abs() <= MATCH_TOL {
            // cos(−k·x + φ) = cos(k·x − φ)
            Some(CorrugatedPlate { k: self.plate1.k, phase: -p2.phase, ..p2 })
        } else {
            None
        }
    }

    /// α = k·r₀ − φ₁ + φ₂, the phase mismatch of two matched corrugations.
    pub fn phase_mismatch(&self) -> Result<f64, ResponseError> {
        let p2 = self
            .matched_partner()
            .ok_or_else(|| ResponseError::InvalidScenario("corrugations are not matched".into()))?;
        Ok(dot(self.plate1.k, self.motion.offset()) - self.plate1.phase + p2.phase)
    }

    fn separation(&self) -> Result<f64, ResponseError> {
        self.h
            .finite()
            .ok_or_else(|| ResponseError::InvalidScenario("operation needs two plates".into()))
    }
}

/// χ in the basis (∥ k, ⊥ k), per scenario (area included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseTensor {
    pub components: [[Complex64; 2]; 2],
    pub k_hat: Vec2,
}

impl ResponseTensor {
    pub fn parallel(&self) -> Complex64 {
        self.components[0][0]
    }

    pub fn perpendicular(&self) -> Complex64 {
        self.components[1][1]
    }

    /// Components in the fixed x/y frame.
    pub fn cartesian(&self) -> [[Complex64; 2]; 2] {
        let (c, s) = (self.k_hat[0], self.k_hat[1]);
        let r = [[c, -s], [s, c]];
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        out[i][j] += r[i][a] * self.components[a][b] * r[j][b];
                    }
                }
            }
        }
        out
    }
}

fn point(k: f64, omega: f64, h: Separation) -> Result<KernelPoint, ResponseError> {
    Ok(KernelPoint::new(k, omega, h)?)
}

/// A₊(k,ω) − A₊(k,0), without forming either kernel separately when H is
/// infinite.
pub fn a_plus_difference(k: f64, omega: f64, h: Separation, rel_tol: f64) -> Result<(Complex64, f64), ResponseError> {
    let p = point(k, omega, h)?;
    if let (Region::IIb, Some(hh)) = (classify(&p), h.finite()) {
        let qp = (-p.q2).sqrt();
        let kk = 2.0 * qp * hh / PI;
        return Err(ResponseError::Divergent(DivergenceInfo {
            k: kk,
            q_prime: qp,
            growth_exponent: (kk - 2.0) / hh,
            cutoff: None,
            regularized_magnitude: None,
        }));
    }
    let single = a_plus_single(k, omega).complex() - a_plus_single(k, 0.0).complex();
    match h {
        Separation::Infinite => Ok((single, 0.0)),
        Separation::Finite(hh) => {
            let r1 = remainder(p.q2, hh, KernelKind::Plus, rel_tol)?;
            let r0 = remainder(k * k, hh, KernelKind::Plus, rel_tol)?;
            if !(r1.converged && r0.converged) {
                let best = single + (r1.value - r0.value);
                return Err(KernelError::NonConvergence {
                    best,
                    error_estimate: r1.abs_error_estimate + r0.abs_error_estimate,
                }
                .into());
            }
            Ok((single + (r1.value - r0.value), r1.abs_error_estimate + r0.abs_error_estimate))
        }
    }
}

/// Mechanical response tensor at frequency `omega`.
///
/// The cross term of two matched plates is frequency independent: it is the
/// stiffness of the static lateral force. Region IIb frequencies are an
/// error.
pub fn chi(omega: f64, scenario: &CavityScenario, rel_tol: f64) -> Result<ResponseTensor, ResponseError> {
    scenario.validate()?;
    let p1 = &scenario.plate1;
    let k = p1.k_norm();
    let area = scenario.area;
    let (diff, _) = a_plus_difference(k, omega, scenario.h, rel_tol)?;
    let mut par = diff * (0.5 * area * p1.d * p1.d * k * k);
    if let (Some(p2), Separation::Finite(_)) = (scenario.matched_partner(), scenario.h) {
        if p2.d > 0.0 && p1.d > 0.0 {
            let alpha = scenario.phase_mismatch()?;
            let am = a_minus(&point(k, 0.0, scenario.h)?, rel_tol)?.re();
            par += 0.5 * area * p1.d * p2.d * alpha.cos() * k * k * am;
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(ResponseTensor { components: [[par, zero], [zero, zero]], k_hat: p1.k_hat() })
}

/// A tensor that is diagonal in the (∥ k, ⊥ k) basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnisotropicTensor {
    pub parallel: f64,
    pub perpendicular: f64,
}

impl AnisotropicTensor {
    fn along_k(parallel: f64) -> Self {
        Self { parallel, perpendicular: 0.0 }
    }
}

/// Single-plate mass correction δm∥ = A k⁵ d²/(288π²), δm⊥ = 0.
pub fn mass_single(plate: &CorrugatedPlate, area: f64) -> AnisotropicTensor {
    let k = plate.k_norm();
    AnisotropicTensor::along_k(area * k.powi(5) * plate.d * plate.d / (288.0 * PI * PI))
}

fn check_supersonic(plate: &CorrugatedPlate, omega: f64) -> Result<f64, ResponseError> {
    let k = plate.k_norm();
    if !(omega.abs() > k) {
        return invalid(format!("viscosity needs |ω| > k (ω = {omega}, k = {k})"));
    }
    Ok(k)
}

/// Single-plate viscosity in the ω ≫ k limit, η∥ = A k² d² ω⁴/(720π²).
pub fn viscosity_single(plate: &CorrugatedPlate, area: f64, omega: f64) -> Result<AnisotropicTensor, ResponseError> {
    let k = check_supersonic(plate, omega)?;
    Ok(AnisotropicTensor::along_k(area * k * k * plate.d * plate.d * omega.powi(4) / (720.0 * PI * PI)))
}

/// Single-plate viscosity at any |ω| > k: η∥ = A k² d² (ω² − k²)^{5/2}/(720π²|ω|).
pub fn viscosity_single_exact(
    plate: &CorrugatedPlate,
    area: f64,
    omega: f64,
) -> Result<AnisotropicTensor, ResponseError> {
    let k = check_supersonic(plate, omega)?;
    let w = omega.abs();
    Ok(AnisotropicTensor::along_k(
        area * k * k * plate.d * plate.d * (w * w - k * k).powf(2.5) / (720.0 * PI * PI * w),
    ))
}

/// Double-plate mass correction for kH ≪ 1 against a flat plate:
/// δm∥ = A B k² d²/(96 H³), δm⊥ = 0. B is negative.
pub fn mass_double(plate: &CorrugatedPlate, area: f64, h: f64) -> AnisotropicTensor {
    let k = plate.k_norm();
    AnisotropicTensor::along_k(area * b_constant() * k * k * plate.d * plate.d / (96.0 * h.powi(3)))
}

/// A value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

// Richardson pair of the ω² coefficient of f(ω) − f(0), with f even in ω.
fn richardson<F: Fn(f64) -> Result<f64, ResponseError>>(f: F, w: f64) -> Result<Estimate, ResponseError> {
    let c1 = f(w)? / (w * w);
    let c2 = f(0.5 * w)? / (0.25 * w * w);
    let value = (4.0 * c2 - c1) / 3.0;
    Ok(Estimate { value, error_estimate: (value - c2).abs() })
}

/// ω² coefficient of A₊(k,ω) − A₊(k,0) by finite differences, sampled below
/// the light cone edge (ω ≤ k/2).
pub fn kernel_omega2_coefficient(k: f64, h: Separation, rel_tol: f64) -> Result<Estimate, ResponseError> {
    richardson(|w| Ok(a_plus_difference(k, w, h, rel_tol)?.0.re), 0.5 * k)
}

/// Mass correction δm∥ from the ω² coefficient of χ∥, any kH. `h` is the
/// distance to a flat second plate, or infinite for a lone plate.
pub fn mass_from_chi(
    plate: &CorrugatedPlate,
    area: f64,
    h: Separation,
    rel_tol: f64,
) -> Result<AnisotropicTensor, ResponseError> {
    let scenario = CavityScenario {
        plate1: *plate,
        plate2: h.finite().map(|_| CorrugatedPlate { d: 0.0, ..*plate }),
        h,
        area,
        motion: Motion::Static { r0: [0.0, 0.0] },
    };
    // far below the light cone the O(ω⁴) term of the lone plate is k-relative
    let w = match h {
        Separation::Infinite => 0.02 * plate.k_norm(),
        Separation::Finite(_) => 0.5 * plate.k_norm(),
    };
    let static_part = chi(0.0, &scenario, rel_tol)?.parallel().re;
    let c = richardson(|w| Ok(chi(w, &scenario, rel_tol)?.parallel().re - static_part), w)?;
    Ok(AnisotropicTensor::along_k(c.value))
}

/// A monochromatic component r(t) = Re[c e^{−iωt}] of a trajectory, ω ≥ 0,
/// `amplitude` in the x/y frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub omega: f64,
    pub amplitude: [Complex64; 2],
}

/// Time-averaged power absorbed by the vacuum, ½ Σ ω Im(c†χ(ω)c).
///
/// Lines in region I contribute nothing; a line in region IIb is an error.
pub fn dissipation_rate(
    lines: &[SpectralLine],
    scenario: &CavityScenario,
    rel_tol: f64,
) -> Result<f64, ResponseError> {
    let mut p = 0.0;
    for line in lines {
        if !(line.omega >= 0.0) || !line.omega.is_finite() {
            return invalid(format!("spectral lines need ω ≥ 0, got {}", line.omega));
        }
        if line.omega == 0.0 {
            continue;
        }
        let x = chi(line.omega, scenario, rel_tol)?.cartesian();
        let c = line.amplitude;
        let mut q = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                q += c[i].conj() * x[i][j] * c[j];
            }
        }
        p += 0.5 * line.omega * q.im;
    }
    Ok(p)
}

/// [`dissipation_rate`] for an oscillatory scenario.
pub fn dissipation_for_motion(scenario: &CavityScenario, rel_tol: f64) -> Result<f64, ResponseError> {
    match scenario.motion {
        Motion::Oscillatory { amplitude, omega } => {
            let line = SpectralLine {
                omega: omega.abs(),
                amplitude: [Complex64::new(amplitude[0], 0.0), Complex64::new(amplitude[1], 0.0)],
            };
            dissipation_rate(&[line], scenario, rel_tol)
        }
        _ => invalid("dissipation needs an oscillatory motion"),
    }
}

/// Lateral force F(t) = F₀ k̂ sin(Ωt + α) on plate 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JosephsonForce {
    /// (A/2)·A₋(k,0)·k·d₁d₂, the vector amplitude.
    pub amplitude: Vec2,
    /// Phase mismatch at t = 0.
    pub alpha: f64,
    /// Ω = k·v.
    pub frequency: f64,
}

impl JosephsonForce {
    pub fn at(&self, t: f64) -> Vec2 {
        scale(self.amplitude, (self.frequency * t + self.alpha).sin())
    }
}

fn josephson(scenario: &CavityScenario, rel_tol: f64) -> Result<JosephsonForce, ResponseError> {
    scenario.validate()?;
    scenario.separation()?;
    let p2 = scenario
        .matched_partner()
        .ok_or_else(|| ResponseError::InvalidScenario("Josephson forces need matched corrugations".into()))?;
    let p1 = &scenario.plate1;
    let k = p1.k_norm();
    let am = a_minus(&point(k, 0.0, scenario.h)?, rel_tol)?.re();
    let frequency = match scenario.motion {
        Motion::Uniform { v, .. } => dot(p1.k, v),
        _ => 0.0,
    };
    Ok(JosephsonForce {
        amplitude: scale(p1.k, 0.5 * scenario.area * am * p1.d * p2.d),
        alpha: scenario.phase_mismatch()?,
        frequency,
    })
}

/// Static lateral force between two matched plates,
/// F = (A/2) A₋(k,0) k d₁d₂ sin α.
pub fn josephson_dc(scenario: &CavityScenario, rel_tol: f64) -> Result<Vec2, ResponseError> {
    match scenario.motion {
        Motion::Static { .. } => Ok(josephson(scenario, rel_tol)?.at(0.0)),
        _ => invalid("the static force needs a static motion"),
    }
}

/// Force under uniform sliding r(t) = v t + r₀, oscillating at Ω = k·v.
pub fn josephson_ac(scenario: &CavityScenario, rel_tol: f64) -> Result<JosephsonForce, ResponseError> {
    match scenario.motion {
        Motion::Uniform { .. } => josephson(scenario, rel_tol),
        _ => invalid("the sliding force needs a uniform motion"),
    }
}

/// Static force from the general Fourier-space expression
///
/// ```text
/// f⁰ = −(1/2) ∫ d²q/(2π)² i q A₋(q,0) [h₁(q)h₂(−q) − h₁(−q)h₂(q)]
/// ```
///
/// summed over the delta-function support of the two profiles. Independent
/// of the matched-plate closed form used by [`josephson_dc`].
pub fn static_force_fourier(scenario: &CavityScenario, rel_tol: f64) -> Result<Vec2, ResponseError> {
    scenario.validate()?;
    scenario.separation()?;
    let p2 = scenario
        .plate2
        .ok_or_else(|| ResponseError::InvalidScenario("operation needs two plates".into()))?;
    let h1 = scenario.plate1.spectrum(scenario.motion.offset());
    let h2 = p2.spectrum([0.0, 0.0]);
    let same = |a: Vec2, b: Vec2| norm([a[0] - b[0], a[1] - b[1]]) <= MATCH_TOL * norm(a).max(norm(b));
    let coef = |spec: &[(Vec2, Complex64); 2], q: Vec2| {
        spec.iter().filter(|(p, _)| same(*p, q)).map(|(_, c)| *c).sum::<Complex64>()
    };
    let mut f = [Complex64::new(0.0, 0.0); 2];
    for (q, c1) in h1 {
        let minus_q = [-q[0], -q[1]];
        let bracket = c1 * coef(&h2, minus_q) - coef(&h1, minus_q) * coef(&h2, q);
        if bracket.norm() == 0.0 {
            continue;
        }
        let am = a_minus(&point(norm(q), 0.0, scenario.h)?, rel_tol)?.re();
        for i in 0..2 {
            f[i] += -0.5 * scenario.area * Complex64::i() * q[i] * am * bracket;
        }
    }
    Ok([f[0].re, f[1].re])
}

/// Mass of a slab of given density, thickness and area.
pub fn plate_mass(density: f64, thickness: f64, area: f64) -> f64 {
    density * thickness * area
}

/// Amplitude decay time τ = 2M/η.
pub fn decay_time(mass: f64, eta: f64) -> f64 {
    2.0 * mass / eta
}
