//! Response kernels A±(q, ω; H) of the two-plate cavity.
//!
//! ```text
//! A±(q, ω; H) = π²/(64 H⁵) ∫_{−∞}^{∞} ds  sinc(a s) g±(s),   a = 2√Q² H/π
//! ```
//!
//! with Q² = q² − ω². The 4/s⁶ part of g₊ is H-independent and gives the
//! single-plate kernel A₊^∞ in closed form; what is left (the remainder) is
//! evaluated by quadrature. The remainder still carries a −4/(15 s²) term at
//! the origin, which is handled as a finite part: the cutoff-dependent
//! constant it would produce is dropped.
//!
//! Below the light cone (Q² < 0) the weight becomes sinh(a′s)/(a′s). For
//! a′ = 2Q′H/π ≤ 2 the integral converges against the e^{−2s} tail of
//! g± − 1/s⁶; the 1/s⁶ piece is continued analytically through its finite
//! part on [0, 1], keeping the real branch. Past a′ = 2 the kernels diverge
//! and only a cutoff-regularized estimate is offered.
//!
//! [`a_pm_residue_sum`] evaluates the same integrals by closing the contour
//! in the upper half plane, and serves as an independent check.

use crate::integrands::{
    g_minus, g_plus_regular, g_plus_subtracted, g_complex, g_tail_scaled, sinc, GKind,
};
use crate::quad::{
    integrate, integrate_semi_infinite_abs, integrate_semi_infinite_oscillatory,
    residue_numeric, wynn_epsilon, QuadError, QuadResult,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

/// Relative tolerance used for region boundaries.
pub const BOUNDARY_REL_TOL: f64 = 1e-12;

/// Default relative tolerance for kernel quadratures.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Default number of poles summed by [`a_pm_residue_sum`].
pub const DEFAULT_MAX_POLES: usize = 400;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("invalid kernel point: {0}")]
    InvalidPoint(String),
    #[error("kernel diverges in region IIb (K = {:.6} > 2); use a_divergence_info", .0.k)]
    Divergent(DivergenceInfo),
    #[error("operation needs region IIb, point is in {0}")]
    NotDivergent(Region),
    #[error("operation not defined in region {0}")]
    WrongRegion(Region),
    #[error("quadrature did not converge: best estimate {best} (error ≈ {error_estimate:.3e})")]
    NonConvergence { best: Complex64, error_estimate: f64 },
    #[error("residue terms do not decrease after {terms} poles")]
    ResidueDivergence { terms: usize },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Plate separation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Separation {
    Finite(f64),
    Infinite,
}

impl Separation {
    pub fn finite(self) -> Option<f64> {
        match self {
            Separation::Finite(h) => Some(h),
            Separation::Infinite => None,
        }
    }
}

/// An evaluation site. All fields in natural units (meters and inverse meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub q: f64,
    pub omega: f64,
    pub h: Separation,
    pub q2: f64,
}

impl KernelPoint {
    pub fn new(q: f64, omega: f64, h: Separation) -> Result<Self, KernelError> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(KernelError::InvalidPoint(format!("q must be finite and ≥ 0, got {q}")));
        }
        if !omega.is_finite() {
            return Err(KernelError::InvalidPoint(format!("omega must be finite, got {omega}")));
        }
        if let Separation::Finite(h) = h {
            if !(h > 0.0) || !h.is_finite() {
                return Err(KernelError::InvalidPoint(format!("H must be finite and > 0, got {h}")));
            }
        }
        Ok(Self { q, omega, h, q2: q * q - omega * omega })
    }

    /// Shorthand for a finite separation.
    pub fn with_h(q: f64, omega: f64, h: f64) -> Result<Self, KernelError> {
        Self::new(q, omega, Separation::Finite(h))
    }

    pub fn region(&self) -> Region {
        classify(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    I,
    IIa,
    IIb,
    BoundaryLightCone,
    BoundaryFirstMode,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::IIa => "IIa",
            Region::IIb => "IIb",
            Region::BoundaryLightCone => "boundary-light-cone",
            Region::BoundaryFirstMode => "boundary-first-mode",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    Plus,
    Minus,
}

impl KernelKind {
    fn g_kind(self) -> GKind {
        match self {
            KernelKind::Plus => GKind::Plus,
            KernelKind::Minus => GKind::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelMethod {
    ClosedForm,
    SubtractedQuadrature,
    ResidueSum,
    Divergent,
}

impl KernelMethod {
    pub fn label(self) -> &'static str {
        match self {
            KernelMethod::ClosedForm => "closed-form",
            KernelMethod::SubtractedQuadrature => "subtracted-quadrature",
            KernelMethod::ResidueSum => "residue-sum",
            KernelMethod::Divergent => "divergent",
        }
    }
}

/// Growth data for a kernel in region IIb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceInfo {
    /// K = 2Q′H/π, strictly above 2.
    pub k: f64,
    /// Q′ = √(−Q²).
    pub q_prime: f64,
    /// (K − 2)/H, the rate at which the integrand grows with the cutoff.
    pub growth_exponent: f64,
    /// Cutoff L of the regularized estimate, when one was requested.
    pub cutoff: Option<f64>,
    /// exp[(K−2)L/H]/[K(L/H)³], the leading size of the cutoff-regularized
    /// kernel in units of π²/(64H⁵). Grows without bound with L.
    pub regularized_magnitude: Option<f64>,
}

/// A kernel value in natural units (length⁻⁵). `value` is absent exactly
/// when `method` is [`KernelMethod::Divergent`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: Option<Complex64>,
    pub error_estimate: f64,
    pub method: KernelMethod,
    pub region: Region,
    pub divergence: Option<DivergenceInfo>,
}

impl KernelValue {
    fn finite(value: Complex64, error_estimate: f64, method: KernelMethod, region: Region) -> Self {
        Self { value: Some(value), error_estimate, method, region, divergence: None }
    }

    fn divergent(info: DivergenceInfo) -> Self {
        Self {
            value: None,
            error_estimate: f64::INFINITY,
            method: KernelMethod::Divergent,
            region: Region::IIb,
            divergence: Some(info),
        }
    }

    /// The value, NaN for a divergent kernel.
    pub fn complex(&self) -> Complex64 {
        self.value.unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    pub fn re(&self) -> f64 {
        self.complex().re
    }

    pub fn im(&self) -> f64 {
        self.complex().im
    }
}

fn near(x: f64, target: f64, scale: f64) -> bool {
    (x - target).abs() <= BOUNDARY_REL_TOL * scale
}

/// Region of the (q, ω) plane a point belongs to.
///
/// With H infinite there is no first-mode threshold, and every point below
/// the light cone is tagged IIa.
pub fn classify(p: &KernelPoint) -> Region {
    let cone_scale = (p.q * p.q).max(p.omega * p.omega);
    if p.q2 == 0.0 || near(p.q2, 0.0, cone_scale) {
        return Region::BoundaryLightCone;
    }
    if p.q2 > 0.0 {
        return Region::I;
    }
    let Some(h) = p.h.finite() else {
        return Region::IIa;
    };
    let mode = -(PI / h).powi(2);
    if near(p.q2, mode, mode.abs()) {
        Region::BoundaryFirstMode
    } else if p.q2 > mode {
        Region::IIa
    } else {
        Region::IIb
    }
}

/// Single-plate kernel A₊^∞(q, ω): −Q⁵/(360π²) above the light cone and
/// i·sgn(ω)|Q²|^{5/2}/(360π²) below it.
pub fn a_plus_single(q: f64, omega: f64) -> KernelValue {
    let q2 = q * q - omega * omega;
    let c = 1.0 / (360.0 * PI * PI);
    let (value, region) = if q2 > 0.0 {
        (Complex64::new(-c * q2.powf(2.5), 0.0), Region::I)
    } else if q2 < 0.0 {
        (Complex64::new(0.0, omega.signum() * c * (-q2).powf(2.5)), Region::IIa)
    } else {
        (Complex64::new(0.0, 0.0), Region::BoundaryLightCone)
    };
    KernelValue::finite(value, 0.0, KernelMethod::ClosedForm, region)
}

/// Single-plate kernel A₋^∞, identically zero.
pub fn a_minus_single() -> KernelValue {
    KernelValue::finite(Complex64::new(0.0, 0.0), 0.0, KernelMethod::ClosedForm, Region::I)
}

/// π²/(64 H⁵).
pub fn prefactor(h: f64) -> f64 {
    PI * PI / (64.0 * h.powi(5))
}

/// Finite part of ∫₀^{s₁} w(s) s^{−m} ds for w(s) = Σ c₂ₙ s^{2n}, c₂ₙ = α^n/(2n+1)!,
/// i.e. sin(as)/(as) with α = −a² or sinh(a′s)/(a′s) with α = a′².
pub fn finite_part_power(alpha: f64, s1: f64, m: i32) -> f64 {
    let mut sum = 0.0;
    let mut coef = 1.0; // α^n/(2n+1)!
    for n in 0..200 {
        let p = 2 * n - m + 1;
        let term = coef * s1.powi(p) / p as f64;
        sum += term;
        if n > m && term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        coef *= alpha / ((2 * n + 2) as f64 * (2 * n + 3) as f64);
    }
    sum
}

// sinh(b s)/(b s)·e^{−2s}, finite for b ≤ 2 at any s ≥ 0
fn sinhc_damped(b: f64, s: f64) -> f64 {
    let x = b * s;
    let ratio = if x < 1e-8 { 1.0 - x } else { -(-2.0 * x).exp_m1() / (2.0 * x) };
    ((b - 2.0) * s).exp() * ratio
}

/// The H-dependent remainder R in natural units, real by construction:
/// A₊ = A₊^∞ + R, A₋ = R.
///
/// `q2` is Q², `h` the separation. Valid for −π²/H² ≤ Q² (regions I, IIa and
/// both boundaries).
pub fn remainder(q2: f64, h: f64, kind: KernelKind, rel_tol: f64) -> Result<QuadResult, KernelError> {
    let f = if q2 > 0.0 {
        let a = 2.0 * q2.sqrt() * h / PI;
        remainder_above(a, kind, rel_tol)?
    } else {
        let b = 2.0 * (-q2).sqrt() * h / PI;
        // boundary roundoff can put b a hair above 2
        let b = if b > 2.0 && b < 2.0 * (1.0 + 4.0 * BOUNDARY_REL_TOL) { 2.0 } else { b };
        remainder_below(b, kind, rel_tol)?
    };
    Ok(f.scale(2.0 * prefactor(h)))
}

// ∫₀^∞ sin(as)/(as)·h(s) ds with finite part at s = 0, a > 0.
fn remainder_above(a: f64, kind: KernelKind, rel_tol: f64) -> Result<QuadResult, QuadError> {
    let s1 = (1.0 / a).min(1.0);
    let abs_tol = 1e-3 * rel_tol;
    let w = |s: f64| sinc(a * s);
    let (head, tail_fn): (QuadResult, Box<dyn Fn(f64) -> f64>) = match kind {
        KernelKind::Plus => {
            let r = integrate(|s| w(s) * g_plus_regular(s), 0.0, s1, rel_tol, abs_tol)?;
            let fp = finite_part_power(-a * a, s1, 2);
            let head = QuadResult { value: r.value - 4.0 / 15.0 * fp, ..r };
            (head, Box::new(move |s| w(s) * g_plus_subtracted(s)))
        }
        KernelKind::Minus => {
            let r = integrate(|s| w(s) * g_minus(s), 0.0, s1, rel_tol, abs_tol)?;
            (r, Box::new(move |s| w(s) * g_minus(s)))
        }
    };
    let tail = if a <= 1.0 {
        integrate_semi_infinite_abs(tail_fn, s1, 1.0, rel_tol, abs_tol)?
    } else {
        integrate_semi_infinite_oscillatory(tail_fn, s1, PI / a, rel_tol, abs_tol)?
    };
    Ok(head.combine(tail))
}

// Real-branch continuation with weight sinh(bs)/(bs), 0 ≤ b ≤ 2.
fn remainder_below(b: f64, kind: KernelKind, rel_tol: f64) -> Result<QuadResult, QuadError> {
    let abs_tol = 1e-3 * rel_tol;
    let w = |s: f64| crate::integrands::sinhc(b * s);
    let alpha = b * b;
    let gk = kind.g_kind();
    let fp6 = finite_part_power(alpha, 1.0, 6);
    let head = match kind {
        KernelKind::Plus => {
            let r = integrate(|s| w(s) * g_plus_regular(s), 0.0, 1.0, rel_tol, abs_tol)?;
            let fp2 = finite_part_power(alpha, 1.0, 2);
            // −4/(15s²) by finite part, then the −3/s⁶ continued through −FP₆
            QuadResult { value: r.value - 4.0 / 15.0 * fp2 + 3.0 * fp6, ..r }
        }
        KernelKind::Minus => {
            let r = integrate(|s| w(s) * g_minus(s), 0.0, 1.0, rel_tol, abs_tol)?;
            QuadResult { value: r.value - fp6, ..r }
        }
    };
    let tail = integrate_semi_infinite_abs(
        |s| sinhc_damped(b, s) * g_tail_scaled(s, gk),
        1.0,
        1.0,
        rel_tol,
        abs_tol,
    )?;
    Ok(head.combine(tail))
}

fn require_finite_h(p: &KernelPoint) -> Option<f64> {
    p.h.finite()
}

fn divergence_for(p: &KernelPoint, h: f64) -> DivergenceInfo {
    let q_prime = (-p.q2).sqrt();
    let k = 2.0 * q_prime * h / PI;
    DivergenceInfo {
        k,
        q_prime,
        growth_exponent: (k - 2.0) / h,
        cutoff: None,
        regularized_magnitude: None,
    }
}

fn kernel(p: &KernelPoint, kind: KernelKind, rel_tol: f64) -> Result<KernelValue, KernelError> {
    let region = classify(p);
    let single = match kind {
        KernelKind::Plus => a_plus_single(p.q, p.omega).complex(),
        KernelKind::Minus => Complex64::new(0.0, 0.0),
    };
    let Some(h) = require_finite_h(p) else {
        return Ok(KernelValue::finite(single, 0.0, KernelMethod::ClosedForm, region));
    };
    if region == Region::IIb {
        return Err(KernelError::Divergent(divergence_for(p, h)));
    }
    let r = remainder(p.q2, h, kind, rel_tol)?;
    let value = single + r.value;
    if !r.converged {
        return Err(KernelError::NonConvergence { best: value, error_estimate: r.abs_error_estimate });
    }
    Ok(KernelValue::finite(value, r.abs_error_estimate, KernelMethod::SubtractedQuadrature, region))
}

/// A₊(q, ω; H) by subtracted quadrature. Region IIb is an error carrying
/// the divergence data.
pub fn a_plus(p: &KernelPoint, rel_tol: f64) -> Result<KernelValue, KernelError> {
    kernel(p, KernelKind::Plus, rel_tol)
}

/// A₋(q, ω; H) by quadrature. Region IIb is an error carrying the
/// divergence data.
pub fn a_minus(p: &KernelPoint, rel_tol: f64) -> Result<KernelValue, KernelError> {
    kernel(p, KernelKind::Minus, rel_tol)
}

/// Either kernel, with region IIb reported as a [`KernelMethod::Divergent`]
/// value instead of an error.
pub fn evaluate(p: &KernelPoint, kind: KernelKind, rel_tol: f64) -> Result<KernelValue, KernelError> {
    match kernel(p, kind, rel_tol) {
        Err(KernelError::Divergent(info)) => Ok(KernelValue::divergent(info)),
        other => other,
    }
}

/// Residue of e^{iaz}·h(z)/z at z = inπ/2 (a may be imaginary).
fn pole_term(n: usize, a: Complex64, kind: KernelKind) -> Result<Complex64, QuadError> {
    let z0 = Complex64::new(0.0, n as f64 * PI / 2.0);
    let ia = Complex64::i() * a;
    let f = |z: Complex64| {
        let h = match kind {
            KernelKind::Plus => g_complex(z, GKind::Plus) - 4.0 * z.powi(-6),
            KernelKind::Minus => g_complex(z, GKind::Minus),
        };
        (ia * z).exp() * h / z
    };
    residue_numeric(f, z0, 6, PI / 4.0)
}

/// A± from the residues of the integrand at s = inπ/2, n ≥ 1, an
/// independent route to [`a_plus`] / [`a_minus`].
///
/// Above the light cone the terms fall off like e^{−anπ/2}; in IIa they only
/// decay like 1/n with a rotating phase, and the partial sums are
/// extrapolated with Wynn's epsilon algorithm.
pub fn a_pm_residue_sum(
    p: &KernelPoint,
    kind: KernelKind,
    max_poles: usize,
) -> Result<KernelValue, KernelError> {
    let region = classify(p);
    let h = require_finite_h(p).ok_or(KernelError::WrongRegion(region))?;
    let above = match region {
        Region::I => true,
        Region::IIa | Region::BoundaryFirstMode => false,
        r => return Err(KernelError::WrongRegion(r)),
    };
    let a_abs = 2.0 * p.q2.abs().sqrt() * h / PI;
    let a = if above { Complex64::new(a_abs, 0.0) } else { Complex64::new(0.0, a_abs) };
    // below the cone the phase e^{−ia′nπ/2} turns once every 4/a′ poles;
    // Wynn needs several turns
    let iia_terms = ((32.0 / a_abs).ceil() as usize).clamp(40, max_poles.max(40));
    let mut sum = Complex64::new(0.0, 0.0);
    let mut partial = Vec::with_capacity(max_poles);
    let mut mags = Vec::with_capacity(max_poles);
    for n in 1..=max_poles {
        let t = pole_term(n, a, kind)?;
        sum += t;
        partial.push(sum);
        mags.push(t.norm());
        if above && t.norm() <= 1e-15 * sum.norm() && n > 4 {
            break;
        }
        if !above && n >= iia_terms {
            break;
        }
    }
    let n = mags.len();
    if n >= 20 {
        let early: f64 = mags[..5].iter().sum();
        let late: f64 = mags[n - 5..].iter().sum();
        if late > early {
            return Err(KernelError::ResidueDivergence { terms: n });
        }
    }
    let (total, err) = if above {
        (sum, mags.last().copied().unwrap_or(0.0))
    } else {
        let re: Vec<f64> = partial.iter().map(|z| z.re).collect();
        let im: Vec<f64> = partial.iter().map(|z| z.im).collect();
        let est = Complex64::new(wynn_epsilon(&re), wynn_epsilon(&im));
        let prev = Complex64::new(wynn_epsilon(&re[..n - 1]), wynn_epsilon(&im[..n - 1]));
        (est, (est - prev).norm())
    };
    let pf = prefactor(h);
    let (r, r_err) = if above {
        let res0 = match kind {
            KernelKind::Plus => 2.0 * a_abs * a_abs / 15.0 + 16.0 / 189.0,
            KernelKind::Minus => 0.0,
        };
        let v = pf * PI / a_abs * (2.0 * total.re + res0);
        (v, pf * PI / a_abs * 2.0 * err)
    } else {
        // real branch: Re[(π/(ia′))(2Σ + Res₀)] with Res₀ real
        let v = pf * PI / a_abs * 2.0 * total.im;
        (v, pf * PI / a_abs * 2.0 * err)
    };
    let single = match kind {
        KernelKind::Plus => a_plus_single(p.q, p.omega).complex(),
        KernelKind::Minus => Complex64::new(0.0, 0.0),
    };
    Ok(KernelValue::finite(single + r, r_err, KernelMethod::ResidueSum, region))
}

/// B = ∫₀^∞ s²[g₊(s) − 4/s⁶] ds, the constant behind the small-QH expansion
/// of the remainder: A₊ − A₊^∞ = R(0) − B·Q²/(48H³) + …
///
/// Computed once by quadrature and cached; every consumer reads this value.
pub fn b_constant() -> f64 {
    static B: OnceLock<f64> = OnceLock::new();
    *B.get_or_init(|| {
        integrate_semi_infinite_abs(|s| s * s * g_plus_subtracted(s), 0.0, 1.0, 1e-13, 1e-15)
            .expect("B quadrature")
            .value
    })
}

/// Divergence data for a point in region IIb, with the cutoff-regularized
/// magnitude exp[(K−2)L/H]/[K(L/H)³] at cutoff `l` (which must exceed H).
pub fn a_divergence_info(p: &KernelPoint, l: f64) -> Result<DivergenceInfo, KernelError> {
    let region = classify(p);
    if region != Region::IIb {
        return Err(KernelError::NotDivergent(region));
    }
    let h = require_finite_h(p).ok_or(KernelError::NotDivergent(region))?;
    if !(l > h) || !l.is_finite() {
        return Err(KernelError::InvalidPoint(format!("cutoff L = {l} must exceed H = {h}")));
    }
    let mut info = divergence_for(p, h);
    let x = l / h;
    info.cutoff = Some(l);
    info.regularized_magnitude = Some(((info.k - 2.0) * x).exp() / (info.k * x.powi(3)));
    Ok(info)
}
