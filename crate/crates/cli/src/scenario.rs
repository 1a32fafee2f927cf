//! Scenario files (TOML) and the report they produce.
//!
//! See `crates/cli/examples/SCHEMA.md` for the file layout. Inputs are read in
//! the unit system named by `units`, converted to natural units, and the
//! report is written in natural units unless `--si` is given.

use crate::error::exit;
use crate::output::{Units, STIFFNESS, TOOL};
use crate::CliError;
use casimir_core::kernels::Separation;
use casimir_core::response::{
    chi, decay_time, dissipation_for_motion, josephson_ac, josephson_dc, mass_double, mass_from_chi, mass_single,
    plate_mass, static_force_fourier, viscosity_single, viscosity_single_exact, CavityScenario, CorrugatedPlate,
    Motion, ResponseError,
};
use casimir_core::statics::{capillary_corrections, casimir_energy_closed_form, casimir_energy_per_area, casimir_force};
use casimir_core::units::{to_natural, Dimension, Quantity, UnitSystem};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputUnits {
    #[default]
    Si,
    Natural,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub units: InputUnits,
    pub plate1: Option<PlateSpec>,
    pub plate2: Option<PlateSpec>,
    pub cavity: CavitySpec,
    pub motion: Option<MotionSpec>,
    #[serde(default)]
    pub observables: Observables,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlateSpec {
    pub d: f64,
    /// Either `k` or `wavelength` (+ optional `direction`).
    pub k: Option<[f64; 2]>,
    pub wavelength: Option<f64>,
    pub direction: Option<[f64; 2]>,
    #[serde(default)]
    pub phase: f64,
    pub density: Option<f64>,
    pub thickness: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SeparationSpec {
    Length(f64),
    Word(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySpec {
    pub h: SeparationSpec,
    pub area: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MotionSpec {
    Static {
        #[serde(default)]
        r0: [f64; 2],
    },
    Uniform {
        v: [f64; 2],
        #[serde(default)]
        r0: [f64; 2],
    },
    Oscillatory {
        amplitude: [f64; 2],
        omega: f64,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Observables {
    pub mass: bool,
    pub viscosity_omega: Vec<f64>,
    pub chi_omega: Vec<f64>,
    pub josephson: bool,
    pub josephson_times: Vec<f64>,
    pub dissipation: bool,
    pub capillary_sigma: Option<f64>,
    pub statics: bool,
}

pub fn parse(text: &str) -> Result<ScenarioFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::Validation(format!("scenario file: {e}")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Val {
    Scalar(f64),
    Vector([f64; 2]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub value: Val,
    pub unit: String,
    pub method: String,
    pub error: Option<f64>,
    pub omega: Option<f64>,
    pub time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorEntry {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
    pub k: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub tool: String,
    pub scenario: String,
    pub units: String,
    pub rel_tol: f64,
    pub status: String,
    pub results: BTreeMap<String, Entry>,
    pub errors: BTreeMap<String, ErrorEntry>,
}

impl Report {
    /// Highest exit status among the recorded errors.
    pub fn exit_code(&self) -> i32 {
        self.errors.values().map(|e| e.exit_code).max().unwrap_or(exit::OK)
    }

    /// TOML text with floats in round-trip exponent form. Key order is
    /// fixed, so equal reports give identical text.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        line("tool", text(&self.tool));
        line("scenario", text(&self.scenario));
        line("units", text(&self.units));
        line("rel_tol", float(self.rel_tol));
        line("status", text(&self.status));
        for (key, e) in &self.results {
            out.push_str(&format!("\n[results.{key}]\n"));
            let value = match e.value {
                Val::Scalar(x) => float(x),
                Val::Vector(v) => format!("[{}, {}]", float(v[0]), float(v[1])),
            };
            out.push_str(&format!("value = {value}\nunit = {}\nmethod = {}\n", text(&e.unit), text(&e.method)));
            for (name, x) in [("error", e.error), ("omega", e.omega), ("time", e.time)] {
                if let Some(x) = x {
                    out.push_str(&format!("{name} = {}\n", float(x)));
                }
            }
        }
        for (key, e) in &self.errors {
            out.push_str(&format!("\n[errors.{key}]\n"));
            out.push_str(&format!("kind = {}\nmessage = {}\nexit_code = {}\n", text(&e.kind), text(&e.message), e.exit_code));
            if let Some(k) = e.k {
                out.push_str(&format!("K = {}\n", float(k)));
            }
        }
        out
    }
}

fn text(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:e}")
    }
}

struct Builder {
    units: Units,
    report: Report,
}

impl Builder {
    fn put(&mut self, key: impl Into<String>, value: Val, dim: Dimension, method: &str) -> &mut Entry {
        let u = self.units;
        let value = match value {
            Val::Scalar(x) => Val::Scalar(u.value(x, dim)),
            Val::Vector(v) => Val::Vector([u.value(v[0], dim), u.value(v[1], dim)]),
        };
        let entry = Entry { value, unit: u.label(dim), method: method.into(), error: None, omega: None, time: None };
        let key = key.into();
        self.report.results.insert(key.clone(), entry);
        self.report.results.get_mut(&key).unwrap()
    }

    fn scalar(&mut self, key: impl Into<String>, x: f64, dim: Dimension, method: &str) -> &mut Entry {
        self.put(key, Val::Scalar(x), dim, method)
    }

    fn at_omega(&mut self, key: impl Into<String>, x: f64, dim: Dimension, method: &str, omega: f64) {
        let w = self.units.value(omega, Dimension::FREQUENCY);
        self.scalar(key, x, dim, method).omega = Some(w);
    }

    fn fail(&mut self, key: &str, e: CliError, k: Option<f64>) {
        let kind = match e {
            CliError::Divergent(_) => "divergent",
            CliError::NonConvergence(_) => "nonconvergence",
            _ => "validation",
        };
        self.report.errors.insert(
            key.to_string(),
            ErrorEntry { kind: kind.into(), message: e.to_string(), exit_code: e.exit_code(), k },
        );
    }

    fn record<T>(&mut self, key: &str, r: Result<T, ResponseError>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let k = match &e {
                    ResponseError::Divergent(info) => Some(info.k),
                    _ => None,
                };
                self.fail(key, e.into(), k);
                None
            }
        }
    }
}

/// Natural-unit view of a scenario file.
struct Resolved {
    plate1: Option<CorrugatedPlate>,
    plate2: Option<CorrugatedPlate>,
    plate1_mass: Option<f64>,
    h: Separation,
    area: Option<f64>,
    motion: Motion,
}

/// A number from the file, in natural units.
fn input_value(file: &ScenarioFile, x: f64, dim: Dimension) -> Result<f64, CliError> {
    match file.units {
        InputUnits::Natural => Ok(x),
        InputUnits::Si => Ok(to_natural(Quantity::si(x, dim), &UnitSystem::si())?.value),
    }
}

fn resolve(file: &ScenarioFile) -> Result<Resolved, CliError> {
    let conv = |x: f64, dim: Dimension| input_value(file, x, dim);
    let plate = |p: &PlateSpec, name: &str| -> Result<CorrugatedPlate, CliError> {
        let k = match (p.k, p.wavelength) {
            (Some(k), None) => k,
            (None, Some(l)) => {
                let dir = p.direction.unwrap_or([1.0, 0.0]);
                let n = dir[0].hypot(dir[1]);
                if !(n > 0.0) || !(l > 0.0) {
                    return Err(CliError::Validation(format!("{name}: wavelength and direction must be positive")));
                }
                let kk = 2.0 * std::f64::consts::PI / l;
                [kk * dir[0] / n, kk * dir[1] / n]
            }
            _ => return Err(CliError::Validation(format!("{name}: give exactly one of `k` or `wavelength`"))),
        };
        if p.k.is_some() && p.direction.is_some() {
            return Err(CliError::Validation(format!("{name}: `direction` goes with `wavelength`")));
        }
        CorrugatedPlate::new(p.d, k, p.phase).map_err(CliError::from)
    };
    let plate1 = file.plate1.as_ref().map(|p| plate(p, "plate1")).transpose()?;
    let plate2 = file.plate2.as_ref().map(|p| plate(p, "plate2")).transpose()?;
    let plate1_mass = match &file.plate1 {
        Some(PlateSpec { density: Some(rho), thickness: Some(t), .. }) => {
            let rho = conv(*rho, Dimension::MASS_DENSITY)?;
            Some((rho, *t))
        }
        Some(PlateSpec { density: None, thickness: None, .. }) | None => None,
        Some(_) => return Err(CliError::Validation("plate1: give both density and thickness, or neither".into())),
    };
    let h = match &file.cavity.h {
        SeparationSpec::Length(h) => crate::output::parse_separation(&h.to_string())?,
        SeparationSpec::Word(w) => crate::output::parse_separation(w)?,
    };
    if let Some(a) = file.cavity.area {
        if !(a > 0.0) || !a.is_finite() {
            return Err(CliError::Validation(format!("cavity.area must be > 0, got {a}")));
        }
    }
    if plate2.is_some() && h == Separation::Infinite {
        return Err(CliError::Validation("plate2 needs a finite cavity.h".into()));
    }
    let motion = match file.motion {
        None => Motion::Static { r0: [0.0, 0.0] },
        Some(MotionSpec::Static { r0 }) => Motion::Static { r0 },
        Some(MotionSpec::Uniform { v, r0 }) => Motion::Uniform {
            v: [conv(v[0], Dimension::VELOCITY)?, conv(v[1], Dimension::VELOCITY)?],
            r0,
        },
        Some(MotionSpec::Oscillatory { amplitude, omega }) => {
            Motion::Oscillatory { amplitude, omega: conv(omega, Dimension::FREQUENCY)? }
        }
    };
    Ok(Resolved {
        plate1,
        plate2,
        plate1_mass: match (plate1_mass, file.cavity.area) {
            (Some((rho, t)), Some(a)) => Some(plate_mass(rho, t, a)),
            _ => None,
        },
        h,
        area: file.cavity.area,
        motion,
    })
}

impl Resolved {
    /// The cavity as a response scenario; with H finite and no second plate
    /// the partner is flat.
    fn scenario(&self) -> Result<CavityScenario, CliError> {
        let plate1 = self.plate1.ok_or_else(|| CliError::Validation("this observable needs plate1".into()))?;
        let area = self.area.ok_or_else(|| CliError::Validation("this observable needs cavity.area".into()))?;
        let plate2 = match (self.plate2, self.h) {
            (Some(p), _) => Some(p),
            (None, Separation::Finite(_)) => Some(CorrugatedPlate { d: 0.0, ..plate1 }),
            (None, Separation::Infinite) => None,
        };
        let s = CavityScenario { plate1, plate2, h: self.h, area, motion: self.motion };
        s.validate()?;
        Ok(s)
    }
}

/// Evaluates every requested observable. Failures are collected in the
/// report's `errors` table; `Err` is only returned for an unreadable file.
pub fn run(file: &ScenarioFile, units: Units, rel_tol: f64) -> Result<Report, CliError> {
    crate::output::check_tolerance(rel_tol)?;
    let mut b = Builder {
        units,
        report: Report {
            tool: TOOL.into(),
            scenario: file.name.clone(),
            units: units.describe().into(),
            rel_tol,
            status: String::new(),
            results: BTreeMap::new(),
            errors: BTreeMap::new(),
        },
    };
    let conv_in = |x: f64, dim: Dimension| input_value(file, x, dim);
    let r = match resolve(file) {
        Ok(r) => r,
        Err(e) => {
            b.fail("scenario", e, None);
            b.report.status = "error".into();
            return Ok(b.report);
        }
    };
    let obs = &file.observables;

    if obs.mass {
        mass(&mut b, &r, rel_tol);
    }
    for (i, &w) in obs.viscosity_omega.iter().enumerate() {
        match conv_in(w, Dimension::FREQUENCY) {
            Ok(w) => viscosity(&mut b, &r, i, w, rel_tol),
            Err(e) => b.fail(&format!("viscosity_{i}"), e, None),
        }
    }
    for (i, &w) in obs.chi_omega.iter().enumerate() {
        let key = format!("chi_{i}");
        let res = conv_in(w, Dimension::FREQUENCY).and_then(|w| {
            let s = r.scenario()?;
            Ok((w, chi(w, &s, rel_tol)))
        });
        match res {
            Ok((w, x)) => {
                if let Some(x) = b.record(&key, x) {
                    let p = x.parallel();
                    b.at_omega(format!("{key}_parallel_re"), p.re, STIFFNESS, "subtracted-quadrature", w);
                    b.at_omega(format!("{key}_parallel_im"), p.im, STIFFNESS, "subtracted-quadrature", w);
                    b.at_omega(format!("{key}_perpendicular_re"), x.perpendicular().re, STIFFNESS, "exact-zero", w);
                }
            }
            Err(e) => b.fail(&key, e, None),
        }
    }
    if obs.josephson {
        josephson(&mut b, &r, file, rel_tol);
    }
    if obs.dissipation {
        match r.scenario() {
            Ok(s) => {
                if let Some(p) = b.record("dissipation", dissipation_for_motion(&s, rel_tol)) {
                    b.scalar("dissipation_power", p, Dimension::POWER, "spectral-sum");
                }
            }
            Err(e) => b.fail("dissipation", e, None),
        }
    }
    if let Some(sigma) = obs.capillary_sigma {
        let res = conv_in(sigma, Dimension::ENERGY_PER_AREA).and_then(|sigma| {
            let h = r.h.finite().ok_or_else(|| CliError::Validation("capillary needs a finite cavity.h".into()))?;
            Ok(capillary_corrections(h, sigma)?)
        });
        match res {
            Ok(c) => {
                b.scalar("capillary_delta_rho", c.delta_rho, Dimension::MASS_PER_AREA, "closed-form");
                b.scalar("capillary_delta_sigma", c.delta_sigma, Dimension::ENERGY_PER_AREA, "closed-form");
                b.scalar("capillary_relative_speed_shift", c.relative_speed_shift, Dimension::DIMENSIONLESS, "closed-form");
                b.scalar("capillary_b", c.b, Dimension::DIMENSIONLESS, "semi-infinite-quadrature");
            }
            Err(e) => b.fail("capillary", e, None),
        }
    }
    if obs.statics {
        statics(&mut b, &r, rel_tol);
    }
    b.report.status = if b.report.errors.is_empty() { "ok" } else { "error" }.into();
    Ok(b.report)
}

fn mass(b: &mut Builder, r: &Resolved, rel_tol: f64) {
    let (Some(p), Some(area)) = (r.plate1, r.area) else {
        b.fail("mass", CliError::Validation("mass needs plate1 and cavity.area".into()), None);
        return;
    };
    let m = mass_single(&p, area);
    b.scalar("mass_single_parallel", m.parallel, Dimension::MASS, "closed-form");
    b.scalar("mass_single_perpendicular", m.perpendicular, Dimension::MASS, "exact-zero");
    if let Some(fd) = b.record("mass_single_chi", mass_from_chi(&p, area, Separation::Infinite, rel_tol)) {
        b.scalar("mass_single_parallel_chi", fd.parallel, Dimension::MASS, "chi-finite-difference");
    }
    if let Some(total) = r.plate1_mass {
        b.scalar("plate_mass", total, Dimension::MASS, "density*thickness*area");
        b.scalar("mass_single_ratio", m.parallel / total, Dimension::DIMENSIONLESS, "closed-form");
    }
    if let Separation::Finite(h) = r.h {
        let d = mass_double(&p, area, h);
        b.scalar("mass_double_parallel", d.parallel, Dimension::MASS, "closed-form-small-kH");
        b.scalar("mass_double_perpendicular", d.perpendicular, Dimension::MASS, "exact-zero");
        b.scalar("mass_double_kH", p.k_norm() * h, Dimension::DIMENSIONLESS, "input");
        if let Some(fd) = b.record("mass_double_chi", mass_from_chi(&p, area, r.h, rel_tol)) {
            b.scalar("mass_double_parallel_chi", fd.parallel, Dimension::MASS, "chi-finite-difference");
        }
    }
}

fn viscosity(b: &mut Builder, r: &Resolved, i: usize, w: f64, rel_tol: f64) {
    let key = format!("viscosity_{i}");
    let (Some(p), Some(area)) = (r.plate1, r.area) else {
        b.fail(&key, CliError::Validation("viscosity needs plate1 and cavity.area".into()), None);
        return;
    };
    let eta = Dimension::MASS_RATE;
    if let Some(v) = b.record(&key, viscosity_single(&p, area, w)) {
        b.at_omega(format!("{key}_parallel"), v.parallel, eta, "closed-form-high-frequency", w);
        b.at_omega(format!("{key}_perpendicular"), v.perpendicular, eta, "exact-zero", w);
        if let Some(m) = r.plate1_mass {
            b.at_omega(format!("decay_time_{i}"), decay_time(m, v.parallel), Dimension::TIME, "2M/eta", w);
        }
    }
    if let Some(v) = b.record(&key, viscosity_single_exact(&p, area, w)) {
        b.at_omega(format!("{key}_parallel_exact"), v.parallel, eta, "closed-form", w);
    }
    match r.scenario() {
        Ok(s) => {
            if let Some(x) = b.record(&key, chi(w, &s, rel_tol)) {
                b.at_omega(format!("{key}_parallel_chi"), x.parallel().im / w, eta, "im-chi-over-omega", w);
            }
        }
        Err(e) => b.fail(&key, e, None),
    }
}

fn josephson(b: &mut Builder, r: &Resolved, file: &ScenarioFile, rel_tol: f64) {
    let s = match r.scenario() {
        Ok(s) => s,
        Err(e) => return b.fail("josephson", e, None),
    };
    match s.motion {
        Motion::Static { .. } => {
            if let Some(f) = b.record("josephson", josephson_dc(&s, rel_tol)) {
                b.put("josephson_dc_force", Val::Vector(f), Dimension::FORCE, "closed-form-kernel");
            }
            if let Some(f) = b.record("josephson", static_force_fourier(&s, rel_tol)) {
                b.put("josephson_dc_force_fourier", Val::Vector(f), Dimension::FORCE, "fourier-sum");
            }
            if let Some(a) = b.record("josephson", s.phase_mismatch()) {
                b.scalar("josephson_phase_mismatch", a, Dimension::DIMENSIONLESS, "input");
            }
        }
        Motion::Uniform { .. } => {
            let Some(f) = b.record("josephson", josephson_ac(&s, rel_tol)) else { return };
            b.put("josephson_ac_amplitude", Val::Vector(f.amplitude), Dimension::FORCE, "closed-form-kernel");
            b.scalar("josephson_ac_frequency", f.frequency, Dimension::FREQUENCY, "k.v");
            for (i, &t) in file.observables.josephson_times.iter().enumerate() {
                let tn = match input_value(file, t, Dimension::TIME) {
                    Ok(t) => t,
                    Err(e) => return b.fail("josephson", e, None),
                };
                let tt = b.units.value(tn, Dimension::TIME);
                b.put(format!("josephson_ac_force_{i}"), Val::Vector(f.at(tn)), Dimension::FORCE, "closed-form-kernel")
                    .time = Some(tt);
            }
        }
        Motion::Oscillatory { .. } => {
            b.fail("josephson", CliError::Validation("Josephson forces need a static or uniform motion".into()), None)
        }
    }
}

fn statics(b: &mut Builder, r: &Resolved, rel_tol: f64) {
    let Some(h) = r.h.finite() else {
        return b.fail("statics", CliError::Validation("statics needs a finite cavity.h".into()), None);
    };
    match casimir_energy_per_area(h, rel_tol) {
        Ok(e) => {
            b.scalar("casimir_energy_per_area", e.value, Dimension::ENERGY_PER_AREA, "momentum-quadrature").error =
                Some(b.units.value(e.error_estimate, Dimension::ENERGY_PER_AREA));
            b.scalar("casimir_energy_coefficient", e.value * h.powi(3), Dimension::DIMENSIONLESS, "momentum-quadrature");
        }
        Err(e) => b.fail("statics", e.into(), None),
    }
    b.scalar("casimir_energy_per_area_closed_form", casimir_energy_closed_form(h), Dimension::ENERGY_PER_AREA, "closed-form");
    if let Some(area) = r.area {
        match casimir_force(h, area) {
            Ok(f) => {
                b.scalar("casimir_force", f, Dimension::FORCE, "closed-form");
            }
            Err(e) => b.fail("statics", e.into(), None),
        }
    }
}
