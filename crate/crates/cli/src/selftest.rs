//! Oracle suite run by `dyncasimir selftest`.

use casimir_core::kernels::{a_plus, a_plus_single, a_pm_residue_sum, b_constant, KernelKind, KernelPoint};
use casimir_core::response::{
    chi, josephson_dc, mass_from_chi, mass_single, static_force_fourier, viscosity_single_exact, CavityScenario,
    CorrugatedPlate, Motion,
};
use casimir_core::kernels::Separation;
use casimir_core::statics::casimir_energy_per_area;
use std::f64::consts::PI;
use std::fmt::Write as _;

pub const B_REFERENCE: f64 = -0.452448;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub relative: bool,
}

impl Check {
    pub fn deviation(&self) -> f64 {
        let d = (self.measured - self.expected).abs();
        if self.relative {
            d / self.expected.abs()
        } else {
            d
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation() <= self.tolerance
    }
}

fn check(name: &'static str, measured: f64, expected: f64, tolerance: f64, relative: bool) -> Check {
    Check { name, measured, expected, tolerance, relative }
}

/// Runs every oracle. `b_shift` is added to the computed B, for checking
/// that the suite notices a wrong constant.
pub fn run(b_shift: f64) -> Vec<Check> {
    let mut out = vec![check("B constant", b_constant() + b_shift, B_REFERENCE, 1e-4, false)];

    let e = casimir_energy_per_area(1.0, 1e-10).map(|e| e.value).unwrap_or(f64::NAN);
    out.push(check("Casimir coefficient E*H^3", e, -PI * PI / 720.0, 1e-6, true));

    out.push(check("A+ single plate (q=1, w=0)", a_plus_single(1.0, 0.0).re(), -1.0 / (360.0 * PI * PI), 1e-12, true));

    let plate = CorrugatedPlate { d: 0.1, k: [1.0, 0.0], phase: 0.0 };
    let fd = mass_from_chi(&plate, 1.0, Separation::Infinite, 1e-11).map(|m| m.parallel).unwrap_or(f64::NAN);
    out.push(check("single-plate mass from chi", fd, mass_single(&plate, 1.0).parallel, 1e-6, true));

    let lone = CavityScenario {
        plate1: plate,
        plate2: None,
        h: Separation::Infinite,
        area: 1.0,
        motion: Motion::Static { r0: [0.0, 0.0] },
    };
    let eta = chi(10.0, &lone, 1e-11).map(|x| x.parallel().im / 10.0).unwrap_or(f64::NAN);
    let exact = viscosity_single_exact(&plate, 1.0, 10.0).map(|v| v.parallel).unwrap_or(f64::NAN);
    out.push(check("viscosity Im(chi)/w at w=10k", eta, exact, 1e-6, true));

    for (name, q, w, tol) in [
        ("A+ quadrature vs residues, region I", 1.0, 0.5, 1e-8),
        ("A+ quadrature vs residues, region IIa", 0.5, 1.5, 1e-6),
    ] {
        let p = KernelPoint::with_h(q, w, 1.0).expect("valid point");
        let quad = a_plus(&p, 1e-11).map(|v| v.re()).unwrap_or(f64::NAN);
        let res = a_pm_residue_sum(&p, KernelKind::Plus, 400).map(|v| v.re()).unwrap_or(f64::NAN);
        out.push(check(name, res, quad, tol, true));
    }

    let pair = CavityScenario {
        plate1: plate,
        plate2: Some(CorrugatedPlate { d: 0.2, ..plate }),
        h: Separation::Finite(1.0),
        area: 1.0,
        motion: Motion::Static { r0: [0.7, 0.0] },
    };
    let dc = josephson_dc(&pair, 1e-11).map(|f| f[0]).unwrap_or(f64::NAN);
    let fourier = static_force_fourier(&pair, 1e-11).map(|f| f[0]).unwrap_or(f64::NAN);
    out.push(check("static force: closed form vs Fourier sum", dc, fourier, 1e-12, true));
    out
}

pub fn table(checks: &[Check]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<44} {:>24} {:>24} {:>10} {:>10}  status", "check", "measured", "expected", "deviation", "tolerance");
    for c in checks {
        let _ = writeln!(
            s,
            "{:<44} {:>24.16e} {:>24.16e} {:>10.2e} {:>10.1e}  {}",
            c.name,
            c.measured,
            c.expected,
            c.deviation(),
            c.tolerance,
            if c.passed() { "PASS" } else { "FAIL" }
        );
    }
    s
}
