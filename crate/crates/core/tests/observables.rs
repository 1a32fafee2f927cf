use casimir_core::kernels::{a_minus, b_constant, KernelPoint, Separation};
use casimir_core::response::{josephson_dc, mass_double, CavityScenario, CorrugatedPlate, Motion};
use casimir_core::statics::{capillary_corrections, casimir_force};
use casimir_core::units::{from_natural, to_natural, Dimension, Quantity, UnitSystem};
use std::f64::consts::PI;

#[test]
fn casimir_force_in_si() {
    // 1 µm gap, 1 cm² plates
    let f = casimir_force(1e-6, 1e-4).unwrap();
    let si = from_natural(Quantity::natural(f, Dimension::FORCE), &UnitSystem::si()).unwrap().value;
    let hbar_c = 1.054_571_817e-34 * 299_792_458.0;
    assert!((si + PI * PI * hbar_c * 1e-4 / (240.0 * 1e-24)).abs() < 1e-12 * si.abs());
}

#[test]
fn double_plate_mass_is_kernel_coefficient_times_geometry() {
    let (d, k, h, area) = (0.02, 3.0, 0.01, 2.5);
    let plate = CorrugatedPlate::new(d, [0.0, k], 0.0).unwrap();
    let m = mass_double(&plate, area, h).parallel;
    let coefficient = b_constant() / (48.0 * h.powi(3));
    assert!((m - 0.5 * area * d * d * k * k * coefficient).abs() < 1e-14 * m.abs());
    assert!(m < 0.0);
}

#[test]
fn capillary_speed_shift_is_half_tension_shift() {
    let sigma = to_natural(Quantity::si(0.5, Dimension::ENERGY_PER_AREA), &UnitSystem::si()).unwrap().value;
    let c = capillary_corrections(1e-3, sigma).unwrap();
    assert!((c.relative_speed_shift - c.delta_sigma / (2.0 * sigma)).abs() < 1e-15 * c.relative_speed_shift.abs());
}

#[test]
fn static_force_scales_with_kernel() {
    let k = 2.0;
    let s = CavityScenario {
        plate1: CorrugatedPlate::new(0.1, [k, 0.0], 0.0).unwrap(),
        plate2: Some(CorrugatedPlate::new(0.3, [k, 0.0], 0.4).unwrap()),
        h: Separation::Finite(0.7),
        area: 3.0,
        motion: Motion::Static { r0: [0.25, 1.0] },
    };
    let f = josephson_dc(&s, 1e-11).unwrap();
    let am = a_minus(&KernelPoint::with_h(k, 0.0, 0.7).unwrap(), 1e-11).unwrap().re();
    let alpha = k * 0.25 + 0.4;
    assert!((f[0] - 1.5 * am * k * 0.03 * alpha.sin()).abs() < 1e-14 * f[0].abs());
    assert_eq!(f[1], 0.0);
}
