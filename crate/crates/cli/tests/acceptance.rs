//! Acceptance criteria 1–10, one PASS/FAIL line per check.
//!
//! Run with `cargo test -p casimir-cli --test acceptance -- --nocapture` to
//! see the table. The test fails if the set of failing checks differs from
//! `KNOWN_FAILURES`, the checks that cannot pass as stated.

use casimir_core::integrands::g_plus_subtracted;
use casimir_core::kernels::{
    a_divergence_info, a_minus, a_plus, a_plus_single, a_pm_residue_sum, b_constant, classify, evaluate, KernelKind,
    KernelPoint, Region, Separation,
};
use casimir_core::quad::integrate_semi_infinite_abs;
use casimir_core::response::{
    chi, decay_time, dissipation_rate, josephson_ac, josephson_dc, kernel_omega2_coefficient, mass_double,
    mass_from_chi, mass_single, plate_mass, viscosity_single, CavityScenario, CorrugatedPlate, Motion,
    ResponseError, SpectralLine,
};
use casimir_core::statics::{capillary_corrections, casimir_energy_per_area};
use casimir_core::units::{from_natural, to_natural, Dimension, Quantity, UnitSystem};
use casimir_core::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::time::Instant;

/// Checks that fail as stated (see the decisions ledger).
const KNOWN_FAILURES: &[&str] = &["3a", "6b", "8b"];

const TOL: f64 = 1e-11;

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Suite {
    lines: Vec<Line>,
}

impl Suite {
    fn check(&mut self, id: &'static str, pass: bool, detail: impl Into<String>) {
        let detail = detail.into();
        println!("{} {id:<4} {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push(Line { id, pass, detail });
    }
}

fn sci(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(", ")
}

fn si_to_nat(x: f64, dim: Dimension) -> f64 {
    to_natural(Quantity::si(x, dim), &UnitSystem::si()).unwrap().value
}

fn nat_to_si(x: f64, dim: Dimension) -> f64 {
    from_natural(Quantity::natural(x, dim), &UnitSystem::si()).unwrap().value
}

fn criterion_1(s: &mut Suite) {
    let t = Instant::now();
    let b = integrate_semi_infinite_abs(|x| x * x * g_plus_subtracted(x), 0.0, 1.0, 1e-13, 1e-15).unwrap().value;
    let dt = t.elapsed().as_secs_f64();
    let dev = (b + 0.452448).abs();
    s.check("1", dev <= 1e-4 && dt < 1.0, format!("B = {b:.7} (|dev| {dev:.1e} ≤ 1e-4), {dt:.3} s < 1 s"));
}

fn criterion_2(s: &mut Suite) {
    let t = Instant::now();
    let want = -PI * PI / 720.0;
    let mut worst: f64 = 0.0;
    for h in [0.5, 1.0, 2.0] {
        let c = casimir_energy_per_area(h, 1e-10).unwrap().value * h.powi(3);
        worst = worst.max(((c - want) / want).abs());
    }
    let dt = t.elapsed().as_secs_f64();
    s.check("2", worst <= 1e-6 && dt < 1.0, format!("E·H³ vs −π²/720 for H ∈ {{0.5,1,2}}: rel {worst:.1e} ≤ 1e-6, {dt:.3} s < 1 s"));
}

fn criterion_3(s: &mut Suite) {
    let single = a_plus_single(1.0, 0.0).re();
    let dev = |h: f64| {
        let v = a_plus(&KernelPoint::with_h(1.0, 0.0, h).unwrap(), TOL).unwrap().re();
        ((v - single) / single).abs()
    };
    let far: Vec<(f64, f64)> = [12.0, 16.0, 24.0].iter().map(|&h| (h, dev(h))).collect();
    let worst = far.iter().map(|p| p.1).fold(0.0, f64::max);
    s.check("3a", worst < 1e-3, format!("QH ≥ 12 (H = 12, 16, 24) deviation from single plate: {} (< 1e-3)", sci(&far.iter().map(|p| p.1).collect::<Vec<_>>())));
    let near: Vec<f64> = [4.0, 8.0, 12.0].iter().map(|&h| dev(h)).collect();
    let mono = near.windows(2).all(|w| w[1] < w[0]);
    s.check("3b", mono, format!("deviation at H = 4, 8, 12: {} decreasing", sci(&near)));
}

fn criterion_4(s: &mut Suite) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    let h = 1.0;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for _ in 0..20 {
        // Q² in region I or IIa
        let q2: f64 = rng.gen_range(-0.95 * PI * PI..4.0);
        let mut pt = || {
            if q2 > 0.0 {
                let w: f64 = rng.gen_range(0.0..3.0);
                KernelPoint::with_h((q2 + w * w).sqrt(), w, h).unwrap()
            } else {
                let q: f64 = rng.gen_range(0.0..3.0);
                KernelPoint::with_h(q, (q * q - q2).sqrt(), h).unwrap()
            }
        };
        let (p1, p2) = (pt(), pt());
        for kind in [KernelKind::Plus, KernelKind::Minus] {
            let a = evaluate(&p1, kind, 1e-10).unwrap();
            let b = evaluate(&p2, kind, 1e-10).unwrap();
            let diff = (a.complex() - b.complex()).norm();
            let bound = 3.0 * (a.error_estimate + b.error_estimate);
            ok &= diff <= bound;
            worst = worst.max(diff / bound);
        }
    }
    s.check("4", ok, format!("20 equal-Q² pairs at H = 1, A₊ and A₋: max |Δ|/(3·Σerr) = {worst:.2}"));
}

fn criterion_5(s: &mut Suite) {
    let h = 1.0;
    let mut worst_res: f64 = 0.0;
    let mut im_ok = true;
    let mut worst_im: f64 = 0.0;
    for q in [0.2, 0.6, 1.0, 1.4, 1.8] {
        for b in [0.2, 0.55, 0.9, 1.25, 1.6] {
            let qp = b * PI / (2.0 * h);
            let p = KernelPoint::with_h(q, (q * q + qp * qp).sqrt(), h).unwrap();
            assert_eq!(classify(&p), Region::IIa);
            let quad = a_plus(&p, TOL).unwrap();
            let res = a_pm_residue_sum(&p, KernelKind::Plus, 400).unwrap();
            worst_res = worst_res.max((quad.complex() - res.complex()).norm() / quad.complex().norm());
            let d = (quad.im() - a_plus_single(p.q, p.omega).im()).abs();
            im_ok &= d <= quad.error_estimate;
            worst_im = worst_im.max(d);
        }
    }
    s.check("5a", worst_res <= 1e-6, format!("IIa 5×5 grid, quadrature vs residues: max rel {worst_res:.1e} ≤ 1e-6"));
    s.check("5b", im_ok, format!("IIa Im A₊ equals single-plate Im within error estimate (max |Δ| {worst_im:.1e})"));
}

fn criterion_6(s: &mut Suite) {
    let (d, k, area) = (0.1, 1.3, 1.0);
    let plate = CorrugatedPlate::new(d, [k, 0.0], 0.0).unwrap();
    let fd = mass_from_chi(&plate, area, Separation::Infinite, TOL).unwrap().parallel;
    let closed = mass_single(&plate, area).parallel;
    let rel = ((fd - closed) / closed).abs();
    s.check("6a", rel <= 1e-4, format!("ω² coefficient of χ∥ vs A k⁵d²/(288π²): rel {rel:.1e} ≤ 1e-4"));

    let lone = CavityScenario { plate1: plate, plate2: None, h: Separation::Infinite, area, motion: Motion::Static { r0: [0.0, 0.0] } };
    let w = 10.0 * k;
    let x = chi(w, &lone, TOL).unwrap();
    let eta = x.parallel().im / w;
    let limit = viscosity_single(&plate, area, w).unwrap();
    let rel = ((eta - limit.parallel) / limit.parallel).abs();
    s.check("6b", rel <= 1e-6, format!("Im χ∥/ω at ω = 10k vs A k²d²ω⁴/(720π²): rel {rel:.2e} ≤ 1e-6"));

    let zero = mass_single(&plate, area).perpendicular == 0.0
        && limit.perpendicular == 0.0
        && x.perpendicular() == Complex64::new(0.0, 0.0)
        && chi(0.3 * k, &lone, TOL).unwrap().perpendicular() == Complex64::new(0.0, 0.0);
    s.check("6c", zero, "δm⊥ = η⊥ = χ⊥⊥ = 0 exactly");
}

fn criterion_7(s: &mut Suite) {
    let (k, h) = (1.0, 0.05);
    let c = kernel_omega2_coefficient(k, Separation::Finite(h), 1e-13).unwrap().value;
    let want = b_constant() / (48.0 * h.powi(3));
    let rel = ((c - want) / want).abs();
    s.check("7", rel <= 0.02, format!("kH = 0.05: FD ω² coefficient {c:.6e} vs B/(48H³) = {want:.6e}, rel {rel:.1e} ≤ 2e-2"));
    let plate = CorrugatedPlate::new(0.01, [k, 0.0], 0.0).unwrap();
    let fd = mass_from_chi(&plate, 1.0, Separation::Finite(h), 1e-13).unwrap().parallel;
    let closed = mass_double(&plate, 1.0, h).parallel;
    let rel = ((fd - closed) / closed).abs();
    s.check("7m", rel <= 0.02, format!("kH = 0.05: FD mass from χ vs δm∥ = ABk²d²/(96H³), rel {rel:.1e} ≤ 2e-2"));
}

fn criterion_8(s: &mut Suite) {
    // 1 mm corrugation and wavelength, 15 g/cm³, 1 mm thick, ω = 2ck
    let lam = 1e-3;
    let k = 2.0 * PI / lam;
    let area = 1e-4;
    let plate = CorrugatedPlate::new(lam, [k, 0.0], 0.0).unwrap();
    let m = plate_mass(si_to_nat(15_000.0, Dimension::MASS_DENSITY), 1e-3, area);
    let ratio = mass_single(&plate, area).parallel / m;
    s.check("8a", (1e-35..=1e-33).contains(&ratio), format!("macroscopic plate δm/m = {ratio:.3e} ∈ [1e-35, 1e-33]"));
    let eta = viscosity_single(&plate, area, 2.0 * k).unwrap().parallel;
    let tau = nat_to_si(decay_time(m, eta), Dimension::TIME);
    s.check("8b", (1e17..=1e19).contains(&tau), format!("decay time τ = 2M/η at ω = 2ck: {tau:.3e} s ∈ [1e17, 1e19]"));
    // mercury, H = 1 mm, σ = 500 dyn/cm
    let c = capillary_corrections(1e-3, si_to_nat(0.5, Dimension::ENERGY_PER_AREA)).unwrap();
    let shift = c.relative_speed_shift.abs();
    s.check("8c", (1e-20..=1e-18).contains(&shift), format!("mercury |δc_s/c_s| = {shift:.3e} ∈ [1e-20, 1e-18]"));
}

fn two_plates(k: f64, h: f64, motion: Motion) -> CavityScenario {
    CavityScenario {
        plate1: CorrugatedPlate::new(0.1, [k, 0.0], 0.0).unwrap(),
        plate2: Some(CorrugatedPlate::new(0.2, [k, 0.0], 0.0).unwrap()),
        h: Separation::Finite(h),
        area: 1.0,
        motion,
    }
}

fn criterion_9(s: &mut Suite) {
    let k = 1.2;
    let f = |alpha: f64| josephson_dc(&two_plates(k, 1.0, Motion::Static { r0: [alpha / k, 0.0] }), TOL).unwrap()[0];
    let peak = f(PI / 2.0);
    let grid: Vec<f64> = (1..64).map(|i| i as f64 * PI / 32.0).collect();
    let odd = grid.iter().all(|&a| (f(-a) + f(a)).abs() <= 1e-14 * peak.abs());
    let zeros = f(0.0) == 0.0 && f(PI).abs() <= 1e-14 * peak.abs();
    let extremal = grid.iter().all(|&a| f(a).abs() <= peak.abs() * (1.0 + 1e-14));
    s.check("9a", odd && zeros && extremal, format!("F_dc odd: {odd}, zero at 0 and π: {zeros}, extremal at π/2: {extremal}"));

    // frequency of F_ac measured from its zero crossings
    let v = [0.37, 0.8];
    let fac = josephson_ac(&two_plates(k, 1.0, Motion::Uniform { v, r0: [0.0, 0.0] }), TOL).unwrap();
    let expected = k * v[0];
    let g = |t: f64| fac.at(t)[0];
    let crossing = |mut lo: f64, mut hi: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo).signum() == g(mid).signum() { lo = mid } else { hi = mid }
        }
        0.5 * (lo + hi)
    };
    let half = PI / expected;
    let n = 40.0;
    let t0 = crossing(0.5 * half, 1.5 * half);
    let tn = crossing((n + 0.5) * half, (n + 1.5) * half);
    let measured = n * PI / (tn - t0);
    let rel = ((measured - expected) / expected).abs();
    s.check("9b", rel <= 1e-10, format!("F_ac frequency from zero crossings {measured:.12} vs k·v = {expected:.12}, rel {rel:.1e} ≤ 1e-10"));

    let mut worst: f64 = 0.0;
    for kh in [0.5, 1.0, 2.0] {
        let vals: Vec<(f64, f64)> = [0.5, 1.0, 3.0]
            .iter()
            .map(|&h| {
                let v = a_minus(&KernelPoint::with_h(kh / h, 0.0, h).unwrap(), TOL).unwrap();
                (v.re() * h.powi(5), v.error_estimate * h.powi(5))
            })
            .collect();
        for w in vals.windows(2) {
            worst = worst.max((w[0].0 - w[1].0).abs() / (TOL * w[0].0.abs() + w[0].1 + w[1].1));
        }
    }
    s.check("9c", worst <= 1.0, format!("H⁵A₋(k,0) collapse at kH ∈ {{0.5,1,2}}, H ∈ {{0.5,1,3}}: max |Δ|/tol = {worst:.2}"));
}

fn criterion_10(s: &mut Suite) {
    let h = 1.0;
    let mut flagged = 0;
    let mut wrong = 0;
    for i in 0..41 {
        for j in 0..41 {
            let (q, w) = (i as f64 * 0.123, j as f64 * 0.2017);
            let p = KernelPoint::with_h(q, w, h).unwrap();
            let beyond = w * w > q * q + PI * PI / (h * h);
            let tagged = classify(&p) == Region::IIb;
            let info = a_divergence_info(&p, 5.0 * h).is_ok();
            if beyond {
                flagged += 1;
            }
            if beyond != tagged || beyond != info {
                wrong += 1;
            }
        }
    }
    s.check("10a", wrong == 0 && flagged > 0, format!("{flagged} grid points beyond ω² = q² + π²/H² all IIb, {wrong} misclassified"));

    let mut worst: f64 = 0.0;
    for (q, w) in [(0.0, 4.0), (1.0, 5.0), (0.5, 9.0)] {
        let p = KernelPoint::with_h(q, w, h).unwrap();
        let m5 = a_divergence_info(&p, 5.0 * h).unwrap();
        let m10 = a_divergence_info(&p, 10.0 * h).unwrap();
        let ratio = m10.regularized_magnitude.unwrap() / m5.regularized_magnitude.unwrap();
        let k = m5.k;
        // exponential growth with the 1/(L/H)³ prefactor of the asymptote
        let predicted = ((k - 2.0) * 5.0).exp() * (5.0f64 / 10.0).powi(3);
        worst = worst.max((ratio / predicted - 1.0).abs());
        assert!((m5.growth_exponent - (k - 2.0) / h).abs() < 1e-12);
    }
    s.check("10b", worst <= 0.1, format!("cutoff growth L/H = 5 → 10 vs exp[(K−2)ΔL/H]·(5/10)³: max rel {worst:.1e} ≤ 0.1"));

    let sc = two_plates(0.5, h, Motion::Static { r0: [0.0, 0.0] });
    let chi_refuses = matches!(chi(4.0, &sc, TOL), Err(ResponseError::Divergent(_)));
    let line = SpectralLine { omega: 4.0, amplitude: [Complex64::new(1e-3, 0.0), Complex64::new(0.0, 0.0)] };
    let diss_refuses = matches!(dissipation_rate(&[line], &sc, TOL), Err(ResponseError::Divergent(_)));
    let path = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_iib.toml");
    std::fs::write(
        &path,
        "units = \"natural\"\n[plate1]\nd = 0.1\nk = [0.5, 0.0]\n[cavity]\nh = 1.0\narea = 1.0\n[observables]\nchi_omega = [4.0]\n",
    )
    .unwrap();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_dyncasimir"))
        .arg("scenario")
        .arg(&path)
        .output()
        .unwrap()
        .status
        .code();
    s.check(
        "10c",
        chi_refuses && diss_refuses && status == Some(casimir_cli::exit::DIVERGENT),
        format!("IIb refused by chi: {chi_refuses}, dissipation_rate: {diss_refuses}; CLI exit {status:?} (want 4)"),
    );
}

#[test]
fn acceptance() {
    let mut s = Suite::default();
    criterion_1(&mut s);
    criterion_2(&mut s);
    criterion_3(&mut s);
    criterion_4(&mut s);
    criterion_5(&mut s);
    criterion_6(&mut s);
    criterion_7(&mut s);
    criterion_8(&mut s);
    criterion_9(&mut s);
    criterion_10(&mut s);

    let failing: Vec<&str> = s.lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!("{} of {} checks pass; failing: {failing:?}", s.lines.len() - failing.len(), s.lines.len());
    let unexpected: Vec<&Line> = s.lines.iter().filter(|l| l.pass == KNOWN_FAILURES.contains(&l.id)).collect();
    for l in &unexpected {
        println!("unexpected {}: {} {}", if l.pass { "pass" } else { "failure" }, l.id, l.detail);
    }
    assert!(unexpected.is_empty(), "acceptance outcome differs from the recorded known failures");
}
